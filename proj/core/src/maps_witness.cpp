#include "geamkit/maps_witness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "geamkit/coincidence.hpp"
#include "geamkit/error.hpp"

namespace geamkit {

RotationSpec RotationSpec::permutation_of(std::vector<int> perm) {
  RotationSpec s;
  s.kind = Kind::Permutation;
  s.permutation = std::move(perm);
  return s;
}

RotationSpec RotationSpec::exponential_of(RealMatrix generator) {
  RotationSpec s;
  s.kind = Kind::Exponential;
  s.generator = std::move(generator);
  return s;
}

RotationSpec RotationSpec::random_exponential(int size, SplitMix64& rng, double scale) {
  RealMatrix g = RealMatrix::Zero(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      const double v = scale * rng.gaussian();
      g(i, j) = v;
      g(j, i) = -v;
    }
  return exponential_of(std::move(g));
}

RotationMatrix make_rotation(int size, const RotationSpec& spec) {
  if (size < 1) throw RejectionError("rotation size must be >= 1");
  switch (spec.kind) {
    case RotationSpec::Kind::Identity:
      return RotationMatrix(RealMatrix::Identity(size, size), spec);
    case RotationSpec::Kind::Permutation: {
      if (static_cast<int>(spec.permutation.size()) != size) {
        throw RejectionError("permutation has " + std::to_string(spec.permutation.size()) +
                             " entries, expected " + std::to_string(size));
      }
      std::vector<bool> seen(static_cast<std::size_t>(size), false);
      RealMatrix o = RealMatrix::Zero(size, size);
      for (int i = 0; i < size; ++i) {
        const int j = spec.permutation[static_cast<std::size_t>(i)];
        if (j < 0 || j >= size || seen[static_cast<std::size_t>(j)]) {
          throw RejectionError("permutation is not a bijection on {0.." + std::to_string(size - 1) + "}");
        }
        seen[static_cast<std::size_t>(j)] = true;
        o(i, j) = 1.0;
      }
      return RotationMatrix(std::move(o), spec);
    }
    case RotationSpec::Kind::Exponential: {
      const RealMatrix& g = spec.generator;
      if (g.rows() != size || g.cols() != size) {
        throw RejectionError("rotation generator must be " + std::to_string(size) + "x" + std::to_string(size));
      }
      if (!g.allFinite()) throw RejectionError("rotation generator has non-finite entries");
      if (max_abs(RealMatrix(g + g.transpose())) > 1e-12) {
        throw RejectionError("rotation generator is not antisymmetric");
      }
      const RealMatrix q = RealMatrix::Identity(size, size) -
                           RealMatrix::Constant(size, size, 1.0 / size);
      const RealMatrix projected = q * g * q;
      RealMatrix o = projected.exp();
      return RotationMatrix(std::move(o), spec);
    }
  }
  throw RejectionError("unknown rotation kind");
}

namespace {

// Tr(X P) for general X and Hermitian P.
Complex trace_product(const ComplexMatrix& x, const ComplexMatrix& p) {
  return (x.array() * p.transpose().array()).sum();
}

void check_operand(const Geam& geam, const ComplexMatrix& x) {
  if (x.rows() != geam.dim() || x.cols() != geam.dim()) {
    throw RejectionError("map input must be " + std::to_string(geam.dim()) + "x" +
                         std::to_string(geam.dim()));
  }
}

}  // namespace

ComplexMatrix apply_phi_alpha(const Geam& geam, int alpha, const RotationMatrix& rotation,
                              const ComplexMatrix& x) {
  if (alpha < 0 || alpha >= geam.frame_count()) {
    throw RejectionError("frame index " + std::to_string(alpha) + " out of range");
  }
  check_operand(geam, x);
  const auto& fr = geam.frame(alpha);
  if (rotation.size() != fr.size) {
    throw RejectionError("rotation size " + std::to_string(rotation.size()) + " does not match frame size " +
                         std::to_string(fr.size));
  }
  ComplexVector t(fr.size);
  for (int l = 0; l < fr.size; ++l) t(l) = trace_product(x, fr.operators[static_cast<std::size_t>(l)].matrix());
  const ComplexVector coef = rotation.matrix().cast<Complex>() * t;
  ComplexMatrix out = ComplexMatrix::Zero(geam.dim(), geam.dim());
  for (int k = 0; k < fr.size; ++k) out += coef(k) * fr.operators[static_cast<std::size_t>(k)].matrix();
  return out;
}

PositiveMapSpec build_map(Geam geam, int negative, int total, std::vector<RotationMatrix> rotations) {
  const int n = geam.frame_count();
  if (negative < 1 || negative > total || total > n) {
    throw RejectionError("need 1 <= L <= K <= N, got L=" + std::to_string(negative) +
                         ", K=" + std::to_string(total) + ", N=" + std::to_string(n));
  }
  if (static_cast<int>(rotations.size()) != total) {
    throw RejectionError("expected " + std::to_string(total) + " rotation matrices, got " +
                         std::to_string(rotations.size()));
  }
  for (int alpha = 0; alpha < total; ++alpha) {
    if (rotations[static_cast<std::size_t>(alpha)].size() != geam.frame(alpha).size) {
      throw RejectionError("rotation for frame " + std::to_string(alpha) + " has size " +
                           std::to_string(rotations[static_cast<std::size_t>(alpha)].size()) +
                           ", frame has " + std::to_string(geam.frame(alpha).size) + " effects");
    }
  }
  const auto cert = check_conical_design(geam);
  if (!cert.is_conical || !geam.design_constant()) {
    throw PremiseError("positive-map construction needs a conical 2-design GEAM (residual " +
                       std::to_string(cert.residual) + ")");
  }
  const int d = geam.dim();
  const double s = *geam.design_constant();
  const double a = d * (2.0 * max_partial_ioc(geam, negative) - max_partial_ioc(geam, total));
  const double a_alt = (d - 1.0) * s - d * (geam.mu(total) - 2.0 * geam.mu(negative));
  if (std::abs(a - a_alt) > 1e-12) {
    throw NumericalError("the two expressions for A disagree by " + std::to_string(a - a_alt));
  }
  return PositiveMapSpec(std::move(geam), negative, total, std::move(rotations), a, s);
}

PositiveMapSpec build_map(Geam geam, int negative, int total) {
  std::vector<RotationMatrix> rotations;
  for (int alpha = 0; alpha < std::min(total, geam.frame_count()); ++alpha) {
    rotations.push_back(make_rotation(geam.frame(alpha).size, RotationSpec::identity()));
  }
  return build_map(std::move(geam), negative, total, std::move(rotations));
}

ComplexMatrix apply_map(const PositiveMapSpec& spec, const ComplexMatrix& x) {
  const Geam& g = spec.geam();
  check_operand(g, x);
  const int d = g.dim();
  ComplexMatrix out = (spec.A() / d) * x.trace() * ComplexMatrix::Identity(d, d);
  for (int alpha = 0; alpha < spec.total_count(); ++alpha) {
    const ComplexMatrix phi = apply_phi_alpha(g, alpha, spec.rotations()[static_cast<std::size_t>(alpha)], x);
    if (alpha < spec.negative_count()) {
      out -= phi;
    } else {
      out += phi;
    }
  }
  return out;
}

double mehta_ratio(const PositiveMapSpec& spec, const ComplexMatrix& projector) {
  check_operand(spec.geam(), projector);
  const HermitianMatrix p(projector, 1e-10);
  const double idempotency = max_abs(ComplexMatrix(p.matrix() * p.matrix() - p.matrix()));
  if (idempotency > 1e-10 || std::abs(p.trace() - 1.0) > 1e-10) {
    throw RejectionError("mehta_ratio needs a rank-1 projector");
  }
  const ComplexMatrix y = apply_map(spec, p.matrix());
  const double tr = y.trace().real();
  if (std::abs(tr) <= 1e-12) {
    throw NumericalError("Tr Phi[P] vanishes; the ratio is undefined");
  }
  const double tr_sq = (y * y).trace().real();
  return tr_sq / (tr * tr);
}

Witness::Witness(HermitianMatrix w, BipartiteDims dims, WitnessProvenance provenance)
    : w_(std::move(w)), dims_(dims), provenance_(std::move(provenance)) {
  if (dims_.a < 1 || dims_.b < 1 || dims_.total() != w_.dim()) {
    throw RejectionError("witness dimension " + std::to_string(w_.dim()) + " does not factor as " +
                         std::to_string(dims_.a) + "x" + std::to_string(dims_.b));
  }
}

ComplexMatrix witness_choi_form(const PositiveMapSpec& spec) {
  const int d = spec.geam().dim();
  ComplexMatrix w = ComplexMatrix::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(m, n) = 1.0;
      w.block(m * d, n * d, d, d) = apply_map(spec, e);
    }
  return w;
}

ComplexMatrix witness_closed_form(const PositiveMapSpec& spec) {
  const Geam& g = spec.geam();
  const int d = g.dim();
  ComplexMatrix w = (spec.A() / d) * ComplexMatrix::Identity(d * d, d * d);
  for (int alpha = 0; alpha < spec.total_count(); ++alpha) {
    const auto& fr = g.frame(alpha);
    const RealMatrix& o = spec.rotations()[static_cast<std::size_t>(alpha)].matrix();
    ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
    for (int k = 0; k < fr.size; ++k)
      for (int l = 0; l < fr.size; ++l) {
        if (o(k, l) == 0.0) continue;
        j += o(k, l) * kron(fr.operators[static_cast<std::size_t>(l)].matrix().conjugate(),
                            fr.operators[static_cast<std::size_t>(k)].matrix());
      }
    if (alpha < spec.negative_count()) {
      w -= j;
    } else {
      w += j;
    }
  }
  return w;
}

Witness choi_witness(const PositiveMapSpec& spec) {
  const ComplexMatrix choi = witness_choi_form(spec);
  const ComplexMatrix closed = witness_closed_form(spec);
  const double gap = max_abs(ComplexMatrix(choi - closed));
  if (gap > 1e-10) {
    throw NumericalError("Choi and closed-form witness constructions differ by " + std::to_string(gap));
  }
  WitnessProvenance prov;
  prov.geam_hash = geam_hash(spec.geam());
  prov.negative = spec.negative_count();
  prov.total = spec.total_count();
  prov.A = spec.A();
  for (const auto& r : spec.rotations()) prov.rotations.push_back(r.spec());
  const int d = spec.geam().dim();
  return Witness(HermitianMatrix(choi, 1e-10), {d, d}, std::move(prov));
}

namespace {

struct LocalMinimum {
  double value;
  ComplexVector a;
  ComplexVector b;
};

// Lowest eigenpair of a Hermitian matrix.
std::pair<double, ComplexVector> lowest(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericalError("see-saw eigensolver failed");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

LocalMinimum see_saw(const ComplexMatrix& w, BipartiteDims dims, std::uint64_t seed, const SeeSawOptions& opt) {
  const int da = dims.a;
  const int db = dims.b;
  SplitMix64 rng(seed);
  ComplexVector a = random_unit_vector(da, rng);
  ComplexVector b(db);
  double current = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    ComplexMatrix mb = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k) {
        const Complex coef = std::conj(a(i)) * a(k);
        if (coef == Complex(0.0)) continue;
        mb += coef * w.block(i * db, k * db, db, db);
      }
    b = lowest(mb).second;

    ComplexMatrix ma = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < da; ++k) {
        ma(i, k) = b.dot(w.block(i * db, k * db, db, db) * b);  // dot conjugates b
      }
    auto [value, next_a] = lowest(ma);
    a = next_a;
    const bool stalled = current - value < opt.stagnation;
    current = std::min(current, value);
    if (stalled) break;
  }
  return {current, a, b};
}

}  // namespace

ProductMinimum min_product_expectation(const HermitianMatrix& w, BipartiteDims dims,
                                       const SeeSawOptions& options) {
  if (dims.a < 1 || dims.b < 1 || dims.total() != w.dim()) {
    throw RejectionError("product dimensions do not match the witness");
  }
  if (options.restarts < 1) throw RejectionError("see-saw needs at least one restart");

  std::vector<std::future<LocalMinimum>> runs;
  runs.reserve(static_cast<std::size_t>(options.restarts));
  for (int r = 0; r < options.restarts; ++r) {
    runs.push_back(std::async(std::launch::async, [&w, dims, &options, r] {
      return see_saw(w.matrix(), dims, derive_seed(options.seed, static_cast<std::uint64_t>(r)), options);
    }));
  }
  ProductMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    auto local = runs[static_cast<std::size_t>(r)].get();
    if (local.value < best.value) {
      best.value = local.value;
      best.a = std::move(local.a);
      best.b = std::move(local.b);
      best.best_restart = r;
    }
  }
  return best;
}

ProductMinimum min_product_expectation(const Witness& w, const SeeSawOptions& options) {
  return min_product_expectation(w.hermitian(), w.dims(), options);
}

Detection detect(const Witness& w, const DensityMatrix& rho, double tolerance) {
  if (rho.dim() != w.dim()) {
    throw RejectionError("state dimension " + std::to_string(rho.dim()) + " does not match witness dimension " +
                         std::to_string(w.dim()));
  }
  Detection out;
  out.value = w.hermitian().hs_inner(rho.hermitian());
  out.verdict = out.value < -tolerance ? Verdict::Entangled : Verdict::Inconclusive;
  return out;
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::Entangled ? "ENTANGLED" : "INCONCLUSIVE";
}

}  // namespace geamkit
