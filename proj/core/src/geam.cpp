#include "geamkit/geam.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <limits>
#include <sstream>
#include <string>

#include "geamkit/error.hpp"

namespace geamkit {

struct GeamAccess {
  static Geam make(int dim, std::vector<GeamFrame> frames, std::optional<double> s) {
    Geam g;
    g.dim_ = dim;
    g.frames_ = std::move(frames);
    g.design_constant_ = s;
    return g;
  }
  static void attach(Geam& g, HOperatorProvenance p) { g.provenance_ = std::move(p); }
};

std::vector<int> Geam::frame_sizes() const {
  std::vector<int> out;
  out.reserve(frames_.size());
  for (const auto& f : frames_) out.push_back(f.size);
  return out;
}

int Geam::outcome_count() const {
  int n = 0;
  for (const auto& f : frames_) n += f.size;
  return n;
}

double Geam::mu(int prefix) const {
  if (prefix < 0 || prefix > frame_count()) {
    throw RejectionError("prefix length " + std::to_string(prefix) + " outside [0, " +
                         std::to_string(frame_count()) + "]");
  }
  double s = 0.0;
  for (int alpha = 0; alpha < prefix; ++alpha) s += frames_[static_cast<std::size_t>(alpha)].a *
                                                    frames_[static_cast<std::size_t>(alpha)].gamma;
  return s / dim_;
}

Geam validate_geam(const std::vector<std::vector<HermitianMatrix>>& frames,
                   const ValidateOptions& options) {
  const double tol = options.tolerance;
  if (frames.empty()) throw RejectionError("GEAM needs at least one frame");
  for (std::size_t alpha = 0; alpha < frames.size(); ++alpha) {
    if (frames[alpha].empty()) {
      throw RejectionError("frame " + std::to_string(alpha) + " is empty");
    }
  }
  const int d = frames.front().front().dim();
  if (d < 2) throw RejectionError("GEAM needs d >= 2");
  for (const auto& fr : frames)
    for (const auto& p : fr)
      if (p.dim() != d) throw RejectionError("GEAM effects have mixed dimensions");
  if (!options.signs.empty() && options.signs.size() != frames.size()) {
    throw RejectionError("sign list length does not match frame count");
  }

  const int n = static_cast<int>(frames.size());
  std::vector<Violation> bad;
  auto flag = [&](std::string rel, std::vector<int> idx, double measured, double expected) {
    bad.push_back({std::move(rel), std::move(idx), measured, expected});
  };

  int total_size = 0;
  for (const auto& fr : frames) total_size += static_cast<int>(fr.size());
  if (total_size != d * d + n - 1) {
    flag("sum_alpha M_alpha = d^2 + N - 1", {}, total_size, d * d + n - 1);
  }

  std::vector<GeamFrame> out(frames.size());
  double gamma_sum = 0.0;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);

  for (int alpha = 0; alpha < n; ++alpha) {
    const auto& ops = frames[static_cast<std::size_t>(alpha)];
    auto& fr = out[static_cast<std::size_t>(alpha)];
    const int m = static_cast<int>(ops.size());
    fr.size = m;
    fr.operators = ops;
    fr.sign = options.signs.empty() ? 0 : options.signs[static_cast<std::size_t>(alpha)];

    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& p : ops) sum += p.matrix();
    fr.gamma = sum.trace().real() / d;
    gamma_sum += fr.gamma;
    const double resolution = max_abs(ComplexMatrix(sum - fr.gamma * eye));
    if (resolution > tol) flag("sum_k P_{alpha,k} = gamma_alpha I", {alpha}, resolution, 0.0);
    if (fr.gamma <= 0.0) {
      flag("gamma_alpha > 0", {alpha}, fr.gamma, 0.0);
      continue;
    }

    fr.a = d * fr.gamma / m;
    for (int k = 0; k < m; ++k) {
      const double tr = ops[static_cast<std::size_t>(k)].trace();
      if (std::abs(tr - fr.a) > tol) flag("Tr P_{alpha,k} = a_alpha = d gamma_alpha / M_alpha", {alpha, k}, tr, fr.a);
    }
    const double a2 = fr.a * fr.a;

    double b_acc = 0.0;
    for (const auto& p : ops) b_acc += p.hs_inner(p);
    fr.b = b_acc / (m * a2);
    for (int k = 0; k < m; ++k) {
      const double v = ops[static_cast<std::size_t>(k)].hs_inner(ops[static_cast<std::size_t>(k)]);
      if (std::abs(v - fr.b * a2) > tol) flag("Tr P_{alpha,k}^2 = b_alpha a_alpha^2", {alpha, k}, v, fr.b * a2);
    }

    if (m >= 2) {
      double c_acc = 0.0;
      for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l)
          c_acc += ops[static_cast<std::size_t>(k)].hs_inner(ops[static_cast<std::size_t>(l)]);
      fr.c = c_acc / (0.5 * m * (m - 1) * a2);
      for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
          const double v = ops[static_cast<std::size_t>(k)].hs_inner(ops[static_cast<std::size_t>(l)]);
          if (std::abs(v - fr.c * a2) > tol) {
            flag("Tr(P_{alpha,k} P_{alpha,l}) = c_alpha a_alpha^2", {alpha, k, l}, v, fr.c * a2);
          }
        }
      const double c_formula = (m - d * fr.b) / (d * (m - 1.0));
      if (std::abs(fr.c - c_formula) > tol) {
        flag("c_alpha = (M_alpha - d b_alpha) / (d (M_alpha - 1))", {alpha}, fr.c, c_formula);
      }
    }

    if (!(fr.b - 1.0 / d > 1e-12)) flag("b_alpha > 1/d", {alpha}, fr.b, 1.0 / d);
    const double b_max = std::min(d, m) / static_cast<double>(d);
    if (fr.b > b_max + tol) flag("b_alpha <= min(d, M_alpha)/d", {alpha}, fr.b, b_max);

    for (int k = 0; k < m; ++k) {
      const double lam = min_eigenvalue(ops[static_cast<std::size_t>(k)]);
      if (lam < -tol) flag("P_{alpha,k} >= 0", {alpha, k}, lam, 0.0);
    }
  }

  if (std::abs(gamma_sum - 1.0) > tol) flag("sum_alpha gamma_alpha = 1", {}, gamma_sum, 1.0);

  for (int alpha = 0; alpha < n; ++alpha)
    for (int beta = alpha + 1; beta < n; ++beta) {
      const auto& fa = out[static_cast<std::size_t>(alpha)];
      const auto& fb = out[static_cast<std::size_t>(beta)];
      for (int k = 0; k < fa.size; ++k)
        for (int l = 0; l < fb.size; ++l) {
          const double v = fa.operators[static_cast<std::size_t>(k)].hs_inner(
              fb.operators[static_cast<std::size_t>(l)]);
          const double expected = fa.a * fb.a / d;
          if (std::abs(v - expected) > tol) {
            flag("Tr(P_{alpha,k} P_{beta,l}) = a_alpha a_beta / d", {alpha, k, beta, l}, v, expected);
          }
        }
    }

  if (!bad.empty()) throw ValidationError(std::move(bad));

  std::optional<double> s;
  double lo = out.front().design_constant();
  double hi = lo;
  double mean = 0.0;
  for (const auto& fr : out) {
    lo = std::min(lo, fr.design_constant());
    hi = std::max(hi, fr.design_constant());
    mean += fr.design_constant();
  }
  if (hi - lo <= tol) s = mean / n;
  return GeamAccess::make(d, std::move(out), s);
}

std::vector<HermitianMatrix> build_h_operators(const BasisPartition& partition, int alpha) {
  const auto g = partition.elements(alpha);
  const int d = partition.dim();
  const int m = partition.group_sizes()[static_cast<std::size_t>(alpha)];
  const double root = std::sqrt(static_cast<double>(m));

  ComplexMatrix g_sum = ComplexMatrix::Zero(d, d);
  for (const auto& gk : g) g_sum += gk.matrix();

  std::vector<HermitianMatrix> h;
  h.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m - 1; ++k) {
    h.emplace_back(ComplexMatrix(g_sum - root * (1.0 + root) * g[static_cast<std::size_t>(k)].matrix()));
  }
  h.emplace_back(ComplexMatrix((1.0 + root) * g_sum));
  return h;
}

std::vector<double> design_caps(int d, std::span<const int> sizes, std::span<const double> gamma) {
  if (sizes.size() != gamma.size()) throw RejectionError("weights and frame sizes differ in length");
  std::vector<double> caps;
  caps.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double m = sizes[i];
    const double base = d * gamma[i] * gamma[i] / m;
    caps.push_back(std::min(base, (d - 1.0) / (m - 1.0) * base));
  }
  return caps;
}

std::vector<double> uniform_weights(int n) {
  if (n < 1) throw RejectionError("need at least one weight");
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / n);
}

namespace {

struct Construction {
  std::vector<std::vector<HermitianMatrix>> effects;
  HOperatorProvenance provenance;
};

void check_weights(const BasisPartition& partition, std::span<const double> gamma,
                   std::span<const int> signs) {
  const auto n = static_cast<std::size_t>(partition.frame_count());
  if (gamma.size() != n) {
    throw RejectionError("expected " + std::to_string(n) + " weights, got " + std::to_string(gamma.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(gamma[i] > 0.0) || !std::isfinite(gamma[i])) {
      throw RejectionError("weight gamma[" + std::to_string(i) + "] = " + std::to_string(gamma[i]) +
                           " must be positive");
    }
    sum += gamma[i];
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw RejectionError("weights must sum to 1, got " + std::to_string(sum));
  }
  if (!signs.empty()) {
    if (signs.size() != n) throw RejectionError("sign list length does not match frame count");
    for (int s : signs)
      if (s != 1 && s != -1) throw RejectionError("signs must be +1 or -1");
  }
}

void check_s_range(const BasisPartition& partition, std::span<const double> gamma, double s) {
  const auto caps = design_caps(partition.dim(), partition.group_sizes(), gamma);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw RejectionError("design constant S = " + std::to_string(s) + " must be positive");
  }
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (s > caps[i] * (1.0 + 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "design constant S = " << s << " exceeds the cap " << caps[i] << " of frame " << i;
      throw RejectionError(os.str());
    }
  }
}

Construction construct(const BasisPartition& partition, std::span<const double> gamma, double s,
                       std::span<const int> signs) {
  const int d = partition.dim();
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  Construction out;
  for (int alpha = 0; alpha < partition.frame_count(); ++alpha) {
    const int m = partition.group_sizes()[static_cast<std::size_t>(alpha)];
    const double root = std::sqrt(static_cast<double>(m));
    const double a = d * gamma[static_cast<std::size_t>(alpha)] / m;
    const int sign = signs.empty() ? 1 : signs[static_cast<std::size_t>(alpha)];
    const double tau = sign * std::sqrt(s / (m * (root + 1.0) * (root + 1.0)));
    auto h = build_h_operators(partition, alpha);
    std::vector<HermitianMatrix> effects;
    effects.reserve(h.size());
    for (const auto& hk : h) effects.emplace_back(ComplexMatrix((a / d) * eye + tau * hk.matrix()));
    out.effects.push_back(std::move(effects));
    out.provenance.h.push_back(std::move(h));
    out.provenance.tau.push_back(tau);
  }
  return out;
}

// Smallest eigenvalue over all effects, with its location.
struct MinEffect {
  double value;
  int frame;
  int element;
};

MinEffect min_effect(const std::vector<std::vector<HermitianMatrix>>& effects) {
  MinEffect best{std::numeric_limits<double>::infinity(), -1, -1};
  for (std::size_t alpha = 0; alpha < effects.size(); ++alpha)
    for (std::size_t k = 0; k < effects[alpha].size(); ++k) {
      const double lam = min_eigenvalue(effects[alpha][k]);
      if (lam < best.value) best = {lam, static_cast<int>(alpha), static_cast<int>(k)};
    }
  return best;
}

}  // namespace

Geam build_geam(const BasisPartition& partition, std::span<const double> gamma, double S,
                std::span<const int> signs, double tolerance) {
  check_weights(partition, gamma, signs);
  check_s_range(partition, gamma, S);
  auto built = construct(partition, gamma, S, signs);
  const auto worst = min_effect(built.effects);
  if (worst.value < -tolerance) throw PositivityError(worst.frame, worst.element, worst.value);

  ValidateOptions opts;
  opts.tolerance = tolerance;
  opts.signs.assign(static_cast<std::size_t>(partition.frame_count()), 1);
  if (!signs.empty()) opts.signs.assign(signs.begin(), signs.end());
  Geam g = validate_geam(built.effects, opts);
  GeamAccess::attach(g, std::move(built.provenance));
  return g;
}

DesignCertificate check_conical_design(const Geam& geam, double tolerance) {
  const int d = geam.dim();
  const int d2 = d * d;
  DesignCertificate cert;
  cert.mu = geam.mu(geam.frame_count());

  double lo = geam.frame(0).design_constant();
  double hi = lo;
  double mean = 0.0;
  for (const auto& fr : geam.frames()) {
    lo = std::min(lo, fr.design_constant());
    hi = std::max(hi, fr.design_constant());
    mean += fr.design_constant();
  }
  cert.S = mean / geam.frame_count();
  cert.s_constant = (hi - lo) <= tolerance;

  ComplexMatrix tensor_sum = ComplexMatrix::Zero(d2, d2);
  for (const auto& fr : geam.frames())
    for (const auto& p : fr.operators) tensor_sum += kron(p.matrix(), p.matrix());
  const ComplexMatrix eye = ComplexMatrix::Identity(d2, d2);
  const ComplexMatrix flip = flip_operator(d);

  // Projection onto span{I, F}: Tr X = k+ d^2 + k- d, Tr(XF) = k+ d + k- d^2.
  const double tr_x = tensor_sum.trace().real();
  const double tr_xf = (tensor_sum * flip).trace().real();
  const double det = static_cast<double>(d2) * d2 - static_cast<double>(d) * d;
  const double fit_plus = (tr_x * d2 - tr_xf * d) / det;
  const double fit_minus = (tr_xf * d2 - tr_x * d) / det;

  const double eq_plus = cert.mu - cert.S / d;
  const double eq_minus = cert.S;
  if (cert.s_constant) {
    cert.kappa_plus = eq_plus;
    cert.kappa_minus = eq_minus;
  } else {
    cert.kappa_plus = fit_plus;
    cert.kappa_minus = fit_minus;
  }
  cert.residual = max_abs(ComplexMatrix(tensor_sum - cert.kappa_plus * eye - cert.kappa_minus * flip));
  cert.is_conical = cert.s_constant && cert.residual <= tolerance &&
                    std::abs(fit_plus - eq_plus) <= tolerance &&
                    std::abs(fit_minus - eq_minus) <= tolerance;
  return cert;
}

double max_feasible_S(const BasisPartition& partition, std::span<const double> gamma,
                      std::span<const int> signs) {
  check_weights(partition, gamma, signs);
  const auto caps = design_caps(partition.dim(), partition.group_sizes(), gamma);
  const double cap = *std::min_element(caps.begin(), caps.end());
  auto feasible = [&](double s) {
    return min_effect(construct(partition, gamma, s, signs).effects).value >= -kStructuralTolerance;
  };
  if (feasible(cap)) return cap;

  double lo = 0.0;
  double hi = cap;
  while (hi - lo > 1e-7 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0)) {
    throw InfeasibleError("no S > 0 yields positive effects for this basis and sign choice");
  }
  return lo;
}

}  // namespace geamkit

namespace geamkit {

std::string geam_hash(const Geam& geam) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t d = geam.dim();
  feed(&d, sizeof d);
  for (const auto& fr : geam.frames()) {
    const std::int64_t m = fr.size;
    feed(&m, sizeof m);
    for (const auto& p : fr.operators) {
      for (Eigen::Index i = 0; i < p.matrix().rows(); ++i)
        for (Eigen::Index j = 0; j < p.matrix().cols(); ++j) {
          const double re = p.matrix()(i, j).real() + 0.0;  // folds -0.0 into +0.0
          const double im = p.matrix()(i, j).imag() + 0.0;
          feed(&re, sizeof re);
          feed(&im, sizeof im);
        }
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace geamkit
