#include "geamkit/criteria.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "geamkit/coincidence.hpp"
#include "geamkit/error.hpp"

namespace geamkit {

CorrelationMatrix::CorrelationMatrix(RealMatrix values, std::vector<int> sizes_a, std::vector<int> sizes_b)
    : values_(std::move(values)), sizes_a_(std::move(sizes_a)), sizes_b_(std::move(sizes_b)) {
  int rows = 0;
  int cols = 0;
  for (int m : sizes_a_) rows += m;
  for (int m : sizes_b_) cols += m;
  if (values_.rows() != rows || values_.cols() != cols) {
    throw RejectionError("correlation matrix shape does not match the frame layout");
  }
}

namespace {

BipartiteDims split(const Geam& a, const Geam& b, const DensityMatrix& rho) {
  const BipartiteDims want{a.dim(), b.dim()};
  if (rho.dim() != want.total()) {
    throw RejectionError("state dimension " + std::to_string(rho.dim()) + " does not match " +
                         std::to_string(want.a) + "x" + std::to_string(want.b));
  }
  if (rho.is_bipartite() && !(rho.bipartite_dims() == want)) {
    throw RejectionError("state factorization does not match the GEAM dimensions");
  }
  return want;
}

std::vector<const HermitianMatrix*> effects(const Geam& g) {
  std::vector<const HermitianMatrix*> out;
  for (const auto& fr : g.frames())
    for (const auto& p : fr.operators) out.push_back(&p);
  return out;
}

CriterionReport make_report(Criterion id, double lhs, double bound, double tolerance) {
  return {id, lhs, bound, lhs > bound + tolerance, tolerance};
}

std::string sizes_text(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

CorrelationMatrix correlation_matrix(const Geam& geam_a, const Geam& geam_b, const DensityMatrix& rho) {
  split(geam_a, geam_b, rho);
  const auto pa = effects(geam_a);
  const auto pb = effects(geam_b);
  RealMatrix values(static_cast<Eigen::Index>(pa.size()), static_cast<Eigen::Index>(pb.size()));
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const ComplexMatrix op = kron(pa[i]->matrix(), pb[j]->matrix());
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (rho.matrix().array() * op.transpose().array()).sum().real();
    }
  return CorrelationMatrix(std::move(values), geam_a.frame_sizes(), geam_b.frame_sizes());
}

CriterionReport trace_criterion(const CorrelationMatrix& p, const Geam& geam_a, const Geam& geam_b,
                                double tolerance) {
  if (!p.is_square_layout()) {
    throw RejectionError("trace criterion needs N_A = N_B and equal frame sizes; got " +
                         sizes_text(p.frame_sizes_a()) + " vs " + sizes_text(p.frame_sizes_b()));
  }
  const double bound = 0.5 * (max_ioc(geam_a) + max_ioc(geam_b));
  return make_report(Criterion::Trace, p.values().trace(), bound, tolerance);
}

CriterionReport trace_norm_criterion(const CorrelationMatrix& p, const Geam& geam_a, const Geam& geam_b,
                                     double tolerance) {
  const double bound = std::sqrt(max_ioc(geam_a) * max_ioc(geam_b));
  return make_report(Criterion::TraceNorm, trace_norm(p.values()), bound, tolerance);
}

RealMatrix enhanced_correlation(const Geam& geam_a, const Geam& geam_b, const DensityMatrix& rho) {
  const auto dims = split(geam_a, geam_b, rho);
  const DensityMatrix tagged = rho.with_dims({dims.a, dims.b});
  const RealVector prob_a = probabilities(geam_a, marginal(tagged, Subsystem::A)).flatten();
  const RealVector prob_b = probabilities(geam_b, marginal(tagged, Subsystem::B)).flatten();
  return correlation_matrix(geam_a, geam_b, tagged).values() - prob_a * prob_b.transpose();
}

CriterionReport enhanced_criterion(const Geam& geam_a, const Geam& geam_b, const DensityMatrix& rho,
                                   double tolerance) {
  const auto dims = split(geam_a, geam_b, rho);
  const DensityMatrix tagged = rho.with_dims({dims.a, dims.b});
  const double c_a = ioc(probabilities(geam_a, marginal(tagged, Subsystem::A)));
  const double c_b = ioc(probabilities(geam_b, marginal(tagged, Subsystem::B)));
  double rad_a = max_ioc(geam_a) - c_a;
  double rad_b = max_ioc(geam_b) - c_b;
  if (rad_a < -1e-10 || rad_b < -1e-10) {
    std::ostringstream os;
    os.precision(17);
    os << "enhanced criterion radicands are negative (" << rad_a << ", " << rad_b
       << "): marginal coincidence exceeds its pure-state maximum";
    throw NumericalError(os.str());
  }
  rad_a = std::max(rad_a, 0.0);
  rad_b = std::max(rad_b, 0.0);
  const double lhs = trace_norm(enhanced_correlation(geam_a, geam_b, tagged));
  return make_report(Criterion::Enhanced, lhs, std::sqrt(rad_a) * std::sqrt(rad_b), tolerance);
}

const char* to_string(Criterion c) noexcept {
  switch (c) {
    case Criterion::Trace:
      return "TRACE";
    case Criterion::TraceNorm:
      return "TRACE_NORM";
    case Criterion::Enhanced:
      return "ENHANCED";
  }
  return "UNKNOWN";
}

}  // namespace geamkit
