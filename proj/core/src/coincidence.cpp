#include "geamkit/coincidence.hpp"

#include <cmath>
#include <string>

#include "geamkit/error.hpp"

namespace geamkit {

ProbabilityTable::ProbabilityTable(std::vector<std::vector<double>> values, std::vector<double> gamma,
                                   double tolerance)
    : values_(std::move(values)), gamma_(std::move(gamma)) {
  if (values_.empty() || values_.size() != gamma_.size()) {
    throw RejectionError("probability table needs one weight per frame");
  }
  double total = 0.0;
  for (std::size_t alpha = 0; alpha < values_.size(); ++alpha) {
    double frame_sum = 0.0;
    for (double p : values_[alpha]) {
      if (p < -1e-12) throw RejectionError("negative probability " + std::to_string(p));
      frame_sum += p;
    }
    if (std::abs(frame_sum - gamma_[alpha]) > tolerance) {
      throw RejectionError("frame " + std::to_string(alpha) + " probabilities sum to " +
                           std::to_string(frame_sum) + ", expected gamma = " + std::to_string(gamma_[alpha]));
    }
    total += frame_sum;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw RejectionError("probabilities sum to " + std::to_string(total));
  }
}

RealVector ProbabilityTable::flatten() const {
  std::size_t n = 0;
  for (const auto& f : values_) n += f.size();
  RealVector out(static_cast<Eigen::Index>(n));
  Eigen::Index i = 0;
  for (const auto& f : values_)
    for (double p : f) out(i++) = p;
  return out;
}

ProbabilityTable probabilities(const Geam& geam, const DensityMatrix& rho) {
  if (rho.dim() != geam.dim()) {
    throw RejectionError("state dimension " + std::to_string(rho.dim()) +
                         " does not match GEAM dimension " + std::to_string(geam.dim()));
  }
  std::vector<std::vector<double>> values;
  std::vector<double> gamma;
  for (const auto& fr : geam.frames()) {
    std::vector<double> row;
    row.reserve(fr.operators.size());
    for (const auto& p : fr.operators) row.push_back(p.hs_inner(rho.hermitian()));
    values.push_back(std::move(row));
    gamma.push_back(fr.gamma);
  }
  return ProbabilityTable(std::move(values), std::move(gamma));
}

double partial_ioc(const ProbabilityTable& table, int prefix) {
  if (prefix < 1 || prefix > table.frame_count()) {
    throw RejectionError("prefix length " + std::to_string(prefix) + " outside [1, " +
                         std::to_string(table.frame_count()) + "]");
  }
  double c = 0.0;
  for (int alpha = 0; alpha < prefix; ++alpha)
    for (double p : table.frame(alpha)) c += p * p;
  return c;
}

double ioc(const ProbabilityTable& table) { return partial_ioc(table, table.frame_count()); }

namespace {

double require_design_constant(const Geam& geam) {
  if (!geam.design_constant()) {
    throw PremiseError("GEAM is not a conical 2-design; coincidence bounds are not guaranteed");
  }
  return *geam.design_constant();
}

void check_prefix(const Geam& geam, int prefix) {
  if (prefix < 1 || prefix > geam.frame_count()) {
    throw RejectionError("prefix length " + std::to_string(prefix) + " outside [1, " +
                         std::to_string(geam.frame_count()) + "]");
  }
}

}  // namespace

double max_partial_ioc(const Geam& geam, int prefix) {
  check_prefix(geam, prefix);
  const double s = require_design_constant(geam);
  const int d = geam.dim();
  return (d - 1.0) / d * s + geam.mu(prefix);
}

CoincidenceBound ioc_bounds(const Geam& geam, int prefix, double purity) {
  check_prefix(geam, prefix);
  const double s = require_design_constant(geam);
  const int d = geam.dim();
  if (purity < 1.0 / d - 1e-12 || purity > 1.0 + 1e-12) {
    throw RejectionError("purity " + std::to_string(purity) + " outside [1/d, 1]");
  }
  CoincidenceBound out;
  out.prefix = prefix;
  out.mu = geam.mu(prefix);
  out.bound_state = s * (purity - 1.0 / d) + out.mu;
  out.bound_pure = (d - 1.0) / d * s + out.mu;
  return out;
}

CoincidenceBound ioc_bounds(const Geam& geam, int prefix, const DensityMatrix& rho) {
  auto out = ioc_bounds(geam, prefix, std::min(1.0, rho.purity()));
  out.value = partial_ioc(probabilities(geam, rho), prefix);
  return out;
}

std::vector<std::vector<double>> decompose_state(const Geam& geam, const DensityMatrix& rho) {
  const auto& prov = geam.h_provenance();
  if (!prov) {
    throw UnsupportedError("GEAM carries no H-operator provenance; build it from a basis partition");
  }
  if (rho.dim() != geam.dim()) throw RejectionError("state dimension does not match GEAM");
  // With the gauge sum_k r_k = 0 the Gram relation Tr(rho H_k) =
  // (sqrt(M)+1)^2 (M r_k - r_alpha) inverts to r_k = Tr(rho H_k) / (M (sqrt(M)+1)^2).
  std::vector<std::vector<double>> r;
  for (std::size_t alpha = 0; alpha < prov->h.size(); ++alpha) {
    const auto& h = prov->h[alpha];
    const double m = static_cast<double>(h.size());
    const double scale = m * (std::sqrt(m) + 1.0) * (std::sqrt(m) + 1.0);
    std::vector<double> row;
    row.reserve(h.size());
    for (const auto& hk : h) row.push_back(hk.hs_inner(rho.hermitian()) / scale);
    r.push_back(std::move(row));
  }
  return r;
}

ComplexMatrix reconstruct_state(const Geam& geam, const std::vector<std::vector<double>>& coefficients) {
  const auto& prov = geam.h_provenance();
  if (!prov) throw UnsupportedError("GEAM carries no H-operator provenance");
  if (coefficients.size() != prov->h.size()) throw RejectionError("coefficient table has wrong frame count");
  const int d = geam.dim();
  ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  for (std::size_t alpha = 0; alpha < coefficients.size(); ++alpha) {
    if (coefficients[alpha].size() != prov->h[alpha].size()) {
      throw RejectionError("coefficient row " + std::to_string(alpha) + " has wrong length");
    }
    for (std::size_t k = 0; k < coefficients[alpha].size(); ++k) {
      rho += coefficients[alpha][k] * prov->h[alpha][k].matrix();
    }
  }
  return rho;
}

}  // namespace geamkit
