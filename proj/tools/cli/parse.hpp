#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geamkit/maps_witness.hpp"

namespace geamkit::cli {

/// "1/9", "-2", "0.25", "3.5/7". Numerator and denominator are parsed
/// separately so the only rounding is the final division.
double parse_rational(std::string_view text);

/// Comma-separated list of rationals.
std::vector<double> parse_real_list(std::string_view text);

std::vector<int> parse_int_list(std::string_view text);

/// "+,-,+" or "1,-1,1".
std::vector<int> parse_signs(std::string_view text);

/// "uniform" or a list of rationals; `frames` fixes the uniform length.
std::vector<double> parse_gamma(std::string_view text, int frames);

/// "identity", "perm:1,2,0", or "exp:SEED" (random antisymmetric generator).
RotationSpec parse_rotation(std::string_view text, int size);

/// Flag value if given, else the GEAM_TOL environment variable, else
/// `fallback`. Rejects non-positive values.
double resolve_tolerance(const std::optional<std::string>& flag, double fallback);

}  // namespace geamkit::cli
