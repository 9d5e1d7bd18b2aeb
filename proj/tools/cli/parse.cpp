#include "cli/parse.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "geamkit/error.hpp"
#include "geamkit/random.hpp"

namespace geamkit::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long integer = 0;
  auto [iend, iec] = std::from_chars(s.data(), s.data() + s.size(), integer);
  if (iec == std::errc{} && iend == s.data() + s.size()) return static_cast<double>(integer);
  double value = 0.0;
  auto [dend, dec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (dec != std::errc{} || dend != s.data() + s.size() || s.empty()) {
    throw RejectionError("cannot parse number '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

double parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_number(text);
  const double num = parse_number(text.substr(0, slash));
  const double den = parse_number(text.substr(slash + 1));
  if (den == 0.0) throw RejectionError("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    int v = 0;
    auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || end != part.data() + part.size() || part.empty()) {
      throw RejectionError("cannot parse integer '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_signs(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    if (part == "+" || part == "1" || part == "+1") {
      out.push_back(1);
    } else if (part == "-" || part == "-1") {
      out.push_back(-1);
    } else {
      throw RejectionError("sign must be '+' or '-', got '" + std::string(part) + "'");
    }
  }
  return out;
}

std::vector<double> parse_gamma(std::string_view text, int frames) {
  if (trim(text) == "uniform") return uniform_weights(frames);
  return parse_real_list(text);
}

RotationSpec parse_rotation(std::string_view text, int size) {
  text = trim(text);
  if (text == "identity" || text == "id") return RotationSpec::identity();
  if (text.starts_with("perm:")) return RotationSpec::permutation_of(parse_int_list(text.substr(5)));
  if (text.starts_with("exp:")) {
    const auto seed_text = text.substr(4);
    std::uint64_t seed = 0;
    auto [end, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (ec != std::errc{} || end != seed_text.data() + seed_text.size()) {
      throw RejectionError("exp rotation needs an integer seed, got '" + std::string(seed_text) + "'");
    }
    SplitMix64 rng(seed);
    return RotationSpec::random_exponential(size, rng);
  }
  throw RejectionError("unknown rotation spec '" + std::string(text) + "'");
}

double resolve_tolerance(const std::optional<std::string>& flag, double fallback) {
  double tol = fallback;
  if (flag) {
    tol = parse_rational(*flag);
  } else if (const char* env = std::getenv("GEAM_TOL"); env != nullptr && *env != '\0') {
    tol = parse_rational(env);
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw RejectionError("tolerance must be positive, got " + std::to_string(tol));
  }
  return tol;
}

}  // namespace geamkit::cli
