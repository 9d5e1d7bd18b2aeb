#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/parse.hpp"
#include "geamkit/coincidence.hpp"
#include "geamkit/criteria.hpp"
#include "geamkit/error.hpp"
#include "geamkit/geam.hpp"
#include "geamkit/io.hpp"
#include "geamkit/maps_witness.hpp"
#include "geamkit/operator_basis.hpp"
#include "geamkit/states.hpp"

namespace geamkit::cli {

using io::json;

namespace {

void emit(const json& j, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << io::dump(j);
  } else {
    io::write_json_file(output, j);
  }
}

// ---- geam ------------------------------------------------------------------

struct GeamArgs {
  int dim = 0;
  std::string sizes;
  std::string gamma = "uniform";
  std::string s;
  std::string signs;
  std::string input;
  std::string output;
  std::optional<std::string> tol;
};

BasisPartition partition_from(const GeamArgs& a) {
  return partition_basis(gell_mann_basis(a.dim), parse_int_list(a.sizes));
}

void geam_build(const GeamArgs& a, std::ostream& out) {
  const double tol = resolve_tolerance(a.tol, kStructuralTolerance);
  const auto partition = partition_from(a);
  const auto gamma = parse_gamma(a.gamma, partition.frame_count());
  const auto signs = a.signs.empty() ? std::vector<int>{} : parse_signs(a.signs);
  const double s = (a.s == "max") ? max_feasible_S(partition, gamma, signs) : parse_rational(a.s);
  const Geam g = build_geam(partition, gamma, s, signs, tol);
  emit(io::geam_to_json(g, tol), a.output, out);
}

void geam_validate(const GeamArgs& a, std::ostream& out) {
  const double tol = resolve_tolerance(a.tol, kStructuralTolerance);
  const Geam g = io::geam_from_json(io::read_json_file(a.input), tol);
  emit(io::geam_to_json(g, tol), a.output, out);
}

void geam_check_design(const GeamArgs& a, std::ostream& out) {
  const double tol = resolve_tolerance(a.tol, kStructuralTolerance);
  const Geam g = io::geam_from_json(io::read_json_file(a.input), tol);
  emit({{"certificate", io::certificate_to_json(check_conical_design(g, tol))}, {"hash", geam_hash(g)}},
       a.output, out);
}

void geam_max_s(const GeamArgs& a, std::ostream& out) {
  const auto partition = partition_from(a);
  const auto gamma = parse_gamma(a.gamma, partition.frame_count());
  const auto signs = a.signs.empty() ? std::vector<int>{} : parse_signs(a.signs);
  const auto caps = design_caps(partition.dim(), partition.group_sizes(), gamma);
  emit({{"S", max_feasible_S(partition, gamma, signs)}, {"cap", *std::min_element(caps.begin(), caps.end())}},
       a.output, out);
}

void geam_basis(const GeamArgs& a, std::ostream& out) {
  emit(io::basis_to_json(gell_mann_basis(a.dim)), a.output, out);
}

// ---- state -----------------------------------------------------------------

struct StateArgs {
  std::string kind;
  int dim = 0;
  std::string dims;
  std::string p = "0";
  bool single = false;
  int rank = 0;
  std::uint64_t seed = 42;
  int terms = 3;
  int count = 1;
  std::string output;
};

StateKind kind_from(const std::string& s) {
  if (s == "max-entangled") return StateKind::MaxEntangled;
  if (s == "isotropic") return StateKind::Isotropic;
  if (s == "max-mixed") return StateKind::MaxMixed;
  throw RejectionError("unknown state kind '" + s + "'");
}

void state_canonical(const StateArgs& a, std::ostream& out) {
  emit(io::state_to_json(canonical_state(kind_from(a.kind), a.dim, parse_rational(a.p), !a.single)),
       a.output, out);
}

void state_random(const StateArgs& a, std::ostream& out) {
  if (!a.dims.empty()) {
    const auto dims = parse_int_list(a.dims);
    if (dims.size() != 2) throw RejectionError("--dims must be dA,dB");
    const int rank = a.rank > 0 ? a.rank : dims[0] * dims[1];
    emit(io::state_to_json(random_state(BipartiteDims{dims[0], dims[1]}, rank, a.seed)), a.output, out);
    return;
  }
  const int rank = a.rank > 0 ? a.rank : a.dim;
  emit(io::state_to_json(random_state(a.dim, rank, a.seed)), a.output, out);
}

void state_separable(const StateArgs& a, std::ostream& out) {
  const auto dims = parse_int_list(a.dims);
  if (dims.size() != 2) throw RejectionError("--dims must be dA,dB");
  SplitMix64 rng(a.seed);
  json states = json::array();
  for (int i = 0; i < a.count; ++i) {
    const auto mixture = random_separable_mixture({dims[0], dims[1]}, a.terms, rng);
    states.push_back(io::state_to_json(mix_separable(mixture)));
  }
  emit(states, a.output, out);
}

// ---- witness ---------------------------------------------------------------

struct WitnessArgs {
  std::string geam;
  int negative = 0;
  int total = 0;
  std::vector<std::string> rotations;
  std::vector<std::string> detect;
  bool verify = false;
  std::uint64_t seed = 42;
  int restarts = 32;
  int samples = 500;
  std::string output;
  std::optional<std::string> tol;
};

void witness(const WitnessArgs& a, std::ostream& out) {
  const double tol = resolve_tolerance(a.tol, 1e-10);
  Geam g = io::geam_from_json(io::read_json_file(a.geam), std::max(tol, kStructuralTolerance));
  if (!a.rotations.empty() && static_cast<int>(a.rotations.size()) != a.total) {
    throw RejectionError("give either no --rotation or exactly K = " + std::to_string(a.total));
  }
  if (a.total < 1 || a.total > g.frame_count()) {
    throw RejectionError("K = " + std::to_string(a.total) + " outside [1, " + std::to_string(g.frame_count()) + "]");
  }
  std::vector<RotationMatrix> rotations;
  for (int alpha = 0; alpha < a.total; ++alpha) {
    const int m = g.frame(alpha).size;
    const RotationSpec spec = a.rotations.empty() ? RotationSpec::identity()
                                                  : parse_rotation(a.rotations[static_cast<std::size_t>(alpha)], m);
    rotations.push_back(make_rotation(m, spec));
  }
  const int d = g.dim();
  const PositiveMapSpec spec = build_map(std::move(g), a.negative, a.total, std::move(rotations));
  const Witness w = choi_witness(spec);
  json doc = io::witness_to_json(w);

  if (!a.detect.empty()) {
    json records = json::array();
    for (const auto& path : a.detect) {
      const DensityMatrix rho = io::state_from_json(io::read_json_file(path));
      records.push_back(io::detection_to_json(detect(w, rho, tol)));
    }
    doc["detections"] = std::move(records);
  }

  if (a.verify) {
    SplitMix64 rng(a.seed);
    double worst = 0.0;
    for (int i = 0; i < a.samples; ++i) {
      const ComplexVector v = random_unit_vector(d, rng);
      worst = std::max(worst, mehta_ratio(spec, v * v.adjoint()));
    }
    SeeSawOptions opt;
    opt.restarts = a.restarts;
    opt.seed = a.seed;
    const auto minimum = min_product_expectation(w, opt);
    doc["verification"] = {{"mehta_max_ratio", worst},
                           {"mehta_bound", 1.0 / (d - 1)},
                           {"mehta_samples", a.samples},
                           {"mehta_ok", worst <= 1.0 / (d - 1) + 1e-9},
                           {"min_product_expectation", minimum.value},
                           {"block_positive", minimum.value >= -1e-7},
                           {"restarts", a.restarts},
                           {"seed", a.seed}};
  }
  emit(doc, a.output, out);
}

// ---- criteria --------------------------------------------------------------

struct CriteriaArgs {
  std::string geam_a;
  std::string geam_b;
  std::string states;
  std::string output;
  std::optional<std::string> tol;
};

void criteria(const CriteriaArgs& a, std::ostream& out) {
  const double tol = resolve_tolerance(a.tol, kCriterionTolerance);
  const Geam ga = io::geam_from_json(io::read_json_file(a.geam_a));
  const Geam gb = a.geam_b.empty() ? ga : io::geam_from_json(io::read_json_file(a.geam_b));
  const json doc = io::read_json_file(a.states);
  std::vector<DensityMatrix> states;
  if (doc.is_array()) {
    for (const auto& s : doc) states.push_back(io::state_from_json(s));
  } else {
    states.push_back(io::state_from_json(doc));
  }

  json results = json::array();
  int v_trace = 0;
  int v_norm = 0;
  int v_enh = 0;
  int errors = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    json reports = json::array();
    auto attempt = [&](Criterion id, int& counter, const std::function<CriterionReport()>& fn) {
      try {
        const auto r = fn();
        counter += r.violated ? 1 : 0;
        reports.push_back(io::report_to_json(r));
      } catch (const Error& e) {
        ++errors;
        reports.push_back({{"criterion", to_string(id)}, {"error", e.what()}});
      }
    };
    const CorrelationMatrix p = correlation_matrix(ga, gb, states[i]);
    attempt(Criterion::Trace, v_trace, [&] { return trace_criterion(p, ga, gb, tol); });
    attempt(Criterion::TraceNorm, v_norm, [&] { return trace_norm_criterion(p, ga, gb, tol); });
    attempt(Criterion::Enhanced, v_enh, [&] { return enhanced_criterion(ga, gb, states[i], tol); });
    results.push_back({{"state", i}, {"reports", std::move(reports)}});
  }
  json summary = {{"states", states.size()},
                  {"errors", errors},
                  {"violations", {{"TRACE", v_trace}, {"TRACE_NORM", v_norm}, {"ENHANCED", v_enh}}}};
  emit({{"results", std::move(results)}, {"summary", std::move(summary)}}, a.output, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized equiangular measurements: witnesses and separability criteria", "geamkit"};
  app.require_subcommand(1);

  GeamArgs ga;
  StateArgs sa;
  WitnessArgs wa;
  CriteriaArgs ca;
  std::function<void()> action;

  auto* geam = app.add_subcommand("geam", "Build, validate, and certify GEAMs");
  geam->require_subcommand(1);
  auto add_construction = [&](CLI::App* sub) {
    sub->add_option("-d,--dim", ga.dim, "Hilbert space dimension")->required();
    sub->add_option("--sizes", ga.sizes, "Frame sizes M_1,...,M_N")->required();
    sub->add_option("--gamma", ga.gamma, "'uniform' or comma-separated weights");
    sub->add_option("--signs", ga.signs, "Per-frame tau signs, e.g. +,-,+");
  };
  auto* build = geam->add_subcommand("build", "Construct a GEAM from the Gell-Mann basis");
  add_construction(build);
  build->add_option("--s", ga.s, "Design constant S (rational like 1/9, or 'max')")->required();
  build->add_option("-o,--output", ga.output);
  build->add_option("--tol", ga.tol);
  build->callback([&] { action = [&] { geam_build(ga, out); }; });

  auto* validate = geam->add_subcommand("validate", "Re-validate a GEAM file");
  validate->add_option("input", ga.input)->required();
  validate->add_option("-o,--output", ga.output);
  validate->add_option("--tol", ga.tol);
  validate->callback([&] { action = [&] { geam_validate(ga, out); }; });

  auto* check = geam->add_subcommand("check-design", "Conical 2-design certificate");
  check->add_option("input", ga.input)->required();
  check->add_option("-o,--output", ga.output);
  check->add_option("--tol", ga.tol);
  check->callback([&] { action = [&] { geam_check_design(ga, out); }; });

  auto* maxs = geam->add_subcommand("max-s", "Largest PSD-feasible design constant");
  add_construction(maxs);
  maxs->add_option("-o,--output", ga.output);
  maxs->callback([&] { action = [&] { geam_max_s(ga, out); }; });

  auto* basis = geam->add_subcommand("basis", "Export the generalized Gell-Mann basis");
  basis->add_option("-d,--dim", ga.dim)->required();
  basis->add_option("-o,--output", ga.output);
  basis->callback([&] { action = [&] { geam_basis(ga, out); }; });

  auto* state = app.add_subcommand("state", "Generate state files");
  state->require_subcommand(1);
  auto* canon = state->add_subcommand("canonical", "P+, isotropic, or maximally mixed state");
  canon->add_option("--kind", sa.kind, "max-entangled | isotropic | max-mixed")->required();
  canon->add_option("-d,--dim", sa.dim)->required();
  canon->add_option("--p", sa.p, "Isotropic mixing parameter");
  canon->add_flag("--single", sa.single, "Maximally mixed state on one system");
  canon->add_option("-o,--output", sa.output);
  canon->callback([&] { action = [&] { state_canonical(sa, out); }; });

  auto* rnd = state->add_subcommand("random", "Ginibre random state");
  rnd->add_option("-d,--dim", sa.dim);
  rnd->add_option("--dims", sa.dims, "Bipartite dims dA,dB");
  rnd->add_option("--rank", sa.rank);
  rnd->add_option("--seed", sa.seed);
  rnd->add_option("-o,--output", sa.output);
  rnd->callback([&] { action = [&] { state_random(sa, out); }; });

  auto* sep = state->add_subcommand("separable", "Array of random separable mixtures");
  sep->add_option("--dims", sa.dims)->required();
  sep->add_option("--terms", sa.terms);
  sep->add_option("--count", sa.count);
  sep->add_option("--seed", sa.seed);
  sep->add_option("-o,--output", sa.output);
  sep->callback([&] { action = [&] { state_separable(sa, out); }; });

  auto* wit = app.add_subcommand("witness", "Construct the Choi witness of a positive map");
  wit->add_option("--geam", wa.geam)->required();
  wit->add_option("--L", wa.negative, "Number of subtracted frames")->required();
  wit->add_option("--K", wa.total, "Total number of frames used")->required();
  wit->add_option("--rotation", wa.rotations, "Per-frame rotation: identity | perm:i,j,... | exp:SEED");
  wit->add_option("--detect", wa.detect, "State file to test");
  wit->add_flag("--verify", wa.verify, "Run Mehta sampling and see-saw block-positivity check");
  wit->add_option("--seed", wa.seed);
  wit->add_option("--restarts", wa.restarts);
  wit->add_option("--samples", wa.samples);
  wit->add_option("-o,--output", wa.output);
  wit->add_option("--tol", wa.tol);
  wit->callback([&] { action = [&] { witness(wa, out); }; });

  auto* crit = app.add_subcommand("criteria", "Correlation-matrix separability criteria");
  crit->add_option("--geam-a", ca.geam_a)->required();
  crit->add_option("--geam-b", ca.geam_b, "Defaults to --geam-a");
  crit->add_option("--states", ca.states, "State object or array of states")->required();
  crit->add_option("-o,--output", ca.output);
  crit->add_option("--tol", ca.tol);
  crit->callback([&] { action = [&] { criteria(ca, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kDomainError;
  }

  try {
    action();
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "validation failed:\n";
    for (const auto& v : e.violations()) err << "  " << v.describe() << "\n";
    return kDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"geamkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geamkit::cli
