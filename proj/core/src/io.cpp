#include "geamkit/io.hpp"

#include <fstream>
#include <sstream>

#include "geamkit/error.hpp"

namespace geamkit::io {

namespace {

// Runs `fn`, translating JSON library exceptions into IoError.
template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed ") + what + ": " + e.what());
  }
}

json real_matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw IoError("real matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw IoError("ragged real matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

std::vector<int> dims_from_json(const json& j) {
  auto dims = j.get<std::vector<int>>();
  if (dims.empty() || dims.size() > 2) throw IoError("dims must list one or two dimensions");
  return dims;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      // + 0.0 folds negative zero so the text form is canonical.
      row.push_back(json::array({m(i, j).real() + 0.0, m(i, j).imag() + 0.0}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.empty()) throw IoError("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = j.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw IoError("ragged matrix rows");
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& entry = row.at(static_cast<std::size_t>(c));
        if (entry.is_number()) {
          m(r, c) = Complex(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2) {
          m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        } else {
          throw IoError("matrix entries must be [re, im] pairs");
        }
      }
    }
    return m;
  });
}

json basis_to_json(const OperatorBasis& basis) {
  json ops = json::array();
  for (const auto& g : basis.elements()) ops.push_back(matrix_to_json(g.matrix()));
  return {{"dim", basis.dim()}, {"elements", std::move(ops)}};
}

OperatorBasis basis_from_json(const json& j) {
  return guarded("operator basis", [&] {
    std::vector<HermitianMatrix> elements;
    for (const auto& e : j.at("elements")) elements.emplace_back(matrix_from_json(e));
    return OperatorBasis(std::move(elements));
  });
}

json certificate_to_json(const DesignCertificate& cert) {
  return {{"is_conical", cert.is_conical}, {"s_constant", cert.s_constant}, {"S", cert.S},
          {"kappa_plus", cert.kappa_plus}, {"kappa_minus", cert.kappa_minus},
          {"residual", cert.residual},     {"mu", cert.mu}};
}

json geam_to_json(const Geam& geam, double tolerance) {
  json frames = json::array();
  json a = json::array();
  json b = json::array();
  json c = json::array();
  for (const auto& fr : geam.frames()) {
    json ops = json::array();
    for (const auto& p : fr.operators) ops.push_back(matrix_to_json(p.matrix()));
    frames.push_back({{"gamma", fr.gamma}, {"size", fr.size}, {"sign", fr.sign}, {"ops", std::move(ops)}});
    a.push_back(fr.a);
    b.push_back(fr.b);
    c.push_back(fr.c);
  }
  json params = {{"a", a}, {"b", b}, {"c", c}, {"f", geam.f()}};
  params["S"] = geam.design_constant() ? json(*geam.design_constant()) : json(nullptr);
  return {{"dim", geam.dim()},
          {"frames", std::move(frames)},
          {"params", std::move(params)},
          {"certificate", certificate_to_json(check_conical_design(geam, tolerance))},
          {"hash", geam_hash(geam)}};
}

Geam geam_from_json(const json& j, double tolerance) {
  std::vector<std::vector<HermitianMatrix>> frames;
  ValidateOptions opts;
  opts.tolerance = tolerance;
  guarded("GEAM", [&] {
    const int dim = j.at("dim").get<int>();
    std::vector<int> signs;
    for (const auto& fr : j.at("frames")) {
      std::vector<HermitianMatrix> ops;
      for (const auto& op : fr.at("ops")) {
        ComplexMatrix m = matrix_from_json(op);
        if (m.rows() != dim || m.cols() != dim) throw IoError("GEAM effect does not match dim");
        ops.emplace_back(m, 1e-10);
      }
      frames.push_back(std::move(ops));
      const int sign = fr.value("sign", 0);
      signs.push_back(sign);
    }
    opts.signs = std::move(signs);
    return 0;
  });
  return validate_geam(frames, opts);
}

json state_to_json(const DensityMatrix& rho) {
  return {{"dims", rho.dims()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const json& j, double tolerance) {
  ComplexMatrix m;
  std::vector<int> dims;
  guarded("state", [&] {
    m = matrix_from_json(j.at("matrix"));
    if (j.contains("dims")) dims = dims_from_json(j.at("dims"));
    return 0;
  });
  return DensityMatrix(m, std::move(dims), tolerance);
}

json rotation_spec_to_json(const RotationSpec& spec) {
  switch (spec.kind) {
    case RotationSpec::Kind::Identity:
      return {{"kind", "identity"}};
    case RotationSpec::Kind::Permutation:
      return {{"kind", "permutation"}, {"permutation", spec.permutation}};
    case RotationSpec::Kind::Exponential:
      return {{"kind", "exponential"}, {"generator", real_matrix_to_json(spec.generator)}};
  }
  return {};
}

RotationSpec rotation_spec_from_json(const json& j) {
  return guarded("rotation spec", [&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "identity") return RotationSpec::identity();
    if (kind == "permutation") return RotationSpec::permutation_of(j.at("permutation").get<std::vector<int>>());
    if (kind == "exponential") return RotationSpec::exponential_of(real_matrix_from_json(j.at("generator")));
    throw IoError("unknown rotation kind '" + kind + "'");
  });
}

json witness_to_json(const Witness& w) {
  const auto& p = w.provenance();
  json rotations = json::array();
  for (const auto& r : p.rotations) rotations.push_back(rotation_spec_to_json(r));
  return {{"dims", {w.dims().a, w.dims().b}},
          {"matrix", matrix_to_json(w.matrix())},
          {"provenance",
           {{"geam_hash", p.geam_hash}, {"L", p.negative}, {"K", p.total}, {"A", p.A},
            {"rotations", std::move(rotations)}}}};
}

Witness witness_from_json(const json& j) {
  ComplexMatrix m;
  std::vector<int> dims;
  WitnessProvenance prov;
  guarded("witness", [&] {
    m = matrix_from_json(j.at("matrix"));
    dims = dims_from_json(j.at("dims"));
    if (dims.size() != 2) throw IoError("witness dims must be [dA, dB]");
    if (j.contains("provenance")) {
      const auto& p = j.at("provenance");
      prov.geam_hash = p.value("geam_hash", std::string{});
      prov.negative = p.value("L", 0);
      prov.total = p.value("K", 0);
      prov.A = p.value("A", 0.0);
      if (p.contains("rotations"))
        for (const auto& r : p.at("rotations")) prov.rotations.push_back(rotation_spec_from_json(r));
    }
    return 0;
  });
  return Witness(HermitianMatrix(m, 1e-10), {dims[0], dims[1]}, std::move(prov));
}

json detection_to_json(const Detection& d) {
  return {{"value", d.value}, {"verdict", to_string(d.verdict)}};
}

json report_to_json(const CriterionReport& r) {
  return {{"criterion", to_string(r.criterion)}, {"lhs", r.lhs},         {"bound", r.bound},
          {"violated", r.violated},              {"tolerance", r.tolerance}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << dump(j);
  if (!out) throw IoError("failed writing " + path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace geamkit::io
