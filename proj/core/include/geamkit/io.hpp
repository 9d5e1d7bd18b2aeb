#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "geamkit/criteria.hpp"
#include "geamkit/geam.hpp"
#include "geamkit/maps_witness.hpp"
#include "geamkit/operator_basis.hpp"
#include "geamkit/states.hpp"

// JSON encoding: complex entries are [re, im]; matrices are row-major nested
// arrays; reals use shortest round-trip formatting.
namespace geamkit::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json basis_to_json(const OperatorBasis& basis);
OperatorBasis basis_from_json(const json& j);

/// {dim, frames: [{gamma, size, sign, ops}], params: {a, b, c, f, S}, certificate}
json geam_to_json(const Geam& geam, double tolerance = kStructuralTolerance);
/// Re-validates the operators; derived fields in the document are ignored.
Geam geam_from_json(const json& j, double tolerance = kStructuralTolerance);

json certificate_to_json(const DesignCertificate& cert);

/// {dims: [dA, dB] or [d], matrix}
json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j, double tolerance = kStateTolerance);

json rotation_spec_to_json(const RotationSpec& spec);
RotationSpec rotation_spec_from_json(const json& j);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json detection_to_json(const Detection& d);
json report_to_json(const CriterionReport& r);

/// Throws IoError on missing file or malformed JSON.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Canonical text form: 2-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace geamkit::io
