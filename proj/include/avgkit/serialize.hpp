#pragma once

#include <string>

#include <json.hpp>

#include "avgkit/averagedness.hpp"
#include "avgkit/matrix.hpp"
#include "avgkit/subspace.hpp"
#include "avgkit/tolerance.hpp"

// JSON encodings shared by the CLI and downstream tools.
//
//   matrix:   {"rows": r, "cols": c, "entries": [[...], ...]}
//   subspace: {"ambient_dim": n, "spanning_vectors": [[...], ...]}
//
// Decoders throw ParseError on malformed documents.

namespace avgkit {

using nlohmann::json;

json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const json& j);

/// Emits the orthonormal basis columns as spanning vectors.
json subspace_to_json(const Subspace& s);
/// Spanning vectors need not be orthonormal; they are orthonormalized here.
Subspace subspace_from_json(const json& j, const ToleranceConfig& cfg = {});

void to_json(json& j, const ToleranceConfig& cfg);
void from_json(const json& j, ToleranceConfig& cfg);

void to_json(json& j, const ModulusCertificate& cert);
void from_json(const json& j, ModulusCertificate& cert);

void to_json(json& j, const ModulusReport& report);
void from_json(const json& j, ModulusReport& report);

void to_json(json& j, const AngleReport& report);
void from_json(const json& j, AngleReport& report);

/// Parses inline JSON when `source` starts with '{' or '[', reads stdin for
/// "-", and otherwise treats it as a file path.
json load_json_source(const std::string& source);

/// A document produced by `avgkit random` wraps its payload in
/// results.instance; this returns that payload, or `doc` itself.
const json& unwrap_instance(const json& doc);

}  // namespace avgkit
