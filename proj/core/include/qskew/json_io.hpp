#pragma once

// JSON exchange format for matrices and states:
//   {"dim": d, "re": [[...]], "im": [[...]]}
// with row-major d x d real arrays. Writers emit 17 significant digits.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qskew/qmat.hpp"

namespace qskew {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// Kraus sets serialize as an array of matrix objects.
nlohmann::json matrices_to_json(const std::vector<Matrix>& ms);
std::vector<Matrix> matrices_from_json(const nlohmann::json& j);

Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

/// Serializes any json with doubles at full precision (nlohmann already
/// round-trips doubles; this is the project-wide dump wrapper).
std::string dump_json(const nlohmann::json& j);

/// FNV-1a 64-bit hash of a file's bytes, as a hex string; used to tag
/// protocol reports with their input identities.
std::string file_fnv1a64(const std::string& path);

}  // namespace qskew
