#pragma once

#include "eplab/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace eplab {

/// Matrix file format: {"rows": m, "cols": n, "data": [[[re, im], ...] per row]}.
/// Parsing is strict: unknown keys, shape mismatches and non-finite numbers
/// are rejected with InvalidInput.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& m, const std::string& path);

}  // namespace eplab
