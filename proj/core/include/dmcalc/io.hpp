#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dmcalc/tensor.hpp"

namespace dmcalc {

// JSON formats used across the library and the CLI:
//   matrix: {"dim": n, "rows": [[...], ...]}          row-major, finite doubles
//   vector: {"dim": n, "entries": [...]}
//   basis:  {"ambient": n, "k": k, "cols": [[...], ...]}   list of k columns
//   joint:  matrix format plus "dims": [nA, nB]

Matrix parse_matrix_json(const std::string& text);
Vector parse_vector_json(const std::string& text);
OrthonormalBasis parse_basis_json(const std::string& text);
/// Returns the factor dimensions when the payload carries a "dims" field.
std::optional<std::pair<int, int>> parse_dims_json(const std::string& text);

std::string matrix_to_json(const Matrix& m);
std::string joint_to_json(const Matrix& m, int na, int nb);
std::string vector_to_json(const Vector& v);
std::string basis_to_json(const OrthonormalBasis& b);

Matrix load_matrix(const std::string& path);
Vector load_vector(const std::string& path);
std::string read_file(const std::string& path);

/// 17-significant-digit decimal rendering used for all CSV output.
std::string format_full(double x);

} // namespace dmcalc
