#include "dmcalc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dmcalc {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("json: parse error");
  return j;
}

double finite_number(const json& v) {
  if (!v.is_number()) throw InvalidInput("json: expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput("json: non-finite number");
  return x;
}

} // namespace

Matrix parse_matrix_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("dim") || !j.contains("rows"))
    throw InvalidInput("matrix json: need \"dim\" and \"rows\"");
  const int n = j["dim"].get<int>();
  if (n <= 0 || !j["rows"].is_array() || static_cast<int>(j["rows"].size()) != n)
    throw InvalidInput("matrix json: bad row count");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = j["rows"][static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw InvalidInput("matrix json: bad row length");
    for (int c = 0; c < n; ++c) m(r, c) = finite_number(row[static_cast<size_t>(c)]);
  }
  return m;
}

Vector parse_vector_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("dim") || !j.contains("entries"))
    throw InvalidInput("vector json: need \"dim\" and \"entries\"");
  const int n = j["dim"].get<int>();
  if (n <= 0 || !j["entries"].is_array() || static_cast<int>(j["entries"].size()) != n)
    throw InvalidInput("vector json: bad entry count");
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = finite_number(j["entries"][static_cast<size_t>(i)]);
  return v;
}

OrthonormalBasis parse_basis_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("ambient") || !j.contains("k") || !j.contains("cols"))
    throw InvalidInput("basis json: need \"ambient\", \"k\" and \"cols\"");
  const int n = j["ambient"].get<int>();
  const int k = j["k"].get<int>();
  if (n <= 0 || k < 0 || k > n || static_cast<int>(j["cols"].size()) != k)
    throw InvalidInput("basis json: bad shape");
  Matrix cols(n, k);
  for (int c = 0; c < k; ++c) {
    const json& col = j["cols"][static_cast<size_t>(c)];
    if (!col.is_array() || static_cast<int>(col.size()) != n)
      throw InvalidInput("basis json: bad column length");
    for (int r = 0; r < n; ++r) cols(r, c) = finite_number(col[static_cast<size_t>(r)]);
  }
  return OrthonormalBasis(n, cols);
}

std::optional<std::pair<int, int>> parse_dims_json(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("dims")) return std::nullopt;
  const json& d = j["dims"];
  if (!d.is_array() || d.size() != 2) throw InvalidInput("json: bad \"dims\"");
  return std::make_pair(d[0].get<int>(), d[1].get<int>());
}

namespace {

json matrix_payload(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

} // namespace

std::string matrix_to_json(const Matrix& m) {
  return matrix_payload(m).dump();
}

std::string joint_to_json(const Matrix& m, int na, int nb) {
  json j = matrix_payload(m);
  j["dims"] = json::array({na, nb});
  return j.dump();
}

std::string vector_to_json(const Vector& v) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(v(i));
  return json{{"dim", v.size()}, {"entries", std::move(entries)}}.dump();
}

std::string basis_to_json(const OrthonormalBasis& b) {
  json cols = json::array();
  for (int c = 0; c < b.k(); ++c) {
    json col = json::array();
    for (int r = 0; r < b.ambient(); ++r) col.push_back(b.columns()(r, c));
    cols.push_back(std::move(col));
  }
  return json{{"ambient", b.ambient()}, {"k", b.k()}, {"cols", std::move(cols)}}.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix load_matrix(const std::string& path) {
  return parse_matrix_json(read_file(path));
}

Vector load_vector(const std::string& path) {
  return parse_vector_json(read_file(path));
}

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

} // namespace dmcalc
