#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include <json.hpp>

#include "tschur/block.hpp"
#include "tschur/cmatrix.hpp"
#include "tschur/cpmaps.hpp"

// JSON file format shared by the command-line tool and the test fixtures.
//
// Every file is a single JSON object with a "kind" field:
//
//   {"kind": "matrix", "rows": R, "cols": C, "data": [[re, im], ...]}
//   {"kind": "block",  "n": N, "m": M,       "data": [[re, im], ...]}
//   {"kind": "map",    "n": N, "d": D,       "data": [[re, im], ...]}
//
// "data" lists entries row-major as [real, imaginary] pairs. A block file
// stores the flattened (N*M x N*M) matrix with composite index
// (outer, inner) -> outer*M + inner. A map file stores the flattened Choi
// matrix of the map, an (N*D x N*D) matrix, from which the map's action on
// all matrix units is recovered. Writing then reading any file reproduces
// the in-memory object bit for bit (doubles are emitted with shortest
// round-trip precision).

namespace tschur::io {

using json = nlohmann::ordered_json;

// Largest accepted side length for any stored matrix. Generous for this
// library's dimensions while keeping malformed or hostile inputs from
// requesting absurd allocations.
inline constexpr std::size_t kMaxSide = 4096;

using Payload = std::variant<CMatrix, BlockMatrix, MatLinearMap>;

namespace detail {

inline json entries_to_json(const CMatrix& a, const std::string& context) {
  json data = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex v = a(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error(context + ": non-finite entry at (" +
                                 std::to_string(i) + ", " + std::to_string(j) + ")");
      data.push_back(json::array({v.real(), v.imag()}));
    }
  return data;
}

inline std::size_t get_side(const json& j, const char* key, const std::string& context) {
  if (!j.contains(key))
    throw std::runtime_error(context + ": missing \"" + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw std::runtime_error(context + ": \"" + key + "\" must be an integer");
  const std::int64_t n = v.get<std::int64_t>();
  if (n < 1 || n > static_cast<std::int64_t>(kMaxSide))
    throw std::runtime_error(context + ": \"" + key + "\" out of range [1, " +
                             std::to_string(kMaxSide) + "]");
  return static_cast<std::size_t>(n);
}

inline CMatrix entries_from_json(const json& j, std::size_t rows, std::size_t cols,
                                 const std::string& context) {
  if (!j.contains("data") || !j.at("data").is_array())
    throw std::runtime_error(context + ": missing \"data\" array");
  const json& data = j.at("data");
  if (data.size() != rows * cols)
    throw std::runtime_error(context + ": \"data\" has " + std::to_string(data.size()) +
                             " entries, expected " + std::to_string(rows * cols));
  CMatrix out(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j2 = 0; j2 < cols; ++j2, ++k) {
      const json& e = data[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw std::runtime_error(context + ": entry " + std::to_string(k) +
                                 " is not a [re, im] number pair");
      out(i, j2) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return out;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text << '\n';
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

inline json to_json(const CMatrix& a) {
  json j;
  j["kind"] = "matrix";
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  j["data"] = detail::entries_to_json(a, "matrix");
  return j;
}

inline json to_json(const BlockMatrix& b) {
  json j;
  j["kind"] = "block";
  j["n"] = b.outer_size();
  j["m"] = b.block_dim();
  j["data"] = detail::entries_to_json(flatten(b), "block");
  return j;
}

inline json to_json(const MatLinearMap& phi) {
  json j;
  j["kind"] = "map";
  j["n"] = phi.n();
  j["d"] = phi.d();
  j["data"] = detail::entries_to_json(flatten(choi(phi)), "map");
  return j;
}

template <typename T>
inline void write_file(const std::string& path, const T& obj) {
  detail::write_text(path, to_json(obj).dump());
}

// Parses a matrix file of any kind. Malformed content of every sort --
// invalid JSON, wrong kind, bad dimensions, missing or ragged data --
// surfaces as std::runtime_error carrying the file path.
inline Payload read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::runtime_error(path + ": expected an object with a \"kind\" string");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "matrix") {
    const std::size_t rows = detail::get_side(j, "rows", path);
    const std::size_t cols = detail::get_side(j, "cols", path);
    return detail::entries_from_json(j, rows, cols, path);
  }
  if (kind == "block") {
    const std::size_t n = detail::get_side(j, "n", path);
    const std::size_t m = detail::get_side(j, "m", path);
    if (n * m > kMaxSide)
      throw std::runtime_error(path + ": flattened side n*m exceeds " +
                               std::to_string(kMaxSide));
    return unflatten(detail::entries_from_json(j, n * m, n * m, path), n, m);
  }
  if (kind == "map") {
    const std::size_t n = detail::get_side(j, "n", path);
    const std::size_t d = detail::get_side(j, "d", path);
    if (n * d > kMaxSide)
      throw std::runtime_error(path + ": flattened side n*d exceeds " +
                               std::to_string(kMaxSide));
    const BlockMatrix c = unflatten(detail::entries_from_json(j, n * d, n * d, path), n, d);
    MatLinearMap phi(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j2 = 0; j2 < n; ++j2) phi.set_action(i, j2, c.block(i, j2));
    return phi;
  }
  throw std::runtime_error(path + ": unknown kind \"" + kind + "\"");
}

// Typed readers for callers that require one specific kind.
inline CMatrix read_matrix(const std::string& path) {
  Payload p = read_file(path);
  if (auto* m = std::get_if<CMatrix>(&p)) return std::move(*m);
  throw std::runtime_error(path + ": expected kind \"matrix\"");
}

// Accepts a block file directly, or promotes a plain matrix file to scalar
// blocks (block_dim = 1), under which the tensorial operations collapse to
// their classical counterparts.
inline BlockMatrix read_block(const std::string& path) {
  Payload p = read_file(path);
  if (auto* b = std::get_if<BlockMatrix>(&p)) return std::move(*b);
  if (auto* m = std::get_if<CMatrix>(&p)) {
    if (m->rows() != m->cols())
      throw std::runtime_error(path + ": matrix must be square to act as a block matrix");
    return unflatten(*m, m->rows(), 1);
  }
  throw std::runtime_error(path + ": expected kind \"block\" or \"matrix\"");
}

inline MatLinearMap read_map(const std::string& path) {
  Payload p = read_file(path);
  if (auto* phi = std::get_if<MatLinearMap>(&p)) return std::move(*phi);
  throw std::runtime_error(path + ": expected kind \"map\"");
}

}  // namespace tschur::io
