#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "favard/checks.hpp"

namespace favard::cli {

using Json = nlohmann::ordered_json;

enum class Arithmetic { kRational, kFloat64 };

struct RunConfig {
  int dimension;
  int max_level;
  Arithmetic arithmetic;
  double tolerance;
  MeasureSpec measure;
  std::optional<Matrix<Rational>> basis_change;
};

// Reads a run configuration from a JSON document. Scalars travel as "p/q"
// strings (plain integers are accepted; non-integer JSON numbers are
// rejected so nothing is silently rounded).
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const Json& doc);

// Square matrix of rational strings, e.g. [["1","1"],["0","1"]].
Matrix<Rational> load_matrix(const std::filesystem::path& path);
Matrix<Rational> parse_matrix(const Json& doc);

template <class S>
Matrix<S> matrix_cast(const Matrix<Rational>& m) {
  Matrix<S> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = scalar_cast<S>(m(i, j));
  }
  return out;
}

}  // namespace favard::cli
