#include "config.hpp"

#include <fstream>

namespace favard::cli {
namespace {

Rational scalar_field(const Json& node, const std::string& what) {
  if (node.is_string()) return parse_rational(node.get<std::string>());
  if (node.is_number_integer()) return Rational(node.get<long>());
  if (node.is_number()) {
    throw ConfigError(what + ": non-integer JSON numbers are not accepted; " +
                      "write the value as a string like \"1/10\"");
  }
  throw ConfigError(what + ": expected a rational string or an integer");
}

Rational require_scalar(const Json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing field \"" + key + "\"");
  return scalar_field(obj.at(key), key);
}

FactorSpec parse_factor(const Json& node) {
  if (!node.is_object() || !node.contains("family")) {
    throw ConfigError("factor entries need a \"family\" field");
  }
  std::string family = node.at("family").get<std::string>();
  if (family == "gaussian") {
    return GaussianFactor{require_scalar(node, "mean"), require_scalar(node, "variance")};
  }
  if (family == "uniform") {
    return UniformFactor{require_scalar(node, "lower"), require_scalar(node, "upper")};
  }
  if (family == "exponential") {
    return ExponentialFactor{require_scalar(node, "rate")};
  }
  if (family == "two_point") {
    return TwoPointFactor{require_scalar(node, "x1"), require_scalar(node, "x2"),
                          require_scalar(node, "p")};
  }
  if (family == "moment_list") {
    if (!node.contains("moments") || !node.at("moments").is_array()) {
      throw ConfigError("moment_list factor needs a \"moments\" array");
    }
    MomentListFactor f;
    int k = 0;
    for (const auto& entry : node.at("moments")) {
      f.moments.push_back(scalar_field(entry, "moments[" + std::to_string(k++) + "]"));
    }
    return f;
  }
  throw ConfigError("unknown factor family \"" + family + "\"");
}

MeasureSpec parse_measure(const Json& node, int dimension) {
  if (!node.is_object() || !node.contains("type")) {
    throw ConfigError("measure needs a \"type\" field");
  }
  std::string type = node.at("type").get<std::string>();
  if (type == "product") {
    if (!node.contains("factors") || !node.at("factors").is_array()) {
      throw ConfigError("product measure needs a \"factors\" array");
    }
    ProductMeasure m;
    for (const auto& f : node.at("factors")) m.factors.push_back(parse_factor(f));
    return MeasureSpec(std::move(m));
  }
  if (type == "atomic") {
    if (!node.contains("atoms") || !node.at("atoms").is_array()) {
      throw ConfigError("atomic measure needs an \"atoms\" array");
    }
    AtomicMeasure m;
    m.dimension = dimension;
    for (const auto& a : node.at("atoms")) {
      Atom atom;
      if (!a.contains("point") || !a.at("point").is_array()) {
        throw ConfigError("atoms need a \"point\" array");
      }
      for (const auto& c : a.at("point")) atom.point.push_back(scalar_field(c, "point"));
      atom.weight = require_scalar(a, "weight");
      m.atoms.push_back(std::move(atom));
    }
    return MeasureSpec(std::move(m));
  }
  if (type == "moment_table") {
    if (!node.contains("max_degree") || !node.at("max_degree").is_number_integer()) {
      throw ConfigError("moment_table measure needs an integer \"max_degree\"");
    }
    if (!node.contains("entries") || !node.at("entries").is_array()) {
      throw ConfigError("moment_table measure needs an \"entries\" array");
    }
    MomentTableMeasure m;
    m.dimension = dimension;
    m.max_degree = node.at("max_degree").get<int>();
    for (const auto& e : node.at("entries")) {
      if (!e.contains("index") || !e.at("index").is_array()) {
        throw ConfigError("moment_table entries need an \"index\" array");
      }
      std::vector<int> exps;
      for (const auto& x : e.at("index")) exps.push_back(x.get<int>());
      m.entries.emplace(MultiIndex(std::move(exps)), require_scalar(e, "value"));
    }
    return MeasureSpec(std::move(m));
  }
  throw ConfigError("unknown measure type \"" + type + "\"");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open \"" + path.string() + "\"");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("cannot parse \"" + path.string() + "\": " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const std::string key : {"dimension", "max_level", "measure"}) {
    if (!doc.contains(key)) throw ConfigError("missing field \"" + key + "\"");
  }
  int dimension = doc.at("dimension").get<int>();
  int max_level = doc.at("max_level").get<int>();
  if (dimension < 1) throw ConfigError("dimension must be at least 1");
  if (max_level < 1) throw ConfigError("max_level must be at least 1");

  Arithmetic arithmetic = Arithmetic::kRational;
  if (doc.contains("arithmetic")) {
    std::string a = doc.at("arithmetic").get<std::string>();
    if (a == "rational") {
      arithmetic = Arithmetic::kRational;
    } else if (a == "f64") {
      arithmetic = Arithmetic::kFloat64;
    } else {
      throw ConfigError("arithmetic must be \"rational\" or \"f64\"");
    }
  }
  double tolerance = kDefaultTolerance;
  if (doc.contains("tolerance")) {
    tolerance = doc.at("tolerance").get<double>();
    if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
  }

  MeasureSpec measure = parse_measure(doc.at("measure"), dimension);
  if (measure.dimension() != dimension) {
    throw ConfigError("measure dimension " + std::to_string(measure.dimension()) +
                      " does not match configured dimension " + std::to_string(dimension));
  }
  if (measure.available_degree() < 2 * max_level) {
    throw ValidationError("measure provides moments to degree " +
                          std::to_string(measure.available_degree()) +
                          "; max_level " + std::to_string(max_level) + " needs degree " +
                          std::to_string(2 * max_level));
  }

  std::optional<Matrix<Rational>> basis_change;
  if (doc.contains("basis_change")) {
    basis_change = parse_matrix(doc.at("basis_change"));
    if (basis_change->rows() != dimension) {
      throw ConfigError("basis_change must be a " + std::to_string(dimension) + "x" +
                        std::to_string(dimension) + " matrix");
    }
    if (rank(*basis_change) < dimension) {
      throw ConfigError("basis_change matrix is singular");
    }
  }

  return RunConfig{dimension, max_level, arithmetic, tolerance, std::move(measure),
                   std::move(basis_change)};
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json(path));
}

Matrix<Rational> parse_matrix(const Json& doc) {
  if (!doc.is_array() || doc.empty()) throw ConfigError("matrix must be an array of rows");
  int rows = static_cast<int>(doc.size());
  int cols = static_cast<int>(doc.at(0).size());
  if (rows != cols) throw ConfigError("matrix must be square");
  Matrix<Rational> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = doc.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ConfigError("matrix rows must all have length " + std::to_string(cols));
    }
    for (int j = 0; j < cols; ++j) {
      m(i, j) = scalar_field(row.at(static_cast<size_t>(j)), "matrix entry");
    }
  }
  return m;
}

Matrix<Rational> load_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_json(path));
}

}  // namespace favard::cli
