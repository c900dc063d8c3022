#pragma once

#include <string>

#include "config.hpp"

namespace favard::cli {

inline constexpr const char* kBasisOrderContract =
    "graded by total degree; within a level, exponent vectors in decreasing "
    "lexicographic order";
inline constexpr const char* kScalarEncoding =
    "rational scalars as \"p/q\" strings; binary64 scalars as decimal strings";

Json index_list(const SymBasis& basis);

template <class S>
Json matrix_json(const Matrix<S>& m, const SymBasis& row_index, const SymBasis& col_index) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(ScalarTraits<S>::str(m(i, j)));
    entries.push_back(std::move(row));
  }
  Json out;
  out["rows"] = index_list(row_index);
  out["cols"] = index_list(col_index);
  out["entries"] = std::move(entries);
  return out;
}

const char* arithmetic_name(Arithmetic a);

template <class S>
Json report_header(const RunConfig& cfg, const std::string& command) {
  Json doc;
  doc["tool"] = "favard";
  doc["command"] = command;
  doc["dimension"] = cfg.dimension;
  doc["max_level"] = cfg.max_level;
  doc["arithmetic"] = arithmetic_name(cfg.arithmetic);
  if (!ScalarTraits<S>::kExact) doc["tolerance"] = cfg.tolerance;
  doc["basis_order"] = kBasisOrderContract;
  doc["scalar_encoding"] = kScalarEncoding;
  return doc;
}

// Per-level payload: basis order, the level form and its operator variant,
// the alpha blocks, and the creator-word rank data.
template <class S>
Json levels_json(const Pipeline<S>& p) {
  Json levels = Json::array();
  for (int n = 0; n <= p.max_level; ++n) {
    const auto& lvl = p.jacobi.level(n);
    Json node;
    node["level"] = n;
    node["dimension"] = lvl.basis.size();
    node["basis"] = index_list(lvl.basis);
    node["omega_form"] = matrix_json(lvl.omega_form, lvl.basis, lvl.basis);
    node["omega_op"] = matrix_json(p.jacobi.omega_operator(n), lvl.basis, lvl.basis);
    node["omega_rank"] = lvl.omega_rank;
    node["un_rank"] = lvl.creator_rank;
    node["un_singular"] = lvl.creator_singular;
    if (n < p.max_level) {
      Json alphas = Json::array();
      for (const auto& a : lvl.alpha) alphas.push_back(matrix_json(a, lvl.basis, lvl.basis));
      node["alpha"] = std::move(alphas);
    }
    levels.push_back(std::move(node));
  }
  return levels;
}

template <class S>
Json recurrences_json(const std::vector<Recurrence1D<S>>& recs) {
  Json out = Json::array();
  for (size_t f = 0; f < recs.size(); ++f) {
    const auto& rec = recs[f];
    Json node;
    node["factor"] = f + 1;
    Json alphas = Json::array(), betas = Json::array(), norms = Json::array();
    for (const auto& a : rec.alpha) alphas.push_back(ScalarTraits<S>::str(a));
    for (const auto& b : rec.beta_sq) betas.push_back(ScalarTraits<S>::str(b));
    for (const auto& s : rec.squared_norm) norms.push_back(ScalarTraits<S>::str(s));
    node["alpha"] = std::move(alphas);
    node["beta_squared"] = std::move(betas);
    node["squared_norms"] = std::move(norms);
    node["termination"] = rec.termination;
    if (!ScalarTraits<S>::kExact) {
      Json bs = Json::array();
      for (size_t i = 0; i < rec.beta_sq.size(); ++i) {
        bs.push_back(ScalarTraits<S>::str(S(rec.beta(static_cast<int>(i)))));
      }
      node["beta"] = std::move(bs);
    }
    node["alpha_conventional_from"] = rec.termination;
    out.push_back(std::move(node));
  }
  return out;
}

Json check_json(const CheckResult& r);

std::string dump_report(const Json& doc);

}  // namespace favard::cli
