#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "report.hpp"

namespace favard::cli {
namespace {

RunConfig load_with_overrides(const CommonOptions& opt) {
  RunConfig cfg = load_config(opt.config_path);
  if (opt.arithmetic) {
    if (*opt.arithmetic == "rational") {
      cfg.arithmetic = Arithmetic::kRational;
    } else if (*opt.arithmetic == "f64") {
      cfg.arithmetic = Arithmetic::kFloat64;
    } else {
      throw ConfigError("--arith must be \"rational\" or \"f64\"");
    }
  }
  if (opt.tolerance) {
    if (!(*opt.tolerance > 0)) throw ConfigError("--tol must be positive");
    cfg.tolerance = *opt.tolerance;
  }
  if (opt.matrix_path) {
    Matrix<Rational> m = load_matrix(*opt.matrix_path);
    if (m.rows() != cfg.dimension) {
      throw ConfigError("basis-change matrix must be " + std::to_string(cfg.dimension) +
                        "x" + std::to_string(cfg.dimension));
    }
    if (rank(m) < cfg.dimension) throw ConfigError("basis-change matrix is singular");
    cfg.basis_change = std::move(m);
  }
  return cfg;
}

void emit(const Json& doc, const CommonOptions& opt, std::ostream& out) {
  std::string text = dump_report(doc);
  if (opt.output_path) {
    std::ofstream file(*opt.output_path);
    if (!file) throw ConfigError("cannot write \"" + opt.output_path->string() + "\"");
    file << text;
  } else {
    out << text;
  }
}

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

template <class F>
int dispatch(Arithmetic a, F&& f) {
  if (a == Arithmetic::kRational) return f.template operator()<Rational>();
  return f.template operator()<double>();
}

template <class S>
Json compute_document(const RunConfig& cfg) {
  Pipeline<S> p = run_pipeline<S>(cfg.measure, cfg.max_level, cfg.tolerance);
  Json doc = report_header<S>(cfg, "compute");
  doc["levels"] = levels_json(p);
  if (cfg.measure.is_product()) {
    doc["factor_recurrences"] =
        recurrences_json(factor_recurrences<S>(cfg.measure, cfg.max_level, cfg.tolerance));
  }
  return doc;
}

std::vector<std::string> parse_check_selector(const std::string& selector) {
  if (selector.empty() || selector == "all") return all_check_names();
  std::vector<std::string> names;
  std::stringstream stream(selector);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    bool known = false;
    for (const auto& name : all_check_names()) known = known || name == item;
    if (!known) throw ConfigError("unknown check \"" + item + "\"");
    names.push_back(item);
  }
  if (names.empty()) throw ConfigError("empty check selection");
  return names;
}

}  // namespace

int cmd_compute(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    RunConfig cfg = load_with_overrides(opt);
    Json doc = dispatch(cfg.arithmetic, [&]<class S>() -> Json {
      return compute_document<S>(cfg);
    });
    emit(doc, opt, out);
    return kExitOk;
  });
}

int cmd_verify(const CommonOptions& opt, const std::string& checks, std::ostream& out,
               std::ostream& err) {
  return guard(err, [&] {
    RunConfig cfg = load_with_overrides(opt);
    std::vector<std::string> names = parse_check_selector(checks);
    return dispatch(cfg.arithmetic, [&]<class S>() -> int {
      Pipeline<S> p = run_pipeline<S>(cfg.measure, cfg.max_level, cfg.tolerance);
      std::vector<Matrix<S>> changes;
      if (cfg.basis_change) changes.push_back(matrix_cast<S>(*cfg.basis_change));

      Json doc = report_header<S>(cfg, "verify");
      Json list = Json::array();
      bool all_passed = true;
      for (const auto& name : names) {
        CheckResult r = run_named_check<S>(name, p, changes);
        if (!r.applicable) {
          out << "SKIP " << r.name;
          if (!r.notes.empty()) out << " (" << r.notes.front() << ")";
          out << "\n";
        } else {
          out << (r.passed ? "PASS " : "FAIL ") << r.name << " (max deviation "
              << r.max_deviation << ")\n";
          all_passed = all_passed && r.passed;
        }
        list.push_back(check_json(r));
      }
      doc["checks"] = std::move(list);
      doc["all_passed"] = all_passed;
      if (opt.output_path) emit(doc, opt, out);
      return all_passed ? kExitOk : kExitValidation;
    });
  });
}

int cmd_reconstruct(const CommonOptions& opt, int degree, std::ostream& out,
                    std::ostream& err) {
  return guard(err, [&] {
    RunConfig cfg = load_with_overrides(opt);
    if (degree < 0) throw ConfigError("--degree must be nonnegative");
    if (degree > cfg.max_level) {
      throw ConfigError("--degree " + std::to_string(degree) + " exceeds max_level " +
                        std::to_string(cfg.max_level));
    }
    return dispatch(cfg.arithmetic, [&]<class S>() -> int {
      Pipeline<S> p = run_pipeline<S>(cfg.measure, cfg.max_level, cfg.tolerance);
      FockFields<S> fields = build_fock_fields(p.jacobi, cfg.tolerance);

      Json doc = report_header<S>(cfg, "reconstruct");
      doc["degree"] = degree;
      Json rows = Json::array();
      DeviationTracker<S> dev;
      for (int n = 0; n <= degree; ++n) {
        for (const auto& alpha : SymBasis(cfg.dimension, n)) {
          std::vector<int> word;
          for (int j = 0; j < cfg.dimension; ++j) {
            word.insert(word.end(), static_cast<size_t>(alpha[j]), j);
          }
          S source = p.moments.mu(alpha);
          S rebuilt = reconstruct_moment(p.jacobi, fields, word);
          S deviation = rebuilt - source;
          dev.update_diff(rebuilt, source);

          Json row;
          row["index"] = alpha.exponents();
          Json letters = Json::array();
          for (int j : word) letters.push_back(j + 1);
          row["word"] = std::move(letters);
          row["source"] = ScalarTraits<S>::str(source);
          row["reconstructed"] = ScalarTraits<S>::str(rebuilt);
          row["deviation"] = ScalarTraits<S>::str(deviation);
          rows.push_back(std::move(row));

          out << alpha.str() << "  source " << ScalarTraits<S>::str(source)
              << "  reconstructed " << ScalarTraits<S>::str(rebuilt) << "  deviation "
              << ScalarTraits<S>::str(deviation) << "\n";
        }
      }
      doc["rows"] = std::move(rows);
      bool exact_match = dev.ok(cfg.tolerance);
      doc["max_deviation"] = dev.str();
      if (opt.output_path) emit(doc, opt, out);
      if (!exact_match) {
        err << "internal error: reconstructed moments deviate from the source\n";
        return kExitInternal;
      }
      return kExitOk;
    });
  });
}

int cmd_basis_change(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    RunConfig cfg = load_with_overrides(opt);
    if (!cfg.basis_change) {
      throw ConfigError("basis-change needs a matrix: set \"basis_change\" in the config "
                        "or pass -R FILE");
    }
    return dispatch(cfg.arithmetic, [&]<class S>() -> int {
      Matrix<S> r = matrix_cast<S>(*cfg.basis_change);
      Pipeline<S> base = run_pipeline<S>(cfg.measure, cfg.max_level, cfg.tolerance);
      Pipeline<S> primed =
          run_pipeline_transformed<S>(cfg.measure, r, cfg.max_level, cfg.tolerance);

      Json doc = report_header<S>(cfg, "basis-change");
      {
        Json rows = Json::array();
        for (int i = 0; i < r.rows(); ++i) {
          Json row = Json::array();
          for (int j = 0; j < r.cols(); ++j) row.push_back(ScalarTraits<S>::str(r(i, j)));
          rows.push_back(std::move(row));
        }
        doc["basis_change"] = std::move(rows);
      }
      doc["levels"] = levels_json(primed);

      Json covariance = Json::array();
      bool all_passed = true;
      for (int n = 0; n <= cfg.max_level; ++n) {
        CheckResult one = check_basis_covariance(base.jacobi, primed.jacobi, r, n,
                                                 cfg.tolerance);
        one.name = "basis_covariance@level" + std::to_string(n);
        out << (one.passed ? "PASS " : "FAIL ") << one.name << " (max deviation "
            << one.max_deviation << ")\n";
        all_passed = all_passed && one.passed;
        covariance.push_back(check_json(one));
      }
      doc["covariance"] = std::move(covariance);
      doc["all_passed"] = all_passed;
      if (opt.output_path) emit(doc, opt, out);
      return all_passed ? kExitOk : kExitValidation;
    });
  });
}

int cmd_dims(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    RunConfig cfg = load_with_overrides(opt);
    Json doc;
    doc["tool"] = "favard";
    doc["command"] = "dims";
    doc["dimension"] = cfg.dimension;
    doc["max_level"] = cfg.max_level;
    Json dims = Json::array();
    for (int n = 0; n <= cfg.max_level; ++n) {
      size_t dim = sym_dimension(cfg.dimension, n);
      dims.push_back(dim);
      out << "level " << n << ": " << dim << "\n";
    }
    doc["dims"] = std::move(dims);
    if (opt.output_path) emit(doc, opt, out);
    return kExitOk;
  });
}

}  // namespace favard::cli
