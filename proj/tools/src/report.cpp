#include "report.hpp"

namespace favard::cli {

Json index_list(const SymBasis& basis) {
  Json out = Json::array();
  for (const MultiIndex& m : basis.entries()) {
    out.push_back(m.exponents());
  }
  return out;
}

const char* arithmetic_name(Arithmetic a) {
  return a == Arithmetic::kRational ? "rational" : "f64";
}

Json check_json(const CheckResult& r) {
  Json node;
  node["name"] = r.name;
  node["applicable"] = r.applicable;
  node["passed"] = r.passed;
  node["max_deviation"] = r.max_deviation;
  node["notes"] = r.notes;
  return node;
}

std::string dump_report(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace favard::cli
