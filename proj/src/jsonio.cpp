#include "era/jsonio.hpp"

namespace era {

using nlohmann::json;

const char* truncation_name(Truncation t) {
  return t == Truncation::reached_limit ? "reached-limit"
                                        : "count-bound-exceeded";
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

json to_json(const Ray& ray) {
  return json{{"seed", ray.seed},
              {"elements", ray.elements},
              {"truncation", truncation_name(ray.truncation)},
              {"truncation_bound", ray.truncation_bound}};
}

json to_json(const RayMatrix& matrix) {
  json rows = json::array();
  for (const Ray& row : matrix.rows()) rows.push_back(to_json(row));
  return json{{"element_limit", matrix.element_limit()},
              {"row_seeds", matrix.row_seeds()},
              {"rows", rows}};
}

json to_json(const Counterexample& ce) {
  json inputs = json::object();
  for (const auto& [name, value] : ce.inputs) inputs[name] = value;
  return json{{"inputs", inputs}, {"expected", ce.expected}, {"actual", ce.actual}};
}

json to_json(const CheckResult& result) {
  json failures = json::array();
  for (const Counterexample& ce : result.failures) failures.push_back(to_json(ce));
  json out{{"id", result.check_id},
           {"status", status_name(result.status)},
           {"instances", result.instances_tested},
           {"failures", failures}};
  if (result.status == CheckStatus::skipped) out["skip_reason"] = result.skip_reason;
  return out;
}

json to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const CheckResult& r : report.results) checks.push_back(to_json(r));
  json discrepancies = json::array();
  for (const Discrepancy& d : report.data_discrepancies)
    discrepancies.push_back(json{
        {"paper", d.paper_value}, {"computed", d.computed_value},
        {"mu", d.mu}, {"nu", d.nu}});
  return json{{"sieve_bound", report.sieve_bound},
              {"count_bound", report.count_bound},
              {"matrix", json{{"rows", report.num_rows},
                              {"element_limit", report.element_limit}}},
              {"checks", checks},
              {"data_discrepancies", discrepancies}};
}

}  // namespace era
