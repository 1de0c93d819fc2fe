#pragma once

#include <string>

#include <json.hpp>

#include "dly/theorems.hpp"

namespace dly {

// One record per law: name, verdict, expectation, outcome and the
// counterexample serialization when there is one.
inline nlohmann::json report_to_json(const TheoremReport& report) {
  nlohmann::json laws = nlohmann::json::array();
  for (const LawResult& r : report.laws) {
    nlohmann::json entry;
    entry["law"] = r.name;
    entry["verdict"] = r.verdict.is_holds()   ? "holds"
                       : r.verdict.is_fails() ? "fails"
                                              : "unknown";
    entry["expected"] = r.expected_to_fail ? "fails" : "holds";
    entry["pass"] = r.pass;
    if (!r.detail.empty()) entry["detail"] = r.detail;
    if (r.verdict.is_fails()) {
      nlohmann::json cex;
      for (const auto& [name, s] : r.verdict.counterexample().signals)
        cex["signals"][name] = s.to_string();
      for (const auto& [name, rat] : r.verdict.counterexample().rationals)
        cex["rationals"][name] = to_string(rat);
      if (!r.verdict.counterexample().note.empty())
        cex["note"] = r.verdict.counterexample().note;
      entry["counterexample"] = cex;
    }
    laws.push_back(std::move(entry));
  }
  nlohmann::json out;
  out["seed"] = report.seed;
  out["all_pass"] = report.all_pass();
  out["laws"] = std::move(laws);
  return out;
}

} // namespace dly
