#pragma once

#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dly/errors.hpp"
#include "dly/signal.hpp"

namespace dly {

// Named signals in the line format
//   signal NAME INITIAL [@ EDGE...]
// with rationals written p/q or as integers; '#' starts a comment.
struct WaveFile {
  std::vector<std::pair<std::string, Signal>> signals;

  const Signal* find(const std::string& name) const {
    for (const auto& [n, s] : signals)
      if (n == name) return &s;
    return nullptr;
  }

  friend bool operator==(const WaveFile& a, const WaveFile& b) { return a.signals == b.signals; }
};

inline WaveFile parse_wavefile(std::string_view text) {
  WaveFile w;
  std::set<std::string> seen;
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls{raw};
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "signal") throw parse_error("unknown directive '" + head + "'", lineno);
    std::string name, init;
    if (!(ls >> name >> init)) throw parse_error("expected 'signal NAME INITIAL'", lineno);
    if (init != "0" && init != "1")
      throw parse_error("initial value must be 0 or 1, got '" + init + "'", lineno);
    if (!seen.insert(name).second)
      throw parse_error("duplicate signal '" + name + "'", lineno);
    std::vector<Rat> edges;
    std::string tok;
    if (ls >> tok) {
      if (tok != "@") throw parse_error("expected '@' before edge list", lineno);
      while (ls >> tok) {
        Rat e;
        try {
          e = parse_rat(tok);
        } catch (const parse_error& pe) {
          throw parse_error(pe.what(), lineno);
        }
        edges.push_back(std::move(e));
      }
    }
    try {
      w.signals.emplace_back(name, Signal(init == "1", std::move(edges)));
    } catch (const not_a_signal& e) {
      throw non_canonical_signal(std::string("signal '") + name + "': " + e.what(), lineno);
    }
  }
  return w;
}

inline std::string print_wavefile(const WaveFile& w) {
  std::string out;
  for (const auto& [name, s] : w.signals) {
    out += "signal " + name + (s.initial() ? " 1" : " 0");
    if (!s.edges().empty()) {
      out += " @";
      for (const Rat& e : s.edges()) out += " " + to_string(e);
    }
    out += '\n';
  }
  return out;
}

} // namespace dly
