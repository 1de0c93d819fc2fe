#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dly/errors.hpp"
#include "dly/signal.hpp"

namespace dly {

namespace detail {

// VCD identifier codes: printable ASCII starting at '!'.
inline std::string vcd_code(std::size_t index) {
  std::string code;
  do {
    code += static_cast<char>('!' + index % 94);
    index /= 94;
  } while (index);
  return code;
}

} // namespace detail

// Value-change dump with exact integer timestamps: every edge time is scaled
// by the least common multiple of the edge denominators, and the scale is
// recorded in the leading comment so the original rationals are recoverable.
inline std::string vcd_text(const std::vector<std::pair<std::string, Signal>>& signals) {
  BigInt scale = 1;
  for (const auto& [name, s] : signals)
    for (const Rat& e : s.edges())
      scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(e));

  std::string out;
  out += "$comment scale " + scale.str() + " $end\n";
  out += "$timescale 1 us $end\n";
  out += "$scope module top $end\n";
  std::vector<std::string> codes;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    codes.push_back(detail::vcd_code(i));
    out += "$var wire 1 " + codes[i] + " " + signals[i].first + " $end\n";
  }
  out += "$upscope $end\n";
  out += "$enddefinitions $end\n";
  out += "$dumpvars\n";
  for (std::size_t i = 0; i < signals.size(); ++i)
    out += std::string(signals[i].second.eval(Rat(0)) ? "1" : "0") + codes[i] + "\n";
  out += "$end\n";

  // merged strictly increasing timeline; an edge at 0 is already covered by
  // the dump of the value at time 0
  std::map<BigInt, std::vector<std::pair<bool, std::size_t>>> changes;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const Signal& s = signals[i].second;
    for (const Rat& e : s.edges()) {
      if (e == 0) continue;
      BigInt t = boost::multiprecision::numerator(e * scale);
      changes[t].emplace_back(s.eval(e), i);
    }
  }
  for (const auto& [t, items] : changes) {
    out += "#" + t.str() + "\n";
    for (const auto& [v, i] : items) out += std::string(v ? "1" : "0") + codes[i] + "\n";
  }
  return out;
}

// Atomic write: temp file in place, then rename.
inline void export_vcd(const std::vector<std::pair<std::string, Signal>>& signals,
                       const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw io_error("cannot open '" + tmp + "' for writing");
    os << vcd_text(signals);
    if (!os) throw io_error("write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw io_error("cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace dly
