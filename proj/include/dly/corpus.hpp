#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "dly/signal.hpp"

namespace dly {

struct CorpusConfig {
  std::uint64_t seed = 42;
  std::size_t count = 100;
  std::size_t max_edges = 6;
  Rat horizon = 16;
  unsigned time_grid_denominator = 4;
};

namespace detail {

// Small splitmix/xorshift mix; the standard distributions are not pinned
// across implementations, so we roll the few draws we need.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ull + 1) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  bool bit() { return next() & 1u; }

private:
  std::uint64_t state_;
};

} // namespace detail

// Deterministic corpus on the grid k / time_grid_denominator within
// [0, horizon]. The head is fixed: the two constants, a single step and a
// single pulse; these generate every counterexample the checkers need.
inline std::vector<Signal> generate_corpus(const CorpusConfig& cfg) {
  std::vector<Signal> out;
  auto push = [&](Signal s) {
    if (out.size() < cfg.count) out.push_back(std::move(s));
  };
  push(Signal::constant(false));
  push(Signal::constant(true));
  if (cfg.max_edges >= 1 && cfg.horizon >= 1) push(Signal(false, {Rat(1)}));
  if (cfg.max_edges >= 2 && cfg.horizon >= 3) push(Signal(false, {Rat(2), Rat(3)}));

  detail::Rng rng(cfg.seed);
  const std::uint64_t den = cfg.time_grid_denominator;
  // number of grid ticks in [0, horizon]
  BigInt hi_ticks = ceil_div(cfg.horizon * Rat(den));
  std::uint64_t ticks = hi_ticks <= 0 ? 1 : static_cast<std::uint64_t>(hi_ticks) + 1;
  while (out.size() < cfg.count) {
    std::size_t n = cfg.max_edges == 0 ? 0 : rng.below(cfg.max_edges + 1);
    std::set<Rat> times;
    for (std::size_t i = 0; i < n; ++i)
      times.insert(Rat(static_cast<long long>(rng.below(ticks)), static_cast<long long>(den)));
    push(Signal(rng.bit(), std::vector<Rat>(times.begin(), times.end())));
  }
  return out;
}

} // namespace dly
