#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dly/corpus.hpp"
#include "dly/delay.hpp"
#include "dly/interval_set.hpp"

namespace dly {

// Corpus-based falsification of the universally quantified properties.
// `holds` means "no counterexample found within the stated corpus and
// budget"; `fails` carries a replayable counterexample.

// A condition is deterministic when every value set is a singleton.
inline Verdict check_determinism(const Dc& i, std::span<const Signal> corpus,
                                 const Budget& budget = {}) {
  if (!i.enumerable()) throw not_enumerable(i.describe() + " is not enumerable");
  for (const Signal& u : corpus) {
    std::vector<Signal> members = i.enumerate(u, budget);
    if (members.size() >= 2) {
      Counterexample c;
      c.signals = {{"u", u}, {"x1", members[0]}, {"x2", members[1]}};
      c.note = "two distinct members of " + i.describe();
      return Verdict::fails(std::move(c));
    }
  }
  return Verdict::holds();
}

// i included in j: every member of i(u) is a member of j(u).
inline Verdict check_inclusion(const Dc& i, const Dc& j, std::span<const Signal> corpus,
                               const Budget& budget = {}) {
  if (!i.enumerable()) throw not_enumerable(i.describe() + " is not enumerable");
  bool saw_unknown = false;
  for (const Signal& u : corpus) {
    for (const Signal& x : i.enumerate(u, budget)) {
      Verdict v = j.member(u, x, budget);
      if (v.is_fails()) {
        Counterexample c;
        c.signals = {{"u", u}, {"x", x}};
        c.note = "member of " + i.describe() + " but not of " + j.describe();
        return Verdict::fails(std::move(c));
      }
      saw_unknown |= v.is_unknown();
    }
  }
  if (saw_unknown) return Verdict::unknown("some memberships undecided");
  return Verdict::holds();
}

// Membership must commute with translation whenever the translates exist;
// checked over positive and negative shifts, plus the reverse direction of
// the translation theorem for d >= 0.
inline Verdict check_time_invariance(const Dc& i, std::span<const Signal> corpus,
                                     std::span<const Rat> shifts, const Budget& budget = {}) {
  if (!i.enumerable()) throw not_enumerable(i.describe() + " is not enumerable");
  bool saw_unknown = false;
  for (const Signal& u : corpus) {
    std::vector<Signal> members = i.enumerate(u, budget);
    for (const Signal& x : members) {
      for (const Rat& d : shifts) {
        if (!translatable(u, d)) continue;
        Signal ud = translate(u, d);
        if (!translatable(x, d)) {
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.rationals = {{"d", d}};
          c.note = "u o tau^d is a signal but x o tau^d is not";
          return Verdict::fails(std::move(c));
        }
        Verdict v = i.member(ud, translate(x, d), budget);
        if (v.is_fails()) {
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.rationals = {{"d", d}};
          c.note = "translated pair rejected";
          return Verdict::fails(std::move(c));
        }
        saw_unknown |= v.is_unknown();
      }
    }
    // reverse direction, d >= 0: a member over the translated input must
    // pull back to a member over the original input
    for (const Rat& d : shifts) {
      if (d < 0) continue;
      Signal ud = translate(u, d);
      for (const Signal& xd : i.enumerate(ud, budget)) {
        if (!translatable(xd, -d)) continue;
        Verdict v = i.member(u, translate(xd, -d), budget);
        if (v.is_fails()) {
          Counterexample c;
          c.signals = {{"u", u}, {"x o tau^d", xd}};
          c.rationals = {{"d", d}};
          c.note = "member over translated input does not pull back";
          return Verdict::fails(std::move(c));
        }
        saw_unknown |= v.is_unknown();
      }
    }
  }
  if (saw_unknown) return Verdict::unknown("some memberships undecided");
  return Verdict::holds();
}

// Feasible anticipation offsets for the two constancy inequalities over a
// set of (input, output) pairs. Rising edges of x constrain d_r to
// { d : u(t - d) = 1 }, i.e. the reflected copy t - ones(u); falling edges
// constrain d_f dually. An empty family of constraints leaves [0, inf).
struct ConstancyWitness {
  IntervalSet feasible_dr = IntervalSet::at_least(Rat(0));
  IntervalSet feasible_df = IntervalSet::at_least(Rat(0));
  bool constant() const { return !feasible_dr.is_empty() && !feasible_df.is_empty(); }
};

inline ConstancyWitness constancy_witness(std::span<const std::pair<Signal, Signal>> pairs) {
  ConstancyWitness w;
  for (const auto& [u, x] : pairs) {
    IntervalSet u1 = ones(u);
    IntervalSet u0 = zeros(u);
    for (const Rat& t : x.rising_edges())
      w.feasible_dr = w.feasible_dr.intersect(u1.reflect().translate(t));
    for (const Rat& t : x.falling_edges())
      w.feasible_df = w.feasible_df.intersect(u0.reflect().translate(t));
  }
  return w;
}

// Membership must be invariant under negating both input and output.
inline Verdict check_symmetry(const Dc& i, std::span<const Signal> corpus,
                              const Budget& budget = {}) {
  for (const Signal& u : corpus) {
    std::vector<Signal> probes;
    if (i.enumerable()) {
      probes = i.enumerate(u, budget);
      for (const Signal& xn : i.enumerate(negate(u), budget)) probes.push_back(negate(xn));
    }
    std::size_t extra = corpus.size() < 8 ? corpus.size() : 8;
    probes.insert(probes.end(), corpus.begin(), corpus.begin() + extra);
    for (const Signal& x : probes) {
      Verdict direct = i.member(u, x, budget);
      Verdict flipped = i.member(negate(u), negate(x), budget);
      if (direct.is_unknown() || flipped.is_unknown()) continue;
      if (direct.is_holds() != flipped.is_holds()) {
        Counterexample c;
        c.signals = {{"u", u}, {"x", x}};
        c.note = direct.is_holds() ? "member of i(u) but complement not member of i(~u)"
                                   : "complement member of i(~u) but x not member of i(u)";
        return Verdict::fails(std::move(c));
      }
    }
  }
  return Verdict::holds();
}

} // namespace dly
