#pragma once

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dly/errors.hpp"
#include "dly/interval_set.hpp"
#include "dly/rational.hpp"

namespace dly {

// A right-continuous piecewise-constant function R -> {0,1} with finitely
// many switch times, all >= 0. The stored edge times are exactly the points
// where the value flips, so equal signals compare equal structurally.
class Signal {
public:
  Signal() = default;

  Signal(bool initial, std::vector<Rat> edges)
      : initial_(initial), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i] < 0)
        throw not_a_signal("edge at negative time " + dly::to_string(edges_[i]));
      if (i > 0 && !(edges_[i - 1] < edges_[i]))
        throw not_a_signal("edges not strictly increasing at " + dly::to_string(edges_[i]));
    }
  }

  static Signal constant(bool v) { return Signal(v, {}); }

  bool initial() const { return initial_; }
  const std::vector<Rat>& edges() const { return edges_; }

  // Value at t; right-continuous at every edge.
  bool eval(const Rat& t) const {
    auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
    return initial_ ^ (static_cast<std::size_t>(it - edges_.begin()) & 1u);
  }

  // x(t-0): the constant value just before t.
  bool left_limit(const Rat& t) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), t);
    return initial_ ^ (static_cast<std::size_t>(it - edges_.begin()) & 1u);
  }

  // The eventual constant value.
  bool final_value() const { return initial_ ^ (edges_.size() & 1u); }

  // Times where the left semi-derivative !x(t-0) * x(t) equals 1.
  std::vector<Rat> rising_edges() const { return edges_of(false); }

  // Times where x(t-0) * !x(t) equals 1.
  std::vector<Rat> falling_edges() const { return edges_of(true); }

  friend bool operator==(const Signal& a, const Signal& b) {
    return a.initial_ == b.initial_ && a.edges_ == b.edges_;
  }

  std::string to_string() const {
    std::string s = "sig(";
    s += initial_ ? '1' : '0';
    s += ';';
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      s += i ? ", " : " ";
      s += dly::to_string(edges_[i]);
    }
    s += ')';
    return s;
  }

private:
  std::vector<Rat> edges_of(bool before) const {
    std::vector<Rat> out;
    bool v = initial_;
    for (const Rat& e : edges_) {
      if (v == before) out.push_back(e);
      v = !v;
    }
    return out;
  }

  bool initial_ = false;
  std::vector<Rat> edges_;
};

// Total order used wherever a reproducible choice among signals is needed:
// fewer edges first, then initial value, then lexicographic edge times.
inline bool canonical_less(const Signal& a, const Signal& b) {
  if (a.edges().size() != b.edges().size()) return a.edges().size() < b.edges().size();
  if (a.initial() != b.initial()) return !a.initial() && b.initial();
  return std::lexicographical_compare(a.edges().begin(), a.edges().end(),
                                      b.edges().begin(), b.edges().end());
}

struct CanonicalLess {
  bool operator()(const Signal& a, const Signal& b) const { return canonical_less(a, b); }
};

// Test-construction helper: sig(0, {2, 5}) reads like the examples.
inline Signal sig(int initial, std::initializer_list<Rat> edges = {}) {
  return Signal(initial != 0, std::vector<Rat>(edges));
}

inline Signal negate(const Signal& s) {
  return Signal(!s.initial(), s.edges());
}

enum class BoolOp { And, Or, Xor };

inline bool apply_op(BoolOp op, bool a, bool b) {
  switch (op) {
  case BoolOp::And: return a && b;
  case BoolOp::Or: return a || b;
  default: return a != b;
  }
}

// Pointwise combination; the result lists only genuine value changes.
inline Signal combine(BoolOp op, const Signal& s1, const Signal& s2) {
  bool v1 = s1.initial(), v2 = s2.initial();
  bool cur = apply_op(op, v1, v2);
  std::vector<Rat> edges;
  std::size_t i = 0, j = 0;
  const auto& e1 = s1.edges();
  const auto& e2 = s2.edges();
  while (i < e1.size() || j < e2.size()) {
    Rat t;
    bool take1 = false, take2 = false;
    if (i < e1.size() && (j >= e2.size() || e1[i] <= e2[j])) take1 = true;
    if (j < e2.size() && (i >= e1.size() || e2[j] <= e1[i])) take2 = true;
    t = take1 ? e1[i] : e2[j];
    if (take1) v1 = !v1, ++i;
    if (take2) v2 = !v2, ++j;
    bool next = apply_op(op, v1, v2);
    if (next != cur) {
      edges.push_back(t);
      cur = next;
    }
  }
  return Signal(apply_op(op, s1.initial(), s2.initial()), std::move(edges));
}

// s o tau^d, i.e. t -> s(t - d). Fails when a shifted edge would land at a
// negative time, which is what makes some conditions time variable.
inline Signal translate(const Signal& s, const Rat& d) {
  std::vector<Rat> edges;
  edges.reserve(s.edges().size());
  for (const Rat& e : s.edges()) {
    Rat t = e + d;
    if (t < 0)
      throw not_a_signal("translate by " + dly::to_string(d) + " moves edge " +
                         dly::to_string(e) + " to negative time");
    edges.push_back(std::move(t));
  }
  return Signal(s.initial(), std::move(edges));
}

inline bool translatable(const Signal& s, const Rat& d) {
  return s.edges().empty() || !(s.edges().front() + d < 0);
}

// The set { t : s(t) = 1 }, a union of left-closed right-open intervals
// (the first may start at -inf, the last may end at +inf).
inline IntervalSet ones(const Signal& s) {
  std::vector<Ivl> parts;
  bool v = s.initial();
  Cut start = Cut::neg_inf();
  for (const Rat& e : s.edges()) {
    if (v)
      parts.push_back({start, Cut::at(e, -1)});
    else
      start = Cut::at(e, 0);
    v = !v;
  }
  if (v) parts.push_back({start, Cut::pos_inf()});
  return IntervalSet::from_parts(std::move(parts));
}

inline IntervalSet zeros(const Signal& s) { return ones(negate(s)); }

// Inverse of ones(): the signal whose indicator is the given set. Rejects
// sets whose indicator is not right-continuous piecewise-constant with
// switch times >= 0 (isolated points, open left endpoints, closed right
// endpoints, negative boundaries).
inline Signal from_characteristic(const IntervalSet& set) {
  bool initial = false;
  std::vector<Rat> edges;
  for (const Ivl& p : set.parts()) {
    if (p.lo_unbounded()) {
      initial = true;
    } else if (p.lo_closed()) {
      if (p.lo.value < 0)
        throw not_a_signal("indicator switches at negative time " + dly::to_string(p.lo.value));
      edges.push_back(p.lo.value);
    } else {
      throw not_a_signal("indicator has an open left endpoint at " + dly::to_string(p.lo.value) +
                         "; not right-continuous");
    }
    if (p.hi_unbounded()) {
      // value stays 1 to +inf
    } else if (!p.hi_closed()) {
      if (p.hi.value < 0)
        throw not_a_signal("indicator switches at negative time " + dly::to_string(p.hi.value));
      edges.push_back(p.hi.value);
    } else {
      throw not_a_signal("indicator has a closed right endpoint at " + dly::to_string(p.hi.value) +
                         "; not right-continuous");
    }
  }
  return Signal(initial, std::move(edges));
}

namespace detail {
inline void require_window(const Rat& d, const Rat& m) {
  if (m < 0 || m > d)
    throw bad_window("window requires 0 <= m <= d, got d=" + dly::to_string(d) +
                     " m=" + dly::to_string(m));
}
} // namespace detail

// x(t) = 1 iff u is identically 1 on the closed window [t-d, t-d+m].
// Computed on the 1-region: [a, b) contributes [a+d, b+d-m).
inline Signal window_all(const Signal& u, const Rat& d, const Rat& m) {
  detail::require_window(d, m);
  std::vector<Ivl> parts;
  for (const Ivl& p : ones(u).parts()) {
    Cut lo = p.lo.finite() ? Cut::at(p.lo.value + d, p.lo.eps) : p.lo;
    Cut hi = p.hi.finite() ? Cut::at(p.hi.value + d - m, p.hi.eps) : p.hi;
    if (!(hi < lo)) parts.push_back({lo, hi});
  }
  return from_characteristic(IntervalSet::from_parts(std::move(parts)));
}

// x(t) = 1 iff u takes value 1 somewhere on [t-d, t-d+m].
// [a, b) contributes [a+d-m, b+d).
inline Signal window_any(const Signal& u, const Rat& d, const Rat& m) {
  detail::require_window(d, m);
  std::vector<Ivl> parts;
  for (const Ivl& p : ones(u).parts()) {
    Cut lo = p.lo.finite() ? Cut::at(p.lo.value + d - m, p.lo.eps) : p.lo;
    Cut hi = p.hi.finite() ? Cut::at(p.hi.value + d, p.hi.eps) : p.hi;
    if (!(hi < lo)) parts.push_back({lo, hi});
  }
  return from_characteristic(IntervalSet::from_parts(std::move(parts)));
}

// Value on [0, horizon] kept, edges strictly beyond dropped.
inline Signal truncate_after(const Signal& s, const Rat& horizon) {
  std::vector<Rat> edges;
  for (const Rat& e : s.edges()) {
    if (e > horizon) break;
    edges.push_back(e);
  }
  return Signal(s.initial(), std::move(edges));
}

} // namespace dly
