#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "dly/rational.hpp"

namespace dly {

// A point of the extended line split into left/exact/right positions, so that
// open and closed endpoints compare exactly. For a finite value v the three
// cuts v-, v, v+ are consecutive; -inf and +inf bound everything.
struct Cut {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rat value{};
  int eps = 0; // -1: just below value, 0: at value, +1: just above

  static Cut neg_inf() { return {Kind::NegInf, Rat{}, 0}; }
  static Cut pos_inf() { return {Kind::PosInf, Rat{}, 0}; }
  static Cut at(Rat v, int e = 0) { return {Kind::Finite, std::move(v), e}; }

  bool finite() const { return kind == Kind::Finite; }

  friend bool operator==(const Cut& a, const Cut& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != Kind::Finite) return true;
    return a.eps == b.eps && a.value == b.value;
  }
  friend bool operator<(const Cut& a, const Cut& b) {
    if (a.kind != b.kind) {
      if (a.kind == Kind::NegInf) return true;
      if (a.kind == Kind::PosInf) return false;
      return b.kind == Kind::PosInf;
    }
    if (a.kind != Kind::Finite) return false;
    if (a.value != b.value) return a.value < b.value;
    return a.eps < b.eps;
  }
  friend bool operator<=(const Cut& a, const Cut& b) { return a < b || a == b; }
};

// One nonempty interval, stored as the cut range [lo, hi] it covers.
// Lower cuts use eps in {0, +1} (closed / open), upper cuts eps in {-1, 0}.
struct Ivl {
  Cut lo;
  Cut hi;

  bool lo_unbounded() const { return lo.kind == Cut::Kind::NegInf; }
  bool hi_unbounded() const { return hi.kind == Cut::Kind::PosInf; }
  bool lo_closed() const { return lo.finite() && lo.eps == 0; }
  bool hi_closed() const { return hi.finite() && hi.eps == 0; }
};

// Finite union of disjoint, non-adjacent intervals over exact rationals.
class IntervalSet {
public:
  IntervalSet() = default;

  static IntervalSet empty() { return {}; }
  static IntervalSet all() {
    IntervalSet s;
    s.parts_.push_back({Cut::neg_inf(), Cut::pos_inf()});
    return s;
  }
  static IntervalSet point(Rat v) { return closed(v, v); }
  static IntervalSet closed(Rat lo, Rat hi) {
    return make(Cut::at(std::move(lo), 0), Cut::at(std::move(hi), 0));
  }
  static IntervalSet closed_open(Rat lo, Rat hi) {
    return make(Cut::at(std::move(lo), 0), Cut::at(std::move(hi), -1));
  }
  static IntervalSet open_closed(Rat lo, Rat hi) {
    return make(Cut::at(std::move(lo), 1), Cut::at(std::move(hi), 0));
  }
  static IntervalSet open(Rat lo, Rat hi) {
    return make(Cut::at(std::move(lo), 1), Cut::at(std::move(hi), -1));
  }
  static IntervalSet at_least(Rat lo) { return make(Cut::at(std::move(lo), 0), Cut::pos_inf()); }
  static IntervalSet greater(Rat lo) { return make(Cut::at(std::move(lo), 1), Cut::pos_inf()); }
  static IntervalSet less(Rat hi) { return make(Cut::neg_inf(), Cut::at(std::move(hi), -1)); }
  static IntervalSet at_most(Rat hi) { return make(Cut::neg_inf(), Cut::at(std::move(hi), 0)); }
  static IntervalSet make(Cut lo, Cut hi) {
    IntervalSet s;
    if (!(hi < lo)) s.parts_.push_back({std::move(lo), std::move(hi)});
    return s;
  }
  static IntervalSet from_parts(std::vector<Ivl> parts) {
    IntervalSet s;
    s.parts_ = std::move(parts);
    s.normalize();
    return s;
  }

  const std::vector<Ivl>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }

  bool contains(const Rat& t) const {
    Cut c = Cut::at(t, 0);
    for (const Ivl& p : parts_) {
      if (c < p.lo) return false;
      if (c <= p.hi) return true;
    }
    return false;
  }

  IntervalSet unite(const IntervalSet& other) const {
    std::vector<Ivl> merged = parts_;
    merged.insert(merged.end(), other.parts_.begin(), other.parts_.end());
    return from_parts(std::move(merged));
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Ivl> out;
    for (const Ivl& a : parts_) {
      for (const Ivl& b : other.parts_) {
        Cut lo = a.lo < b.lo ? b.lo : a.lo;
        Cut hi = a.hi < b.hi ? a.hi : b.hi;
        if (!(hi < lo)) out.push_back({lo, hi});
      }
    }
    return from_parts(std::move(out));
  }

  IntervalSet complement() const {
    std::vector<Ivl> out;
    Cut lo = Cut::neg_inf();
    bool open_run = true;
    for (const Ivl& p : parts_) {
      if (p.lo.finite()) {
        Cut hi = predecessor(p.lo);
        if (!(hi < lo)) out.push_back({lo, hi});
      }
      if (p.hi.kind == Cut::Kind::PosInf) {
        open_run = false;
        break;
      }
      lo = successor(p.hi);
    }
    if (open_run) out.push_back({lo, Cut::pos_inf()});
    return from_parts(std::move(out));
  }

  // { t + d : t in this }
  IntervalSet translate(const Rat& d) const {
    std::vector<Ivl> out = parts_;
    for (Ivl& p : out) {
      if (p.lo.finite()) p.lo.value += d;
      if (p.hi.finite()) p.hi.value += d;
    }
    return from_parts(std::move(out));
  }

  // { -t : t in this }
  IntervalSet reflect() const {
    std::vector<Ivl> out;
    out.reserve(parts_.size());
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
      out.push_back({negate_cut(it->hi), negate_cut(it->lo)});
    return from_parts(std::move(out));
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.parts_ == b.parts_;
  }

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += " u ";
      const Ivl& p = parts_[i];
      s += p.lo_unbounded() ? "(-inf" : (p.lo_closed() ? "[" : "(") + dly::to_string(p.lo.value);
      s += ", ";
      s += p.hi_unbounded() ? "inf)" : dly::to_string(p.hi.value) + (p.hi_closed() ? "]" : ")");
    }
    return s;
  }

private:
  friend bool operator==(const Ivl&, const Ivl&);

  static Cut negate_cut(Cut c) {
    switch (c.kind) {
    case Cut::Kind::NegInf: return Cut::pos_inf();
    case Cut::Kind::PosInf: return Cut::neg_inf();
    default: return Cut::at(-c.value, -c.eps);
    }
  }
  static Cut successor(Cut c) {
    c.eps += 1;
    return c;
  }
  static Cut predecessor(Cut c) {
    c.eps -= 1;
    return c;
  }

  void normalize() {
    std::erase_if(parts_, [](const Ivl& p) { return p.hi < p.lo; });
    std::sort(parts_.begin(), parts_.end(),
              [](const Ivl& a, const Ivl& b) { return a.lo < b.lo; });
    std::vector<Ivl> out;
    for (Ivl& p : parts_) {
      // Merge when overlapping or exactly adjacent: [1,2) followed by [2,3].
      if (!out.empty() &&
          !(successor_of(out.back().hi) < p.lo)) {
        if (out.back().hi < p.hi) out.back().hi = p.hi;
      } else {
        out.push_back(std::move(p));
      }
    }
    parts_ = std::move(out);
  }

  static Cut successor_of(const Cut& c) {
    if (!c.finite()) return c;
    Cut s = c;
    s.eps += 1;
    return s;
  }

  std::vector<Ivl> parts_;
};

inline bool operator==(const Ivl& a, const Ivl& b) { return a.lo == b.lo && a.hi == b.hi; }

} // namespace dly
