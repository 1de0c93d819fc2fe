#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dly/errors.hpp"
#include "dly/signal.hpp"

namespace dly {

// ---------------------------------------------------------------------------
// Stability and transmission delay
// ---------------------------------------------------------------------------

// The stability condition: if the input settles at a, the output settles at
// the same a. With finitely many edges every signal settles, so this is
// equality of final values.
inline bool stable(const Signal& u, const Signal& x) {
  return u.final_value() == x.final_value();
}

enum class EdgeClass { Rising, Falling, Unclassified };

inline const char* to_string(EdgeClass c) {
  switch (c) {
  case EdgeClass::Rising: return "rising";
  case EdgeClass::Falling: return "falling";
  default: return "unclassified";
  }
}

struct TransmissionDelayReport {
  Rat d;       // max(0, t2* - t1*)
  Rat t1_star; // settling time of the input (0 if constant)
  Rat t2_star; // settling time of the output (0 if constant)
  EdgeClass classification = EdgeClass::Unclassified;
};

// Settling times are the last edges; a constant signal settles at 0 by
// definition. Classification requires a genuine edge of the same direction
// at both settling times.
inline TransmissionDelayReport transmission_delay(const Signal& u, const Signal& x) {
  if (!stable(u, x))
    throw not_stable("transmission delay requires the stability condition: " + u.to_string() +
                     " settles at " + (u.final_value() ? "1" : "0") + ", " + x.to_string() +
                     " at " + (x.final_value() ? "1" : "0"));
  TransmissionDelayReport r;
  r.t1_star = u.edges().empty() ? Rat(0) : u.edges().back();
  r.t2_star = x.edges().empty() ? Rat(0) : x.edges().back();
  r.d = rat_max(Rat(0), r.t2_star - r.t1_star);

  auto rising_at = [](const Signal& s, const Rat& t) {
    return !s.left_limit(t) && s.eval(t);
  };
  auto falling_at = [](const Signal& s, const Rat& t) {
    return s.left_limit(t) && !s.eval(t);
  };
  if (rising_at(u, r.t1_star) && rising_at(x, r.t2_star))
    r.classification = EdgeClass::Rising;
  else if (falling_at(u, r.t1_star) && falling_at(x, r.t2_star))
    r.classification = EdgeClass::Falling;
  return r;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct Counterexample {
  std::vector<std::pair<std::string, Signal>> signals;
  std::vector<std::pair<std::string, Rat>> rationals;
  std::string note;

  std::string to_string() const {
    std::string s;
    for (const auto& [name, sig] : signals) {
      if (!s.empty()) s += ", ";
      s += name + " = " + sig.to_string();
    }
    for (const auto& [name, r] : rationals) {
      if (!s.empty()) s += ", ";
      s += name + " = " + dly::to_string(r);
    }
    if (!note.empty()) s += (s.empty() ? "" : "; ") + note;
    return s;
  }
};

// Three-valued result of a membership or property check. `fails` always
// carries a replayable counterexample.
class Verdict {
public:
  enum class State { Holds, Fails, Unknown };

  static Verdict holds() { return Verdict(State::Holds, {}); }
  static Verdict fails(Counterexample cex) { return Verdict(State::Fails, std::move(cex)); }
  static Verdict unknown(std::string note) {
    Counterexample c;
    c.note = std::move(note);
    return Verdict(State::Unknown, std::move(c));
  }

  State state() const { return state_; }
  bool is_holds() const { return state_ == State::Holds; }
  bool is_fails() const { return state_ == State::Fails; }
  bool is_unknown() const { return state_ == State::Unknown; }
  const Counterexample& counterexample() const { return cex_; }

  std::string to_string() const {
    switch (state_) {
    case State::Holds: return "holds";
    case State::Fails: return "fails(" + cex_.to_string() + ")";
    default: return "unknown(" + cex_.note + ")";
    }
  }

private:
  Verdict(State s, Counterexample c) : state_(s), cex_(std::move(c)) {}
  State state_;
  Counterexample cex_;
};

// Bound on the base generators of non-deterministic conditions. Combinators
// combine budgeted sub-enumerations exhaustively, so the same budget on both
// sides of an algebraic identity yields structurally equal member windows.
struct Budget {
  std::size_t count = 16;
  std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// Delay conditions
// ---------------------------------------------------------------------------

class Dc;

namespace detail {
struct DcNode;
} // namespace detail

// A delay condition: a map u -> nonempty set of outputs, each stable with u.
// Exposed through membership (always), enumeration (optional) and a
// deterministic transform (optional). Descriptors are immutable trees.
class Dc {
public:
  static Dc ident();
  static Dc pure(Rat d);
  static Dc startup_mask();
  static Dc sol_sc();
  static Dc window_all(Rat d, Rat m);
  static Dc window_any(Rat d, Rat m);
  static Dc meet(Dc i, Dc j);
  static Dc meet_set(Dc i, std::function<bool(const Signal&)> member_of_set, std::string label);
  static Dc meet_fam(Dc i, std::function<bool(const Signal&, const Signal&)> family_member,
                     std::string label);
  static Dc join(Dc i, Dc j);
  static Dc serial(Dc i, Dc j);
  static Dc user_predicate(
      std::function<bool(const Signal&, const Signal&)> pred, std::string label,
      std::function<std::vector<Signal>(const Signal&, const Budget&)> generator = nullptr);
  static Dc select_deterministic(Dc enumerable_condition, Budget budget = {});

  bool deterministic() const;
  bool enumerable() const;

  // Decides x in i(u). Exact for every built-in and combinator; returns
  // unknown only for a serial connection whose inner condition is opaque
  // (membership-only) once the witness budget is spent.
  Verdict member(const Signal& u, const Signal& x, const Budget& budget = {}) const;

  // The unique element of i(u); requires the deterministic-transform
  // capability.
  Signal apply(const Signal& u) const;

  // A finite window into i(u): every returned signal is a member, a
  // deterministic condition yields its singleton, and equal budgets yield
  // equal windows.
  std::vector<Signal> enumerate(const Signal& u, const Budget& budget = {}) const;

  // Lookahead of the models admitted in netlists: ident, pure, the two
  // windows, and serial compositions of those. nullopt for anything else.
  std::optional<Rat> lookahead() const;

  std::string describe() const;

private:
  explicit Dc(std::shared_ptr<const detail::DcNode> node) : node_(std::move(node)) {}
  template <class T> static Dc wrap(T node);
  const detail::DcNode& node() const;

  std::optional<Signal> find_member(const Signal& u, const Budget& budget) const;
  std::vector<Signal> witness_pool(const Signal& u, const Signal& x, const Budget& budget) const;

  std::shared_ptr<const detail::DcNode> node_;
};

namespace detail {

struct IdentNode {};
struct PureNode {
  Rat d;
};
struct StartupMaskNode {};
struct SolScNode {};
struct WindowAllNode {
  Rat d, m;
};
struct WindowAnyNode {
  Rat d, m;
};
struct MeetNode { // i(u) ^ j(u)
  Dc i, j;
};
struct MeetSetNode { // i(u) ^ U
  Dc i;
  std::function<bool(const Signal&)> in_set;
  std::string label;
};
struct MeetFamNode { // i(u) ^ phi(u)
  Dc i;
  std::function<bool(const Signal&, const Signal&)> in_family;
  std::string label;
};
struct JoinNode { // i(u) v j(u)
  Dc i, j;
};
struct SerialNode { // (i o j)(u) = { y | exists x in j(u), y in i(x) }
  Dc i, j;
};
struct SelectedNode { // deterministic sub-condition of an enumerable one
  Dc inner;
  Budget budget;
};
struct UserPredicateNode {
  std::function<bool(const Signal&, const Signal&)> pred;
  std::string label;
  std::function<std::vector<Signal>(const Signal&, const Budget&)> generator;
};

struct DcNode {
  std::variant<IdentNode, PureNode, StartupMaskNode, SolScNode, WindowAllNode, WindowAnyNode,
               MeetNode, MeetSetNode, MeetFamNode, JoinNode, SerialNode, SelectedNode,
               UserPredicateNode>
      v;
};

// u(t) * chi_[cut,inf)(t): the startup-masked copy of u.
inline Signal startup_masked(const Signal& u, const Rat& cut) {
  return combine(BoolOp::And, u, Signal(false, {cut}));
}

// Deterministic stream of stable responses for Sol_SC. The head is a fixed
// grid over the input's own edge times (the translates make inclusion
// searches against pure delays succeed); the tail is seeded.
inline std::vector<Signal> sol_sc_stream(const Signal& u, const Budget& budget) {
  std::vector<Signal> out;
  std::set<Signal, CanonicalLess> seen;
  auto push = [&](const Signal& s) {
    if (out.size() < budget.count && seen.insert(s).second) out.push_back(s);
  };
  bool f = u.final_value();
  Rat last = u.edges().empty() ? Rat(0) : u.edges().back();

  push(u);
  push(translate(u, 5));
  push(Signal::constant(f));
  push(Signal(!f, {last + 1}));
  for (int k : {1, 2, 3, 4, 6, 7, 8}) push(translate(u, k));

  std::uint64_t state = budget.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  std::size_t attempts = 0;
  while (out.size() < budget.count && attempts < 100 + 50 * budget.count) {
    // random signal on a quarter-integer grid ending at the input's level
    ++attempts;
    std::size_t n = next() % 5;
    std::set<Rat> ticks;
    for (std::size_t i = 0; i < n; ++i) ticks.insert(Rat(static_cast<long long>(next() % 64), 4));
    std::vector<Rat> edges(ticks.begin(), ticks.end());
    bool initial = f ^ (edges.size() & 1u);
    push(Signal(initial, std::move(edges)));
  }
  return out;
}

// d-grid for the startup mask: 0, the input's edges, and one late point.
inline std::vector<Signal> startup_stream(const Signal& u, const Budget& budget) {
  std::vector<Signal> out;
  std::set<Signal, CanonicalLess> seen;
  auto push = [&](const Signal& s) {
    if (out.size() < budget.count && seen.insert(s).second) out.push_back(s);
  };
  push(startup_masked(u, Rat(0)));
  for (const Rat& e : u.edges()) push(startup_masked(u, e));
  Rat last = u.edges().empty() ? Rat(0) : u.edges().back();
  push(startup_masked(u, last + 1));
  for (const Rat& e : u.edges()) push(startup_masked(u, e + Rat(1, 2)));
  return out;
}

// Feasible startup cuts: all d >= 0 with x = u * chi_[d,inf). x must agree
// with u from d on and be 0 before d.
inline IntervalSet startup_feasible_cuts(const Signal& u, const Signal& x) {
  IntervalSet feasible = IntervalSet::at_least(Rat(0));

  IntervalSet diff = ones(combine(BoolOp::Xor, u, x));
  if (!diff.is_empty()) {
    const Ivl& lastp = diff.parts().back();
    if (lastp.hi_unbounded()) return IntervalSet::empty();
    // d must sit at or after the end of the disagreement region
    feasible = feasible.intersect(IntervalSet::make(Cut::at(lastp.hi.value, lastp.hi.eps + 1),
                                                    Cut::pos_inf()));
  }
  IntervalSet on = ones(x);
  if (!on.is_empty()) {
    const Ivl& firstp = on.parts().front();
    if (firstp.lo_unbounded()) return IntervalSet::empty();
    feasible = feasible.intersect(IntervalSet::make(Cut::neg_inf(),
                                                    Cut::at(firstp.lo.value, firstp.lo.eps)));
  }
  return feasible;
}

} // namespace detail

template <class T> Dc Dc::wrap(T node) {
  return Dc(std::make_shared<const detail::DcNode>(detail::DcNode{std::move(node)}));
}

inline const detail::DcNode& Dc::node() const { return *node_; }

inline Dc Dc::ident() { return wrap(detail::IdentNode{}); }
inline Dc Dc::pure(Rat d) {
  if (d < 0) throw bad_window("pure delay requires d >= 0, got " + dly::to_string(d));
  return wrap(detail::PureNode{std::move(d)});
}
inline Dc Dc::startup_mask() { return wrap(detail::StartupMaskNode{}); }
inline Dc Dc::sol_sc() { return wrap(detail::SolScNode{}); }
inline Dc Dc::window_all(Rat d, Rat m) {
  detail::require_window(d, m);
  return wrap(detail::WindowAllNode{std::move(d), std::move(m)});
}
inline Dc Dc::window_any(Rat d, Rat m) {
  detail::require_window(d, m);
  return wrap(detail::WindowAnyNode{std::move(d), std::move(m)});
}
inline Dc Dc::meet(Dc i, Dc j) { return wrap(detail::MeetNode{std::move(i), std::move(j)}); }
inline Dc Dc::meet_set(Dc i, std::function<bool(const Signal&)> member_of_set,
                       std::string label) {
  return wrap(detail::MeetSetNode{std::move(i), std::move(member_of_set), std::move(label)});
}
inline Dc Dc::meet_fam(Dc i, std::function<bool(const Signal&, const Signal&)> family_member,
                       std::string label) {
  return wrap(detail::MeetFamNode{std::move(i), std::move(family_member), std::move(label)});
}
inline Dc Dc::join(Dc i, Dc j) { return wrap(detail::JoinNode{std::move(i), std::move(j)}); }
inline Dc Dc::serial(Dc i, Dc j) { return wrap(detail::SerialNode{std::move(i), std::move(j)}); }
inline Dc Dc::user_predicate(
    std::function<bool(const Signal&, const Signal&)> pred, std::string label,
    std::function<std::vector<Signal>(const Signal&, const Budget&)> generator) {
  return wrap(detail::UserPredicateNode{std::move(pred), std::move(label), std::move(generator)});
}

inline bool Dc::deterministic() const {
  using namespace detail;
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IdentNode> || std::is_same_v<T, PureNode> ||
                      std::is_same_v<T, WindowAllNode> || std::is_same_v<T, WindowAnyNode> ||
                      std::is_same_v<T, SelectedNode>)
          return true;
        else if constexpr (std::is_same_v<T, SerialNode>)
          return n.i.deterministic() && n.j.deterministic();
        else if constexpr (std::is_same_v<T, MeetNode>)
          return n.i.deterministic() || n.j.deterministic();
        else if constexpr (std::is_same_v<T, MeetSetNode> || std::is_same_v<T, MeetFamNode>)
          return n.i.deterministic();
        else
          return false;
      },
      node().v);
}

inline bool Dc::enumerable() const {
  using namespace detail;
  if (deterministic()) return true;
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StartupMaskNode> || std::is_same_v<T, SolScNode>)
          return true;
        else if constexpr (std::is_same_v<T, MeetNode>)
          return n.i.enumerable() || n.j.enumerable();
        else if constexpr (std::is_same_v<T, MeetSetNode> || std::is_same_v<T, MeetFamNode>)
          return n.i.enumerable();
        else if constexpr (std::is_same_v<T, JoinNode>)
          return n.i.enumerable() && n.j.enumerable();
        else if constexpr (std::is_same_v<T, SerialNode>)
          return n.i.enumerable() && n.j.enumerable();
        else if constexpr (std::is_same_v<T, UserPredicateNode>)
          return static_cast<bool>(n.generator);
        else
          return false;
      },
      node().v);
}

inline Signal Dc::apply(const Signal& u) const {
  using namespace detail;
  return std::visit(
      [&](const auto& n) -> Signal {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IdentNode>) {
          return u;
        } else if constexpr (std::is_same_v<T, PureNode>) {
          return translate(u, n.d);
        } else if constexpr (std::is_same_v<T, WindowAllNode>) {
          return dly::window_all(u, n.d, n.m);
        } else if constexpr (std::is_same_v<T, WindowAnyNode>) {
          return dly::window_any(u, n.d, n.m);
        } else if constexpr (std::is_same_v<T, SerialNode>) {
          if (!deterministic()) throw not_deterministic(describe() + " has no transform");
          return n.i.apply(n.j.apply(u));
        } else if constexpr (std::is_same_v<T, MeetNode>) {
          const Dc& det = n.i.deterministic() ? n.i : n.j;
          const Dc& other = n.i.deterministic() ? n.j : n.i;
          if (!det.deterministic()) throw not_deterministic(describe() + " has no transform");
          Signal y = det.apply(u);
          if (!other.member(u, y).is_holds())
            throw empty_delay_set("meet is empty on " + u.to_string());
          return y;
        } else if constexpr (std::is_same_v<T, MeetSetNode>) {
          Signal y = n.i.apply(u);
          if (!n.in_set(y)) throw empty_delay_set("meet with set is empty on " + u.to_string());
          return y;
        } else if constexpr (std::is_same_v<T, MeetFamNode>) {
          Signal y = n.i.apply(u);
          if (!n.in_family(u, y))
            throw empty_delay_set("meet with family is empty on " + u.to_string());
          return y;
        } else if constexpr (std::is_same_v<T, SelectedNode>) {
          std::vector<Signal> members = n.inner.enumerate(u, n.budget);
          if (members.empty()) throw empty_delay_set("selection window empty on " + u.to_string());
          return *std::min_element(members.begin(), members.end(), CanonicalLess{});
        } else {
          throw not_deterministic(describe() + " has no transform");
        }
      },
      node().v);
}

inline std::vector<Signal> Dc::enumerate(const Signal& u, const Budget& budget) const {
  using namespace detail;
  auto dedupe = [](std::vector<Signal> v) {
    std::set<Signal, CanonicalLess> seen;
    std::vector<Signal> out;
    for (Signal& s : v)
      if (seen.insert(s).second) out.push_back(std::move(s));
    return out;
  };
  return std::visit(
      [&](const auto& n) -> std::vector<Signal> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, StartupMaskNode>) {
          return startup_stream(u, budget);
        } else if constexpr (std::is_same_v<T, SolScNode>) {
          return sol_sc_stream(u, budget);
        } else if constexpr (std::is_same_v<T, MeetNode>) {
          // candidates from either side, kept when both memberships hold
          std::vector<Signal> cands;
          for (const Dc* side : {&n.i, &n.j}) {
            if (side->deterministic())
              cands.push_back(side->apply(u));
            else if (side->enumerable()) {
              auto e = side->enumerate(u, budget);
              cands.insert(cands.end(), e.begin(), e.end());
            }
          }
          std::vector<Signal> out;
          for (Signal& s : cands)
            if (member(u, s, budget).is_holds()) out.push_back(std::move(s));
          return dedupe(std::move(out));
        } else if constexpr (std::is_same_v<T, MeetSetNode> || std::is_same_v<T, MeetFamNode>) {
          std::vector<Signal> out;
          for (Signal& s : n.i.enumerate(u, budget))
            if (member(u, s, budget).is_holds()) out.push_back(std::move(s));
          return out;
        } else if constexpr (std::is_same_v<T, JoinNode>) {
          std::vector<Signal> out = n.i.enumerate(u, budget);
          auto e = n.j.enumerate(u, budget);
          out.insert(out.end(), e.begin(), e.end());
          return dedupe(std::move(out));
        } else if constexpr (std::is_same_v<T, SerialNode>) {
          if (!enumerable()) throw not_enumerable(describe() + " is not enumerable");
          std::vector<Signal> out;
          for (const Signal& x : n.j.enumerate(u, budget)) {
            auto e = n.i.enumerate(x, budget);
            out.insert(out.end(), e.begin(), e.end());
          }
          return dedupe(std::move(out));
        } else if constexpr (std::is_same_v<T, SelectedNode>) {
          return {apply(u)};
        } else if constexpr (std::is_same_v<T, UserPredicateNode>) {
          if (!n.generator) throw not_enumerable("user predicate '" + n.label +
                                                 "' has no generator attached");
          std::vector<Signal> out;
          for (Signal& s : n.generator(u, budget))
            if (n.pred(u, s)) out.push_back(std::move(s));
          return dedupe(std::move(out));
        } else {
          // deterministic built-ins
          return {apply(u)};
        }
      },
      node().v);
}

inline std::optional<Signal> Dc::find_member(const Signal& u, const Budget& budget) const {
  if (deterministic()) return apply(u);
  if (enumerable()) {
    auto e = enumerate(u, budget);
    if (!e.empty()) return e.front();
    return std::nullopt;
  }
  return std::nullopt;
}

// Candidate witnesses for a serial connection over an opaque inner condition.
inline std::vector<Signal> Dc::witness_pool(const Signal& u, const Signal& x,
                                            const Budget& budget) const {
  std::vector<Signal> pool;
  pool.push_back(u);
  pool.push_back(x);
  pool.push_back(Signal::constant(false));
  pool.push_back(Signal::constant(true));
  for (int k : {1, 2, 3, 5}) {
    pool.push_back(translate(u, k));
    pool.push_back(translate(x, k));
  }
  if (pool.size() > budget.count) pool.resize(budget.count);
  return pool;
}

inline Verdict Dc::member(const Signal& u, const Signal& x, const Budget& budget) const {
  using namespace detail;
  auto eq_verdict = [&](const Signal& expected) {
    if (x == expected) return Verdict::holds();
    Counterexample c;
    c.signals = {{"u", u}, {"x", x}, {"expected", expected}};
    return Verdict::fails(std::move(c));
  };
  return std::visit(
      [&](const auto& n) -> Verdict {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IdentNode>) {
          return eq_verdict(u);
        } else if constexpr (std::is_same_v<T, PureNode>) {
          return eq_verdict(translate(u, n.d));
        } else if constexpr (std::is_same_v<T, WindowAllNode>) {
          return eq_verdict(dly::window_all(u, n.d, n.m));
        } else if constexpr (std::is_same_v<T, WindowAnyNode>) {
          return eq_verdict(dly::window_any(u, n.d, n.m));
        } else if constexpr (std::is_same_v<T, SelectedNode>) {
          return eq_verdict(apply(u));
        } else if constexpr (std::is_same_v<T, StartupMaskNode>) {
          IntervalSet feasible = startup_feasible_cuts(u, x);
          if (!feasible.is_empty()) return Verdict::holds();
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = "no startup cut d >= 0 reproduces x";
          return Verdict::fails(std::move(c));
        } else if constexpr (std::is_same_v<T, SolScNode>) {
          if (stable(u, x)) return Verdict::holds();
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = "final values differ";
          return Verdict::fails(std::move(c));
        } else if constexpr (std::is_same_v<T, MeetNode>) {
          Verdict vi = n.i.member(u, x, budget);
          Verdict vj = n.j.member(u, x, budget);
          if (vi.is_holds() && vj.is_holds()) return Verdict::holds();
          if (vi.is_unknown() || vj.is_unknown())
            return Verdict::unknown("meet operand undecided");
          // not a member: the meet must still be nonempty on this input
          if (n.i.deterministic()) {
            Signal y = n.i.apply(u);
            if (!n.j.member(u, y, budget).is_holds())
              throw empty_delay_set("meet is empty on " + u.to_string());
          } else if (n.j.deterministic()) {
            Signal y = n.j.apply(u);
            if (!n.i.member(u, y, budget).is_holds())
              throw empty_delay_set("meet is empty on " + u.to_string());
          } else {
            bool found = false;
            if (n.i.enumerable()) {
              for (const Signal& y : n.i.enumerate(u, budget))
                if (n.j.member(u, y, budget).is_holds()) {
                  found = true;
                  break;
                }
            }
            if (!found && n.j.enumerable()) {
              for (const Signal& y : n.j.enumerate(u, budget))
                if (n.i.member(u, y, budget).is_holds()) {
                  found = true;
                  break;
                }
            }
            if (!found && (n.i.enumerable() || n.j.enumerable()))
              throw empty_delay_set("meet has no common member within budget on " +
                                    u.to_string());
          }
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = std::string("rejected by ") + (vi.is_fails() ? "left" : "right") + " operand";
          return Verdict::fails(std::move(c));
        } else if constexpr (std::is_same_v<T, MeetSetNode>) {
          Verdict vi = n.i.member(u, x, budget);
          if (vi.is_unknown()) return vi;
          bool in_set = n.in_set(x);
          if (vi.is_holds() && in_set) return Verdict::holds();
          if (auto w = n.i.find_member(u, budget); w && !n.in_set(*w)) {
            // the witness we can exhibit is outside the set; for a
            // deterministic operand this proves emptiness
            if (n.i.deterministic())
              throw empty_delay_set("meet with set '" + n.label + "' is empty on " +
                                    u.to_string());
          }
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = vi.is_fails() ? "not a member of the base condition"
                                 : "outside the set '" + n.label + "'";
          return Verdict::fails(std::move(c));
        } else if constexpr (std::is_same_v<T, MeetFamNode>) {
          Verdict vi = n.i.member(u, x, budget);
          if (vi.is_unknown()) return vi;
          bool in_fam = n.in_family(u, x);
          if (vi.is_holds() && in_fam) return Verdict::holds();
          if (n.i.deterministic()) {
            Signal y = n.i.apply(u);
            if (!n.in_family(u, y))
              throw empty_delay_set("meet with family '" + n.label + "' is empty on " +
                                    u.to_string());
          }
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = vi.is_fails() ? "not a member of the base condition"
                                 : "outside the family '" + n.label + "'";
          return Verdict::fails(std::move(c));
        } else if constexpr (std::is_same_v<T, JoinNode>) {
          Verdict vi = n.i.member(u, x, budget);
          if (vi.is_holds()) return vi;
          Verdict vj = n.j.member(u, x, budget);
          if (vj.is_holds()) return vj;
          if (vi.is_unknown() || vj.is_unknown())
            return Verdict::unknown("join operand undecided");
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = "member of neither operand";
          return Verdict::fails(std::move(c));
        } else if constexpr (std::is_same_v<T, SerialNode>) {
          if (n.j.deterministic()) return n.i.member(n.j.apply(u), x, budget);
          if (n.j.enumerable()) {
            bool any_unknown = false;
            for (const Signal& w : n.j.enumerate(u, budget)) {
              Verdict v = n.i.member(w, x, budget);
              if (v.is_holds()) return Verdict::holds();
              any_unknown |= v.is_unknown();
            }
            if (any_unknown) return Verdict::unknown("inner verdicts undecided");
            Counterexample c;
            c.signals = {{"u", u}, {"x", x}};
            c.note = "no witness in the enumeration window";
            return Verdict::fails(std::move(c));
          }
          for (const Signal& w : witness_pool(u, x, budget)) {
            if (n.j.member(u, w, budget).is_holds() && n.i.member(w, x, budget).is_holds())
              return Verdict::holds();
          }
          return Verdict::unknown("witness budget exhausted over opaque inner condition");
        } else if constexpr (std::is_same_v<T, UserPredicateNode>) {
          if (n.pred(u, x)) return Verdict::holds();
          Counterexample c;
          c.signals = {{"u", u}, {"x", x}};
          c.note = "rejected by predicate '" + n.label + "'";
          return Verdict::fails(std::move(c));
        } else {
          return Verdict::unknown("unhandled node");
        }
      },
      node().v);
}

inline std::optional<Rat> Dc::lookahead() const {
  using namespace detail;
  return std::visit(
      [](const auto& n) -> std::optional<Rat> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IdentNode>)
          return Rat(0);
        else if constexpr (std::is_same_v<T, PureNode>)
          return n.d;
        else if constexpr (std::is_same_v<T, WindowAllNode> || std::is_same_v<T, WindowAnyNode>)
          return n.d - n.m;
        else if constexpr (std::is_same_v<T, SerialNode>) {
          auto a = n.i.lookahead();
          auto b = n.j.lookahead();
          if (a && b) return *a + *b;
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      node().v);
}

inline std::string Dc::describe() const {
  using namespace detail;
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IdentNode>)
          return "ident";
        else if constexpr (std::is_same_v<T, PureNode>)
          return "pure(" + dly::to_string(n.d) + ")";
        else if constexpr (std::is_same_v<T, StartupMaskNode>)
          return "startup";
        else if constexpr (std::is_same_v<T, SolScNode>)
          return "solsc";
        else if constexpr (std::is_same_v<T, WindowAllNode>)
          return "window_all(" + dly::to_string(n.d) + "," + dly::to_string(n.m) + ")";
        else if constexpr (std::is_same_v<T, WindowAnyNode>)
          return "window_any(" + dly::to_string(n.d) + "," + dly::to_string(n.m) + ")";
        else if constexpr (std::is_same_v<T, MeetNode>)
          return "meet(" + n.i.describe() + "," + n.j.describe() + ")";
        else if constexpr (std::is_same_v<T, MeetSetNode>)
          return "meet_set(" + n.i.describe() + ",'" + n.label + "')";
        else if constexpr (std::is_same_v<T, MeetFamNode>)
          return "meet_fam(" + n.i.describe() + ",'" + n.label + "')";
        else if constexpr (std::is_same_v<T, JoinNode>)
          return "join(" + n.i.describe() + "," + n.j.describe() + ")";
        else if constexpr (std::is_same_v<T, SerialNode>)
          return "serial(" + n.i.describe() + "," + n.j.describe() + ")";
        else if constexpr (std::is_same_v<T, SelectedNode>)
          return "selected(" + n.inner.describe() + ")";
        else
          return "user('" + n.label + "')";
      },
      node().v);
}

// A deterministic sub-condition of an enumerable one: per input, the
// canonically least member of the enumeration window.
inline Dc Dc::select_deterministic(Dc enumerable_condition, Budget budget) {
  if (!enumerable_condition.enumerable())
    throw not_enumerable(enumerable_condition.describe() + " is not enumerable");
  return wrap(detail::SelectedNode{std::move(enumerable_condition), budget});
}

inline Dc select_deterministic(Dc j, Budget budget = {}) {
  return Dc::select_deterministic(std::move(j), budget);
}

} // namespace dly
