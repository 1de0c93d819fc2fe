#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dly/checkers.hpp"
#include "dly/corpus.hpp"
#include "dly/delay.hpp"

namespace dly {

struct LawResult {
  std::string name;
  Verdict verdict = Verdict::holds();
  bool expected_to_fail = false;
  bool pass = false;
  std::string detail;
};

struct TheoremReport {
  std::uint64_t seed = 0;
  std::vector<LawResult> laws;

  bool all_pass() const {
    return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.pass; });
  }

  std::string to_text() const {
    std::string out;
    for (const LawResult& r : laws) {
      out += r.pass ? "[PASS] " : "[FAIL] ";
      out += r.name;
      if (r.expected_to_fail)
        out += r.verdict.is_fails() ? " -- expected counterexample: " + r.verdict.counterexample().to_string()
                                    : " -- expected a counterexample, got " + r.verdict.to_string();
      else if (!r.verdict.is_holds())
        out += " -- " + r.verdict.to_string();
      if (!r.detail.empty()) out += " [" + r.detail + "]";
      out += '\n';
    }
    out += all_pass() ? "all laws pass\n" : "some laws FAILED\n";
    return out;
  }
};

namespace detail {

inline bool same_signal_entry(const Counterexample& cex, const std::string& key,
                              const Signal& expected) {
  for (const auto& [k, s] : cex.signals)
    if (k == key) return s == expected;
  return false;
}

inline bool same_rational_entry(const Counterexample& cex, const std::string& key,
                                const Rat& expected) {
  for (const auto& [k, r] : cex.rationals)
    if (k == key) return r == expected;
  return false;
}

inline std::set<Signal, CanonicalLess> as_set(std::vector<Signal> v) {
  return {v.begin(), v.end()};
}

} // namespace detail

// Runs every law of the delay calculus over a seeded corpus. A law either
// must hold, or must fail with a pinned documented counterexample; the
// report records both kinds and is byte-identical for equal seeds.
inline TheoremReport run_theorem_suite(std::uint64_t seed) {
  TheoremReport report;
  report.seed = seed;

  CorpusConfig cfg;
  cfg.seed = seed;
  cfg.count = 48;
  cfg.max_edges = 5;
  cfg.horizon = 12;
  cfg.time_grid_denominator = 4;
  const std::vector<Signal> corpus = generate_corpus(cfg);
  const std::vector<Signal> small(corpus.begin(), corpus.begin() + 12);
  const std::vector<Signal> tiny(corpus.begin(), corpus.begin() + 6);
  const Budget budget{12, seed};
  const Budget tight{5, seed};
  const std::vector<Rat> shifts = {Rat(-2), Rat(-1), Rat(-1, 2), Rat(1, 2), Rat(1), Rat(2), Rat(5)};

  const Dc ident = Dc::ident();
  const Dc solsc = Dc::sol_sc();
  const Dc startup = Dc::startup_mask();

  auto add = [&](std::string name, Verdict v, bool expect_fail, bool cex_ok = true,
                 std::string detail = "") {
    LawResult r;
    r.name = std::move(name);
    r.expected_to_fail = expect_fail;
    r.pass = expect_fail ? (v.is_fails() && cex_ok) : v.is_holds();
    r.verdict = std::move(v);
    r.detail = std::move(detail);
    report.laws.push_back(std::move(r));
  };

  // --- membership axiom: every produced member satisfies stability --------
  {
    std::vector<Dc> builtins = {ident,
                                Dc::pure(1),
                                Dc::pure(Rat(5, 2)),
                                startup,
                                solsc,
                                Dc::window_all(2, 1),
                                Dc::window_any(2, 1),
                                Dc::window_all(2, 2),
                                Dc::meet(Dc::pure(2), solsc),
                                Dc::join(Dc::pure(1), Dc::pure(2)),
                                Dc::serial(Dc::pure(1), Dc::pure(2))};
    Verdict v = [&]() -> Verdict {
      for (const Dc& dc : builtins)
        for (const Signal& u : small)
          for (const Signal& x : dc.enumerate(u, budget))
            if (!stable(u, x)) {
              Counterexample c;
              c.signals = {{"u", u}, {"x", x}};
              c.note = "unstable member of " + dc.describe();
              return Verdict::fails(std::move(c));
            }
      return Verdict::holds();
    }();
    add("dc-axiom.members-stable", std::move(v), false);

    Verdict vu = [&]() -> Verdict {
      for (const Dc& dc : builtins) {
        Verdict v2 = check_inclusion(dc, solsc, small, budget);
        if (!v2.is_holds()) return v2;
      }
      return Verdict::holds();
    }();
    add("order.universal-solsc", std::move(vu), false);
  }

  // --- order laws ----------------------------------------------------------
  {
    std::vector<Dc> enums = {Dc::pure(1), solsc, startup, Dc::join(Dc::pure(1), Dc::pure(2))};
    Verdict vr = [&]() -> Verdict {
      for (const Dc& dc : enums) {
        Verdict v = check_inclusion(dc, dc, small, budget);
        if (!v.is_holds()) return v;
      }
      return Verdict::holds();
    }();
    add("order.reflexive", std::move(vr), false);

    Dc i = Dc::pure(2), j = Dc::meet(Dc::pure(2), solsc);
    Verdict vt = [&]() -> Verdict {
      for (auto [a, b] : {std::pair<const Dc&, const Dc&>{i, j}, {j, solsc}, {i, solsc}}) {
        Verdict v = check_inclusion(a, b, small, budget);
        if (!v.is_holds()) return v;
      }
      return Verdict::holds();
    }();
    add("order.transitive", std::move(vt), false);
  }

  // --- any enumerable condition includes a deterministic one ---------------
  {
    Verdict v = [&]() -> Verdict {
      for (const Dc& j : {solsc, startup, Dc::join(Dc::pure(1), Dc::pure(2))}) {
        Dc sel = Dc::select_deterministic(j, budget);
        Verdict vd = check_determinism(sel, small, budget);
        if (!vd.is_holds()) return vd;
        Verdict vi = check_inclusion(sel, j, small, budget);
        if (!vi.is_holds()) return vi;
      }
      return Verdict::holds();
    }();
    add("order.selector-deterministic-subset", std::move(v), false);
  }

  // --- serial connection: unit, associativity, monotonicity ---------------
  {
    std::vector<Dc> enums = {Dc::pure(1), solsc, startup};
    Verdict vu = [&]() -> Verdict {
      for (const Dc& dc : enums)
        for (const Signal& u : small) {
          std::vector<Signal> probes = dc.enumerate(u, budget);
          probes.insert(probes.end(), tiny.begin(), tiny.end());
          for (const Signal& y : probes) {
            bool base = dc.member(u, y, budget).is_holds();
            bool left = Dc::serial(dc, ident).member(u, y, budget).is_holds();
            bool right = Dc::serial(ident, dc).member(u, y, budget).is_holds();
            if (base != left || base != right) {
              Counterexample c;
              c.signals = {{"u", u}, {"y", y}};
              c.note = "unit law broken for " + dc.describe();
              return Verdict::fails(std::move(c));
            }
          }
        }
      return Verdict::holds();
    }();
    add("serial.unit", std::move(vu), false);

    Verdict va = [&]() -> Verdict {
      for (const Dc& a : enums)
        for (const Dc& b : enums)
          for (const Dc& c : enums)
            for (const Signal& u : tiny) {
              auto lhs = detail::as_set(
                  Dc::serial(Dc::serial(a, b), c).enumerate(u, tight));
              auto rhs = detail::as_set(
                  Dc::serial(a, Dc::serial(b, c)).enumerate(u, tight));
              if (lhs != rhs) {
                Counterexample cex;
                cex.signals = {{"u", u}};
                cex.note = "associativity windows differ for " + a.describe() + ", " +
                           b.describe() + ", " + c.describe();
                return Verdict::fails(std::move(cex));
              }
            }
      return Verdict::holds();
    }();
    add("serial.assoc", std::move(va), false);

    Verdict vm = [&]() -> Verdict {
      std::vector<std::pair<Dc, Dc>> included = {{Dc::pure(2), solsc},
                                                 {Dc::meet(Dc::pure(2), solsc), Dc::pure(2)}};
      for (const auto& [i, j] : included)
        for (const Dc& k : {Dc::pure(1), Dc::window_all(2, 1)})
          for (const Signal& u : small) {
            for (const Signal& y : Dc::serial(i, k).enumerate(u, budget))
              if (!Dc::serial(j, k).member(u, y, budget).is_holds()) {
                Counterexample c;
                c.signals = {{"u", u}, {"y", y}};
                c.note = "i o k not within j o k";
                return Verdict::fails(std::move(c));
              }
            for (const Signal& y : Dc::serial(k, i).enumerate(u, budget))
              if (!Dc::serial(k, j).member(u, y, budget).is_holds()) {
                Counterexample c;
                c.signals = {{"u", u}, {"y", y}};
                c.note = "k o i not within k o j";
                return Verdict::fails(std::move(c));
              }
          }
      return Verdict::holds();
    }();
    add("serial.monotone", std::move(vm), false);
  }

  // --- distributivity over join and interaction with meet ------------------
  {
    Dc i = Dc::pure(1), j = Dc::pure(2);
    Verdict vd = [&]() -> Verdict {
      for (const Dc& k : {Dc::pure(Rat(1, 2)), Dc::window_all(2, 1), solsc})
        for (const Signal& u : small) {
          auto l1 = detail::as_set(Dc::serial(Dc::join(i, j), k).enumerate(u, tight));
          auto r1 = detail::as_set(
              Dc::join(Dc::serial(i, k), Dc::serial(j, k)).enumerate(u, tight));
          if (l1 != r1) {
            Counterexample c;
            c.signals = {{"u", u}};
            c.note = "(i v j) o k differs from (i o k) v (j o k) with k = " + k.describe();
            return Verdict::fails(std::move(c));
          }
          auto l2 = detail::as_set(Dc::serial(k, Dc::join(i, j)).enumerate(u, tight));
          auto r2 = detail::as_set(
              Dc::join(Dc::serial(k, i), Dc::serial(k, j)).enumerate(u, tight));
          if (l2 != r2) {
            Counterexample c;
            c.signals = {{"u", u}};
            c.note = "k o (i v j) differs from (k o i) v (k o j) with k = " + k.describe();
            return Verdict::fails(std::move(c));
          }
        }
      return Verdict::holds();
    }();
    add("serial.distrib-join", std::move(vd), false);
  }
  {
    auto few_edges = [](const Signal& s) { return s.edges().size() <= 30; };
    Dc i = Dc::pure(1);
    Verdict vml = [&]() -> Verdict {
      for (const Dc& j : {Dc::pure(2), solsc, Dc::window_all(2, 1)})
        for (const Signal& u : small) {
          auto lhs = detail::as_set(
              Dc::serial(Dc::meet_set(i, few_edges, "small"), j).enumerate(u, budget));
          auto rhs = detail::as_set(
              Dc::meet_set(Dc::serial(i, j), few_edges, "small").enumerate(u, budget));
          if (lhs != rhs) {
            Counterexample c;
            c.signals = {{"u", u}};
            c.note = "(i ^ U) o j differs from (i o j) ^ U with j = " + j.describe();
            return Verdict::fails(std::move(c));
          }
        }
      return Verdict::holds();
    }();
    add("serial.meet-left-equal", std::move(vml), false);

    Verdict vmr = [&]() -> Verdict {
      for (const Dc& j : {Dc::pure(2), solsc})
        for (const Signal& u : small)
          for (const Signal& y :
               Dc::serial(i, Dc::meet_set(j, few_edges, "small")).enumerate(u, budget))
            if (!Dc::serial(i, j).member(u, y, budget).is_holds()) {
              Counterexample c;
              c.signals = {{"u", u}, {"y", y}};
              c.note = "i o (j ^ U) escaped i o j";
              return Verdict::fails(std::move(c));
            }
      return Verdict::holds();
    }();
    add("serial.meet-right-subset", std::move(vmr), false);

    Verdict vmp = [&]() -> Verdict {
      Dc a = Dc::pure(2);
      for (const Dc& k : {Dc::pure(1), Dc::window_all(2, 1)})
        for (const Signal& u : small)
          for (const Signal& y : Dc::serial(Dc::meet(a, solsc), k).enumerate(u, budget))
            if (!Dc::meet(Dc::serial(a, k), Dc::serial(solsc, k)).member(u, y, budget).is_holds()) {
              Counterexample c;
              c.signals = {{"u", u}, {"y", y}};
              c.note = "(i ^ j) o k escaped (i o k) ^ (j o k)";
              return Verdict::fails(std::move(c));
            }
      return Verdict::holds();
    }();
    add("serial.meet-pair-subset", std::move(vmp), false);

    Verdict vmf = [&]() -> Verdict {
      for (const Signal& u : small)
        for (const Signal& y :
             Dc::serial(i, Dc::meet(solsc, Dc::pure(1))).enumerate(u, budget))
          if (!Dc::meet(Dc::serial(i, solsc), Dc::serial(i, Dc::pure(1)))
                   .member(u, y, budget)
                   .is_holds()) {
            Counterexample c;
            c.signals = {{"u", u}, {"y", y}};
            c.note = "i o (j ^ k) escaped (i o j) ^ (i o k)";
            return Verdict::fails(std::move(c));
          }
      return Verdict::holds();
    }();
    add("serial.meet-fan-subset", std::move(vmf), false);
  }

  // --- pure delays compose additively ---------------------------------------
  {
    Verdict v = [&]() -> Verdict {
      const std::pair<Rat, Rat> params[] = {{Rat(2), Rat(3)}, {Rat(1, 2), Rat(3, 2)},
                                            {Rat(0), Rat(7, 3)}};
      for (const auto& [a, b] : params)
        for (const Signal& u : corpus) {
          Signal composed = Dc::serial(Dc::pure(a), Dc::pure(b)).apply(u);
          Signal direct = Dc::pure(a + b).apply(u);
          if (!(composed == direct)) {
            Counterexample c;
            c.signals = {{"u", u}, {"composed", composed}, {"direct", direct}};
            c.rationals = {{"a", a}, {"b", b}};
            return Verdict::fails(std::move(c));
          }
        }
      return Verdict::holds();
    }();
    add("serial.pure-compose", std::move(v), false);
  }

  // --- windowed delays: deterministic, time invariant, constant ------------
  {
    const std::pair<Rat, Rat> grid[] = {{Rat(0), Rat(0)},  {Rat(1), Rat(0)},
                                        {Rat(1), Rat(1)},  {Rat(2), Rat(1)},
                                        {Rat(2), Rat(2)},  {Rat(3), Rat(3, 2)},
                                        {Rat(1, 2), Rat(1, 4)}};
    Verdict vdet = [&]() -> Verdict {
      for (const auto& [d, m] : grid)
        for (const Dc& w : {Dc::window_all(d, m), Dc::window_any(d, m)}) {
          Verdict v = check_determinism(w, small, budget);
          if (!v.is_holds()) return v;
        }
      return Verdict::holds();
    }();
    add("window.determinism", std::move(vdet), false);

    Verdict vti = [&]() -> Verdict {
      for (const auto& [d, m] : grid)
        for (const Dc& w : {Dc::window_all(d, m), Dc::window_any(d, m)}) {
          Verdict v = check_time_invariance(w, small, shifts, budget);
          if (!v.is_holds()) return v;
        }
      return Verdict::holds();
    }();
    add("window.time-invariance", std::move(vti), false);

    // window_all anticipates rises by d and falls by d-m; window_any dually.
    Verdict vc = [&]() -> Verdict {
      for (const auto& [d, m] : grid) {
        std::vector<std::pair<Signal, Signal>> all_pairs, any_pairs;
        for (const Signal& u : small) {
          all_pairs.emplace_back(u, dly::window_all(u, d, m));
          any_pairs.emplace_back(u, dly::window_any(u, d, m));
        }
        ConstancyWitness wa = constancy_witness(all_pairs);
        if (!wa.feasible_dr.contains(d) || !wa.feasible_df.contains(d - m)) {
          Counterexample c;
          c.rationals = {{"d", d}, {"m", m}};
          c.note = "window_all witness (d, d-m) infeasible: dr in " + wa.feasible_dr.to_string() +
                   ", df in " + wa.feasible_df.to_string();
          return Verdict::fails(std::move(c));
        }
        ConstancyWitness wy = constancy_witness(any_pairs);
        if (!wy.feasible_dr.contains(d - m) || !wy.feasible_df.contains(d)) {
          Counterexample c;
          c.rationals = {{"d", d}, {"m", m}};
          c.note = "window_any witness (d-m, d) infeasible: dr in " + wy.feasible_dr.to_string() +
                   ", df in " + wy.feasible_df.to_string();
          return Verdict::fails(std::move(c));
        }
      }
      return Verdict::holds();
    }();
    add("window.constancy", std::move(vc), false,
        true, "witness (d, d-m) for window_all, (d-m, d) for window_any");
  }

  // --- closure of serial connection ----------------------------------------
  {
    std::vector<Dc> det = {ident, Dc::pure(1), Dc::pure(Rat(3, 2)), Dc::window_all(2, 1),
                           Dc::window_any(2, 1)};
    Verdict vd = [&]() -> Verdict {
      for (const Dc& a : det)
        for (const Dc& b : det) {
          Verdict v = check_determinism(Dc::serial(a, b), tiny, budget);
          if (!v.is_holds()) return v;
        }
      return Verdict::holds();
    }();
    add("closure.determinism", std::move(vd), false);

    std::vector<Dc> ti = {Dc::pure(1), Dc::window_all(2, 1), Dc::window_any(3, 1)};
    Verdict vt = [&]() -> Verdict {
      for (const Dc& a : ti)
        for (const Dc& b : ti) {
          Verdict v = check_time_invariance(Dc::serial(a, b), tiny, shifts, budget);
          if (!v.is_holds()) return v;
        }
      return Verdict::holds();
    }();
    add("closure.time-invariance", std::move(vt), false);

    std::vector<Dc> sym = {ident, Dc::pure(1), solsc};
    Verdict vs = [&]() -> Verdict {
      for (const Dc& a : sym)
        for (const Dc& b : sym) {
          Verdict v = check_symmetry(Dc::serial(a, b), tiny, budget);
          if (!v.is_holds()) return v;
        }
      return Verdict::holds();
    }();
    add("closure.symmetry", std::move(vs), false);

    std::vector<Dc> any = {Dc::pure(1), solsc, startup, Dc::window_all(2, 1)};
    Verdict vx = [&]() -> Verdict {
      for (const Dc& a : any)
        for (const Dc& b : any)
          for (const Signal& u : tiny)
            for (const Signal& y : Dc::serial(a, b).enumerate(u, tight))
              if (!stable(u, y)) {
                Counterexample c;
                c.signals = {{"u", u}, {"y", y}};
                c.note = "unstable member of " + Dc::serial(a, b).describe();
                return Verdict::fails(std::move(c));
              }
      return Verdict::holds();
    }();
    add("closure.dc-axiom", std::move(vx), false);
  }

  // --- any condition within a constant condition is constant ----------------
  {
    Verdict v = [&]() -> Verdict {
      const std::pair<Dc, Dc> cases[] = {
          {Dc::meet(Dc::window_all(2, 1), solsc), Dc::window_all(2, 1)},
          {Dc::pure(2), Dc::pure(2)}};
      for (const auto& [i, bound] : cases) {
        Verdict vi = check_inclusion(i, bound, small, budget);
        if (!vi.is_holds()) return vi;
        std::vector<std::pair<Signal, Signal>> pairs;
        for (const Signal& u : small)
          for (const Signal& x : i.enumerate(u, budget)) pairs.emplace_back(u, x);
        ConstancyWitness w = constancy_witness(pairs);
        if (!w.constant()) {
          Counterexample c;
          c.note = i.describe() + " not corpus-constant: dr in " + w.feasible_dr.to_string() +
                   ", df in " + w.feasible_df.to_string();
          return Verdict::fails(std::move(c));
        }
      }
      return Verdict::holds();
    }();
    add("constancy.subset-of-constant", std::move(v), false);
  }

  // --- named facts about the built-ins ---------------------------------------
  {
    Verdict v = [&]() -> Verdict {
      for (const Dc& dc : {ident, Dc::pure(2), Dc::window_all(2, 1), Dc::window_any(2, 1)}) {
        Verdict vd = check_determinism(dc, small, budget);
        if (!vd.is_holds()) return vd;
      }
      return Verdict::holds();
    }();
    add("det.pure-and-windows", std::move(v), false);

    Verdict vti = [&]() -> Verdict {
      for (const Dc& dc : {ident, Dc::pure(3)}) {
        Verdict v2 = check_time_invariance(dc, small, shifts, budget);
        if (!v2.is_holds()) return v2;
      }
      return Verdict::holds();
    }();
    add("ti.pure", std::move(vti), false);

    Verdict vsym = [&]() -> Verdict {
      for (const Dc& dc : {ident, Dc::pure(2), solsc}) {
        Verdict v2 = check_symmetry(dc, small, budget);
        if (!v2.is_holds()) return v2;
      }
      return Verdict::holds();
    }();
    add("sym.pure-and-solsc", std::move(vsym), false);
  }

  // --- the documented counterexamples, reproduced exactly --------------------
  {
    std::vector<Signal> pinned = {sig(0, {2})};
    Verdict v = check_determinism(solsc, pinned, budget);
    bool cex_ok = v.is_fails() &&
                  detail::same_signal_entry(v.counterexample(), "u", sig(0, {2})) &&
                  detail::same_signal_entry(v.counterexample(), "x1", sig(0, {2})) &&
                  detail::same_signal_entry(v.counterexample(), "x2", sig(0, {7}));
    add("solsc.non-deterministic", std::move(v), true, cex_ok,
        "two stable responses to sig(0; 2)");
  }
  {
    std::vector<Signal> pinned = {Signal::constant(true)};
    std::vector<Rat> neg_shift = {Rat(-2)};
    Verdict v = check_time_invariance(solsc, pinned, neg_shift, budget);
    bool cex_ok = v.is_fails() &&
                  detail::same_signal_entry(v.counterexample(), "u", Signal::constant(true)) &&
                  detail::same_signal_entry(v.counterexample(), "x", sig(0, {1})) &&
                  detail::same_rational_entry(v.counterexample(), "d", Rat(-2));
    add("solsc.time-variable", std::move(v), true, cex_ok,
        "u = sig(1;), x = sig(0; 1), d = -2");
  }
  {
    std::vector<Signal> pinned = {sig(0, {2, 3})};
    Verdict v = check_symmetry(Dc::window_all(2, 2), pinned, budget);
    bool cex_ok = v.is_fails() &&
                  detail::same_signal_entry(v.counterexample(), "u", sig(0, {2, 3})) &&
                  detail::same_signal_entry(v.counterexample(), "x", Signal::constant(false));
    add("windowall.asymmetric", std::move(v), true, cex_ok,
        "width-1 pulse filtered on one polarity only");
  }

  std::sort(report.laws.begin(), report.laws.end(),
            [](const LawResult& a, const LawResult& b) { return a.name < b.name; });
  return report;
}

} // namespace dly
