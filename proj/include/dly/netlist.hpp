#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dly/dc_parse.hpp"
#include "dly/delay.hpp"
#include "dly/errors.hpp"
#include "dly/signal.hpp"

namespace dly {

// A gate computes a Boolean function of up to kMaxFanIn operands,
// instantaneously. table[r] is the output for the operand assignment whose
// bit i (operand i, least significant first) spells r.
inline constexpr std::size_t kMaxFanIn = 8;

struct GateNode {
  std::vector<bool> table;
  std::vector<std::string> operands;
};

// A delay node applies a deterministic delay model to one operand.
struct DelayNode {
  Dc model;
  std::string operand;
  std::string model_text;
};

struct Netlist {
  std::vector<std::string> inputs;
  std::vector<std::pair<std::string, std::variant<GateNode, DelayNode>>> nodes;
  std::vector<std::string> outputs;
};

using Stimulus = std::map<std::string, Signal>;

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline std::vector<bool> named_gate_table(const std::string& kind, std::size_t arity, int line) {
  if (kind == "not" && arity != 1) throw parse_error("'not' takes exactly one operand", line);
  if (arity == 0) throw parse_error("gate needs at least one operand", line);
  std::vector<bool> table(std::size_t(1) << arity);
  for (std::size_t r = 0; r < table.size(); ++r) {
    bool acc;
    if (kind == "not") {
      acc = !(r & 1u);
    } else if (kind == "and" || kind == "nand") {
      acc = true;
      for (std::size_t i = 0; i < arity; ++i) acc = acc && ((r >> i) & 1u);
      if (kind == "nand") acc = !acc;
    } else if (kind == "or" || kind == "nor") {
      acc = false;
      for (std::size_t i = 0; i < arity; ++i) acc = acc || ((r >> i) & 1u);
      if (kind == "nor") acc = !acc;
    } else if (kind == "xor") {
      acc = false;
      for (std::size_t i = 0; i < arity; ++i) acc = acc != bool((r >> i) & 1u);
    } else {
      throw parse_error("unknown gate kind '" + kind + "'", line);
    }
    table[r] = acc;
  }
  return table;
}

inline const std::vector<std::string>& operand_names(const std::variant<GateNode, DelayNode>& n,
                                                     std::vector<std::string>& scratch) {
  if (const auto* g = std::get_if<GateNode>(&n)) return g->operands;
  scratch = {std::get<DelayNode>(n).operand};
  return scratch;
}

// Pointwise evaluation of a truth table over operand signals: walk the
// merged edge timeline and record genuine output changes.
inline Signal eval_gate(const GateNode& g, const std::vector<const Signal*>& ops) {
  std::vector<bool> vals(ops.size());
  std::size_t row = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    vals[i] = ops[i]->initial();
    row |= std::size_t(vals[i]) << i;
  }
  bool cur = g.table[row];
  bool initial = cur;

  std::vector<std::size_t> idx(ops.size(), 0);
  std::vector<Rat> edges;
  for (;;) {
    const Rat* next_t = nullptr;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& e = ops[i]->edges();
      if (idx[i] < e.size() && (!next_t || e[idx[i]] < *next_t)) next_t = &e[idx[i]];
    }
    if (!next_t) break;
    Rat t = *next_t;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& e = ops[i]->edges();
      if (idx[i] < e.size() && e[idx[i]] == t) {
        vals[i] = !vals[i];
        ++idx[i];
      }
    }
    row = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) row |= std::size_t(vals[i]) << i;
    bool next = g.table[row];
    if (next != cur) {
      edges.push_back(std::move(t));
      cur = next;
    }
  }
  return Signal(initial, std::move(edges));
}

} // namespace detail

// Line-oriented format: `input N`, `gate N = KIND OPS...`,
// `delay N = DC-EXPR OP`, `output N`; comments start with '#'. KIND is one
// of and/or/xor/nand/nor/not or an explicit truth table `tt:BITS` with
// 2^arity bits, operand 0 least significant.
inline Netlist parse_netlist(std::string_view text) {
  Netlist n;
  std::istringstream is{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::vector<std::string> tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    if (head == "input") {
      if (tok.size() != 2) throw parse_error("expected 'input NAME'", lineno);
      n.inputs.push_back(tok[1]);
    } else if (head == "output") {
      if (tok.size() != 2) throw parse_error("expected 'output NAME'", lineno);
      n.outputs.push_back(tok[1]);
    } else if (head == "gate") {
      if (tok.size() < 5 || tok[2] != "=")
        throw parse_error("expected 'gate NAME = KIND OPERANDS...'", lineno);
      GateNode g;
      g.operands.assign(tok.begin() + 4, tok.end());
      if (g.operands.size() > kMaxFanIn)
        throw parse_error("gate fan-in exceeds " + std::to_string(kMaxFanIn), lineno);
      const std::string& kind = tok[3];
      if (kind.starts_with("tt:")) {
        std::string bits = kind.substr(3);
        if (bits.size() != (std::size_t(1) << g.operands.size()))
          throw parse_error("truth table needs 2^arity bits, got " + std::to_string(bits.size()),
                            lineno);
        for (char c : bits) {
          if (c != '0' && c != '1') throw parse_error("truth table bits must be 0/1", lineno);
          g.table.push_back(c == '1');
        }
      } else {
        g.table = detail::named_gate_table(kind, g.operands.size(), lineno);
      }
      n.nodes.emplace_back(tok[1], std::move(g));
    } else if (head == "delay") {
      if (tok.size() < 5 || tok[2] != "=")
        throw parse_error("expected 'delay NAME = DC-EXPR OPERAND'", lineno);
      std::string expr;
      for (std::size_t i = 3; i + 1 < tok.size(); ++i) {
        if (!expr.empty()) expr += ' ';
        expr += tok[i];
      }
      Dc model = [&] {
        try {
          return parse_dc(expr);
        } catch (const parse_error& e) {
          throw parse_error(std::string("in delay model: ") + e.what(), lineno);
        }
      }();
      if (!model.lookahead())
        throw parse_error("delay model must be deterministic (ident, pure, window_all, "
                          "window_any or serial compositions of those): " +
                              expr,
                          lineno);
      n.nodes.emplace_back(tok[1], DelayNode{std::move(model), tok.back(), std::move(expr)});
    } else {
      throw parse_error("unknown directive '" + head + "'", lineno);
    }
  }
  return n;
}

// Well-formedness: unique names, resolvable references, and every directed
// cycle broken by a delay with strictly positive lookahead.
inline void validate(const Netlist& n) {
  std::set<std::string> names;
  for (const std::string& in : n.inputs)
    if (!names.insert(in).second) throw duplicate_name("duplicate name '" + in + "'");
  std::map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    const std::string& name = n.nodes[i].first;
    if (!names.insert(name).second) throw duplicate_name("duplicate name '" + name + "'");
    node_index[name] = i;
  }
  std::vector<std::string> scratch;
  for (const auto& [name, node] : n.nodes)
    for (const std::string& op : detail::operand_names(node, scratch))
      if (!names.contains(op))
        throw dangling_reference("node '" + name + "' references unknown '" + op + "'");
  for (const std::string& out : n.outputs)
    if (!node_index.contains(out))
      throw dangling_reference("output '" + out + "' is not a node");

  // Delays with positive lookahead break cycles; everything else must be
  // acyclic among themselves.
  auto is_cycle_breaker = [&](std::size_t i) {
    const auto* d = std::get_if<DelayNode>(&n.nodes[i].second);
    return d && *d->model.lookahead() > 0;
  };
  enum class Color { White, Grey, Black };
  std::vector<Color> color(n.nodes.size(), Color::White);
  std::vector<std::size_t> stack;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    color[v] = Color::Grey;
    stack.push_back(v);
    std::vector<std::string> sc;
    for (const std::string& op : detail::operand_names(n.nodes[v].second, sc)) {
      auto it = node_index.find(op);
      if (it == node_index.end()) continue; // operand is an input
      std::size_t w = it->second;
      if (is_cycle_breaker(w)) continue;
      if (color[w] == Color::Grey) {
        std::string cycle;
        auto pos = std::find(stack.begin(), stack.end(), w);
        for (auto jt = pos; jt != stack.end(); ++jt)
          cycle += n.nodes[*jt].first + " -> ";
        cycle += n.nodes[w].first;
        throw zero_delay_cycle("cycle without positive-lookahead delay: " + cycle);
      }
      if (color[w] == Color::White) self(self, w);
    }
    stack.pop_back();
    color[v] = Color::Black;
  };
  for (std::size_t v = 0; v < n.nodes.size(); ++v)
    if (color[v] == Color::White && !is_cycle_breaker(v)) dfs(dfs, v);
}

namespace detail {

// Tarjan over node indices; returns components in dependency-first order.
inline std::vector<std::vector<std::size_t>>
strong_components(const Netlist& n, const std::map<std::string, std::size_t>& node_index) {
  std::size_t cnt = n.nodes.size();
  std::vector<std::vector<std::size_t>> succ(cnt);
  std::vector<std::string> scratch;
  for (std::size_t v = 0; v < cnt; ++v)
    for (const std::string& op : operand_names(n.nodes[v].second, scratch))
      if (auto it = node_index.find(op); it != node_index.end())
        succ[v].push_back(it->second); // edge v -> operand

  std::vector<int> index(cnt, -1), low(cnt, 0);
  std::vector<bool> on_stack(cnt, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int next_index = 0;

  auto dfs = [&](auto&& self, std::size_t v) -> void {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      for (;;) {
        std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < cnt; ++v)
    if (index[v] < 0) dfs(dfs, v);
  // Tarjan emits a component after all components it depends on (edges point
  // at operands), which is exactly evaluation order.
  return comps;
}

} // namespace detail

// Exact simulation on [0, horizon]: gates are instantaneous, delay nodes
// apply their model, acyclic regions evaluate in dependency order and each
// feedback region is advanced in sweeps of its minimal positive lookahead
// until the assignment on [0, horizon] is a fixed point. Results carry the
// value on [0, horizon] with the final value extended.
inline std::map<std::string, Signal> simulate(const Netlist& n, const Stimulus& stimulus,
                                              const Rat& horizon) {
  validate(n);
  if (horizon < 0) throw horizon_exceeded("horizon must be >= 0");
  for (const std::string& in : n.inputs) {
    auto it = stimulus.find(in);
    if (it == stimulus.end())
      throw dangling_reference("stimulus does not drive input '" + in + "'");
    if (!it->second.edges().empty() && it->second.edges().back() > horizon)
      throw horizon_exceeded("stimulus for '" + in + "' has an edge beyond the horizon");
  }

  std::map<std::string, std::size_t> node_index;
  for (std::size_t i = 0; i < n.nodes.size(); ++i) node_index[n.nodes[i].first] = i;

  std::vector<std::optional<Signal>> value(n.nodes.size());
  auto signal_of = [&](const std::string& name) -> const Signal& {
    if (auto it = node_index.find(name); it != node_index.end()) return *value[it->second];
    return stimulus.at(name);
  };

  auto compute_node = [&](std::size_t v) -> Signal {
    if (const auto* g = std::get_if<GateNode>(&n.nodes[v].second)) {
      std::vector<const Signal*> ops;
      ops.reserve(g->operands.size());
      for (const std::string& op : g->operands) ops.push_back(&signal_of(op));
      return detail::eval_gate(*g, ops);
    }
    const auto& d = std::get<DelayNode>(n.nodes[v].second);
    return d.model.apply(signal_of(d.operand));
  };

  for (const auto& comp : detail::strong_components(n, node_index)) {
    bool cyclic = comp.size() > 1;
    if (!cyclic) {
      // self-loop?
      std::vector<std::string> sc;
      for (const std::string& op : detail::operand_names(n.nodes[comp[0]].second, sc))
        if (node_index.count(op) && node_index.at(op) == comp[0]) cyclic = true;
    }
    if (!cyclic) {
      value[comp[0]] = compute_node(comp[0]);
      continue;
    }

    // Feedback region. Split into delays with positive lookahead (read the
    // previous sweep) and the instantaneous rest (read the current sweep in
    // dependency order).
    std::set<std::size_t> in_comp(comp.begin(), comp.end());
    std::vector<std::size_t> breakers, instant;
    Rat l_min;
    bool have_l = false;
    for (std::size_t v : comp) {
      const auto* d = std::get_if<DelayNode>(&n.nodes[v].second);
      if (d && *d->model.lookahead() > 0) {
        breakers.push_back(v);
        if (!have_l || *d->model.lookahead() < l_min) l_min = *d->model.lookahead();
        have_l = true;
      } else {
        instant.push_back(v);
      }
    }
    // topological order of the instantaneous subgraph (acyclic by validate)
    std::vector<std::size_t> order;
    std::set<std::size_t> done;
    auto topo = [&](auto&& self, std::size_t v) -> void {
      if (done.count(v)) return;
      done.insert(v);
      std::vector<std::string> sc;
      for (const std::string& op : detail::operand_names(n.nodes[v].second, sc))
        if (auto it = node_index.find(op);
            it != node_index.end() && in_comp.count(it->second) &&
            !std::count(breakers.begin(), breakers.end(), it->second))
          self(self, it->second);
      order.push_back(v);
    };
    for (std::size_t v : instant) topo(topo, v);

    // Pre-time-0 steady state: free choices live on the breakers, the rest
    // follows instantaneously; keep the first consistent assignment.
    if (breakers.size() > 16)
      throw horizon_exceeded("feedback region with more than 16 delays");
    std::map<std::size_t, bool> init;
    bool found = false;
    for (std::size_t mask = 0; mask < (std::size_t(1) << breakers.size()) && !found; ++mask) {
      std::map<std::size_t, bool> trial;
      for (std::size_t b = 0; b < breakers.size(); ++b) trial[breakers[b]] = (mask >> b) & 1u;
      auto initial_of = [&](const std::string& name) -> bool {
        if (auto it = node_index.find(name); it != node_index.end()) {
          if (auto jt = trial.find(it->second); jt != trial.end()) return jt->second;
          return value[it->second]->initial();
        }
        return stimulus.at(name).initial();
      };
      for (std::size_t v : order) {
        bool b;
        if (const auto* g = std::get_if<GateNode>(&n.nodes[v].second)) {
          std::size_t row = 0;
          for (std::size_t i = 0; i < g->operands.size(); ++i)
            row |= std::size_t(initial_of(g->operands[i])) << i;
          b = g->table[row];
        } else {
          b = initial_of(std::get<DelayNode>(n.nodes[v].second).operand);
        }
        trial[v] = b;
      }
      bool consistent = true;
      for (std::size_t br : breakers) {
        const auto& d = std::get<DelayNode>(n.nodes[br].second);
        if (auto it = node_index.find(d.operand); it != node_index.end()) {
          if (trial[br] != trial[it->second]) consistent = false;
        } else if (trial[br] != stimulus.at(d.operand).initial()) {
          consistent = false;
        }
        if (!consistent) break;
      }
      if (consistent) {
        init = std::move(trial);
        found = true;
      }
    }
    if (!found)
      throw horizon_exceeded("feedback region has no stable state before time 0");

    for (std::size_t v : comp) value[v] = Signal::constant(init.at(v));

    // Sweeps: each advances exactness by at least l_min.
    BigInt sweeps_big = ceil_div(horizon / l_min) + 3;
    std::size_t max_sweeps =
        sweeps_big > 1000000 ? 1000000 : static_cast<std::size_t>(sweeps_big);
    bool stable_sweep = false;
    for (std::size_t k = 0; k < max_sweeps && !stable_sweep; ++k) {
      std::map<std::size_t, Signal> prev;
      for (std::size_t v : comp) prev.emplace(v, *value[v]);
      for (std::size_t v : breakers) {
        const auto& d = std::get<DelayNode>(n.nodes[v].second);
        // read the previous sweep's operand value
        const Signal* op;
        if (auto it = node_index.find(d.operand);
            it != node_index.end() && in_comp.count(it->second))
          op = &prev.at(it->second);
        else
          op = &signal_of(d.operand);
        value[v] = d.model.apply(*op);
      }
      for (std::size_t v : order) value[v] = compute_node(v);
      stable_sweep = true;
      for (std::size_t v : comp)
        if (!(truncate_after(*value[v], horizon) == truncate_after(prev.at(v), horizon))) {
          stable_sweep = false;
          break;
        }
    }
    if (!stable_sweep)
      throw horizon_exceeded("feedback region did not stabilize within the horizon");
  }

  std::map<std::string, Signal> out;
  for (std::size_t v = 0; v < n.nodes.size(); ++v)
    out.emplace(n.nodes[v].first, truncate_after(*value[v], horizon));
  return out;
}

// Transmission delay between a stimulus port and a simulated node.
inline TransmissionDelayReport path_delay_report(const Netlist& n, const Stimulus& s,
                                                 const std::string& input,
                                                 const std::string& output,
                                                 const Rat& horizon) {
  auto result = simulate(n, s, horizon);
  auto in_it = s.find(input);
  if (in_it == s.end()) throw dangling_reference("no stimulus named '" + input + "'");
  auto out_it = result.find(output);
  if (out_it == result.end()) throw dangling_reference("no node named '" + output + "'");
  return transmission_delay(in_it->second, out_it->second);
}

} // namespace dly
