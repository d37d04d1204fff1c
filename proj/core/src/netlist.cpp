#include "mc/netlist.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "mc/errors.hpp"

namespace mc {

std::size_t Circuit::count(Role role) const {
  return static_cast<std::size_t>(
      std::count_if(registers.begin(), registers.end(),
                    [role](const RegisterDecl& r) { return r.role == role; }));
}

std::optional<std::size_t> Circuit::find_register(std::string_view n) const {
  for (std::size_t i = 0; i < registers.size(); ++i)
    if (registers[i].name == n) return i;
  return std::nullopt;
}

std::optional<std::size_t> Circuit::find_gate(std::string_view id) const {
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].id == id) return i;
  return std::nullopt;
}

TernaryWord Circuit::initial_values() const {
  TernaryWord w(registers.size() - num_inputs());
  std::size_t j = 0;
  for (const auto& r : registers)
    if (r.role != Role::Input) w.set(j++, r.init);
  return w;
}

Circuit Circuit::with_simple_registers() const {
  Circuit c = *this;
  for (auto& r : c.registers) r.type = RegisterType::Simple;
  return c;
}

bool Circuit::has_masking_registers() const {
  return std::any_of(registers.begin(), registers.end(),
                     [](const RegisterDecl& r) { return r.type != RegisterType::Simple; });
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Input: return "input";
    case Role::Local: return "local";
    case Role::Output: return "output";
  }
  return "?";
}

std::string_view to_string(RegisterType type) {
  switch (type) {
    case RegisterType::Simple: return "simple";
    case RegisterType::Mask0: return "mask0";
    case RegisterType::Mask1: return "mask1";
  }
  return "?";
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
    case GateKind::Nand: return "NAND";
    case GateKind::Nor: return "NOR";
    case GateKind::Xor: return "XOR";
    case GateKind::Buf: return "BUF";
    case GateKind::Const0: return "CONST0";
    case GateKind::Const1: return "CONST1";
    case GateKind::Table: return "TABLE";
  }
  return "?";
}

namespace {

Ternary negate(Ternary t) {
  if (t == Ternary::Meta) return t;
  return t == Ternary::One ? Ternary::Zero : Ternary::One;
}

// AND over the inputs: a single 0 decides, otherwise any M leaves it open.
Ternary kleene_and(std::span<const Ternary> in) {
  Ternary acc = Ternary::One;
  for (Ternary t : in) {
    if (t == Ternary::Zero) return Ternary::Zero;
    if (t == Ternary::Meta) acc = Ternary::Meta;
  }
  return acc;
}

Ternary kleene_or(std::span<const Ternary> in) {
  Ternary acc = Ternary::Zero;
  for (Ternary t : in) {
    if (t == Ternary::One) return Ternary::One;
    if (t == Ternary::Meta) acc = Ternary::Meta;
  }
  return acc;
}

Ternary kleene_table(const BooleanFunction& f, std::span<const Ternary> in) {
  std::uint64_t base = 0;
  std::vector<unsigned> free_bits;
  const std::size_t k = in.size();
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned shift = static_cast<unsigned>(k - 1 - i);
    if (in[i] == Ternary::One) base |= std::uint64_t{1} << shift;
    if (in[i] == Ternary::Meta) free_bits.push_back(shift);
  }
  const bool first = f.row(base) & 1;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << free_bits.size()); ++m) {
    std::uint64_t x = base;
    for (std::size_t j = 0; j < free_bits.size(); ++j)
      if (m >> j & 1) x |= std::uint64_t{1} << free_bits[j];
    if (static_cast<bool>(f.row(x) & 1) != first) return Ternary::Meta;
  }
  return to_ternary(first);
}

}  // namespace

Ternary eval_gate(GateKind kind, const BooleanFunction& table, std::span<const Ternary> in) {
  switch (kind) {
    case GateKind::And: return kleene_and(in);
    case GateKind::Or: return kleene_or(in);
    case GateKind::Nand: return negate(kleene_and(in));
    case GateKind::Nor: return negate(kleene_or(in));
    case GateKind::Not: return negate(in[0]);
    case GateKind::Buf: return in[0];
    case GateKind::Xor:
      if (in[0] == Ternary::Meta || in[1] == Ternary::Meta) return Ternary::Meta;
      return to_ternary(in[0] != in[1]);
    case GateKind::Const0: return Ternary::Zero;
    case GateKind::Const1: return Ternary::One;
    case GateKind::Table: return kleene_table(table, in);
  }
  return Ternary::Meta;
}

std::string check_fanin(const Gate& g) {
  const std::size_t n = g.fanin.size();
  auto want = [&](std::string_view what) {
    return "gate " + g.id + " (" + std::string(to_string(g.kind)) + ") needs " +
           std::string(what) + " inputs, has " + std::to_string(n);
  };
  switch (g.kind) {
    case GateKind::And:
    case GateKind::Or:
    case GateKind::Nand:
    case GateKind::Nor:
      return n >= 2 ? "" : want("at least 2");
    case GateKind::Not:
    case GateKind::Buf:
      return n == 1 ? "" : want("1");
    case GateKind::Xor:
      return n == 2 ? "" : want("2");
    case GateKind::Const0:
    case GateKind::Const1:
      return n == 0 ? "" : want("0");
    case GateKind::Table:
      if (g.table.outputs() != 1) return "gate " + g.id + " has no single-output table";
      return n == g.table.inputs() ? "" : want(std::to_string(g.table.inputs()));
  }
  return "";
}

namespace {

// Kahn's algorithm over gates, lowest declaration index first. Returns
// std::nullopt if some gates lie on a cycle; `stuck` then lists them.
std::optional<std::vector<std::size_t>> topo_order(const Circuit& c,
                                                   std::vector<std::size_t>* stuck) {
  const std::size_t n = c.gates.size();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> users(n);
  for (std::size_t g = 0; g < n; ++g)
    for (const NodeRef& src : c.gates[g].fanin)
      if (!src.is_register() && src.index < n) {
        ++indeg[g];
        users[src.index].push_back(g);
      }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t g = 0; g < n; ++g)
    if (indeg[g] == 0) ready.push(g);
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t g = ready.top();
    ready.pop();
    order.push_back(g);
    for (std::size_t u : users[g])
      if (--indeg[u] == 0) ready.push(u);
  }
  if (order.size() == n) return order;
  if (stuck)
    for (std::size_t g = 0; g < n; ++g)
      if (indeg[g] != 0) stuck->push_back(g);
  return std::nullopt;
}

}  // namespace

std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  auto add = [&](Violation::Kind k, std::string msg) { out.push_back({k, std::move(msg)}); };

  // Names and roles.
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_name;
  for (std::size_t i = 0; i < c.registers.size(); ++i) by_name[c.registers[i].name].push_back(i);
  for (const auto& [name, idx] : by_name) {
    if (idx.size() < 2) continue;
    bool in = false, outp = false;
    for (std::size_t i : idx) {
      in |= c.registers[i].role == Role::Input;
      outp |= c.registers[i].role == Role::Output;
    }
    if (in && outp)
      add(Violation::Kind::Role, "register " + name + " is declared both input and output");
    else
      add(Violation::Kind::Name, "register " + name + " is declared more than once");
  }
  std::set<std::string, std::less<>> gate_ids;
  for (const Gate& g : c.gates) {
    if (!gate_ids.insert(g.id).second)
      add(Violation::Kind::Name, "gate " + g.id + " is declared more than once");
    if (by_name.contains(g.id))
      add(Violation::Kind::Name, "gate " + g.id + " shares its name with a register");
  }

  // State order In ∘ Loc ∘ Out.
  for (std::size_t i = 1; i < c.registers.size(); ++i)
    if (static_cast<int>(c.registers[i].role) < static_cast<int>(c.registers[i - 1].role)) {
      add(Violation::Kind::Order, "register " + c.registers[i].name +
                                      " is out of order (inputs, then locals, then outputs)");
      break;
    }

  auto check_ref = [&](const NodeRef& r, const std::string& where) {
    if (r.is_register()) {
      if (r.index >= c.registers.size()) {
        add(Violation::Kind::Reference, where + " refers to a nonexistent register");
      } else if (c.registers[r.index].role == Role::Output) {
        add(Violation::Kind::Reference,
            where + " reads output register " + c.registers[r.index].name +
                " (output registers are not DAG inputs)");
      }
    } else if (r.index >= c.gates.size()) {
      add(Violation::Kind::Reference, where + " refers to a nonexistent gate");
    }
  };

  for (const Gate& g : c.gates) {
    for (const NodeRef& r : g.fanin) check_ref(r, "gate " + g.id);
    if (auto msg = check_fanin(g); !msg.empty()) add(Violation::Kind::Fanin, msg);
  }

  // Every non-input register has exactly one driver; inputs have none.
  if (c.drivers.size() != c.registers.size()) {
    add(Violation::Kind::Driver, "driver table does not match the register list");
  } else {
    for (std::size_t i = 0; i < c.registers.size(); ++i) {
      const auto& reg = c.registers[i];
      if (reg.role == Role::Input) {
        if (c.drivers[i]) add(Violation::Kind::Driver, "input register " + reg.name + " is driven");
      } else if (!c.drivers[i]) {
        add(Violation::Kind::Driver, "register " + reg.name + " has no driver");
      } else {
        check_ref(*c.drivers[i], "driver of " + reg.name);
      }
    }
  }

  std::vector<std::size_t> stuck;
  if (!topo_order(c, &stuck)) {
    std::string msg = "combinational cycle through gates";
    for (std::size_t g : stuck) msg += " " + c.gates[g].id;
    add(Violation::Kind::Cycle, msg);
  }
  return out;
}

Dag Dag::compile(const Circuit& c) {
  if (auto v = validate(c); !v.empty()) {
    std::string msg = "invalid circuit";
    if (!c.name.empty()) msg += " " + c.name;
    for (const auto& x : v) msg += "\n  " + x.message;
    throw InvalidCircuit(msg);
  }
  Dag d;
  const std::size_t nin = c.registers.size() - c.num_outputs();
  d.inputs_ = nin;
  const auto order = *topo_order(c, nullptr);
  std::vector<std::size_t> node_of_gate(c.gates.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) node_of_gate[order[pos]] = nin + pos;
  auto node = [&](const NodeRef& r) { return r.is_register() ? r.index : node_of_gate[r.index]; };

  // Tables are copied so the Dag does not borrow from the Circuit.
  for (std::size_t g : order) d.tables_.push_back(c.gates[g].table);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Gate& g = c.gates[order[pos]];
    CompiledGate cg{g.kind, pos, {}};
    cg.fanin.reserve(g.fanin.size());
    for (const auto& r : g.fanin) cg.fanin.push_back(node(r));
    d.gates_.push_back(std::move(cg));
  }
  for (std::size_t i = 0; i < c.registers.size(); ++i)
    if (c.registers[i].role != Role::Input) d.outputs_.push_back(node(*c.drivers[i]));
  return d;
}

void Dag::eval_into(const TernaryWord& x, std::vector<Ternary>& nodes, TernaryWord& out) const {
  if (x.width() != inputs_)
    throw DomainError("DAG input width " + std::to_string(inputs_) + ", got word " + x.str());
  nodes.resize(inputs_ + gates_.size());
  for (std::size_t i = 0; i < inputs_; ++i) nodes[i] = x[i];
  Ternary buf[16];
  std::vector<Ternary> wide;
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    const auto& cg = gates_[g];
    const std::size_t k = cg.fanin.size();
    Ternary* in = buf;
    if (k > 16) {
      wide.resize(k);
      in = wide.data();
    }
    for (std::size_t j = 0; j < k; ++j) in[j] = nodes[cg.fanin[j]];
    nodes[inputs_ + g] = eval_gate(cg.kind, tables_[cg.table], std::span<const Ternary>(in, k));
  }
  if (out.width() != outputs_.size()) out = TernaryWord(outputs_.size());
  for (std::size_t i = 0; i < outputs_.size(); ++i) out.set(i, nodes[outputs_[i]]);
}

TernaryWord Dag::eval(const TernaryWord& x) const {
  std::vector<Ternary> nodes;
  TernaryWord out(outputs_.size());
  eval_into(x, nodes, out);
  return out;
}

TernaryWord eval_dag(const Dag& dag, const TernaryWord& x) { return dag.eval(x); }

// ---------------------------------------------------------------------------

CircuitBuilder::CircuitBuilder(std::string name) { c_.name = std::move(name); }

NodeRef CircuitBuilder::add_register(RegisterDecl decl) {
  c_.registers.push_back(std::move(decl));
  c_.drivers.emplace_back();
  return NodeRef::reg(c_.registers.size() - 1);
}

NodeRef CircuitBuilder::add_input(std::string name, RegisterType type) {
  return add_register({std::move(name), Role::Input, type, Ternary::Zero});
}

NodeRef CircuitBuilder::add_local(std::string name, RegisterType type, Ternary init) {
  return add_register({std::move(name), Role::Local, type, init});
}

void CircuitBuilder::add_output(std::string name, RegisterType type, Ternary init) {
  add_register({std::move(name), Role::Output, type, init});
}

NodeRef CircuitBuilder::add_gate(std::string id, GateKind kind, std::vector<NodeRef> fanin) {
  c_.gates.push_back(Gate{std::move(id), kind, {}, std::move(fanin)});
  return NodeRef::gate(c_.gates.size() - 1);
}

NodeRef CircuitBuilder::add_table(std::string id, BooleanFunction table,
                                  std::vector<NodeRef> fanin) {
  c_.gates.push_back(Gate{std::move(id), GateKind::Table, std::move(table), std::move(fanin)});
  return NodeRef::gate(c_.gates.size() - 1);
}

NodeRef CircuitBuilder::add_and(std::string id, std::vector<NodeRef> fanin) {
  if (fanin.empty()) return add_gate(std::move(id), GateKind::Const1, {});
  if (fanin.size() == 1) return fanin[0];
  return add_gate(std::move(id), GateKind::And, std::move(fanin));
}

NodeRef CircuitBuilder::add_or(std::string id, std::vector<NodeRef> fanin) {
  if (fanin.empty()) return add_gate(std::move(id), GateKind::Const0, {});
  if (fanin.size() == 1) return fanin[0];
  return add_gate(std::move(id), GateKind::Or, std::move(fanin));
}

void CircuitBuilder::drive(std::string_view reg, NodeRef src) {
  auto i = c_.find_register(reg);
  if (!i) throw DomainError("drive: unknown register " + std::string(reg));
  c_.drivers[*i] = src;
}

std::vector<NodeRef> CircuitBuilder::instantiate(const Circuit& sub, std::string_view prefix,
                                                 std::span<const NodeRef> inputs) {
  if (sub.num_locals() != 0)
    throw DomainError("instantiate: " + sub.name + " has local registers");
  if (inputs.size() != sub.num_inputs())
    throw DomainError("instantiate: " + sub.name + " takes " +
                      std::to_string(sub.num_inputs()) + " inputs, got " +
                      std::to_string(inputs.size()));
  const std::size_t base = c_.gates.size();
  auto map = [&](const NodeRef& r) {
    return r.is_register() ? inputs[r.index] : NodeRef::gate(base + r.index);
  };
  for (const Gate& g : sub.gates) {
    Gate copy = g;
    copy.id = std::string(prefix) + g.id;
    for (auto& r : copy.fanin) r = map(r);
    c_.gates.push_back(std::move(copy));
  }
  std::vector<NodeRef> outs;
  for (std::size_t i = 0; i < sub.registers.size(); ++i)
    if (sub.registers[i].role == Role::Output) outs.push_back(map(sub.drivers.at(i).value()));
  return outs;
}

Circuit CircuitBuilder::build() const {
  std::vector<std::size_t> perm(c_.registers.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return static_cast<int>(c_.registers[a].role) < static_cast<int>(c_.registers[b].role);
  });
  std::vector<std::size_t> where(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;

  Circuit c;
  c.name = c_.name;
  for (std::size_t i : perm) {
    c.registers.push_back(c_.registers[i]);
    c.drivers.push_back(c_.drivers[i]);
  }
  auto remap = [&](NodeRef& r) {
    if (r.is_register()) r.index = where[r.index];
  };
  c.gates = c_.gates;
  for (auto& g : c.gates)
    for (auto& r : g.fanin) remap(r);
  for (auto& d : c.drivers)
    if (d) remap(*d);

  if (auto v = validate(c); !v.empty()) {
    std::string msg = "builder produced an invalid circuit " + c.name;
    for (const auto& x : v) msg += "\n  " + x.message;
    throw InvalidCircuit(msg);
  }
  return c;
}

}  // namespace mc
