#include <map>

#include "mc/analysis.hpp"
#include "mc/errors.hpp"

namespace mc {

Circuit synthesize(const FunctionSpec& h, const std::string& name, const Budget& budget) {
  if (!is_natural(h)) throw DomainError("synthesize: specification is not natural");
  const auto nat = *to_natural_form(h);
  const std::size_t m = nat.arity(), n = nat.coarity();

  CircuitBuilder b(name);
  std::vector<NodeRef> in;
  for (std::size_t i = 0; i < m; ++i) in.push_back(b.add_input("x" + std::to_string(i)));
  for (std::size_t j = 0; j < n; ++j) b.add_output("y" + std::to_string(j));

  std::map<std::size_t, NodeRef> negated;
  auto literal = [&](std::size_t i, bool positive) {
    if (positive) return in[i];
    auto it = negated.find(i);
    if (it == negated.end())
      it = negated.emplace(i, b.add_gate("not_x" + std::to_string(i), GateKind::Not, {in[i]})).first;
    return it->second;
  };

  for (std::size_t j = 0; j < n; ++j) {
    const std::string y = "y" + std::to_string(j);
    // Boolean restriction: One stays 1, Zero and Any become 0.
    bool all_one = true;
    const auto fb = BooleanFunction::from_callable(m, 1, [&](std::uint64_t x) -> std::uint64_t {
      const bool one = nat.entries(TernaryWord::from_bits(x, m))[j] == Entry::One;
      all_one = all_one && one;
      return one ? 1 : 0;
    });
    if (all_one) {
      b.drive(y, b.add_gate(y + "_one", GateKind::Const1, {}));
      continue;
    }
    const auto primes = prime_implicants(fb);
    if (primes.empty()) {
      b.drive(y, b.add_gate(y + "_zero", GateKind::Const0, {}));
      continue;
    }
    std::vector<NodeRef> terms;
    for (std::size_t p = 0; p < primes.size(); ++p) {
      std::vector<NodeRef> lits;
      for (std::size_t i = 0; i < m; ++i)
        if (primes[p][i] != Ternary::Meta) lits.push_back(literal(i, primes[p][i] == Ternary::One));
      terms.push_back(b.add_and(y + "_p" + std::to_string(p), std::move(lits)));
    }
    b.drive(y, b.add_or(y + "_or", std::move(terms)));
  }

  Circuit c = b.build();
  if (!implements(c, 1, nat, budget).holds)
    throw Error("synthesize: internal error, synthesized circuit fails its own check");
  return c;
}

Circuit unroll(const Circuit& c, std::size_t rounds) {
  if (rounds == 0) throw DomainError("unroll needs at least one round");
  if (c.has_masking_registers())
    throw DomainError("unroll: circuit " + c.name + " has masking registers");
  if (auto v = validate(c); !v.empty()) throw InvalidCircuit("unroll: " + v.front().message);
  if (rounds == 1) return c;

  Circuit u;
  u.name = c.name + "_x" + std::to_string(rounds);
  u.registers = c.registers;
  u.drivers.assign(c.registers.size(), std::nullopt);

  const std::size_t nin = c.num_inputs();
  const std::size_t nread = c.registers.size() - c.num_outputs();
  // Node feeding each DAG input position in the current copy.
  std::vector<NodeRef> feed(nread);
  for (std::size_t i = 0; i < nread; ++i) feed[i] = NodeRef::reg(i);

  for (std::size_t t = 1; t <= rounds; ++t) {
    const std::string prefix = "r" + std::to_string(t) + ".";
    const std::size_t base = u.gates.size();
    auto map = [&](const NodeRef& r) {
      return r.is_register() ? feed[r.index] : NodeRef::gate(base + r.index);
    };
    for (const Gate& g : c.gates) {
      Gate copy = g;
      copy.id = prefix + g.id;
      for (auto& r : copy.fanin) r = map(r);
      u.gates.push_back(std::move(copy));
    }
    std::vector<NodeRef> next = feed;
    for (std::size_t i = nin; i < c.registers.size(); ++i) {
      const NodeRef src = map(*c.drivers[i]);
      if (t == rounds) {
        u.drivers[i] = src;
        continue;
      }
      // Local seams forward into the next copy; early outputs are dropped.
      u.gates.push_back(Gate{prefix + c.registers[i].name, GateKind::Buf, {}, {src}});
      if (c.registers[i].role == Role::Local) next[i] = NodeRef::gate(u.gates.size() - 1);
    }
    feed = std::move(next);
  }
  return u;
}

}  // namespace mc
