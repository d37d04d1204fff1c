#include <random>

#include "doctest.h"
#include "mc/mc.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"

using namespace mc;
using testutil::W;

namespace {

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
  for (const auto& v : vs)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("sample netlist parses") {
  const Circuit c = testutil::load_circuit("sample.net");
  CHECK(c.name == "sample");
  CHECK(c.registers.size() == 4);
  CHECK(c.gates.size() == 2);
  CHECK(c.num_inputs() == 2);
  CHECK(c.num_locals() == 1);
  CHECK(c.num_outputs() == 1);
  CHECK(c.initial_values() == W("11"));
  CHECK(c.has_masking_registers());
  CHECK_FALSE(c.with_simple_registers().has_masking_registers());
  CHECK(validate(c).empty());
}

TEST_CASE("dag evaluation of the sample circuit") {
  const Dag d = Dag::compile(testutil::load_circuit("sample.net"));
  CHECK(eval_dag(d, W("0M1")) == W("MM"));
  CHECK(eval_dag(d, W("1M1")) == W("11"));
  CHECK(eval_dag(d, W("MM1")) == W("MM"));
  CHECK(eval_dag(d, W("1MM")) == W("1M"));
  CHECK_THROWS(eval_dag(d, W("01")));
}

TEST_CASE("validate reports structural violations") {
  SUBCASE("input and output at once") {
    const Circuit c = testutil::load_circuit("role_violation.net");
    CHECK(has_kind(validate(c), Violation::Kind::Role));
    CHECK_THROWS_AS(Dag::compile(c), InvalidCircuit);
  }
  SUBCASE("combinational cycle") {
    const Circuit c = testutil::load_circuit("cycle.net");
    CHECK(has_kind(validate(c), Violation::Kind::Cycle));
  }
  SUBCASE("fan-in") {
    Circuit c = testutil::load_circuit("not.net");
    c.gates[0].fanin.push_back(NodeRef::reg(0));
    CHECK(has_kind(validate(c), Violation::Kind::Fanin));
  }
  SUBCASE("missing driver") {
    Circuit c = testutil::load_circuit("not.net");
    c.drivers.back().reset();
    CHECK(has_kind(validate(c), Violation::Kind::Driver));
  }
  SUBCASE("duplicate names") {
    Circuit c = testutil::load_circuit("sample.net");
    c.gates[1].id = "g_or";
    CHECK(has_kind(validate(c), Violation::Kind::Name));
  }
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_netlist("circuit x\ninput a simple\noutput y simple init 0\ngate g AND a nope\ndrive y g\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("nope") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_netlist("input a simple\n"), ParseError);
  CHECK_THROWS_AS(parse_netlist("circuit x\ninput a simple init 0\n"), ParseError);
  CHECK_THROWS_AS(parse_netlist("circuit x\noutput y simple\n"), ParseError);
  CHECK_THROWS_AS(parse_netlist("circuit x\ninput a weird\n"), ParseError);
  CHECK_THROWS_AS(parse_netlist("circuit x\ninput a simple\noutput y simple init 0\ndrive z a\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_netlist("circuit x\ninput a simple\ngate g TABLE:012 a\n"), ParseError);
}

TEST_CASE("forward references and table gates") {
  const Circuit c = parse_netlist(
      "circuit fw\n"
      "input a simple\ninput b simple\n"
      "output y simple init 0\n"
      "drive y t\n"
      "gate t TABLE:0110 a b\n");
  const Dag d = Dag::compile(c);
  CHECK(eval_dag(d, W("01")) == W("1"));
  CHECK(eval_dag(d, W("11")) == W("0"));
  CHECK(eval_dag(d, W("M1")) == W("M"));
}

TEST_CASE("stable evaluation equals boolean evaluation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = oracle::random_circuit(rng, {.max_registers = 6, .max_gates = 8});
    const Dag d = Dag::compile(c);
    const std::size_t w = c.num_inputs() + c.num_locals();
    for (const auto& x : oracle::stable_words(w)) CHECK(eval_dag(d, W(x)).str() == oracle::eval_bool(c, x));
  }
}

TEST_CASE("dag evaluation is monotone and matches gate-wise kleene oracle") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = oracle::random_circuit(rng, {.max_registers = 7, .max_inputs = 5, .max_gates = 6});
    const Dag d = Dag::compile(c);
    const std::size_t w = c.num_inputs() + c.num_locals();
    for (const auto& x : oracle::all_words(w)) {
      const auto fx = eval_dag(d, W(x));
      CHECK(fx.str() == oracle::eval(c, x));
      for (const auto& y : oracle::partial(x)) CHECK(res_contains(fx, eval_dag(d, W(y))));
    }
  }
}

TEST_CASE("wide and/or equals a tree of two-input gates") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const GateKind kind : {GateKind::And, GateKind::Or}) {
      CircuitBuilder wide("wide"), tree("tree");
      std::vector<NodeRef> a, b;
      for (std::size_t i = 0; i < n; ++i) {
        a.push_back(wide.add_input("x" + std::to_string(i)));
        b.push_back(tree.add_input("x" + std::to_string(i)));
      }
      wide.add_output("y");
      tree.add_output("y");
      wide.drive("y", wide.add_gate("g", kind, a));
      NodeRef acc = b[0];
      for (std::size_t i = 1; i < n; ++i) acc = tree.add_gate("t" + std::to_string(i), kind, {acc, b[i]});
      tree.drive("y", acc);
      const Dag dw = Dag::compile(wide.build()), dt = Dag::compile(tree.build());
      for (const auto& x : oracle::all_words(n)) CHECK(eval_dag(dw, W(x)) == eval_dag(dt, W(x)));
    }
}

TEST_CASE("parallel arcs are allowed") {
  const Circuit c = parse_netlist("circuit p\ninput a simple\noutput y simple init 0\ngate g XOR a a\ndrive y g\n");
  CHECK(validate(c).empty());
  // Each arc is resolved independently, so XOR(M, M) stays M.
  CHECK(eval_dag(Dag::compile(c), W("M")) == W("M"));
  CHECK(eval_dag(Dag::compile(c), W("1")) == W("0"));
}

TEST_CASE("emit then parse round-trips") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Circuit c = oracle::random_circuit(rng, {});
    CHECK(parse_netlist(emit_netlist(c)) == c);
  }
  for (const char* f : {"sample.net", "mux.net", "cmux.net", "cmux_clocked.net", "comparator.net"}) {
    const Circuit c = testutil::load_circuit(f);
    CHECK(parse_netlist(emit_netlist(c)) == c);
  }
}

TEST_CASE("builder reorders registers by role") {
  CircuitBuilder b("order");
  b.add_output("o", RegisterType::Simple, Ternary::One);
  const NodeRef l = b.add_local("l", RegisterType::Mask1, Ternary::Meta);
  const NodeRef x = b.add_input("x", RegisterType::Mask0);
  b.drive("o", b.add_gate("g", GateKind::And, {l, x}));
  b.drive("l", x);
  const Circuit c = b.build();
  CHECK(c.registers[0].name == "x");
  CHECK(c.registers[1].name == "l");
  CHECK(c.registers[2].name == "o");
  CHECK(c.initial_values() == W("M1"));
  CHECK(eval_dag(Dag::compile(c), W("11")) == W("11"));
}

TEST_CASE("builder instantiates subcircuits") {
  const Circuit inv = testutil::load_circuit("not.net");
  CircuitBuilder b("double");
  const NodeRef x = b.add_input("x");
  b.add_output("y");
  const auto first = b.instantiate(inv, "u0.", std::vector{x});
  const auto second = b.instantiate(inv, "u1.", first);
  b.drive("y", second[0]);
  const Circuit c = b.build();
  CHECK(c.find_gate("u1.g").has_value());
  const Dag d = Dag::compile(c);
  for (const char* v : {"0", "1", "M"}) CHECK(eval_dag(d, W(v)) == W(v));
}
