#include <random>

#include "doctest.h"
#include "mc/mc.hpp"
#include "support/oracles.hpp"
#include "support/util.hpp"

using namespace mc;
using testutil::strs;
using testutil::W;

namespace {

std::set<std::string> read_words(const std::vector<ReadOutcome>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs) out.insert(r.read.str() + "/" + r.next_inputs.str());
  return out;
}

std::vector<Circuit> random_corpus(std::uint32_t seed, std::size_t count, oracle::RandomCircuitShape shape) {
  std::mt19937 rng(seed);
  std::vector<Circuit> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(oracle::random_circuit(rng, shape));
  return out;
}

}  // namespace

TEST_CASE("register automata") {
  using P = std::pair<Ternary, Ternary>;
  const auto M = Ternary::Meta, Z = Ternary::Zero, O = Ternary::One;
  CHECK(register_transitions(RegisterType::Simple, M) == std::vector<P>{{M, M}});
  for (auto t : {RegisterType::Simple, RegisterType::Mask0, RegisterType::Mask1}) {
    CHECK(register_transitions(t, Z) == std::vector<P>{{Z, Z}});
    CHECK(register_transitions(t, O) == std::vector<P>{{O, O}});
  }
  CHECK(register_transitions(RegisterType::Mask0, M) == std::vector<P>{{Z, M}, {M, O}});
  CHECK(register_transitions(RegisterType::Mask1, M) == std::vector<P>{{O, M}, {M, Z}});
}

TEST_CASE("read outcomes of the sample circuit") {
  const Circuit c = testutil::load_circuit("sample.net");
  const auto rs = read_words(read_outcomes(c, W("MM11")));
  CHECK(rs == std::set<std::string>{"0M1/MM", "MM1/1M"});
  const Executor ex(c);
  CHECK(ex.next_inputs(W("MM11"), W("0M1")) == W("MM"));
  CHECK_THROWS_AS(ex.next_inputs(W("MM11"), W("1M1")), DomainError);
}

TEST_CASE("mask-1 register in state M") {
  const Circuit c = parse_netlist("circuit m1\ninput s mask1\noutput o simple init 0\ngate g BUF s\ndrive o g\n");
  CHECK(read_words(read_outcomes(c, W("M0"))) == std::set<std::string>{"1/M", "M/0"});
}

TEST_CASE("successors of the sample circuit") {
  const Circuit c = testutil::load_circuit("sample.net");
  const StateSet s1 = successors(c, W("MM11"));
  CHECK(s1.contains(W("MM1M")));
  CHECK(s1.contains(W("MMMM")));
  CHECK(oracle::expand(s1) == oracle::successors(c, "MM11"));
  const StateSet stable = successors(c, W("0111"));
  CHECK(stable.size() == 1);
  CHECK(stable.words() == std::vector{W("0111")});
}

TEST_CASE("reach of the sample circuit from MM") {
  const Circuit c = testutil::load_circuit("sample.net");
  const Executor ex(c);
  const auto all = ex.reach_all(W("MM"), 4);
  REQUIRE(all.size() == 5);
  CHECK(all[0].words() == std::vector{W("MM11")});
  const char* trace_states[] = {"MM11", "MM1M", "1MMM", "1M10", "1M11"};
  for (std::size_t r = 0; r <= 4; ++r) {
    CHECK(all[r].contains(W(trace_states[r])));
    CHECK(oracle::expand(all[r]) == oracle::reach(c, "MM", r));
  }
  CHECK(all[2].contains(W("1MMM")));
  CHECK(ex.outputs(W("MM"), 4).str() == "M");
  CHECK_THROWS(ex.outputs(W("MM"), 0));
}

TEST_CASE("round 0 holds only the initial state") {
  const Circuit c = testutil::load_circuit("comparator.net");
  CHECK(reach(c, W("01M1"), 0).words() == std::vector{W("01M10")});
}

TEST_CASE("stable runs are deterministic") {
  for (const auto& c : random_corpus(21, 40, {.meta_init = false})) {
    const Executor ex(c);
    for (const auto& iota : oracle::stable_words(c.num_inputs()))
      for (std::size_t r = 1; r <= 3; ++r) {
        const auto out = ex.outputs(W(iota), r);
        CHECK(out.size() == 1);
        CHECK(out.cubes()[0].is_stable());
      }
  }
}

TEST_CASE("reach and outputs agree with the flat oracle") {
  for (const auto& c : random_corpus(22, 60, {})) {
    const Executor ex(c);
    for (const auto& iota : oracle::all_words(c.num_inputs()))
      for (std::size_t r = 1; r <= 3; ++r) {
        CHECK(oracle::expand(ex.reach(W(iota), r)) == oracle::reach(c, iota, r));
        CHECK(oracle::expand(ex.outputs(W(iota), r)) == oracle::outputs(c, iota, r));
      }
  }
}

TEST_CASE("simple registers read back their state") {
  for (const auto& c : random_corpus(23, 100, {.masking = false})) {
    const std::size_t nr = c.num_inputs() + c.num_locals();
    for (const auto& s : oracle::all_words(c.state_width())) {
      const auto rs = read_outcomes(c, W(s));
      REQUIRE(rs.size() == 1);
      CHECK(rs[0].read.str() == s.substr(0, nr));
      CHECK(rs[0].next_inputs.str() == s.substr(0, c.num_inputs()));
    }
  }
}

TEST_CASE("the verbatim read is always possible and reads resolve the state") {
  for (const auto& c : random_corpus(24, 100, {})) {
    const std::size_t nr = c.num_inputs() + c.num_locals();
    for (const auto& s : oracle::all_words(c.state_width())) {
      const auto x = W(s.substr(0, nr));
      const auto rs = read_outcomes(c, W(s));
      bool verbatim = false;
      for (const auto& r : rs) {
        verbatim = verbatim || r.read == x;
        CHECK(res_contains(x, r.read));
      }
      CHECK(verbatim);
      CHECK(read_words(rs).size() == oracle::reads(c, s).size());
    }
  }
}

TEST_CASE("writes do not depend on register types") {
  for (const auto& c : random_corpus(25, 100, {})) {
    const Circuit cs = c.with_simple_registers();
    const std::size_t rest = c.num_locals() + c.num_outputs();
    for (const auto& s : oracle::all_words(c.state_width())) {
      const auto a = successors(c, W(s)).project_rest(0, rest);
      const auto b = successors(cs, W(s)).project_rest(0, rest);
      CHECK(a == b);
    }
  }
}

TEST_CASE("one-round outputs form a single cube") {
  for (const auto& c : random_corpus(26, 100, {})) {
    const Executor ex(c);
    for (const auto& iota : oracle::all_words(c.num_inputs())) CHECK(ex.outputs(W(iota), 1).is_single_cube());
  }
}

TEST_CASE("one-round outputs shrink under resolution") {
  for (const auto& c : random_corpus(27, 100, {.max_inputs = 4})) {
    const Executor ex(c);
    for (const auto& iota : oracle::all_words(c.num_inputs())) {
      const auto big = ex.outputs(W(iota), 1);
      for (const auto& sub : oracle::partial(iota)) CHECK(big.contains(ex.outputs(W(sub), 1)));
    }
  }
}

TEST_CASE("masking registers do not change one-round outputs") {
  for (const auto& c : random_corpus(28, 100, {})) {
    const Executor a(c), b(c.with_simple_registers());
    for (const auto& iota : oracle::all_words(c.num_inputs())) CHECK(a.outputs(W(iota), 1) == b.outputs(W(iota), 1));
  }
}

TEST_CASE("implements on the multiplexers") {
  const auto spec = cmux_spec();
  const Verdict ok = implements(testutil::load_circuit("cmux.net"), 1, spec);
  CHECK(ok.holds);
  CHECK(ok.inputs_checked == 27);
  CHECK(implements(testutil::load_circuit("cmux_clocked.net"), 2, spec).holds);
  const Verdict bad = implements(testutil::load_circuit("mux.net"), 1, spec);
  CHECK_FALSE(bad.holds);
  CHECK(bad.input == W("11M"));
  CHECK(bad.output == W("M"));
  CHECK(outputs(testutil::load_circuit("cmux.net"), W("11M"), 1).str() == "1");
  CHECK(outputs(testutil::load_circuit("mux.net"), W("11M"), 1).str() == "M");
}

TEST_CASE("implements rejects arity mismatch and respects the budget") {
  CHECK_THROWS(implements(testutil::load_circuit("not.net"), 1, cmux_spec()));
  CHECK_THROWS_AS(implements(testutil::load_circuit("cmux.net"), 1, cmux_spec(), Budget{.max_states = 10}),
                  BudgetExceeded);
}

TEST_CASE("reach budget") {
  const Circuit c = testutil::load_circuit("sample.net");
  CHECK_THROWS_AS(reach(c, W("MM"), 4, Budget{.max_states = 1}), BudgetExceeded);
  CHECK_THROWS_AS(reach(c, W("MM"), 1, Budget{.max_meta_bits = 1}), BudgetExceeded);
}

TEST_CASE("trace files") {
  const Circuit c = testutil::load_circuit("sample.net");
  const ExecutionTrace t = parse_trace(testutil::slurp(testutil::data("sample.trace")));
  REQUIRE(t.rounds.size() == 4);
  CHECK(t.final_state == W("1M11"));
  CHECK(trace_check(c, t));
  CHECK(parse_trace(emit_trace(t)) == t);

  SUBCASE("any resolution of the evaluation may be written") {
    // Later rounds depend on the new state, so keep the first round only.
    ExecutionTrace u;
    u.rounds = {t.rounds[0]};
    u.rounds[0].write = W("0M");
    u.final_state = W("MM0M");
    CHECK(trace_check(c, u));
  }
  SUBCASE("a write alone cannot change without the next state") {
    ExecutionTrace u = t;
    u.rounds[0].write = W("0M");
    CHECK_FALSE(trace_check(c, u));
  }
  SUBCASE("evaluation is deterministic") {
    ExecutionTrace u = t;
    u.rounds[3].eval = W("10");
    CHECK_FALSE(trace_check(c, u));
  }
  SUBCASE("impossible read") {
    ExecutionTrace u = t;
    u.rounds[2].read = W("0MM");
    CHECK_FALSE(trace_check(c, u));
  }
  CHECK_THROWS_AS(parse_trace("0 | MM11 | 0M1 | MM\n"), ParseError);
}

TEST_CASE("found executions are valid") {
  for (const auto& c : random_corpus(29, 40, {})) {
    const Executor ex(c);
    for (const auto& iota : oracle::all_words(c.num_inputs())) {
      const auto canon = ex.canonical_execution(W(iota), 2);
      CHECK(ex.check(canon));
      for (const auto& w : ex.reach(W(iota), 2).words()) {
        const auto t = ex.find_execution(W(iota), 2, [&](const TernaryWord& s) { return s == w; });
        REQUIRE(t.has_value());
        CHECK(t->final_state == w);
        CHECK(t->rounds.front().state.slice(0, c.num_inputs()) == W(iota));
        CHECK(ex.check(*t));
      }
    }
  }
}

TEST_CASE("reach is reproducible") {
  const Circuit c = testutil::load_circuit("sample.net");
  const Executor ex(c);
  CHECK(ex.reach(W("MM"), 4) == ex.reach(W("MM"), 4));
  CHECK(ex.reach(W("MM"), 4).str() == Executor(c).reach(W("MM"), 4).str());
}
