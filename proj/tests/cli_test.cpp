#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "mc/mc.hpp"
#include "support/util.hpp"

using namespace mc;
using testutil::data;
using testutil::W;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run mc_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const char* name) { return data(name).string(); }

// Value of `key = value` in a report.
std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return "<missing " + key + ">";
}

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("mc_cli_test_" + std::to_string(std::hash<std::string>{}(
                                std::to_string(reinterpret_cast<std::uintptr_t>(this)))));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text = {}) const {
    const auto p = dir / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
};

}  // namespace

TEST_CASE("sim lists reachable states") {
  const Run r = mc_run({"sim", path("sample.net"), "MM", "4", "--members"});
  CHECK(r.code == cli::kPass);
  CHECK(field(r.out, "round.4.members").find("1M11") != std::string::npos);
  CHECK(field(r.out, "round.0.states") == "MM11");
  CHECK(field(r.out, "round.4.outputs") == "M");
}

TEST_CASE("sim on stable input gives one output per round") {
  const Run r = mc_run({"sim", path("sample.net"), "01", "3"});
  CHECK(r.code == cli::kPass);
  for (int t = 1; t <= 3; ++t) CHECK(field(r.out, "round." + std::to_string(t) + ".outputs").size() == 1);
}

TEST_CASE("sim writes a checkable trace") {
  TempDir tmp;
  const auto t = tmp.file("run.trace");
  const Run r = mc_run({"sim", path("sample.net"), "MM", "4", "--trace", t});
  CHECK(r.code == cli::kPass);
  const auto trace = parse_trace(testutil::slurp(t));
  CHECK(trace.rounds.size() == 4);
  CHECK(trace_check(testutil::load_circuit("sample.net"), trace));
}

TEST_CASE("sim budget and input errors") {
  TempDir tmp;
  std::string text = "circuit wide\noutput y simple init 0\n";
  std::string srcs;
  for (int i = 0; i < 20; ++i) {
    text += "input x" + std::to_string(i) + " simple\n";
    srcs += " x" + std::to_string(i);
  }
  text += "gate g OR" + srcs + "\ndrive y g\n";
  const auto wide = tmp.file("wide.net", text);
  CHECK(mc_run({"sim", wide, std::string(20, 'M'), "1"}).code == cli::kBudgetExceeded);
  CHECK(mc_run({"--max-states", "1", "sim", path("sample.net"), "MM", "4"}).code == cli::kBudgetExceeded);
  CHECK(mc_run({"sim", path("sample.net"), "M", "1"}).code == cli::kInputError);
  CHECK(mc_run({"sim", path("cycle.net"), "0", "1"}).code == cli::kInputError);
  CHECK(mc_run({"sim", tmp.file("missing.net"), "0", "1"}).code == cli::kInputError);
  CHECK(mc_run({"sim"}).code == cli::kInputError);
  CHECK(mc_run({"bogus"}).code == cli::kInputError);
  CHECK(mc_run({"--help"}).code == cli::kPass);
}

TEST_CASE("check") {
  CHECK(mc_run({"check", path("cmux.net"), path("mux_m.spec"), "1"}).code == cli::kPass);
  CHECK(mc_run({"check", path("cmux_clocked.net"), path("mux_m.spec"), "2"}).code == cli::kPass);
  const Run bad = mc_run({"check", path("mux.net"), path("mux_m.spec"), "1"});
  CHECK(bad.code == cli::kSemanticFailure);
  CHECK(field(bad.out, "counterexample.input") == "11M");
  CHECK(field(bad.out, "counterexample.output") == "M");
  CHECK(mc_run({"check", path("not.net"), path("mux_m.spec"), "1"}).code == cli::kInputError);
}

TEST_CASE("closure of a truth table") {
  const Run r = mc_run({"closure", path("and.table")});
  CHECK(r.code == cli::kPass);
  const FunctionSpec h = parse_spec_table(r.out);
  CHECK(h == closure_bool(BooleanFunction::from_table_string("0001")));
  TempDir tmp;
  const auto o = tmp.file("and.spec");
  CHECK(mc_run({"closure", path("and.table"), "-o", o}).code == cli::kPass);
  CHECK(parse_spec_table(testutil::slurp(o)) == h);
}

TEST_CASE("synth") {
  TempDir tmp;
  const auto spec = tmp.file("and.spec");
  REQUIRE(mc_run({"closure", path("and.table"), "-o", spec}).code == cli::kPass);
  const auto net = tmp.file("and.net");
  REQUIRE(mc_run({"synth", spec, "-o", net}).code == cli::kPass);
  CHECK(mc_run({"check", net, spec, "1"}).code == cli::kPass);

  const auto cm = tmp.file("cmux.net");
  REQUIRE(mc_run({"synth", path("mux_m.spec"), "-o", cm}).code == cli::kPass);
  CHECK(mc_run({"check", cm, path("mux_m.spec"), "1"}).code == cli::kPass);

  const Run det = mc_run({"synth", path("detector.spec")});
  CHECK(det.code == cli::kSemanticFailure);
  CHECK((det.out + det.err).find("no natural subfunction") != std::string::npos);
  CHECK(mc_run({"synth", path("resolver.spec")}).code == cli::kSemanticFailure);
  CHECK(mc_run({"synth", path("mm_example.spec")}).code == cli::kSemanticFailure);
}

TEST_CASE("unroll then check") {
  TempDir tmp;
  const auto u = tmp.file("shift2.net");
  REQUIRE(mc_run({"unroll", path("shift.net"), "2", "-o", u}).code == cli::kPass);
  const Circuit c = testutil::load_circuit("shift.net");
  const Circuit cu = parse_netlist(testutil::slurp(u));
  for (const char* x : {"0", "1", "M"}) CHECK(outputs(cu, W(x), 1) == outputs(c, W(x), 2));
  CHECK(mc_run({"unroll", path("sample.net"), "2"}).code == cli::kInputError);
}

TEST_CASE("witness") {
  const Run r = mc_run({"witness", path("buf.net"), "0", "1", "1"});
  CHECK(r.code == cli::kPass);
  const auto t = parse_trace(r.out);
  CHECK(t.final_state == W("MM"));
  CHECK(mc_run({"witness", path("const0.net"), "0", "1", "1"}).code == cli::kSemanticFailure);
}

TEST_CASE("component") {
  const Run net = mc_run({"component", "cmux", "--emit", "netlist"});
  CHECK(net.code == cli::kPass);
  CHECK(parse_netlist(net.out) == build_cmux_combinational());
  const Run rep = mc_run({"component", "cmux-clocked", "--emit", "report"});
  CHECK(rep.code == cli::kPass);
  CHECK(field(rep.out, "check.verdict") == "yes");
  CHECK(field(rep.out, "check.rounds") == "2");
  CHECK(mc_run({"component", "fanout", "3", "--emit", "report"}).code == cli::kPass);
  const std::vector<std::vector<std::string>> calls{
      {"mux"}, {"counter", "3"}, {"selector", "2"}, {"tc2brgc", "3"}, {"two-sort", "2"},
      {"brgc2tc", "2"}, {"sort", "4", "2"}, {"clock-sync", "4", "1", "2"}};
  for (auto call : calls) {
    call.insert(call.begin(), "component");
    CHECK_MESSAGE(mc_run(call).code == cli::kPass, call[1]);
  }
  CHECK(mc_run({"component", "counter"}).code == cli::kInputError);
  CHECK(mc_run({"component", "nonsense"}).code == cli::kInputError);
}

TEST_CASE("pipeline") {
  const Run r = mc_run({"pipeline", "4", "1", "100", "110", "111", "000"});
  CHECK(r.code == cli::kPass);
  CHECK(field(r.out, "low") == "011");
  CHECK(field(r.out, "low.value") == "2");
  CHECK(field(r.out, "high") == "001");
  CHECK(field(r.out, "high.precision") == "0");
  const Run m = mc_run({"pipeline", "4", "1", "1M0", "110", "111", "000"});
  CHECK(m.code == cli::kPass);
  CHECK(field(m.out, "low.precision") <= "1");
  CHECK(mc_run({"pipeline", "3", "1", "100", "110", "111"}).code == cli::kInputError);
}

TEST_CASE("reports are reproducible") {
  const std::vector<std::string> args{"sim", path("sample.net"), "MM", "4", "--members"};
  CHECK(mc_run(args).out == mc_run(args).out);
}
