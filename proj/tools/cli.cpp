#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mc/mc.hpp"

namespace mc::cli {

namespace {

class Report {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  std::string str() const {
    std::string s;
    for (const auto& [k, v] : lines_) s += k + " = " + v + "\n";
    return s;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

// Wraps errors from a named input file so the message says where.
template <typename F>
auto load(const std::string& path, F parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

struct Options {
  std::size_t max_states = kDefaultMaxStates;
  std::size_t max_meta_bits = kDefaultMaxMetaBits;
  std::string output_file;
  std::string emit = "netlist";

  Budget budget() const { return {max_states, max_meta_bits}; }
};

// Output of a command: report text, artifact text, and exit code.
struct Outcome {
  int code = kPass;
  std::string stdout_text;
};

// Artifact goes to -o (with the report on stdout) or straight to stdout.
Outcome deliver(const Options& o, Report& r, const std::string& artifact, int code = kPass) {
  if (o.output_file.empty()) return {code, artifact};
  write_file(o.output_file, artifact);
  r.add("written", o.output_file);
  return {code, r.str()};
}

Circuit load_circuit(const std::string& path) {
  Circuit c = load(path, parse_netlist);
  if (auto v = validate(c); !v.empty()) {
    std::string msg = path + ": invalid circuit";
    for (const auto& x : v) msg += "\n  " + x.message;
    throw InvalidCircuit(msg);
  }
  return c;
}

TernaryWord word_arg(const std::string& s, const char* what) {
  try {
    return TernaryWord::parse(s);
  } catch (const ParseError& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// --- commands --------------------------------------------------------------

Outcome cmd_sim(const Options& o, const std::string& file, const std::string& input,
                std::size_t rounds, const std::string& trace_file, bool members) {
  const Executor ex(load_circuit(file), o.budget());
  const TernaryWord iota = word_arg(input, "input");
  const auto sets = ex.reach_all(iota, rounds);
  Report r;
  r.add("command", "sim");
  r.add("circuit", ex.circuit().name);
  r.add("input", iota.str());
  r.add("rounds", rounds);
  std::size_t visited = 0;
  for (std::size_t t = 0; t < sets.size(); ++t) {
    std::string states;
    for (const auto& w : sets[t].words()) states += (states.empty() ? "" : ",") + w.str();
    r.add("round." + std::to_string(t) + ".states", states);
    if (members) {
      std::string all;
      for (const auto& [in, cs] : sets[t].entries())
        for (const auto& w : cs.members(o.max_meta_bits)) all += (all.empty() ? "" : ",") + (in + w).str();
      r.add("round." + std::to_string(t) + ".members", all);
    }
    if (t > 0)
      r.add("round." + std::to_string(t) + ".outputs",
            sets[t].project_rest(ex.num_locals(), ex.num_outputs()).str());
    visited += sets[t].size();
  }
  r.add("budget.state_cubes", visited);
  r.add("budget.max_states", o.max_states);
  if (!trace_file.empty()) {
    write_file(trace_file, emit_trace(ex.canonical_execution(iota, rounds)));
    r.add("trace", trace_file);
  }
  return {kPass, r.str()};
}

Outcome cmd_check(const Options& o, const std::string& file, const std::string& spec_file,
                  std::size_t rounds) {
  const Executor ex(load_circuit(file), o.budget());
  const FunctionSpec f = load(spec_file, parse_spec_table);
  const Verdict v = ex.implements(rounds, f);
  Report r;
  r.add("command", "check");
  r.add("circuit", ex.circuit().name);
  r.add("rounds", rounds);
  r.add("verdict", v.holds ? "yes" : "no");
  r.add("inputs.checked", v.inputs_checked);
  if (!v.holds) {
    r.add("counterexample.input", v.input->str());
    r.add("counterexample.output", v.output->str());
    r.add("counterexample.allowed", f.value(*v.input).str());
  }
  return {v.holds ? kPass : kSemanticFailure, r.str()};
}

Outcome cmd_closure(const Options& o, const std::string& table_file) {
  const BooleanFunction f = load(table_file, parse_truth_table);
  Report r;
  r.add("command", "closure");
  r.add("arity", f.inputs());
  r.add("coarity", f.outputs());
  return deliver(o, r, emit_spec_table(closure_bool(f)));
}

Outcome cmd_synth(const Options& o, const std::string& spec_file) {
  const FunctionSpec g = load(spec_file, parse_spec_table);
  Report r;
  r.add("command", "synth");
  std::optional<FunctionSpec> h;
  if (is_natural(g)) {
    h = to_natural_form(g);
    r.add("natural", "yes");
  } else {
    r.add("natural", "no");
    auto found = find_natural_subfunction(g, o.budget());
    r.add("search.nodes", found.nodes);
    h = std::move(found.witness);
  }
  if (!h) {
    r.add("verdict", "no natural subfunction");
    return {kSemanticFailure, r.str()};
  }
  const Circuit c = synthesize(*h, "synth", o.budget());
  const Verdict v = Executor(c, o.budget()).implements(1, g);
  if (!v.holds) throw Error("synthesized circuit fails its own check");
  r.add("verdict", "implements");
  r.add("gates", c.gates.size());
  return deliver(o, r, emit_netlist(c));
}

Outcome cmd_unroll(const Options& o, const std::string& file, std::size_t rounds) {
  const Circuit c = load_circuit(file);
  const Circuit u = unroll(c, rounds);
  Report r;
  r.add("command", "unroll");
  r.add("circuit", u.name);
  r.add("rounds", rounds);
  r.add("gates", u.gates.size());
  return deliver(o, r, emit_netlist(u));
}

Outcome cmd_witness(const Options& o, const std::string& file, const std::string& a,
                    const std::string& b, std::size_t rounds) {
  const Circuit c = load_circuit(file);
  const auto res =
      metastable_witness(c, rounds, word_arg(a, "first input"), word_arg(b, "second input"),
                         o.budget());
  Report r;
  r.add("command", "witness");
  r.add("circuit", c.name);
  r.add("rounds", rounds);
  if (res.overlap) {
    r.add("verdict", "outputs overlap");
    return {kSemanticFailure, r.str()};
  }
  r.add("verdict", "metastable output");
  r.add("witness.input", res.input->str());
  r.add("witness.final_state", res.trace->final_state.str());
  return deliver(o, r, emit_trace(*res.trace));
}

std::size_t param(const std::vector<std::size_t>& p, std::size_t i, const std::string& name) {
  if (i >= p.size()) throw ParseError("component " + name + " needs " + std::to_string(i + 1) +
                                      " parameter(s)");
  return p[i];
}

Outcome cmd_component(const Options& o, const std::string& name,
                      const std::vector<std::size_t>& p) {
  Circuit c;
  std::optional<std::pair<FunctionSpec, std::size_t>> spec;  // spec and rounds
  if (name == "mux") {
    c = build_mux();
    spec.emplace(mux_spec(), 1);
  } else if (name == "cmux") {
    c = build_cmux_combinational();
    spec.emplace(cmux_spec(), 1);
  } else if (name == "cmux-clocked") {
    c = build_cmux_clocked();
    spec.emplace(cmux_spec(), 2);
  } else if (name == "fanout") {
    const auto r = param(p, 0, name);
    c = build_fanout_buffer(r);
    spec.emplace(fanout_spec(r), r);
  } else if (name == "counter") {
    c = build_counter(param(p, 0, name));
  } else if (name == "selector") {
    c = build_selector(param(p, 0, name));
  } else if (name == "tc2brgc") {
    c = build_tc_to_brgc(param(p, 0, name));
  } else if (name == "two-sort") {
    c = build_two_sort(param(p, 0, name));
  } else if (name == "brgc2tc") {
    c = build_brgc_to_tc(param(p, 0, name));
  } else if (name == "sort") {
    c = build_sorting_network(param(p, 0, name), param(p, 1, name)).second;
  } else if (name == "clock-sync") {
    c = build_clock_sync_pipeline(param(p, 0, name), param(p, 1, name), param(p, 2, name));
  } else {
    throw ParseError("unknown component '" + name +
                     "' (mux, cmux, cmux-clocked, fanout, counter, selector, tc2brgc, two-sort, "
                     "brgc2tc, sort, clock-sync)");
  }
  if (o.emit == "netlist") return {kPass, emit_netlist(c)};

  Report r;
  r.add("command", "component");
  r.add("component", name);
  r.add("circuit", c.name);
  r.add("inputs", c.num_inputs());
  r.add("locals", c.num_locals());
  r.add("outputs", c.num_outputs());
  r.add("gates", c.gates.size());
  r.add("valid", validate(c).empty() ? "yes" : "no");
  int code = kPass;
  if (spec) {
    const Verdict v = Executor(c, o.budget()).implements(spec->second, spec->first);
    r.add("check.rounds", spec->second);
    r.add("check.verdict", v.holds ? "yes" : "no");
    if (!v.holds) {
      r.add("check.counterexample.input", v.input->str());
      r.add("check.counterexample.output", v.output->str());
      code = kSemanticFailure;
    }
  }
  return {code, r.str()};
}

Outcome cmd_pipeline(const Options& o, std::size_t n, std::size_t f,
                     const std::vector<std::string>& readings) {
  std::vector<TernaryWord> words;
  for (const auto& s : readings) words.push_back(word_arg(s, "reading"));
  const auto res = clock_sync_select(n, f, words);
  const Code tc = Code::thermometer(res.low.width());
  Report r;
  r.add("command", "pipeline");
  r.add("nodes", n);
  r.add("faults", f);
  std::string in;
  for (const auto& w : words) in += (in.empty() ? "" : ",") + w.str();
  r.add("readings", in);
  auto describe = [&](const std::string& key, const TernaryWord& w) {
    r.add(key, w.str());
    try {
      if (w.is_stable()) r.add(key + ".value", std::to_string(decode(tc, w)));
      r.add(key + ".precision", std::to_string(precision(tc, w, o.max_meta_bits)));
    } catch (const CodeError& e) {
      r.add(key + ".precision", std::string("undefined (") + e.what() + ")");
    }
  };
  describe("low", res.low);
  describe("high", res.high);
  return {kPass, r.str()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ternary simulation and synthesis of metastability-containing circuits", "mc"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--max-states", o.max_states, "Cap on explored state cubes and input vectors")
      ->capture_default_str();
  app.add_option("--max-meta-bits", o.max_meta_bits, "Cap on Meta bits in any flat expansion")
      ->capture_default_str();

  std::string file, file2, word_a, word_b, trace_file, name;
  std::size_t rounds = 1, n = 0, f = 0;
  std::vector<std::size_t> params;
  std::vector<std::string> readings;

  auto* sim = app.add_subcommand("sim", "Reachable states and outputs per round");
  sim->add_option("netlist", file)->required();
  sim->add_option("input", word_a)->required();
  sim->add_option("rounds", rounds)->required();
  sim->add_option("--trace", trace_file, "Write one execution in trace format");
  bool members = false;
  sim->add_flag("--members", members, "Also list every state, not just state cubes");

  auto* check = app.add_subcommand("check", "Does r rounds of a circuit implement a spec?");
  check->add_option("netlist", file)->required();
  check->add_option("spec", file2)->required();
  check->add_option("rounds", rounds)->required();

  auto* closure = app.add_subcommand("closure", "Metastable closure of a truth table");
  closure->add_option("table", file)->required();
  closure->add_option("-o,--output", o.output_file);

  auto* synth = app.add_subcommand("synth", "Two-level circuit for a spec");
  synth->add_option("spec", file)->required();
  synth->add_option("-o,--output", o.output_file);

  auto* unr = app.add_subcommand("unroll", "Unroll r rounds into one");
  unr->add_option("netlist", file)->required();
  unr->add_option("rounds", rounds)->required();
  unr->add_option("-o,--output", o.output_file);

  auto* wit = app.add_subcommand("witness", "Execution with a metastable output");
  wit->add_option("netlist", file)->required();
  wit->add_option("input", word_a)->required();
  wit->add_option("input2", word_b)->required();
  wit->add_option("rounds", rounds)->required();
  wit->add_option("-o,--output", o.output_file);

  auto* comp = app.add_subcommand("component", "Emit or check a library component");
  comp->add_option("name", name)->required();
  comp->add_option("params", params);
  comp->add_option("--emit", o.emit)->check(CLI::IsMember({"netlist", "report"}))
      ->capture_default_str();

  auto* pipe = app.add_subcommand("pipeline", "Clock-sync selection on TDC readings");
  pipe->add_option("n", n)->required();
  pipe->add_option("f", f)->required();
  pipe->add_option("readings", readings)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kPass : kInputError;
  }

  try {
    Outcome res;
    if (*sim) res = cmd_sim(o, file, word_a, rounds, trace_file, members);
    else if (*check) res = cmd_check(o, file, file2, rounds);
    else if (*closure) res = cmd_closure(o, file);
    else if (*synth) res = cmd_synth(o, file);
    else if (*unr) res = cmd_unroll(o, file, rounds);
    else if (*wit) res = cmd_witness(o, file, word_a, word_b, rounds);
    else if (*comp) res = cmd_component(o, name, params);
    else res = cmd_pipeline(o, n, f, readings);
    out << res.stdout_text;
    return res.code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace mc::cli
