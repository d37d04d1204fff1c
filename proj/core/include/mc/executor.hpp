#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mc/budget.hpp"
#include "mc/cube_set.hpp"
#include "mc/function_spec.hpp"
#include "mc/netlist.hpp"
#include "mc/ternary.hpp"

namespace mc {

/// One nondeterministic choice of the read phase: the word read from the
/// non-output registers (In ∘ Loc) and the follow-up state of the input
/// registers.
struct ReadOutcome {
  TernaryWord read;
  TernaryWord next_inputs;

  friend bool operator==(const ReadOutcome&, const ReadOutcome&) = default;
  friend auto operator<=>(const ReadOutcome&, const ReadOutcome&) = default;
};

/// Transitions of one register automaton from `state`, as (read, next) pairs.
/// Stable states read back verbatim. In state M a simple register reads M
/// and stays; a mask-b register either reads b and stays M, or reads M and
/// settles to the opposite value.
std::vector<std::pair<Ternary, Ternary>> register_transitions(RegisterType type, Ternary state);

/// A set of circuit states.
///
/// Each entry pairs an exact input-register word with a cube over the
/// non-input registers (Loc ∘ Out) and stands for {inputs} × Res_M(cube).
/// Written values always range over a whole cube of partial resolutions, so
/// reachable sets from round 1 on are represented exactly.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::size_t input_width, std::size_t rest_width)
      : input_width_(input_width), rest_width_(rest_width) {}

  std::size_t input_width() const noexcept { return input_width_; }
  std::size_t rest_width() const noexcept { return rest_width_; }

  void insert(const TernaryWord& inputs, const TernaryWord& cube);
  void insert(const StateSet& other);

  /// Membership of a full state word In ∘ Loc ∘ Out (its non-input part may
  /// be a cube, in which case all of it must be covered).
  bool contains(const TernaryWord& state) const;

  /// Total number of stored cubes.
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  const std::map<TernaryWord, CubeSet>& entries() const noexcept { return entries_; }
  /// Stored cubes prefixed with their input word, ascending.
  std::vector<TernaryWord> words() const;

  /// Digits [pos, pos+len) of the non-input part of every member.
  CubeSet project_rest(std::size_t pos, std::size_t len) const;

  /// "inputs|cube" pairs joined by commas.
  std::string str() const;

  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::size_t input_width_ = 0;
  std::size_t rest_width_ = 0;
  std::size_t size_ = 0;
  std::map<TernaryWord, CubeSet> entries_;
};

/// One round of an execution.
struct TraceRound {
  TernaryWord state;  ///< s_r over In ∘ Loc ∘ Out
  TernaryWord read;   ///< value read from In ∘ Loc
  TernaryWord eval;   ///< f^G(read) over Loc ∘ Out
  TernaryWord write;  ///< written partial resolution of eval

  friend bool operator==(const TraceRound&, const TraceRound&) = default;
};

struct ExecutionTrace {
  std::vector<TraceRound> rounds;
  TernaryWord final_state;

  friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

/// Text form: one line `r | state | read | eval | write` per round and a
/// closing line `r | state` for the final state. Blank lines and `#`
/// comments are ignored.
ExecutionTrace parse_trace(std::string_view text);
std::string emit_trace(const ExecutionTrace& t);

/// Outcome of an implements check.
struct Verdict {
  bool holds = true;
  /// On failure: the input and one offending output word (a member of
  /// C_r(input) outside f(input)).
  std::optional<TernaryWord> input;
  std::optional<TernaryWord> output;
  std::size_t inputs_checked = 0;
};

/// Round semantics for one circuit. The circuit is compiled once; all
/// queries are const and may run concurrently.
class Executor {
 public:
  explicit Executor(Circuit c, Budget budget = {});

  const Circuit& circuit() const noexcept { return c_; }
  const Dag& dag() const noexcept { return dag_; }
  const Budget& budget() const noexcept { return budget_; }

  std::size_t num_inputs() const noexcept { return m_; }
  std::size_t num_locals() const noexcept { return k_; }
  std::size_t num_outputs() const noexcept { return n_; }

  /// Read^C(s) together with the input follow-up states, ascending.
  std::vector<ReadOutcome> read_outcomes(const TernaryWord& state) const;

  /// Input follow-up state determined by reading `read` in `state`.
  /// Throws DomainError if `read` is not a possible read.
  TernaryWord next_inputs(const TernaryWord& state, const TernaryWord& read) const;

  /// All states one round after `state`.
  StateSet successors(const TernaryWord& state) const;

  /// S_0 .. S_r for input ι. S_0 holds the initial state as a cube, which is
  /// exact when the initial values are stable; later rounds are exact.
  std::vector<StateSet> reach_all(const TernaryWord& iota, std::size_t rounds) const;
  StateSet reach(const TernaryWord& iota, std::size_t rounds) const;

  /// C_r(ι): the output-register projection of S_r. Requires r >= 1.
  CubeSet outputs(const TernaryWord& iota, std::size_t rounds) const;

  /// Checks C_r(ι) ⊆ f(ι) for every ι ∈ T^m, in ascending order, and stops
  /// at the first violation.
  Verdict implements(std::size_t rounds, const FunctionSpec& f) const;

  /// An r-round execution from ι whose final state satisfies `accept`, or
  /// nullopt. Final candidates are tried in ascending order.
  std::optional<ExecutionTrace> find_execution(
      const TernaryWord& iota, std::size_t rounds,
      const std::function<bool(const TernaryWord&)>& accept) const;

  /// The execution that reads In ∘ Loc verbatim and writes evaluations
  /// unresolved. Always a valid execution.
  ExecutionTrace canonical_execution(const TernaryWord& iota, std::size_t rounds) const;

  /// True iff every round of `t` is a legal step of this circuit.
  bool check(const ExecutionTrace& t) const;

 private:
  TernaryWord initial_state(const TernaryWord& iota) const;

  Circuit c_;
  Dag dag_;
  Budget budget_;
  std::size_t m_ = 0, k_ = 0, n_ = 0;
};

std::vector<ReadOutcome> read_outcomes(const Circuit& c, const TernaryWord& state);
StateSet successors(const Circuit& c, const TernaryWord& state);
StateSet reach(const Circuit& c, const TernaryWord& iota, std::size_t rounds,
               const Budget& budget = {});
CubeSet outputs(const Circuit& c, const TernaryWord& iota, std::size_t rounds,
                const Budget& budget = {});
Verdict implements(const Circuit& c, std::size_t rounds, const FunctionSpec& f,
                   const Budget& budget = {});
bool trace_check(const Circuit& c, const ExecutionTrace& t);

}  // namespace mc
