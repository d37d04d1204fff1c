#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mc/budget.hpp"
#include "mc/executor.hpp"
#include "mc/function_spec.hpp"
#include "mc/netlist.hpp"
#include "mc/ternary.hpp"

namespace mc {

/// Metastable closure of a Boolean function: bit i of x is b when every
/// stable resolution of x maps bit i to b, and Any otherwise.
FunctionSpec closure_bool(const BooleanFunction& f);

/// Metastable closure of a specification: bit i of x is b when every
/// partial resolution x' of x has f(x') confined to b at bit i.
FunctionSpec closure_general(const FunctionSpec& f);

/// Bit-wise, closed and specific. A general spec qualifies when every value
/// is a single cube; specificity is checked against stable resolutions.
bool is_natural(const FunctionSpec& f);

/// Natural form of a spec that is bit-wise and closed, else nullopt.
std::optional<FunctionSpec> to_natural_form(const FunctionSpec& f);

/// Result of the natural-subfunction search.
struct SubfunctionResult {
  std::optional<FunctionSpec> witness;  ///< natural h ⊆ g, if one exists
  std::size_t nodes = 0;                ///< search nodes visited
};

inline constexpr std::size_t kMaxSubfunctionArity = 8;

/// Decides whether `g` has a natural subfunction.
///
/// A natural h ⊆ g exists iff some Boolean b with b(x) ∈ g(x) on stable x
/// has its closure inside g (the closure of any Boolean choice inside h lies
/// inside h). The search assigns b input by input in ascending order,
/// candidates ascending, and checks each metastable input as soon as all its
/// resolutions are assigned. Visited nodes count against max_states.
SubfunctionResult find_natural_subfunction(const FunctionSpec& g, const Budget& budget = {});

/// Prime implicants of a single-output function, as cubes over its inputs
/// (M marks a free variable), ascending. Quine-McCluskey merging.
std::vector<TernaryWord> prime_implicants(const BooleanFunction& f);

/// Two-level circuit for a natural spec: per output bit a constant gate, or
/// one AND per prime implicant of the bit's Boolean restriction (Any read as
/// 0) feeding one OR, with shared NOT gates on the inputs. Inputs are named
/// x0.., outputs y0... The result is checked to implement h in one round.
/// Throws DomainError if h is not natural.
Circuit synthesize(const FunctionSpec& h, const std::string& name = "synth",
                   const Budget& budget = {});

/// One circuit whose single round does what `rounds` rounds of `c` do.
/// Copies of the DAG are chained: inputs are shared, each local register
/// seam becomes a BUF, and early outputs end in BUF sinks. Registers and
/// initial values are kept. Requires simple registers only.
Circuit unroll(const Circuit& c, std::size_t rounds);

/// Flips the differing digits of x into x', rightmost first, passing each
/// stable-to-stable change through M.
std::vector<TernaryWord> pivotal_sequence(const TernaryWord& x, const TernaryWord& x_to);
bool is_pivotal(const std::vector<TernaryWord>& seq);

struct WitnessResult {
  bool overlap = false;  ///< C_r(ι) and C_r(ι') share an output
  /// Input along the pivotal sequence with a metastable-output execution.
  std::optional<TernaryWord> input;
  std::optional<ExecutionTrace> trace;
};

/// If C_r(ι) ∩ C_r(ι') = ∅, walks the pivotal sequence from ι to ι' and
/// returns the first r-round execution ending with a metastable output bit.
WitnessResult metastable_witness(const Circuit& c, std::size_t rounds, const TernaryWord& iota,
                                 const TernaryWord& iota_to, const Budget& budget = {});

}  // namespace mc
