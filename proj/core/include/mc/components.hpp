#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mc/codes.hpp"
#include "mc/function_spec.hpp"
#include "mc/netlist.hpp"
#include "mc/ternary.hpp"

namespace mc {

// Multiplexers over (a, b, s), one output o.

/// (¬s ∧ a) ∨ (s ∧ b).
Circuit build_mux();
/// Adds the consensus term a ∧ b, so a = b masks a metastable select.
Circuit build_cmux_combinational();
/// Two-round CMUX: s is a mask-1 input copied into a simple local s'; the
/// output takes (¬s ∧ a) ∨ (s' ∧ b). Only the round-2 output is specified.
Circuit build_cmux_clocked();

/// Res_M(a) if s = 0, Res_M(b) if s = 1, anything if s = M.
FunctionSpec mux_spec();
/// As mux_spec, but a = b forces Res_M(a) even when s = M.
FunctionSpec cmux_spec();

/// r copies of a bit read from a mask-0 input R_{r-1} through locals
/// R_{r-2} .. R_0 (init 0); output O_i copies R_i. Outputs O_0 .. O_{r-1}.
Circuit build_fanout_buffer(std::size_t r);
/// {x^r} for stable x; for M the union of Res_M(0^i M 1^{r-i-1}).
FunctionSpec fanout_spec(std::size_t r);

/// No inputs, outputs O_1 .. O_r; O_i is 1 exactly in round i (for rounds
/// 1..r). A local chain R_0 .. R_{r-1} (R_0 = 1, held by a constant) shifts
/// one step per round and neighbouring pairs are XORed.
Circuit build_counter(std::size_t r);
/// Inputs x_0 .. x_{r-1}, one output that holds x_{i-1} after round i.
Circuit build_selector(std::size_t r);

/// Thermometer (ones high, width 2^k - 1) to k-bit Gray. Each input bit
/// feeds exactly one balanced XOR tree, so a single metastable input bit
/// spoils at most one output bit.
Circuit build_tc_to_brgc(std::size_t k);

/// Inputs a (k bits) then b; outputs min (k bits) then max, both in Gray
/// code, synthesized from the closure of the stable min/max.
Circuit build_two_sort(std::size_t k);

/// Gray (k bits) to thermometer (ones low, width 2^k - 1), synthesized from
/// the closure.
Circuit build_brgc_to_tc(std::size_t k);

/// Comparator network on n channels; a comparator (i, j), i < j, leaves the
/// smaller value on channel i.
struct SortingNetwork {
  std::size_t channels = 0;
  std::size_t word_bits = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layers;

  std::size_t comparator_count() const;
};

/// Batcher's odd-even merge sort for the next power of two, without the
/// comparators that touch channels >= n.
SortingNetwork batcher_network(std::size_t n);

/// Network of 2-sorts on n channels of k-bit Gray words. Inputs i<c>_<b>,
/// outputs o<c>_<b>; channel 0 ends up with the minimum.
std::pair<SortingNetwork, Circuit> build_sorting_network(std::size_t n, std::size_t k);

/// A delay-line reading 1^v 0^(n-v), or 1^v M 0^(n-v-1) when `meta`.
TernaryWord tdc_reading(std::size_t n, std::size_t v, bool meta);

/// Readings of n nodes (thermometer, ones high, width 2^k - 1) are converted
/// to Gray, sorted, and the (f+1)-th and (n-f)-th largest are converted back
/// to thermometer code (ones low). Outputs low_*, then high_*.
Circuit build_clock_sync_pipeline(std::size_t n, std::size_t f, std::size_t k);

struct ClockSyncResult {
  TernaryWord low;   ///< (f+1)-th largest
  TernaryWord high;  ///< (n-f)-th largest
};

/// Runs one round of the pipeline on the given readings.
ClockSyncResult clock_sync_select(std::size_t n, std::size_t f,
                                  const std::vector<TernaryWord>& readings);

}  // namespace mc
