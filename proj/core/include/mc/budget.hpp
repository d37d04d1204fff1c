#pragma once

#include <cstddef>
#include <string_view>

namespace mc {

inline constexpr std::size_t kDefaultMaxStates = 1'000'000;
inline constexpr std::size_t kDefaultMaxMetaBits = 12;

/// Limits on exhaustive work. Exceeding either knob raises BudgetExceeded;
/// nothing is ever truncated silently.
struct Budget {
  /// Cap on explored state cubes (reach) and on input vectors (implements).
  std::size_t max_states = kDefaultMaxStates;
  /// Cap on Meta bits in any word that gets expanded into its resolutions.
  std::size_t max_meta_bits = kDefaultMaxMetaBits;

  void require_meta_bits(std::size_t meta_bits, std::string_view what) const;
  void require_states(std::size_t states, std::string_view what) const;
};

}  // namespace mc
