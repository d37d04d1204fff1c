#pragma once

#include <cstddef>
#include <cstdint>

#include "mc/budget.hpp"
#include "mc/ternary.hpp"

namespace mc {

enum class CodeKind { Thermometer, Gray };

/// Where the 1s of a thermometer codeword sit.
enum class ThermometerOrder {
  OnesLow,   ///< 0^(n-v) 1^v, e.g. value 1 at width 4 is 0001
  OnesHigh,  ///< 1^v 0^(n-v), the order a tapped delay line reads out
};

/// An injective code from [range()] into stable words of `width` bits.
/// Thermometer (TC) width n encodes 0..n; binary reflected Gray (BRGC)
/// width k encodes 0..2^k-1 bijectively.
struct Code {
  CodeKind kind = CodeKind::Thermometer;
  std::size_t width = 0;
  ThermometerOrder order = ThermometerOrder::OnesLow;

  static Code thermometer(std::size_t width, ThermometerOrder order = ThermometerOrder::OnesLow) {
    return Code{CodeKind::Thermometer, width, order};
  }
  static Code gray(std::size_t width) { return Code{CodeKind::Gray, width}; }

  std::uint64_t range() const;

  friend bool operator==(const Code&, const Code&) = default;
};

TernaryWord encode(const Code& code, std::uint64_t value);
/// Inverse of encode; throws CodeError("not a codeword") otherwise.
std::uint64_t decode(const Code& code, const TernaryWord& word);
bool is_codeword(const Code& code, const TernaryWord& word);

/// Largest difference between decoded stable resolutions of `word`.
/// Throws CodeError when some resolution is not a codeword.
std::uint64_t precision(const Code& code, const TernaryWord& word,
                        std::size_t max_meta_bits = kDefaultMaxMetaBits);

}  // namespace mc
