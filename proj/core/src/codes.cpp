#include "mc/codes.hpp"

#include <algorithm>
#include <limits>

#include "mc/errors.hpp"

namespace mc {

namespace {

void check_width(const Code& code) {
  if (code.kind == CodeKind::Gray && code.width > 63) {
    throw DomainError("Gray code width exceeds 63 bits");
  }
}

}  // namespace

std::uint64_t Code::range() const {
  check_width(*this);
  return kind == CodeKind::Thermometer ? width + 1 : (std::uint64_t{1} << width);
}

TernaryWord encode(const Code& code, std::uint64_t value) {
  if (value >= code.range()) {
    throw DomainError("encode: value " + std::to_string(value) + " outside [0, " +
                      std::to_string(code.range()) + ")");
  }
  if (code.kind == CodeKind::Gray) return TernaryWord::from_bits(value ^ (value >> 1), code.width);

  TernaryWord w(code.width);
  for (std::size_t i = 0; i < value; ++i) {
    const std::size_t pos = code.order == ThermometerOrder::OnesLow ? code.width - 1 - i : i;
    w.set(pos, Ternary::One);
  }
  return w;
}

std::uint64_t decode(const Code& code, const TernaryWord& word) {
  if (word.width() != code.width || !word.is_stable()) {
    throw CodeError(word.str() + " is not a codeword");
  }
  if (code.kind == CodeKind::Gray) {
    std::uint64_t g = word.to_bits();
    std::uint64_t v = 0;
    for (; g != 0; g >>= 1) v ^= g;
    return v;
  }
  std::size_t ones = 0;
  for (std::size_t i = 0; i < word.width(); ++i) ones += word[i] == Ternary::One ? 1 : 0;
  if (encode(code, ones) != word) throw CodeError(word.str() + " is not a codeword");
  return ones;
}

bool is_codeword(const Code& code, const TernaryWord& word) {
  try {
    decode(code, word);
    return true;
  } catch (const CodeError&) {
    return false;
  }
}

std::uint64_t precision(const Code& code, const TernaryWord& word, std::size_t max_meta_bits) {
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t hi = 0;
  for (const auto& r : res_full(word, max_meta_bits)) {
    std::uint64_t v = 0;
    try {
      v = decode(code, r);
    } catch (const CodeError&) {
      throw CodeError("precision undefined: resolution " + r.str() + " of " + word.str() +
                      " is not a codeword");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace mc
