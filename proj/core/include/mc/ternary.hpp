#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "mc/budget.hpp"

namespace mc {

/// A signal value: stable 0, stable 1, or metastable.
enum class Ternary : std::uint8_t { Zero = 0, One = 1, Meta = 2 };

constexpr bool is_stable(Ternary t) noexcept { return t != Ternary::Meta; }
constexpr Ternary to_ternary(bool b) noexcept { return b ? Ternary::One : Ternary::Zero; }

char to_char(Ternary t) noexcept;
/// Accepts '0', '1', 'M' (also 'm'); anything else is a ParseError.
Ternary ternary_from_char(char c);

/// Fixed-width word over {0,1,M}, MSB first: index 0 is the leftmost digit.
///
/// Storage is two bit planes (one bit of each per digit): `ones` marks stable
/// 1s and `meta` marks Meta digits. A Meta digit never has its `ones` bit set,
/// so plane equality is digit equality.
///
/// A word also serves as a cube: it stands for its partial resolutions, every
/// word obtained by replacing some of its Meta digits by 0 or 1.
class TernaryWord {
 public:
  TernaryWord() = default;
  explicit TernaryWord(std::size_t width, Ternary fill = Ternary::Zero);
  TernaryWord(std::initializer_list<Ternary> digits);

  /// Parses the textual syntax, e.g. "0M100". The empty string is the
  /// width-0 word.
  static TernaryWord parse(std::string_view text);
  /// Stable word of `width` digits holding `bits`, most significant first.
  static TernaryWord from_bits(std::uint64_t bits, std::size_t width);

  std::size_t width() const noexcept { return width_; }
  bool empty() const noexcept { return width_ == 0; }

  Ternary operator[](std::size_t i) const noexcept;
  Ternary at(std::size_t i) const;
  void set(std::size_t i, Ternary t);

  bool is_stable() const noexcept;
  std::size_t meta_count() const noexcept;
  std::vector<std::size_t> meta_positions() const;

  /// Integer value of a stable word (MSB first). Requires width <= 64.
  std::uint64_t to_bits() const;

  TernaryWord slice(std::size_t pos, std::size_t len) const;
  /// Concatenation, `this` first.
  TernaryWord operator+(const TernaryWord& tail) const;

  std::string str() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const TernaryWord&, const TernaryWord&) = default;
  /// Width first, then digit-wise lexicographic with 0 < 1 < M.
  friend std::strong_ordering operator<=>(const TernaryWord& a, const TernaryWord& b);

 private:
  friend bool res_contains(const TernaryWord& cube, const TernaryWord& w);
  friend bool cubes_intersect(const TernaryWord& a, const TernaryWord& b);
  friend TernaryWord cube_join(const TernaryWord& a, const TernaryWord& b);

  std::size_t width_ = 0;
  std::vector<std::uint64_t> ones_;
  std::vector<std::uint64_t> meta_;
};

struct TernaryWordHash {
  std::size_t operator()(const TernaryWord& w) const noexcept { return w.hash(); }
};

/// True iff `w` is a partial resolution of `cube` (decided per digit).
/// Width mismatch throws DomainError.
bool res_contains(const TernaryWord& cube, const TernaryWord& w);

/// True iff the two cubes share a partial resolution.
bool cubes_intersect(const TernaryWord& a, const TernaryWord& b);

/// Smallest cube containing both: equal digits are kept, differing ones
/// become Meta.
TernaryWord cube_join(const TernaryWord& a, const TernaryWord& b);

/// All stable resolutions of `w`, ascending. Refuses (BudgetExceeded) when
/// `w` has more than `max_meta_bits` Meta digits.
std::vector<TernaryWord> res_full(const TernaryWord& w,
                                  std::size_t max_meta_bits = kDefaultMaxMetaBits);

/// All partial resolutions of `w` (3^m words), ascending.
std::vector<TernaryWord> res_partial(const TernaryWord& w,
                                     std::size_t max_meta_bits = kDefaultMaxMetaBits);

/// Index of `w` among all words of its width in ascending order, i.e. the
/// base-3 number with digits 0, 1, M = 0, 1, 2.
std::size_t ternary_index(const TernaryWord& w);
TernaryWord ternary_word(std::size_t index, std::size_t width);
std::size_t pow3(std::size_t exponent);

/// Boolean function B^m -> B^n as a full truth table. Row `x` is indexed by
/// the input read as a binary number (first input most significant); its
/// value packs the outputs the same way (first output most significant).
class BooleanFunction {
 public:
  BooleanFunction() = default;
  BooleanFunction(std::size_t inputs, std::size_t outputs, std::vector<std::uint64_t> rows);

  static BooleanFunction from_callable(
      std::size_t inputs, std::size_t outputs,
      const std::function<std::uint64_t(std::uint64_t)>& f);
  /// Single-output table from a string over {0,1} of length 2^arity, listing
  /// outputs for inputs in ascending binary order.
  static BooleanFunction from_table_string(std::string_view bits);

  std::size_t inputs() const noexcept { return inputs_; }
  std::size_t outputs() const noexcept { return outputs_; }
  std::uint64_t row(std::uint64_t x) const { return rows_.at(x); }
  bool bit(std::uint64_t x, std::size_t output) const;
  const std::vector<std::uint64_t>& rows() const noexcept { return rows_; }

  /// Evaluates on a stable word of width inputs().
  TernaryWord eval(const TernaryWord& input) const;
  /// Restriction to one output.
  BooleanFunction output(std::size_t i) const;
  /// Inverse of from_table_string; single-output only.
  std::string table_string() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// The gate rule: b if f is constant b over all stable resolutions of `x`,
/// Meta otherwise. `f` must have one output and arity x.width().
Ternary kleene_extend(const BooleanFunction& f, const TernaryWord& x,
                      std::size_t max_meta_bits = kDefaultMaxMetaBits);

}  // namespace mc

template <>
struct std::hash<mc::TernaryWord> {
  std::size_t operator()(const mc::TernaryWord& w) const noexcept { return w.hash(); }
};
