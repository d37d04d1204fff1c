#include "mc/ternary.hpp"

#include <bit>

#include "mc/errors.hpp"

namespace mc {

namespace {

constexpr std::size_t kBlock = 64;

std::size_t blocks_for(std::size_t width) { return (width + kBlock - 1) / kBlock; }

void require_same_width(const TernaryWord& a, const TernaryWord& b, const char* op) {
  if (a.width() != b.width()) {
    throw DomainError(std::string(op) + ": width mismatch (" + std::to_string(a.width()) +
                      " vs " + std::to_string(b.width()) + ")");
  }
}

}  // namespace

void Budget::require_meta_bits(std::size_t meta_bits, std::string_view what) const {
  if (meta_bits > max_meta_bits) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(meta_bits) +
                         " Meta bits exceed the cap of " + std::to_string(max_meta_bits));
  }
}

void Budget::require_states(std::size_t states, std::string_view what) const {
  if (states > max_states) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(states) +
                         " states exceed the cap of " + std::to_string(max_states));
  }
}

char to_char(Ternary t) noexcept {
  switch (t) {
    case Ternary::Zero:
      return '0';
    case Ternary::One:
      return '1';
    case Ternary::Meta:
      return 'M';
  }
  return '?';
}

Ternary ternary_from_char(char c) {
  switch (c) {
    case '0':
      return Ternary::Zero;
    case '1':
      return Ternary::One;
    case 'M':
    case 'm':
      return Ternary::Meta;
    default:
      throw ParseError(std::string("invalid ternary digit '") + c + "'");
  }
}

TernaryWord::TernaryWord(std::size_t width, Ternary fill)
    : width_(width), ones_(blocks_for(width), 0), meta_(blocks_for(width), 0) {
  if (fill != Ternary::Zero) {
    for (std::size_t i = 0; i < width; ++i) set(i, fill);
  }
}

TernaryWord::TernaryWord(std::initializer_list<Ternary> digits) : TernaryWord(digits.size()) {
  std::size_t i = 0;
  for (Ternary t : digits) set(i++, t);
}

TernaryWord TernaryWord::parse(std::string_view text) {
  TernaryWord w(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) w.set(i, ternary_from_char(text[i]));
  return w;
}

TernaryWord TernaryWord::from_bits(std::uint64_t bits, std::size_t width) {
  if (width > 64) throw DomainError("from_bits: width exceeds 64");
  TernaryWord w(width);
  for (std::size_t i = 0; i < width; ++i) {
    if ((bits >> (width - 1 - i)) & 1U) w.set(i, Ternary::One);
  }
  return w;
}

Ternary TernaryWord::operator[](std::size_t i) const noexcept {
  const std::uint64_t mask = std::uint64_t{1} << (i % kBlock);
  if (meta_[i / kBlock] & mask) return Ternary::Meta;
  return (ones_[i / kBlock] & mask) ? Ternary::One : Ternary::Zero;
}

Ternary TernaryWord::at(std::size_t i) const {
  if (i >= width_) throw std::out_of_range("TernaryWord::at");
  return (*this)[i];
}

void TernaryWord::set(std::size_t i, Ternary t) {
  if (i >= width_) throw std::out_of_range("TernaryWord::set");
  const std::uint64_t mask = std::uint64_t{1} << (i % kBlock);
  auto& ones = ones_[i / kBlock];
  auto& meta = meta_[i / kBlock];
  ones &= ~mask;
  meta &= ~mask;
  if (t == Ternary::One) ones |= mask;
  if (t == Ternary::Meta) meta |= mask;
}

bool TernaryWord::is_stable() const noexcept {
  for (auto m : meta_) {
    if (m != 0) return false;
  }
  return true;
}

std::size_t TernaryWord::meta_count() const noexcept {
  std::size_t n = 0;
  for (auto m : meta_) n += static_cast<std::size_t>(std::popcount(m));
  return n;
}

std::vector<std::size_t> TernaryWord::meta_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i) {
    if ((*this)[i] == Ternary::Meta) out.push_back(i);
  }
  return out;
}

std::uint64_t TernaryWord::to_bits() const {
  if (!is_stable()) throw DomainError("to_bits: word " + str() + " is not stable");
  if (width_ > 64) throw DomainError("to_bits: width exceeds 64");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width_; ++i) v = (v << 1) | ((*this)[i] == Ternary::One ? 1U : 0U);
  return v;
}

TernaryWord TernaryWord::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > width_) throw std::out_of_range("TernaryWord::slice");
  TernaryWord out(len);
  for (std::size_t i = 0; i < len; ++i) out.set(i, (*this)[pos + i]);
  return out;
}

TernaryWord TernaryWord::operator+(const TernaryWord& tail) const {
  TernaryWord out(width_ + tail.width_);
  for (std::size_t i = 0; i < width_; ++i) out.set(i, (*this)[i]);
  for (std::size_t i = 0; i < tail.width_; ++i) out.set(width_ + i, tail[i]);
  return out;
}

std::string TernaryWord::str() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) s[i] = to_char((*this)[i]);
  return s;
}

std::size_t TernaryWord::hash() const noexcept {
  std::size_t h = width_ * 0x9e3779b97f4a7c15ULL;
  for (std::size_t b = 0; b < ones_.size(); ++b) {
    h ^= ones_[b] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= meta_[b] * 0xff51afd7ed558ccdULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const TernaryWord& a, const TernaryWord& b) {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  for (std::size_t blk = 0; blk < a.ones_.size(); ++blk) {
    const std::uint64_t diff = (a.ones_[blk] ^ b.ones_[blk]) | (a.meta_[blk] ^ b.meta_[blk]);
    if (diff == 0) continue;
    const std::size_t i = blk * kBlock + static_cast<std::size_t>(std::countr_zero(diff));
    return static_cast<int>(a[i]) <=> static_cast<int>(b[i]);
  }
  return std::strong_ordering::equal;
}

bool res_contains(const TernaryWord& cube, const TernaryWord& w) {
  require_same_width(cube, w, "res_contains");
  for (std::size_t b = 0; b < cube.ones_.size(); ++b) {
    const std::uint64_t fixed = ~cube.meta_[b];
    if ((w.meta_[b] & fixed) != 0) return false;
    if (((cube.ones_[b] ^ w.ones_[b]) & fixed) != 0) return false;
  }
  return true;
}

bool cubes_intersect(const TernaryWord& a, const TernaryWord& b) {
  require_same_width(a, b, "cubes_intersect");
  for (std::size_t k = 0; k < a.ones_.size(); ++k) {
    const std::uint64_t both_fixed = ~a.meta_[k] & ~b.meta_[k];
    if (((a.ones_[k] ^ b.ones_[k]) & both_fixed) != 0) return false;
  }
  return true;
}

TernaryWord cube_join(const TernaryWord& a, const TernaryWord& b) {
  require_same_width(a, b, "cube_join");
  TernaryWord out(a.width_);
  for (std::size_t k = 0; k < a.ones_.size(); ++k) {
    const std::uint64_t differ = (a.ones_[k] ^ b.ones_[k]) | a.meta_[k] | b.meta_[k];
    out.meta_[k] = differ;
    out.ones_[k] = a.ones_[k] & ~differ;
  }
  return out;
}

namespace {

void expand(const TernaryWord& w, const std::vector<std::size_t>& pos, std::size_t next,
            bool include_meta, TernaryWord& cur, std::vector<TernaryWord>& out) {
  if (next == pos.size()) {
    out.push_back(cur);
    return;
  }
  cur.set(pos[next], Ternary::Zero);
  expand(w, pos, next + 1, include_meta, cur, out);
  cur.set(pos[next], Ternary::One);
  expand(w, pos, next + 1, include_meta, cur, out);
  if (include_meta) {
    cur.set(pos[next], Ternary::Meta);
    expand(w, pos, next + 1, include_meta, cur, out);
  }
  cur.set(pos[next], Ternary::Meta);
}

}  // namespace

std::vector<TernaryWord> res_full(const TernaryWord& w, std::size_t max_meta_bits) {
  const auto pos = w.meta_positions();
  Budget{.max_meta_bits = max_meta_bits}.require_meta_bits(pos.size(), "res_full");
  std::vector<TernaryWord> out;
  out.reserve(std::size_t{1} << pos.size());
  TernaryWord cur = w;
  expand(w, pos, 0, false, cur, out);
  return out;
}

std::vector<TernaryWord> res_partial(const TernaryWord& w, std::size_t max_meta_bits) {
  const auto pos = w.meta_positions();
  Budget{.max_meta_bits = max_meta_bits}.require_meta_bits(pos.size(), "res_partial");
  std::vector<TernaryWord> out;
  out.reserve(pow3(pos.size()));
  TernaryWord cur = w;
  expand(w, pos, 0, true, cur, out);
  return out;
}

std::size_t pow3(std::size_t exponent) {
  std::size_t p = 1;
  for (std::size_t i = 0; i < exponent; ++i) p *= 3;
  return p;
}

std::size_t ternary_index(const TernaryWord& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.width(); ++i) idx = idx * 3 + static_cast<std::size_t>(w[i]);
  return idx;
}

TernaryWord ternary_word(std::size_t index, std::size_t width) {
  TernaryWord w(width);
  for (std::size_t i = width; i-- > 0;) {
    w.set(i, static_cast<Ternary>(index % 3));
    index /= 3;
  }
  if (index != 0) throw DomainError("ternary_word: index out of range");
  return w;
}

BooleanFunction::BooleanFunction(std::size_t inputs, std::size_t outputs,
                                 std::vector<std::uint64_t> rows)
    : inputs_(inputs), outputs_(outputs), rows_(std::move(rows)) {
  if (inputs > 24) throw DomainError("BooleanFunction: more than 24 inputs");
  if (outputs > 64) throw DomainError("BooleanFunction: more than 64 outputs");
  if (rows_.size() != (std::size_t{1} << inputs)) {
    throw DomainError("BooleanFunction: expected " + std::to_string(std::size_t{1} << inputs) +
                      " rows, got " + std::to_string(rows_.size()));
  }
  const std::uint64_t limit = outputs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << outputs) - 1;
  for (auto r : rows_) {
    if ((r & ~limit) != 0) throw DomainError("BooleanFunction: row value wider than outputs");
  }
}

BooleanFunction BooleanFunction::from_callable(
    std::size_t inputs, std::size_t outputs,
    const std::function<std::uint64_t(std::uint64_t)>& f) {
  std::vector<std::uint64_t> rows(std::size_t{1} << inputs);
  for (std::uint64_t x = 0; x < rows.size(); ++x) rows[x] = f(x);
  return BooleanFunction(inputs, outputs, std::move(rows));
}

BooleanFunction BooleanFunction::from_table_string(std::string_view bits) {
  std::size_t arity = 0;
  while ((std::size_t{1} << arity) < bits.size()) ++arity;
  if ((std::size_t{1} << arity) != bits.size()) {
    throw ParseError("truth table length " + std::to_string(bits.size()) +
                     " is not a power of two");
  }
  std::vector<std::uint64_t> rows(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') {
      throw ParseError(std::string("truth table digit '") + bits[i] + "' is not 0 or 1");
    }
    rows[i] = bits[i] == '1' ? 1 : 0;
  }
  return BooleanFunction(arity, 1, std::move(rows));
}

bool BooleanFunction::bit(std::uint64_t x, std::size_t output) const {
  return ((row(x) >> (outputs_ - 1 - output)) & 1U) != 0;
}

TernaryWord BooleanFunction::eval(const TernaryWord& input) const {
  if (input.width() != inputs_) throw DomainError("BooleanFunction::eval: arity mismatch");
  return TernaryWord::from_bits(row(input.to_bits()), outputs_);
}

BooleanFunction BooleanFunction::output(std::size_t i) const {
  if (i >= outputs_) throw std::out_of_range("BooleanFunction::output");
  std::vector<std::uint64_t> rows(rows_.size());
  for (std::size_t x = 0; x < rows_.size(); ++x) rows[x] = bit(x, i) ? 1 : 0;
  return BooleanFunction(inputs_, 1, std::move(rows));
}

std::string BooleanFunction::table_string() const {
  if (outputs_ != 1) throw DomainError("table_string: function has more than one output");
  std::string s(rows_.size(), '0');
  for (std::size_t i = 0; i < rows_.size(); ++i) s[i] = rows_[i] ? '1' : '0';
  return s;
}

Ternary kleene_extend(const BooleanFunction& f, const TernaryWord& x, std::size_t max_meta_bits) {
  if (f.outputs() != 1) throw DomainError("kleene_extend: function must have one output");
  if (f.inputs() != x.width()) {
    throw DomainError("kleene_extend: arity " + std::to_string(f.inputs()) +
                      " does not match word width " + std::to_string(x.width()));
  }
  bool seen0 = false;
  bool seen1 = false;
  for (const auto& r : res_full(x, max_meta_bits)) {
    (f.row(r.to_bits()) ? seen1 : seen0) = true;
    if (seen0 && seen1) return Ternary::Meta;
  }
  return seen1 ? Ternary::One : Ternary::Zero;
}

}  // namespace mc
