#include "mc/analysis.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "mc/errors.hpp"

namespace mc {

namespace {

// Values a single output bit may take, as three bit planes over the outputs.
struct BitSets {
  std::uint64_t zero = 0, one = 0, meta = 0;

  BitSets& operator|=(const BitSets& o) {
    zero |= o.zero;
    one |= o.one;
    meta |= o.meta;
    return *this;
  }
};

void require_coarity(std::size_t n) {
  if (n > 64) throw DomainError("more than 64 outputs");
}

BitSets project(const CubeSet& value) {
  BitSets s;
  const std::size_t n = value.width();
  for (const auto& cube : value.cubes())
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - b);
      switch (cube[b]) {
        case Ternary::Zero: s.zero |= bit; break;
        case Ternary::One: s.one |= bit; break;
        case Ternary::Meta:
          s.zero |= bit;
          s.one |= bit;
          s.meta |= bit;
          break;
      }
    }
  return s;
}

// After this, sets[x] is the union of sets[y] over all partial resolutions
// y of x (one pass per digit, merging both stable children into each M).
void union_over_resolutions(std::vector<BitSets>& sets, std::size_t m) {
  for (std::size_t d = 0; d < m; ++d) {
    const std::size_t w = pow3(m - 1 - d);
    for (std::size_t i = 0; i < sets.size(); ++i)
      if ((i / w) % 3 == 2) {
        sets[i] |= sets[i - w];
        sets[i] |= sets[i - 2 * w];
      }
  }
}

FunctionSpec natural_from_sets(std::size_t m, std::size_t n, const std::vector<BitSets>& sets) {
  std::vector<std::vector<Entry>> rows(sets.size(), std::vector<Entry>(n));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - b);
      const bool z = sets[i].zero & bit, o = sets[i].one & bit, mm = sets[i].meta & bit;
      rows[i][b] = (z && !o && !mm) ? Entry::Zero : (o && !z && !mm) ? Entry::One : Entry::Any;
    }
  return FunctionSpec::natural(m, n, std::move(rows));
}

// Index of the stable word with bits `v` among all words of width m.
std::size_t stable_index(std::uint64_t v, std::size_t m) {
  std::size_t idx = 0;
  for (std::size_t d = 0; d < m; ++d) idx = idx * 3 + ((v >> (m - 1 - d)) & 1);
  return idx;
}

}  // namespace

FunctionSpec closure_bool(const BooleanFunction& f) {
  const std::size_t m = f.inputs(), n = f.outputs();
  if (m > FunctionSpec::kMaxArity)
    throw BudgetExceeded("closure of a " + std::to_string(m) + "-input function");
  std::vector<BitSets> sets(pow3(m));
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    const std::uint64_t y = f.row(x);
    sets[stable_index(x, m)] = {~y & all, y, 0};
  }
  union_over_resolutions(sets, m);
  return natural_from_sets(m, n, sets);
}

FunctionSpec closure_general(const FunctionSpec& f) {
  const std::size_t m = f.arity(), n = f.coarity();
  require_coarity(n);
  std::vector<BitSets> sets(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sets[i] = project(f.value(ternary_word(i, m)));
  union_over_resolutions(sets, m);
  return natural_from_sets(m, n, sets);
}

std::optional<FunctionSpec> to_natural_form(const FunctionSpec& f) {
  if (f.form() == SpecForm::Natural) return f;
  const std::size_t m = f.arity(), n = f.coarity();
  std::vector<std::vector<Entry>> rows;
  rows.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const CubeSet v = f.value(ternary_word(i, m));
    if (!v.is_single_cube()) return std::nullopt;
    std::vector<Entry> row(n);
    for (std::size_t b = 0; b < n; ++b) {
      const Ternary t = v.cubes()[0][b];
      row[b] = t == Ternary::Zero ? Entry::Zero : t == Ternary::One ? Entry::One : Entry::Any;
    }
    rows.push_back(std::move(row));
  }
  return FunctionSpec::natural(m, n, std::move(rows));
}

bool is_natural(const FunctionSpec& spec) {
  const auto f = to_natural_form(spec);
  if (!f) return false;
  const std::size_t m = f->arity(), n = f->coarity();
  require_coarity(n);
  // Union of entries over stable resolutions only.
  std::vector<BitSets> sets(f->size());
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    const std::size_t i = stable_index(x, m);
    sets[i] = project(f->value(ternary_word(i, m)));
  }
  union_over_resolutions(sets, m);
  for (std::size_t i = 0; i < f->size(); ++i) {
    const auto& row = f->entries(ternary_word(i, m));
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - b);
      if (row[b] == Entry::Any) continue;
      const bool z = sets[i].zero & bit, o = sets[i].one & bit, mm = sets[i].meta & bit;
      if (mm || (row[b] == Entry::Zero ? o : z)) return false;
    }
  }
  return true;
}

// --- natural subfunction search -------------------------------------------

namespace {

class SubfunctionSearch {
 public:
  SubfunctionSearch(const FunctionSpec& g, const Budget& budget)
      : g_(g), budget_(budget), m_(g.arity()), n_(g.coarity()) {
    const std::size_t total = g.size();
    ones_.assign(total, 0);
    meta_.assign(total, 0);
    const std::uint64_t stable_count = std::uint64_t{1} << m_;
    candidates_.resize(stable_count);
    ready_.resize(stable_count);
    for (std::uint64_t t = 0; t < stable_count; ++t) {
      const TernaryWord x = TernaryWord::from_bits(t, m_);
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << n_); ++y)
        if (g.allows(x, TernaryWord::from_bits(y, n_))) candidates_[t].push_back(y);
    }
    // A metastable input can be checked once its largest resolution is set.
    for (std::size_t i = 0; i < total; ++i) {
      const TernaryWord x = ternary_word(i, m_);
      if (x.is_stable()) continue;
      std::uint64_t top = 0;
      for (std::size_t d = 0; d < m_; ++d) top = top << 1 | (x[d] != Ternary::Zero ? 1 : 0);
      ready_[top].push_back(i);
    }
  }

  bool run() { return assign(0); }
  std::size_t nodes() const { return nodes_; }

  FunctionSpec witness() const {
    std::vector<std::vector<Entry>> rows(g_.size(), std::vector<Entry>(n_));
    for (std::size_t i = 0; i < g_.size(); ++i)
      for (std::size_t b = 0; b < n_; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - b);
        rows[i][b] = (meta_[i] & bit) ? Entry::Any : (ones_[i] & bit) ? Entry::One : Entry::Zero;
      }
    return FunctionSpec::natural(m_, n_, std::move(rows));
  }

 private:
  bool assign(std::uint64_t t) {
    if (t == candidates_.size()) return true;
    const std::size_t idx = stable_index(t, m_);
    for (std::uint64_t y : candidates_[t]) {
      budget_.require_states(++nodes_, "natural-subfunction search nodes");
      ones_[idx] = y;
      meta_[idx] = 0;
      if (close_ready(t) && assign(t + 1)) return true;
    }
    return false;
  }

  // Closure cubes of the inputs that became fully determined at step t.
  // Ascending index order puts both children of x before x.
  bool close_ready(std::uint64_t t) {
    for (std::size_t i : ready_[t]) {
      std::size_t w = pow3(m_ - 1);
      while ((i / w) % 3 != 2) w /= 3;
      const std::size_t c0 = i - 2 * w, c1 = i - w;
      const std::uint64_t meta = meta_[c0] | meta_[c1] | (ones_[c0] ^ ones_[c1]);
      meta_[i] = meta;
      ones_[i] = ones_[c0] & ~meta;
      TernaryWord cube(n_);
      for (std::size_t b = 0; b < n_; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << (n_ - 1 - b);
        cube.set(b, (meta & bit) ? Ternary::Meta : to_ternary(ones_[i] & bit));
      }
      if (!g_.allows(ternary_word(i, m_), cube)) return false;
    }
    return true;
  }

  const FunctionSpec& g_;
  const Budget& budget_;
  std::size_t m_, n_;
  std::vector<std::uint64_t> ones_, meta_;
  std::vector<std::vector<std::uint64_t>> candidates_;
  std::vector<std::vector<std::size_t>> ready_;
  std::size_t nodes_ = 0;
};

}  // namespace

SubfunctionResult find_natural_subfunction(const FunctionSpec& g, const Budget& budget) {
  if (g.arity() > kMaxSubfunctionArity)
    throw BudgetExceeded("natural-subfunction search is capped at " +
                         std::to_string(kMaxSubfunctionArity) + " inputs");
  if (g.coarity() > 16) throw BudgetExceeded("natural-subfunction search is capped at 16 outputs");
  SubfunctionSearch s(g, budget);
  SubfunctionResult r;
  if (s.run()) r.witness = s.witness();
  r.nodes = s.nodes();
  return r;
}

// --- prime implicants ------------------------------------------------------

std::vector<TernaryWord> prime_implicants(const BooleanFunction& f) {
  if (f.outputs() != 1) throw DomainError("prime_implicants needs a single-output function");
  const std::size_t m = f.inputs();
  if (m > 16) throw BudgetExceeded("prime implicants of more than 16 inputs");

  // Term: (value bits, dash mask); value bits are zero under the mask.
  struct Term {
    std::uint64_t bits, dash;
    bool operator==(const Term&) const = default;
  };
  struct TermHash {
    std::size_t operator()(const Term& t) const noexcept {
      return std::hash<std::uint64_t>{}(t.bits * 0x9E3779B97F4A7C15ULL ^ t.dash);
    }
  };

  std::unordered_set<Term, TermHash> level;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x)
    if (f.row(x) & 1) level.insert({x, 0});

  std::set<std::pair<std::uint64_t, std::uint64_t>> primes;
  while (!level.empty()) {
    std::unordered_set<Term, TermHash> next, merged;
    for (const Term& t : level)
      for (std::size_t v = 0; v < m; ++v) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        if ((t.dash & bit) || (t.bits & bit)) continue;
        const Term partner{t.bits | bit, t.dash};
        if (!level.contains(partner)) continue;
        next.insert({t.bits, t.dash | bit});
        merged.insert(t);
        merged.insert(partner);
      }
    for (const Term& t : level)
      if (!merged.contains(t)) primes.insert({t.dash, t.bits});
    level = std::move(next);
  }

  std::vector<TernaryWord> out;
  out.reserve(primes.size());
  for (const auto& [dash, bits] : primes) {
    TernaryWord w(m);
    for (std::size_t d = 0; d < m; ++d) {
      const std::uint64_t bit = std::uint64_t{1} << (m - 1 - d);
      w.set(d, (dash & bit) ? Ternary::Meta : to_ternary(bits & bit));
    }
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mc
