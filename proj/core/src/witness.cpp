#include "mc/analysis.hpp"
#include "mc/errors.hpp"

namespace mc {

std::vector<TernaryWord> pivotal_sequence(const TernaryWord& x, const TernaryWord& x_to) {
  if (x.width() != x_to.width())
    throw DomainError("pivotal_sequence: widths differ (" + x.str() + ", " + x_to.str() + ")");
  std::vector<TernaryWord> seq{x};
  TernaryWord cur = x;
  for (std::size_t i = x.width(); i-- > 0;) {
    if (cur[i] == x_to[i]) continue;
    if (is_stable(cur[i]) && is_stable(x_to[i])) {
      cur.set(i, Ternary::Meta);
      seq.push_back(cur);
    }
    cur.set(i, x_to[i]);
    seq.push_back(cur);
  }
  return seq;
}

bool is_pivotal(const std::vector<TernaryWord>& seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const auto& a = seq[i - 1];
    const auto& b = seq[i];
    if (a.width() != b.width()) return false;
    std::size_t diffs = 0;
    bool through_meta = false;
    for (std::size_t d = 0; d < a.width(); ++d)
      if (a[d] != b[d]) {
        ++diffs;
        through_meta = a[d] == Ternary::Meta || b[d] == Ternary::Meta;
      }
    if (diffs != 1 || !through_meta) return false;
  }
  return true;
}

WitnessResult metastable_witness(const Circuit& c, std::size_t rounds, const TernaryWord& iota,
                                 const TernaryWord& iota_to, const Budget& budget) {
  const Executor ex(c, budget);
  WitnessResult res;
  if (ex.outputs(iota, rounds).intersects(ex.outputs(iota_to, rounds))) {
    res.overlap = true;
    return res;
  }
  const std::size_t first_out = ex.num_inputs() + ex.num_locals();
  const auto meta_output = [&](const TernaryWord& s) {
    for (std::size_t i = first_out; i < s.width(); ++i)
      if (s[i] == Ternary::Meta) return true;
    return false;
  };
  for (const auto& x : pivotal_sequence(iota, iota_to)) {
    if (auto t = ex.find_execution(x, rounds, meta_output)) {
      res.input = x;
      res.trace = std::move(t);
      return res;
    }
  }
  // Disjoint outputs always force a metastable output along the sequence.
  throw Error("metastable_witness: no witness found for disjoint outputs");
}

}  // namespace mc
