#include "mc/executor.hpp"

#include <algorithm>

#include "mc/errors.hpp"

namespace mc {

std::vector<std::pair<Ternary, Ternary>> register_transitions(RegisterType type, Ternary state) {
  if (state != Ternary::Meta || type == RegisterType::Simple) return {{state, state}};
  if (type == RegisterType::Mask0) return {{Ternary::Zero, Ternary::Meta}, {Ternary::Meta, Ternary::One}};
  return {{Ternary::One, Ternary::Meta}, {Ternary::Meta, Ternary::Zero}};
}

// --- StateSet --------------------------------------------------------------

void StateSet::insert(const TernaryWord& inputs, const TernaryWord& cube) {
  if (inputs.width() != input_width_ || cube.width() != rest_width_)
    throw DomainError("state set widths " + std::to_string(input_width_) + "+" +
                      std::to_string(rest_width_) + ", got " + inputs.str() + "|" + cube.str());
  auto [it, fresh] = entries_.try_emplace(inputs, rest_width_);
  const std::size_t before = fresh ? 0 : it->second.size();
  it->second.insert(cube);
  size_ = size_ - before + it->second.size();
}

void StateSet::insert(const StateSet& other) {
  for (const auto& [in, cs] : other.entries_)
    for (const auto& cube : cs.cubes()) insert(in, cube);
}

bool StateSet::contains(const TernaryWord& state) const {
  if (state.width() != input_width_ + rest_width_) return false;
  auto it = entries_.find(state.slice(0, input_width_));
  return it != entries_.end() && it->second.contains(state.slice(input_width_, rest_width_));
}

std::vector<TernaryWord> StateSet::words() const {
  std::vector<TernaryWord> out;
  out.reserve(size_);
  for (const auto& [in, cs] : entries_)
    for (const auto& cube : cs.cubes()) out.push_back(in + cube);
  return out;
}

CubeSet StateSet::project_rest(std::size_t pos, std::size_t len) const {
  CubeSet out(len);
  for (const auto& [in, cs] : entries_)
    for (const auto& cube : cs.cubes()) out.insert(cube.slice(pos, len));
  return out;
}

std::string StateSet::str() const {
  std::string s;
  for (const auto& [in, cs] : entries_)
    for (const auto& cube : cs.cubes()) {
      if (!s.empty()) s += ',';
      s += in.str() + "|" + cube.str();
    }
  return s;
}

// --- Executor --------------------------------------------------------------

Executor::Executor(Circuit c, Budget budget)
    : c_(std::move(c)), dag_(Dag::compile(c_)), budget_(budget) {
  m_ = c_.num_inputs();
  k_ = c_.num_locals();
  n_ = c_.num_outputs();
}

TernaryWord Executor::initial_state(const TernaryWord& iota) const {
  if (iota.width() != m_)
    throw DomainError("circuit " + c_.name + " has " + std::to_string(m_) + " inputs, got " +
                      iota.str());
  return iota + c_.initial_values();
}

std::vector<ReadOutcome> Executor::read_outcomes(const TernaryWord& state) const {
  if (state.width() != c_.state_width())
    throw DomainError("state width " + std::to_string(c_.state_width()) + ", got " + state.str());
  const std::size_t nread = m_ + k_;
  std::size_t branching = 0;
  for (std::size_t i = 0; i < nread; ++i)
    if (state[i] == Ternary::Meta && c_.registers[i].type != RegisterType::Simple) ++branching;
  budget_.require_meta_bits(branching, "read phase (metastable masking registers)");

  std::vector<ReadOutcome> out{{TernaryWord(nread), TernaryWord(m_)}};
  for (std::size_t i = 0; i < nread; ++i) {
    const auto tr = register_transitions(c_.registers[i].type, state[i]);
    if (tr.size() == 1) {
      for (auto& o : out) {
        o.read.set(i, tr[0].first);
        if (i < m_) o.next_inputs.set(i, tr[0].second);
      }
      continue;
    }
    std::vector<ReadOutcome> grown;
    grown.reserve(out.size() * tr.size());
    for (const auto& o : out)
      for (const auto& [rd, nx] : tr) {
        ReadOutcome g = o;
        g.read.set(i, rd);
        if (i < m_) g.next_inputs.set(i, nx);
        grown.push_back(std::move(g));
      }
    out = std::move(grown);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TernaryWord Executor::next_inputs(const TernaryWord& state, const TernaryWord& read) const {
  if (state.width() != c_.state_width() || read.width() != m_ + k_)
    throw DomainError("next_inputs: width mismatch");
  TernaryWord next(m_);
  for (std::size_t i = 0; i < m_ + k_; ++i) {
    bool found = false;
    for (const auto& [rd, nx] : register_transitions(c_.registers[i].type, state[i]))
      if (rd == read[i]) {
        if (i < m_) next.set(i, nx);
        found = true;
      }
    if (!found)
      throw DomainError("register " + c_.registers[i].name + " in state " +
                        std::string(1, to_char(state[i])) + " cannot read " +
                        std::string(1, to_char(read[i])));
  }
  return next;
}

StateSet Executor::successors(const TernaryWord& state) const {
  StateSet out(m_, k_ + n_);
  std::vector<Ternary> scratch;
  TernaryWord eval(k_ + n_);
  for (const auto& o : read_outcomes(state)) {
    dag_.eval_into(o.read, scratch, eval);
    out.insert(o.next_inputs, eval);
  }
  return out;
}

std::vector<StateSet> Executor::reach_all(const TernaryWord& iota, std::size_t rounds) const {
  const TernaryWord s0 = initial_state(iota);
  // Input registers are tracked word by word, not as cubes.
  budget_.require_meta_bits(iota.meta_count(), "input word " + iota.str());

  std::vector<StateSet> sets;
  sets.reserve(rounds + 1);
  sets.emplace_back(m_, k_ + n_);
  sets.back().insert(iota, s0.slice(m_, k_ + n_));
  std::size_t visited = 1;
  for (std::size_t r = 0; r < rounds; ++r) {
    StateSet next(m_, k_ + n_);
    // Every member of a cube has its successors among those of the cube's
    // top word, so expanding stored cubes only is exact.
    for (const auto& [in, cs] : sets.back().entries())
      for (const auto& cube : cs.cubes()) next.insert(successors(in + cube));
    visited += next.size();
    budget_.require_states(visited, "reachable state cubes");
    sets.push_back(std::move(next));
  }
  return sets;
}

StateSet Executor::reach(const TernaryWord& iota, std::size_t rounds) const {
  return std::move(reach_all(iota, rounds).back());
}

CubeSet Executor::outputs(const TernaryWord& iota, std::size_t rounds) const {
  if (rounds == 0) throw DomainError("outputs are defined from round 1 on");
  return reach(iota, rounds).project_rest(k_, n_);
}

Verdict Executor::implements(std::size_t rounds, const FunctionSpec& f) const {
  if (f.arity() != m_ || f.coarity() != n_)
    throw DomainError("spec is " + std::to_string(f.arity()) + " -> " +
                      std::to_string(f.coarity()) + " but circuit " + c_.name + " has " +
                      std::to_string(m_) + " inputs and " + std::to_string(n_) + " outputs");
  budget_.require_states(pow3(m_), "input vectors of T^m");
  Verdict v;
  for (std::size_t i = 0; i < pow3(m_); ++i) {
    const TernaryWord iota = ternary_word(i, m_);
    ++v.inputs_checked;
    const CubeSet out = outputs(iota, rounds);
    for (const auto& cube : out.cubes())
      if (!f.allows(iota, cube)) {
        // The top word of a cube that escapes f(ι) is itself outside f(ι).
        v.holds = false;
        v.input = iota;
        v.output = cube;
        return v;
      }
  }
  return v;
}

std::optional<ExecutionTrace> Executor::find_execution(
    const TernaryWord& iota, std::size_t rounds,
    const std::function<bool(const TernaryWord&)>& accept) const {
  const auto sets = reach_all(iota, rounds);
  std::optional<TernaryWord> target;
  for (const auto& w : sets.back().words())
    if (accept(w)) {
      target = w;
      break;
    }
  if (!target) return std::nullopt;

  ExecutionTrace t;
  t.final_state = *target;
  t.rounds.resize(rounds);
  TernaryWord cur = *target;
  std::vector<Ternary> scratch;
  TernaryWord eval(k_ + n_);
  for (std::size_t r = rounds; r-- > 0;) {
    const TernaryWord written = cur.slice(m_, k_ + n_);
    const TernaryWord cur_in = cur.slice(0, m_);
    bool found = false;
    for (const auto& p : sets[r].words()) {
      for (const auto& o : read_outcomes(p)) {
        if (o.next_inputs != cur_in) continue;
        dag_.eval_into(o.read, scratch, eval);
        if (!res_contains(eval, written)) continue;
        t.rounds[r] = {p, o.read, eval, written};
        cur = p;
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) throw Error("internal: no predecessor for " + cur.str());
  }
  return t;
}

ExecutionTrace Executor::canonical_execution(const TernaryWord& iota, std::size_t rounds) const {
  ExecutionTrace t;
  TernaryWord s = initial_state(iota);
  for (std::size_t r = 0; r < rounds; ++r) {
    const TernaryWord read = s.slice(0, m_ + k_);
    const TernaryWord eval = dag_.eval(read);
    t.rounds.push_back({s, read, eval, eval});
    s = next_inputs(s, read) + eval;
  }
  t.final_state = s;
  return t;
}

bool Executor::check(const ExecutionTrace& t) const {
  const std::size_t w = c_.state_width();
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    const auto& row = t.rounds[r];
    const TernaryWord& next = r + 1 < t.rounds.size() ? t.rounds[r + 1].state : t.final_state;
    if (row.state.width() != w || next.width() != w || row.read.width() != m_ + k_ ||
        row.eval.width() != k_ + n_ || row.write.width() != k_ + n_)
      return false;
    TernaryWord follow;
    try {
      follow = next_inputs(row.state, row.read);
    } catch (const DomainError&) {
      return false;
    }
    if (dag_.eval(row.read) != row.eval) return false;
    if (!res_contains(row.eval, row.write)) return false;
    if (follow + row.write != next) return false;
  }
  return t.final_state.width() == w;
}

// --- free functions --------------------------------------------------------

std::vector<ReadOutcome> read_outcomes(const Circuit& c, const TernaryWord& state) {
  return Executor(c).read_outcomes(state);
}

StateSet successors(const Circuit& c, const TernaryWord& state) {
  return Executor(c).successors(state);
}

StateSet reach(const Circuit& c, const TernaryWord& iota, std::size_t rounds,
               const Budget& budget) {
  return Executor(c, budget).reach(iota, rounds);
}

CubeSet outputs(const Circuit& c, const TernaryWord& iota, std::size_t rounds,
                const Budget& budget) {
  return Executor(c, budget).outputs(iota, rounds);
}

Verdict implements(const Circuit& c, std::size_t rounds, const FunctionSpec& f,
                   const Budget& budget) {
  return Executor(c, budget).implements(rounds, f);
}

bool trace_check(const Circuit& c, const ExecutionTrace& t) { return Executor(c).check(t); }

}  // namespace mc
