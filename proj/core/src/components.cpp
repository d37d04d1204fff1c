#include "mc/components.hpp"

#include <algorithm>
#include <bit>

#include "mc/analysis.hpp"
#include "mc/errors.hpp"
#include "mc/executor.hpp"

namespace mc {

namespace {

void require_range(std::size_t v, std::size_t lo, std::size_t hi, const char* what) {
  if (v < lo || v > hi)
    throw DomainError(std::string(what) + " must be in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "], got " + std::to_string(v));
}

std::string idx(const std::string& base, std::size_t i) { return base + std::to_string(i); }

}  // namespace

// --- multiplexers ------------------------------------------------------------

Circuit build_mux() {
  CircuitBuilder b("mux");
  const auto a = b.add_input("a"), bb = b.add_input("b"), s = b.add_input("s");
  b.add_output("o");
  const auto ns = b.add_gate("ns", GateKind::Not, {s});
  const auto t0 = b.add_gate("and_a", GateKind::And, {ns, a});
  const auto t1 = b.add_gate("and_b", GateKind::And, {s, bb});
  b.drive("o", b.add_gate("or", GateKind::Or, {t0, t1}));
  return b.build();
}

Circuit build_cmux_combinational() {
  CircuitBuilder b("cmux");
  const auto a = b.add_input("a"), bb = b.add_input("b"), s = b.add_input("s");
  b.add_output("o");
  const auto ns = b.add_gate("ns", GateKind::Not, {s});
  const auto t0 = b.add_gate("and_a", GateKind::And, {ns, a});
  const auto t1 = b.add_gate("and_b", GateKind::And, {s, bb});
  const auto t2 = b.add_gate("and_ab", GateKind::And, {a, bb});
  b.drive("o", b.add_gate("or", GateKind::Or, {t0, t1, t2}));
  return b.build();
}

Circuit build_cmux_clocked() {
  CircuitBuilder b("cmux_clocked");
  const auto a = b.add_input("a"), bb = b.add_input("b");
  const auto s = b.add_input("s", RegisterType::Mask1);
  const auto s2 = b.add_local("s2", RegisterType::Simple, Ternary::Zero);
  b.add_output("o");
  b.drive("s2", s);
  const auto ns = b.add_gate("ns", GateKind::Not, {s});
  const auto t0 = b.add_gate("and_a", GateKind::And, {ns, a});
  const auto t1 = b.add_gate("and_b", GateKind::And, {s2, bb});
  b.drive("o", b.add_gate("or", GateKind::Or, {t0, t1}));
  return b.build();
}

FunctionSpec mux_spec() {
  return FunctionSpec::general(3, 1, [](const TernaryWord& x) {
    if (x[2] == Ternary::Zero) return CubeSet::single(x.slice(0, 1));
    if (x[2] == Ternary::One) return CubeSet::single(x.slice(1, 1));
    return CubeSet::single(TernaryWord{Ternary::Meta});
  });
}

FunctionSpec cmux_spec() {
  return FunctionSpec::general(3, 1, [](const TernaryWord& x) {
    if (x[2] == Ternary::Zero || x[0] == x[1]) return CubeSet::single(x.slice(0, 1));
    if (x[2] == Ternary::One) return CubeSet::single(x.slice(1, 1));
    return CubeSet::single(TernaryWord{Ternary::Meta});
  });
}

// --- fan-out buffer, counter, selector ---------------------------------------

Circuit build_fanout_buffer(std::size_t r) {
  require_range(r, 1, 62, "fan-out buffer rounds");
  CircuitBuilder b("fanout" + std::to_string(r));
  std::vector<NodeRef> reg(r);
  reg[r - 1] = b.add_input(idx("R", r - 1), RegisterType::Mask0);
  for (std::size_t i = r - 1; i-- > 0;) reg[i] = b.add_local(idx("R", i));
  for (std::size_t i = 0; i < r; ++i) b.add_output(idx("O", i));
  for (std::size_t i = 0; i + 1 < r; ++i) b.drive(idx("R", i), reg[i + 1]);
  for (std::size_t i = 0; i < r; ++i) b.drive(idx("O", i), reg[i]);
  return b.build();
}

FunctionSpec fanout_spec(std::size_t r) {
  require_range(r, 1, 62, "fan-out buffer rounds");
  return FunctionSpec::general(1, r, [r](const TernaryWord& x) {
    if (x[0] != Ternary::Meta) return CubeSet::single(TernaryWord(r, x[0]));
    CubeSet cs(r);
    for (std::size_t i = 0; i < r; ++i) {
      TernaryWord w(r, Ternary::One);
      for (std::size_t j = 0; j < i; ++j) w.set(j, Ternary::Zero);
      w.set(i, Ternary::Meta);
      cs.insert(w);
    }
    return cs;
  });
}

namespace {

// Counter chain inside `b`; returns the r round-indicator signals.
std::vector<NodeRef> add_counter(CircuitBuilder& b, std::size_t r) {
  std::vector<NodeRef> reg(r);
  reg[0] = b.add_local("R0", RegisterType::Simple, Ternary::One);
  for (std::size_t i = 1; i < r; ++i) reg[i] = b.add_local(idx("R", i));
  b.drive("R0", b.add_gate("one", GateKind::Const1, {}));
  for (std::size_t i = 0; i + 1 < r; ++i) b.drive(idx("R", i + 1), reg[i]);
  std::vector<NodeRef> c(r);
  for (std::size_t i = 0; i + 1 < r; ++i)
    c[i] = b.add_gate(idx("c", i + 1), GateKind::Xor, {reg[i], reg[i + 1]});
  c[r - 1] = reg[r - 1];
  return c;
}

}  // namespace

Circuit build_counter(std::size_t r) {
  require_range(r, 1, 62, "counter rounds");
  CircuitBuilder b("counter" + std::to_string(r));
  const auto c = add_counter(b, r);
  for (std::size_t i = 0; i < r; ++i) {
    b.add_output(idx("O", i + 1));
    b.drive(idx("O", i + 1), c[i]);
  }
  return b.build();
}

Circuit build_selector(std::size_t r) {
  require_range(r, 1, 62, "selector rounds");
  CircuitBuilder b("selector" + std::to_string(r));
  std::vector<NodeRef> x(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = b.add_input(idx("x", i));
  const auto c = add_counter(b, r);
  b.add_output("O");
  std::vector<NodeRef> terms;
  for (std::size_t i = 0; i < r; ++i)
    terms.push_back(b.add_gate(idx("sel", i), GateKind::And, {x[i], c[i]}));
  b.drive("O", r == 1 ? b.add_gate("pick", GateKind::Buf, {terms[0]})
                      : b.add_gate("pick", GateKind::Or, terms));
  return b.build();
}

// --- code converters -----------------------------------------------------------

Circuit build_tc_to_brgc(std::size_t k) {
  require_range(k, 1, 5, "TC-to-BRGC output width");
  const std::size_t width = (std::size_t{1} << k) - 1;
  CircuitBuilder b("tc2brgc" + std::to_string(k));
  std::vector<NodeRef> t(width + 1);  // 1-based: t[i] is 1 iff the value is >= i
  for (std::size_t i = 1; i <= width; ++i) t[i] = b.add_input(idx("t", i));
  for (std::size_t j = 1; j <= k; ++j) b.add_output(idx("g", j));

  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t step = std::size_t{1} << (k - j);
    std::vector<NodeRef> level;
    for (std::size_t i = step; i <= width; i += 2 * step) level.push_back(t[i]);
    std::size_t serial = 0;
    while (level.size() > 1) {
      std::vector<NodeRef> up;
      for (std::size_t p = 0; p + 1 < level.size(); p += 2)
        up.push_back(b.add_gate("g" + std::to_string(j) + "_x" + std::to_string(serial++),
                                GateKind::Xor, {level[p], level[p + 1]}));
      if (level.size() % 2) up.push_back(level.back());
      level = std::move(up);
    }
    b.drive(idx("g", j), level[0]);
  }
  return b.build();
}

namespace {

// Re-wraps a synthesized circuit with meaningful register names.
Circuit rename_io(const Circuit& inner, const std::string& name,
                  const std::vector<std::string>& in_names,
                  const std::vector<std::string>& out_names) {
  CircuitBuilder b(name);
  std::vector<NodeRef> in;
  for (const auto& n : in_names) in.push_back(b.add_input(n));
  for (const auto& n : out_names) b.add_output(n);
  const auto outs = b.instantiate(inner, "", in);
  for (std::size_t i = 0; i < outs.size(); ++i) b.drive(out_names[i], outs[i]);
  return b.build();
}

std::vector<std::string> numbered(const std::string& base, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(idx(base, i));
  return v;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Circuit build_two_sort(std::size_t k) {
  require_range(k, 1, 3, "2-sort word width");
  const Code gray = Code::gray(k);
  const auto minmax = BooleanFunction::from_callable(2 * k, 2 * k, [&](std::uint64_t x) {
    const auto a = decode(gray, TernaryWord::from_bits(x >> k, k));
    const auto b = decode(gray, TernaryWord::from_bits(x & ((1u << k) - 1), k));
    const auto lo = encode(gray, std::min(a, b)).to_bits();
    const auto hi = encode(gray, std::max(a, b)).to_bits();
    return lo << k | hi;
  });
  const Circuit inner = synthesize(closure_bool(minmax), "two_sort_core");
  return rename_io(inner, "two_sort" + std::to_string(k),
                   concat(numbered("a", k), numbered("b", k)),
                   concat(numbered("min", k), numbered("max", k)));
}

Circuit build_brgc_to_tc(std::size_t k) {
  require_range(k, 1, 4, "BRGC-to-TC input width");
  const std::size_t width = (std::size_t{1} << k) - 1;
  const Code gray = Code::gray(k);
  const Code tc = Code::thermometer(width);
  const auto f = BooleanFunction::from_callable(k, width, [&](std::uint64_t x) {
    return encode(tc, decode(gray, TernaryWord::from_bits(x, k))).to_bits();
  });
  const Circuit inner = synthesize(closure_bool(f), "brgc2tc_core");
  return rename_io(inner, "brgc2tc" + std::to_string(k), numbered("g", k), numbered("t", width));
}

// --- sorting networks ----------------------------------------------------------

std::size_t SortingNetwork::comparator_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

SortingNetwork batcher_network(std::size_t n) {
  require_range(n, 1, 64, "sorting network channels");
  SortingNetwork net;
  net.channels = n;
  const std::size_t size = std::bit_ceil(n);
  for (std::size_t p = 1; p < size; p <<= 1)
    for (std::size_t k = p; k >= 1; k >>= 1) {
      std::vector<std::pair<std::size_t, std::size_t>> layer;
      for (std::size_t j = k % p; j + k < size; j += 2 * k)
        for (std::size_t i = 0; i < std::min(k, size - j - k); ++i)
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) {
            const std::size_t lo = i + j, hi = i + j + k;
            // Missing channels act as +infinity, so these comparators are no-ops.
            if (hi < n) layer.emplace_back(lo, hi);
          }
      if (!layer.empty()) net.layers.push_back(std::move(layer));
    }
  return net;
}

std::pair<SortingNetwork, Circuit> build_sorting_network(std::size_t n, std::size_t k) {
  require_range(n, 1, 8, "sorting network channels");
  require_range(k, 1, 3, "sorting network word width");
  SortingNetwork net = batcher_network(n);
  net.word_bits = k;
  const Circuit cmp = build_two_sort(k);

  CircuitBuilder b("sort" + std::to_string(n) + "x" + std::to_string(k));
  std::vector<std::vector<NodeRef>> wire(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < k; ++i)
      wire[c].push_back(b.add_input("i" + std::to_string(c) + "_" + std::to_string(i)));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < k; ++i) b.add_output("o" + std::to_string(c) + "_" + std::to_string(i));

  std::size_t serial = 0;
  for (const auto& layer : net.layers)
    for (const auto& [lo, hi] : layer) {
      std::vector<NodeRef> in = wire[lo];
      in.insert(in.end(), wire[hi].begin(), wire[hi].end());
      const auto out = b.instantiate(cmp, "s" + std::to_string(serial++) + ".", in);
      wire[lo].assign(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k));
      wire[hi].assign(out.begin() + static_cast<std::ptrdiff_t>(k), out.end());
    }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < k; ++i)
      b.drive("o" + std::to_string(c) + "_" + std::to_string(i), wire[c][i]);
  return {std::move(net), b.build()};
}

// --- clock synchronization -------------------------------------------------------

TernaryWord tdc_reading(std::size_t n, std::size_t v, bool meta) {
  if (v > n || (meta && v >= n))
    throw DomainError("tdc reading " + std::to_string(v) + (meta ? " with boundary M" : "") +
                      " does not fit width " + std::to_string(n));
  TernaryWord w(n, Ternary::Zero);
  for (std::size_t i = 0; i < v; ++i) w.set(i, Ternary::One);
  if (meta) w.set(v, Ternary::Meta);
  return w;
}

Circuit build_clock_sync_pipeline(std::size_t n, std::size_t f, std::size_t k) {
  require_range(n, 1, 8, "node count");
  require_range(k, 1, 3, "Gray word width");
  if (n <= 3 * f)
    throw DomainError("clock sync needs n > 3f (n=" + std::to_string(n) + ", f=" +
                      std::to_string(f) + ")");
  const std::size_t width = (std::size_t{1} << k) - 1;
  const Circuit to_gray = build_tc_to_brgc(k);
  const Circuit sorter = build_sorting_network(n, k).second;
  const Circuit to_tc = build_brgc_to_tc(k);

  CircuitBuilder b("clock_sync_n" + std::to_string(n) + "_f" + std::to_string(f) + "_k" +
                   std::to_string(k));
  std::vector<NodeRef> gray_words;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<NodeRef> in;
    for (std::size_t i = 1; i <= width; ++i)
      in.push_back(b.add_input("t" + std::to_string(c) + "_" + std::to_string(i)));
    const auto g = b.instantiate(to_gray, "enc" + std::to_string(c) + ".", in);
    gray_words.insert(gray_words.end(), g.begin(), g.end());
  }
  const auto sorted = b.instantiate(sorter, "net.", gray_words);
  auto channel = [&](std::size_t c) {
    return std::vector<NodeRef>(sorted.begin() + static_cast<std::ptrdiff_t>(c * k),
                                sorted.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
  };
  // Channel 0 holds the minimum; the j-th largest sits on channel n - j.
  const auto low = b.instantiate(to_tc, "low.", channel(n - 1 - f));
  const auto high = b.instantiate(to_tc, "high.", channel(f));
  for (std::size_t i = 0; i < width; ++i) {
    b.add_output(idx("low_", i));
    b.drive(idx("low_", i), low[i]);
  }
  for (std::size_t i = 0; i < width; ++i) {
    b.add_output(idx("high_", i));
    b.drive(idx("high_", i), high[i]);
  }
  return b.build();
}

ClockSyncResult clock_sync_select(std::size_t n, std::size_t f,
                                  const std::vector<TernaryWord>& readings) {
  if (readings.size() != n)
    throw DomainError("expected " + std::to_string(n) + " readings, got " +
                      std::to_string(readings.size()));
  const std::size_t width = readings.empty() ? 0 : readings[0].width();
  const std::size_t k = std::bit_width(width);
  if (width == 0 || width != (std::size_t{1} << k) - 1)
    throw DomainError("reading width must be 2^k - 1");
  TernaryWord iota;
  for (const auto& r : readings) {
    if (r.width() != width) throw DomainError("readings differ in width");
    iota = iota + r;
  }
  const Executor ex(build_clock_sync_pipeline(n, f, k));
  const CubeSet out = ex.outputs(iota, 1);
  // Only simple registers: one round yields a single cube.
  const TernaryWord& w = out.cubes().front();
  return {w.slice(0, width), w.slice(width, width)};
}

}  // namespace mc
