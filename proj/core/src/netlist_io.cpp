#include <algorithm>
#include <cctype>
#include <sstream>

#include "mc/errors.hpp"
#include "mc/netlist.hpp"

namespace mc {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '[' ||
           ch == ']' || ch == '$' || ch == '/' || ch == '\'';
  });
}

RegisterType parse_type(std::string_view s, std::size_t line) {
  if (s == "simple") return RegisterType::Simple;
  if (s == "mask0") return RegisterType::Mask0;
  if (s == "mask1") return RegisterType::Mask1;
  throw ParseError("unknown register type '" + std::string(s) + "'", line);
}

struct KindName {
  std::string_view name;
  GateKind kind;
};
constexpr KindName kKinds[] = {
    {"AND", GateKind::And},   {"OR", GateKind::Or},         {"NOT", GateKind::Not},
    {"NAND", GateKind::Nand}, {"NOR", GateKind::Nor},       {"XOR", GateKind::Xor},
    {"BUF", GateKind::Buf},   {"CONST0", GateKind::Const0}, {"CONST1", GateKind::Const1},
};

struct PendingGate {
  std::size_t line;
  std::vector<std::string> sources;
};

struct PendingDrive {
  std::size_t line;
  std::string reg;
  std::string source;
};

}  // namespace

Circuit parse_netlist(std::string_view text) {
  Circuit c;
  bool have_header = false;
  std::vector<PendingGate> pending_gates;
  std::vector<PendingDrive> drives;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string_view kw = tok[0];

    if (kw == "circuit") {
      if (have_header) throw ParseError("second 'circuit' line", line_no);
      if (tok.size() != 2) throw ParseError("expected: circuit <name>", line_no);
      c.name = std::string(tok[1]);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("netlist must start with 'circuit <name>'", line_no);

    if (kw == "input" || kw == "local" || kw == "output") {
      const bool is_input = kw == "input";
      if (is_input && tok.size() != 3) {
        if (tok.size() > 3 && tok[3] == "init")
          throw ParseError("input registers have no init value", line_no);
        throw ParseError("expected: input <reg> <simple|mask0|mask1>", line_no);
      }
      if (!is_input && (tok.size() != 5 || tok[3] != "init"))
        throw ParseError("expected: " + std::string(kw) + " <reg> <simple|mask0|mask1> init <0|1|M>",
                         line_no);
      if (!valid_identifier(tok[1]))
        throw ParseError("bad register name '" + std::string(tok[1]) + "'", line_no);
      RegisterDecl r;
      r.name = std::string(tok[1]);
      r.role = is_input ? Role::Input : (kw == "local" ? Role::Local : Role::Output);
      r.type = parse_type(tok[2], line_no);
      if (!is_input) {
        if (tok[4].size() != 1) throw ParseError("init must be 0, 1 or M", line_no);
        try {
          r.init = ternary_from_char(tok[4][0]);
        } catch (const ParseError&) {
          throw ParseError("init must be 0, 1 or M", line_no);
        }
      }
      c.registers.push_back(std::move(r));
    } else if (kw == "gate") {
      if (tok.size() < 3) throw ParseError("expected: gate <id> <KIND> <src>...", line_no);
      if (!valid_identifier(tok[1]))
        throw ParseError("bad gate id '" + std::string(tok[1]) + "'", line_no);
      Gate g;
      g.id = std::string(tok[1]);
      const std::string_view kind = tok[2];
      if (kind.starts_with("TABLE:")) {
        g.kind = GateKind::Table;
        try {
          g.table = BooleanFunction::from_table_string(kind.substr(6));
        } catch (const Error& e) {
          throw ParseError(std::string("bad TABLE gate ") + g.id + ": " + e.what(), line_no);
        }
      } else {
        auto it = std::find_if(std::begin(kKinds), std::end(kKinds),
                               [&](const KindName& k) { return k.name == kind; });
        if (it == std::end(kKinds))
          throw ParseError("unknown gate kind '" + std::string(kind) + "'", line_no);
        g.kind = it->kind;
      }
      PendingGate pg{line_no, {}};
      for (std::size_t i = 3; i < tok.size(); ++i) pg.sources.emplace_back(tok[i]);
      c.gates.push_back(std::move(g));
      pending_gates.push_back(std::move(pg));
    } else if (kw == "drive") {
      if (tok.size() != 3) throw ParseError("expected: drive <reg> <src>", line_no);
      drives.push_back({line_no, std::string(tok[1]), std::string(tok[2])});
    } else {
      throw ParseError("unknown directive '" + std::string(kw) + "'", line_no);
    }
  }
  if (!have_header) throw ParseError("empty netlist: missing 'circuit <name>'");

  std::stable_sort(c.registers.begin(), c.registers.end(),
                   [](const RegisterDecl& a, const RegisterDecl& b) {
                     return static_cast<int>(a.role) < static_cast<int>(b.role);
                   });
  c.drivers.assign(c.registers.size(), std::nullopt);

  auto resolve = [&](const std::string& name, std::size_t line) {
    if (auto r = c.find_register(name)) return NodeRef::reg(*r);
    if (auto g = c.find_gate(name)) return NodeRef::gate(*g);
    throw ParseError("unknown signal '" + name + "'", line);
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    for (const auto& s : pending_gates[i].sources)
      c.gates[i].fanin.push_back(resolve(s, pending_gates[i].line));
  for (const auto& d : drives) {
    // A name declared twice is a validate() matter; prefer the drivable one.
    std::optional<std::size_t> r;
    for (std::size_t i = 0; i < c.registers.size() && !r; ++i)
      if (c.registers[i].name == d.reg && c.registers[i].role != Role::Input) r = i;
    if (!r) r = c.find_register(d.reg);
    if (!r) throw ParseError("drive of undeclared register '" + d.reg + "'", d.line);
    if (c.registers[*r].role == Role::Input)
      throw ParseError("input register '" + d.reg + "' cannot be driven", d.line);
    if (c.drivers[*r]) throw ParseError("register '" + d.reg + "' is driven twice", d.line);
    c.drivers[*r] = resolve(d.source, d.line);
  }
  return c;
}

std::string emit_netlist(const Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.name << '\n';
  for (const auto& r : c.registers) {
    os << to_string(r.role) << ' ' << r.name << ' ' << to_string(r.type);
    if (r.role != Role::Input) os << " init " << to_char(r.init);
    os << '\n';
  }
  auto name_of = [&](const NodeRef& r) -> const std::string& {
    return r.is_register() ? c.registers.at(r.index).name : c.gates.at(r.index).id;
  };
  for (const auto& g : c.gates) {
    os << "gate " << g.id << ' ';
    if (g.kind == GateKind::Table)
      os << "TABLE:" << g.table.table_string();
    else
      os << to_string(g.kind);
    for (const auto& r : g.fanin) os << ' ' << name_of(r);
    os << '\n';
  }
  for (std::size_t i = 0; i < c.registers.size(); ++i)
    if (i < c.drivers.size() && c.drivers[i])
      os << "drive " << c.registers[i].name << ' ' << name_of(*c.drivers[i]) << '\n';
  return os.str();
}

}  // namespace mc
