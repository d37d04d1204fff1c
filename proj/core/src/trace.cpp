#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "mc/errors.hpp"
#include "mc/executor.hpp"

namespace mc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto bar = line.find('|', start);
    out.push_back(trim(line.substr(start, bar == std::string_view::npos ? bar : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

TernaryWord word_at(std::string_view s, std::size_t line) {
  try {
    return TernaryWord::parse(s);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

ExecutionTrace parse_trace(std::string_view text) {
  ExecutionTrace t;
  bool closed = false;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    if (trim(line).empty()) continue;
    if (closed) throw ParseError("rows after the final state", line_no);

    const auto f = fields(line);
    std::size_t r = 0;
    auto [p, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), r);
    if (ec != std::errc{} || p != f[0].data() + f[0].size())
      throw ParseError("round number expected, got '" + std::string(f[0]) + "'", line_no);
    if (r != t.rounds.size())
      throw ParseError("round " + std::to_string(r) + " out of sequence", line_no);
    if (f.size() == 5) {
      t.rounds.push_back({word_at(f[1], line_no), word_at(f[2], line_no), word_at(f[3], line_no),
                          word_at(f[4], line_no)});
    } else if (f.size() == 2) {
      t.final_state = word_at(f[1], line_no);
      closed = true;
    } else {
      throw ParseError("expected 'r | state | read | eval | write' or 'r | state'", line_no);
    }
  }
  if (!closed) throw ParseError("trace has no final 'r | state' row");
  return t;
}

std::string emit_trace(const ExecutionTrace& t) {
  std::ostringstream os;
  for (std::size_t r = 0; r < t.rounds.size(); ++r) {
    const auto& x = t.rounds[r];
    os << r << " | " << x.state.str() << " | " << x.read.str() << " | " << x.eval.str() << " | "
       << x.write.str() << '\n';
  }
  os << t.rounds.size() << " | " << t.final_state.str() << '\n';
  return os.str();
}

}  // namespace mc
