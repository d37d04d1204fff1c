#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "mc/mc.hpp"

namespace testutil {

inline mc::TernaryWord W(std::string_view s) { return mc::TernaryWord::parse(s); }

inline std::filesystem::path data(std::string_view name) {
  return std::filesystem::path(MC_TEST_DATA_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline mc::Circuit load_circuit(std::string_view name) {
  return mc::parse_netlist(slurp(data(name)));
}

template <class Range>
std::set<std::string> strs(const Range& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) out.insert(w.str());
  return out;
}

}  // namespace testutil
