#include "mc/cube_set.hpp"

#include <algorithm>
#include <set>

#include "mc/errors.hpp"

namespace mc {

CubeSet::CubeSet(std::size_t width, std::vector<TernaryWord> cubes) : width_(width) {
  for (const auto& c : cubes) {
    if (c.width() != width) {
      throw DomainError("CubeSet: cube " + c.str() + " does not have width " +
                        std::to_string(width));
    }
  }
  std::sort(cubes.begin(), cubes.end());
  cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
  // Sorted ascending with M largest, so a cube can only be subsumed by a cube
  // that sorts after it.
  std::vector<bool> dead(cubes.size(), false);
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    for (std::size_t j = i + 1; j < cubes.size(); ++j) {
      if (!dead[j] && res_contains(cubes[j], cubes[i])) {
        dead[i] = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (!dead[i]) cubes_.push_back(std::move(cubes[i]));
  }
}

CubeSet cubeset_canonicalize(std::size_t width, std::vector<TernaryWord> cubes) {
  return CubeSet(width, std::move(cubes));
}

CubeSet CubeSet::single(const TernaryWord& cube) { return CubeSet(cube.width(), {cube}); }

CubeSet CubeSet::parse(std::string_view text, std::size_t width) {
  std::vector<TernaryWord> cubes;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) cubes.push_back(TernaryWord::parse(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      if (cur.empty()) throw ParseError("empty cube in list");
      flush();
    } else if (ch != ' ' && ch != '\t') {
      cur.push_back(ch);
    }
  }
  flush();
  return CubeSet(width, std::move(cubes));
}

void CubeSet::insert(const TernaryWord& cube) {
  if (cube.width() != width_) throw DomainError("CubeSet::insert: width mismatch");
  for (const auto& c : cubes_) {
    if (res_contains(c, cube)) return;
  }
  std::erase_if(cubes_, [&](const TernaryWord& c) { return res_contains(cube, c); });
  cubes_.insert(std::lower_bound(cubes_.begin(), cubes_.end(), cube), cube);
}

void CubeSet::insert(const CubeSet& other) {
  for (const auto& c : other.cubes_) insert(c);
}

bool CubeSet::contains(const TernaryWord& w) const {
  return std::any_of(cubes_.begin(), cubes_.end(),
                     [&](const TernaryWord& c) { return res_contains(c, w); });
}

bool CubeSet::contains(const CubeSet& other) const {
  return std::all_of(other.cubes_.begin(), other.cubes_.end(),
                     [&](const TernaryWord& c) { return contains(c); });
}

bool CubeSet::intersects(const CubeSet& other) const {
  for (const auto& a : cubes_) {
    for (const auto& b : other.cubes_) {
      if (cubes_intersect(a, b)) return true;
    }
  }
  return false;
}

CubeSet CubeSet::project(std::size_t pos, std::size_t len) const {
  std::vector<TernaryWord> out;
  out.reserve(cubes_.size());
  for (const auto& c : cubes_) out.push_back(c.slice(pos, len));
  return CubeSet(len, std::move(out));
}

std::vector<TernaryWord> CubeSet::members(std::size_t max_meta_bits) const {
  std::set<TernaryWord> all;
  for (const auto& c : cubes_) {
    for (auto& w : res_partial(c, max_meta_bits)) all.insert(std::move(w));
  }
  return {all.begin(), all.end()};
}

std::string CubeSet::str() const {
  std::string s;
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    if (i) s += ',';
    s += cubes_[i].str();
  }
  return s;
}

}  // namespace mc
