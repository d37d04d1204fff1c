#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mc/ternary.hpp"

namespace mc {

/// A set of ternary words represented as a union of cubes of common width.
///
/// The stored form is canonical: no member cube lies inside another, and
/// members are sorted (0 < 1 < M). A cube lies inside a union of cubes
/// exactly when it lies inside one of them (its top word must belong to some
/// member, and that member then contains all of it), so the stored cubes are
/// precisely the maximal cubes of the denoted set. Two CubeSets therefore
/// compare equal iff they denote the same set.
class CubeSet {
 public:
  explicit CubeSet(std::size_t width = 0) : width_(width) {}
  CubeSet(std::size_t width, std::vector<TernaryWord> cubes);

  static CubeSet single(const TernaryWord& cube);
  /// Parses a comma-separated list of cubes, e.g. "0M,1M". Whitespace is
  /// ignored. An empty list needs `width` to be given.
  static CubeSet parse(std::string_view text, std::size_t width);

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return cubes_.size(); }
  bool empty() const noexcept { return cubes_.empty(); }
  const std::vector<TernaryWord>& cubes() const noexcept { return cubes_; }

  void insert(const TernaryWord& cube);
  void insert(const CubeSet& other);

  /// True iff every partial resolution of `w` is in the set. For a stable
  /// word this is plain membership.
  bool contains(const TernaryWord& w) const;
  bool contains(const CubeSet& other) const;
  bool intersects(const CubeSet& other) const;
  bool is_single_cube() const noexcept { return cubes_.size() == 1; }

  /// Keeps digits [pos, pos+len) of every member.
  CubeSet project(std::size_t pos, std::size_t len) const;
  /// Every word denoted by the set, ascending; each cube is expanded under
  /// the Meta-bit cap.
  std::vector<TernaryWord> members(std::size_t max_meta_bits = kDefaultMaxMetaBits) const;

  /// "a,b,c" (empty string for the empty set).
  std::string str() const;

  friend bool operator==(const CubeSet&, const CubeSet&) = default;

 private:
  std::size_t width_;
  std::vector<TernaryWord> cubes_;
};

/// Removes subsumed cubes and sorts; the result does not depend on input
/// order and canonicalizing twice changes nothing.
CubeSet cubeset_canonicalize(std::size_t width, std::vector<TernaryWord> cubes);

}  // namespace mc
