#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "llw/lp.hpp"

namespace llw {

/// A down-closed convex body in the non-negative orthant.
///
/// Described by generators (the body is the down-closure of their convex hull
/// together with 0) or by constraints ({x ≥ 0 | h·x ≤ 1}). Constraints are
/// exactly the generators of the dual body, so `dual()` just swaps the two.
/// The missing description is computed on demand by vertex enumeration,
/// which is refused above `vertex_bound()` dimensions.
class Polytope {
 public:
  using RVec = lp::RVec;

  static Polytope from_generators(std::size_t dim, std::vector<RVec> generators);
  static Polytope from_constraints(std::size_t dim, std::vector<RVec> constraints);

  std::size_t dim() const;
  bool has_generators() const;
  bool has_constraints() const;

  /// Canonical: no zero vector, no redundant point, lexicographically sorted.
  const std::vector<RVec>& generators() const;
  const std::vector<RVec>& constraints() const;

  bool contains(const RVec& x) const;
  Polytope dual() const;

  /// sup of c·x over the body for c ≥ 0; nullopt when unbounded.
  std::optional<Rational> max_linear(const RVec& c) const;
  /// Largest r with r·v in the body; nullopt when unbounded (e.g. v = 0).
  std::optional<Rational> max_scale(const RVec& v) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Whether x lies in the down-closed convex hull of the points.
bool in_down_hull(const std::vector<lp::RVec>& points, const lp::RVec& x);

/// Drops zeros, duplicates, and points inside the down-hull of the others.
std::vector<lp::RVec> canonical_points(std::vector<lp::RVec> points);

std::size_t vertex_bound();
void set_vertex_bound(std::size_t dims);

}  // namespace llw
