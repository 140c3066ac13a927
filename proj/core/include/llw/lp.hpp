#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "llw/scalar.hpp"

/// Exact rational linear programming: a dense two-phase simplex with Bland's
/// rule, square solves, and brute-force vertex enumeration.
namespace llw::lp {

using RVec = std::vector<Rational>;

enum class Rel { Le, Ge, Eq };

struct Constraint {
  RVec coeffs;
  Rel rel = Rel::Le;
  Rational rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;
  RVec x;
};

/// maximize objective·x subject to the constraints and x ≥ 0.
Result maximize(const RVec& objective, const std::vector<Constraint>& constraints);
bool feasible(std::size_t vars, const std::vector<Constraint>& constraints);

/// Unique solution of a square system, or nullopt when singular.
std::optional<RVec> solve(std::vector<RVec> a, RVec b);

/// Vertices of { x ≥ 0 | row·x ≤ 1 for every row }, rows non-negative.
/// Throws Refusal when the region is unbounded or the search is too large.
std::vector<RVec> vertices(std::size_t dim, const std::vector<RVec>& rows);

Rational dot(const RVec& a, const RVec& b);

}  // namespace llw::lp
