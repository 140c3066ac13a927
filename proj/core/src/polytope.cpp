#include "llw/polytope.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "llw/error.hpp"

namespace llw {
namespace {

std::atomic<std::size_t> g_vertex_bound{4};

bool dominates(const lp::RVec& g, const lp::RVec& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (g[i] < x[i]) return false;
  return true;
}

bool is_zero(const lp::RVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
}

std::vector<lp::RVec> enumerate_dual(std::size_t dim, const std::vector<lp::RVec>& rows) {
  if (dim > g_vertex_bound.load())
    throw Refusal("vertex enumeration refused: " + std::to_string(dim) + " dimensions exceeds the bound of " +
                  std::to_string(g_vertex_bound.load()));
  return canonical_points(lp::vertices(dim, rows));
}

}  // namespace

std::size_t vertex_bound() { return g_vertex_bound.load(); }
void set_vertex_bound(std::size_t dims) { g_vertex_bound.store(dims); }

bool in_down_hull(const std::vector<lp::RVec>& points, const lp::RVec& x) {
  if (is_zero(x)) return true;
  for (const auto& p : points)
    if (dominates(p, x)) return true;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (sgn(x[a]) == 0) continue;
    const bool reachable = std::any_of(points.begin(), points.end(), [&](const lp::RVec& p) { return p[a] >= x[a]; });
    if (!reachable) return false;
  }
  // λ ≥ 0, Σλ ≤ 1, Σ λ_i p_i ≥ x.
  const std::size_t k = points.size();
  std::vector<lp::Constraint> cs;
  cs.push_back({lp::RVec(k, 1), lp::Rel::Le, 1});
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (sgn(x[a]) == 0) continue;
    lp::RVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = points[i][a];
    cs.push_back({std::move(row), lp::Rel::Ge, x[a]});
  }
  return lp::feasible(k, cs);
}

std::vector<lp::RVec> canonical_points(std::vector<lp::RVec> points) {
  std::erase_if(points, is_zero);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t i = 0; i < points.size();) {
    std::vector<lp::RVec> others;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (j != i) others.push_back(points[j]);
    if (in_down_hull(others, points[i]))
      points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return points;
}

struct Polytope::State {
  std::size_t dim = 0;
  std::vector<RVec> raw_generators, raw_constraints;
  bool given_generators = false, given_constraints = false;

  std::once_flag gen_once, con_once;
  std::vector<RVec> generators, constraints;
  std::atomic<bool> constraints_ready{false};
};

Polytope Polytope::from_generators(std::size_t dim, std::vector<RVec> generators) {
  for (const auto& g : generators) {
    if (g.size() != dim) throw UsageError("polytope generator has the wrong dimension");
    for (const auto& v : g)
      if (sgn(v) < 0) throw UsageError("polytope generator has a negative coordinate");
  }
  Polytope p;
  p.state_ = std::make_shared<State>();
  p.state_->dim = dim;
  p.state_->raw_generators = std::move(generators);
  p.state_->given_generators = true;
  return p;
}

Polytope Polytope::from_constraints(std::size_t dim, std::vector<RVec> constraints) {
  Polytope p = from_generators(dim, std::move(constraints));
  std::swap(p.state_->raw_generators, p.state_->raw_constraints);
  std::swap(p.state_->given_generators, p.state_->given_constraints);
  return p;
}

std::size_t Polytope::dim() const { return state_->dim; }
bool Polytope::has_generators() const { return state_->given_generators; }
bool Polytope::has_constraints() const { return state_->given_constraints || state_->constraints_ready.load(); }

const std::vector<Polytope::RVec>& Polytope::generators() const {
  std::call_once(state_->gen_once, [s = state_.get()] {
    s->generators = s->given_generators ? canonical_points(s->raw_generators) : enumerate_dual(s->dim, s->raw_constraints);
  });
  return state_->generators;
}

const std::vector<Polytope::RVec>& Polytope::constraints() const {
  std::call_once(state_->con_once, [s = state_.get()] {
    s->constraints = s->given_constraints ? canonical_points(s->raw_constraints) : enumerate_dual(s->dim, s->raw_generators);
    s->constraints_ready.store(true);
  });
  return state_->constraints;
}

bool Polytope::contains(const RVec& x) const {
  if (x.size() != dim()) throw UsageError("polytope membership: wrong dimension");
  for (const auto& v : x)
    if (sgn(v) < 0) throw UsageError("polytope membership: negative coordinate");
  if (has_constraints()) {
    const auto& rows = state_->given_constraints ? state_->raw_constraints : constraints();
    return std::all_of(rows.begin(), rows.end(), [&](const RVec& h) { return lp::dot(h, x) <= 1; });
  }
  return in_down_hull(state_->raw_generators, x);
}

Polytope Polytope::dual() const {
  Polytope p;
  p.state_ = std::make_shared<State>();
  p.state_->dim = dim();
  if (state_->given_generators) {
    p.state_->raw_constraints = state_->raw_generators;
    p.state_->given_constraints = true;
  }
  if (state_->given_constraints) {
    p.state_->raw_generators = state_->raw_constraints;
    p.state_->given_generators = true;
  }
  return p;
}

std::optional<Rational> Polytope::max_linear(const RVec& c) const {
  if (has_generators()) {
    Rational best = 0;
    for (const auto& g : state_->raw_generators) best = std::max(best, lp::dot(c, g));
    return best;
  }
  std::vector<lp::Constraint> cs;
  for (const auto& h : state_->raw_constraints) cs.push_back({h, lp::Rel::Le, 1});
  auto r = lp::maximize(c, cs);
  if (r.status == lp::Status::Unbounded) return std::nullopt;
  return r.value;
}

std::optional<Rational> Polytope::max_scale(const RVec& v) const {
  if (v.size() != dim()) throw UsageError("polytope scaling: wrong dimension");
  if (is_zero(v)) return std::nullopt;
  if (has_constraints()) {
    const auto& rows = state_->given_constraints ? state_->raw_constraints : constraints();
    std::optional<Rational> best;
    for (const auto& h : rows) {
      const Rational d = lp::dot(h, v);
      if (sgn(d) > 0 && (!best || 1 / d < *best)) best = 1 / d;
    }
    return best;
  }
  // Variables: λ_1..λ_k, r. maximize r with Σλ ≤ 1 and Σ λ_i g_i ≥ r v.
  const auto& gens = state_->raw_generators;
  const std::size_t k = gens.size();
  std::vector<lp::Constraint> cs;
  lp::RVec total(k + 1, 1);
  total[k] = 0;
  cs.push_back({std::move(total), lp::Rel::Le, 1});
  for (std::size_t a = 0; a < dim(); ++a) {
    if (sgn(v[a]) == 0) continue;
    lp::RVec row(k + 1);
    for (std::size_t i = 0; i < k; ++i) row[i] = gens[i][a];
    row[k] = -v[a];
    cs.push_back({std::move(row), lp::Rel::Ge, 0});
  }
  lp::RVec obj(k + 1, 0);
  obj[k] = 1;
  auto r = lp::maximize(obj, cs);
  if (r.status == lp::Status::Unbounded) return std::nullopt;
  return r.value;
}

}  // namespace llw
