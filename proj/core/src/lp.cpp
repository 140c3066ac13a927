#include "llw/lp.hpp"

#include <algorithm>
#include <set>

#include "llw/error.hpp"

namespace llw::lp {
namespace {

struct Tableau {
  std::vector<RVec> rows;  // last column is the right-hand side
  std::vector<std::size_t> basis;
  std::size_t cols = 0;    // without rhs

  void pivot(std::size_t r, std::size_t c, RVec& z) {
    const Rational p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    if (sgn(z[c]) != 0) {
      const Rational f = z[c];
      for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  RVec objective_row(const RVec& cost) const {
    RVec z(cols + 1);
    for (std::size_t j = 0; j < cols; ++j) z[j] = -cost[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) z[j] += cb * rows[i][j];
    }
    return z;
  }

  /// Maximizes cost over the current basis; false when unbounded.
  bool optimize(const RVec& cost, const std::vector<bool>& eligible, RVec& z) {
    z = objective_row(cost);
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (eligible[j] && sgn(z[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == cols) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rows[i][cols] / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter, z);
    }
  }
};

}  // namespace

Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

Result maximize(const RVec& objective, const std::vector<Constraint>& constraints) {
  const std::size_t n = objective.size();
  const std::size_t m = constraints.size();
  std::vector<Constraint> cs = constraints;
  for (auto& c : cs) {
    c.coeffs.resize(n);
    if (sgn(c.rhs) < 0) {
      for (auto& v : c.coeffs) v = -v;
      c.rhs = -c.rhs;
      if (c.rel == Rel::Le)
        c.rel = Rel::Ge;
      else if (c.rel == Rel::Ge)
        c.rel = Rel::Le;
    }
  }
  std::size_t slack = 0, artificial = 0;
  for (const auto& c : cs) {
    if (c.rel != Rel::Eq) ++slack;
    if (c.rel != Rel::Le) ++artificial;
  }
  Tableau t;
  t.cols = n + slack + artificial;
  t.rows.assign(m, RVec(t.cols + 1));
  t.basis.assign(m, 0);
  std::size_t s = n, a = n + slack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cs[i];
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = c.coeffs[j];
    t.rows[i][t.cols] = c.rhs;
    if (c.rel == Rel::Le) {
      t.rows[i][s] = 1;
      t.basis[i] = s++;
    } else {
      if (c.rel == Rel::Ge) t.rows[i][s++] = -1;
      t.rows[i][a] = 1;
      t.basis[i] = a++;
    }
  }

  std::vector<bool> eligible(t.cols, true);
  RVec z;
  if (artificial > 0) {
    RVec phase1(t.cols, 0);
    for (std::size_t j = n + slack; j < t.cols; ++j) phase1[j] = -1;
    t.optimize(phase1, eligible, z);
    if (sgn(z[t.cols]) < 0) return {Status::Infeasible, 0, {}};
    // Drive artificial variables out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < n + slack) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < n + slack && sgn(t.rows[i][j]) == 0) ++j;
      if (j < n + slack) {
        t.pivot(i, j, z);
        ++i;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = n + slack; j < t.cols; ++j) eligible[j] = false;
  }

  RVec cost(t.cols, 0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = objective[j];
  if (!t.optimize(cost, eligible, z)) return {Status::Unbounded, 0, {}};
  Result r{Status::Optimal, z[t.cols], RVec(n, 0)};
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < n) r.x[t.basis[i]] = t.rows[i][t.cols];
  return r;
}

bool feasible(std::size_t vars, const std::vector<Constraint>& constraints) {
  return maximize(RVec(vars, 0), constraints).status != Status::Infeasible;
}

std::optional<RVec> solve(std::vector<RVec> a, RVec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(a[p][col]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(b[p], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

std::vector<RVec> vertices(std::size_t dim, const std::vector<RVec>& rows) {
  for (std::size_t j = 0; j < dim; ++j) {
    const bool bounded = std::any_of(rows.begin(), rows.end(), [&](const RVec& r) { return sgn(r[j]) > 0; });
    if (!bounded) throw Refusal("vertex enumeration: region is unbounded in coordinate " + std::to_string(j));
  }
  const std::size_t planes = rows.size() + dim;
  // Number of candidate bases, C(planes, dim), guarded against blowup.
  double count = 1;
  for (std::size_t i = 0; i < dim; ++i) count = count * static_cast<double>(planes - i) / static_cast<double>(i + 1);
  if (count > 4e6) throw Refusal("vertex enumeration: too many candidate bases");

  std::set<RVec> found;
  std::vector<std::size_t> pick(dim);
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  if (dim == 0) return {RVec{}};
  while (true) {
    std::vector<RVec> a;
    RVec b;
    for (auto k : pick) {
      if (k < rows.size()) {
        a.push_back(rows[k]);
        b.emplace_back(1);
      } else {
        RVec e(dim, 0);
        e[k - rows.size()] = 1;
        a.push_back(std::move(e));
        b.emplace_back(0);
      }
    }
    if (auto x = solve(std::move(a), std::move(b))) {
      const bool ok = std::all_of(x->begin(), x->end(), [](const Rational& v) { return sgn(v) >= 0; }) &&
                      std::all_of(rows.begin(), rows.end(), [&](const RVec& r) { return dot(r, *x) <= 1; });
      if (ok) found.insert(*x);
    }
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == planes - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

}  // namespace llw::lp
