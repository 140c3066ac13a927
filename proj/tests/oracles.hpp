// Reference computations written directly from the definitions, sharing no
// code with the library beyond its value types.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "llw/formula.hpp"

namespace oracle {

using Q = mpq_class;
using Rel = std::vector<std::vector<bool>>;  // reflexive, symmetric

/// Every reflexive symmetric relation on n points.
inline std::vector<Rel> coherence_relations(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Rel> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    Rel r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) r[pairs[k].first][pairs[k].second] = r[pairs[k].second][pairs[k].first] = true;
    out.push_back(std::move(r));
  }
  return out;
}

/// Cliques as 0/1 indicator vectors, including the empty one.
inline std::vector<std::vector<int>> cliques(const Rel& r) {
  const std::size_t n = r.size();
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && !r[i][j]) ok = false;
    if (!ok) continue;
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = mask >> i & 1;
    out.push_back(std::move(v));
  }
  return out;
}

/// Image of a clique under a 0/1 matrix in 𝕀, if every coordinate sum has at
/// most one non-zero term and the image is a clique.
inline std::optional<std::vector<int>> apply_coherence(const std::vector<std::vector<int>>& m, const std::vector<int>& x,
                                                       const Rel& dst) {
  std::vector<int> y(dst.size(), 0);
  for (std::size_t b = 0; b < dst.size(); ++b) {
    int hits = 0;
    for (std::size_t a = 0; a < x.size(); ++a) hits += x[a] * m[a][b];
    if (hits > 1) return std::nullopt;
    y[b] = hits;
  }
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[i] && y[j] && !dst[i][j]) return std::nullopt;
  return y;
}

/// Stable relations: a ⌢ a' implies b ⌢ b', and b = b' with a ⌢ a' forces a = a'.
inline std::vector<std::vector<std::vector<int>>> config_lolli(const Rel& a, const Rel& b) {
  const std::size_t na = a.size(), nb = b.size(), cells = na * nb;
  std::vector<std::vector<std::vector<int>>> out;
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    std::vector<std::vector<int>> m(na, std::vector<int>(nb, 0));
    for (std::size_t k = 0; k < cells; ++k) m[k / nb][k % nb] = mask >> k & 1;
    bool ok = true;
    for (std::size_t x = 0; x < na && ok; ++x)
      for (std::size_t y = 0; y < nb && ok; ++y)
        for (std::size_t x2 = 0; x2 < na && ok; ++x2)
          for (std::size_t y2 = 0; y2 < nb && ok; ++y2) {
            if (!m[x][y] || !m[x2][y2] || !a[x][x2]) continue;
            if (!b[y][y2]) ok = false;
            if (y == y2 && x != x2) ok = false;
          }
    if (ok) out.push_back(std::move(m));
  }
  return out;
}

// Probabilistic coherence in one or two dimensions ---------------------------

/// Vertices of {u ≥ 0 | g·u ≤ 1 for all g} in dimension ≤ 2 by pairwise
/// intersection of boundary lines. Assumes every atom is live.
inline std::vector<std::vector<Q>> dual_vertices(const std::vector<std::vector<Q>>& gens, std::size_t dim) {
  struct Line {
    Q a, b, c;  // a·u0 + b·u1 = c
  };
  auto feasible = [&](const std::vector<Q>& u) {
    for (const auto& x : u)
      if (x < 0) return false;
    for (const auto& g : gens) {
      Q s = 0;
      for (std::size_t i = 0; i < dim; ++i) s += g[i] * u[i];
      if (s > 1) return false;
    }
    return true;
  };
  std::vector<std::vector<Q>> out;
  if (dim == 1) {
    Q best = -1;
    for (const auto& g : gens)
      if (g[0] > best) best = g[0];
    out.push_back({Q(1) / best});
    out.push_back({Q(0)});
    return out;
  }
  std::vector<Line> lines{{1, 0, 0}, {0, 1, 0}};
  for (const auto& g : gens) lines.push_back({g[0], g[1], 1});
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Q det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
      if (det == 0) continue;
      std::vector<Q> u{(lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det,
                       (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det};
      u[0].canonicalize();
      u[1].canonicalize();
      if (feasible(u) && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
    }
  return out;
}

/// x ∈ P iff u·x ≤ 1 for every vertex u of the dual body.
inline bool pcoh_member(const std::vector<std::vector<Q>>& gens, const std::vector<Q>& x) {
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& u : dual_vertices(gens, x.size())) {
    Q s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += u[i] * x[i];
    if (s > 1) return false;
  }
  return true;
}

// Extended naturals for gluing -------------------------------------------------

/// -1 encodes ∞.
using Ext = std::vector<int>;

inline bool pairing_at_most_one(const Ext& u, const Ext& x) {
  long total = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0 || x[i] == 0) continue;
    if (u[i] < 0 || x[i] < 0) return false;
    total += static_cast<long>(u[i]) * x[i];
  }
  return total <= 1;
}

inline std::vector<Ext> ext_universe(std::size_t n) {
  std::vector<Ext> out{Ext{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Ext> next;
    for (const auto& v : out)
      for (int c : {0, 1, -1}) {
        auto w = v;
        w.push_back(c);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Ext> ext_orthogonal(const std::vector<Ext>& u, const std::vector<Ext>& universe) {
  std::vector<Ext> out;
  for (const auto& x : universe)
    if (std::all_of(u.begin(), u.end(), [&](const Ext& v) { return pairing_at_most_one(v, x); })) out.push_back(x);
  return out;
}

// Multisets --------------------------------------------------------------------

/// Sorted atom sequences of degree ≤ d.
inline std::vector<std::vector<std::size_t>> multisets_upto(std::size_t atoms, std::size_t d) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : layer)
      for (std::size_t a = s.empty() ? 0 : s.back(); a < atoms; ++a) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::vector<std::size_t> merge(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// Random formulas ----------------------------------------------------------------

inline llw::FormulaPtr random_formula(std::mt19937_64& rng, int depth) {
  using K = llw::Formula::Kind;
  static const char* names[] = {"A", "B", "C", "X1", "long_name"};
  std::uniform_int_distribution<int> leaf(0, 8), node(0, 10), deg(0, 3);
  if (depth <= 0 || leaf(rng) < 2) {
    switch (leaf(rng) % 5) {
      case 0: return llw::Formula::unit(K::One);
      case 1: return llw::Formula::unit(K::Zero);
      case 2: return llw::Formula::unit(K::Top);
      case 3: return llw::Formula::unit(K::Bottom);
      default: return llw::Formula::atom(names[leaf(rng) % 5]);
    }
  }
  switch (node(rng)) {
    case 0:
    case 1: return llw::Formula::binary(K::Tensor, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 2:
    case 3: return llw::Formula::binary(K::Lolli, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return llw::Formula::binary(K::With, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return llw::Formula::binary(K::Plus, random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6:
    case 7: return llw::Formula::dual(random_formula(rng, depth - 1));
    case 8: return llw::Formula::bang(random_formula(rng, depth - 1), static_cast<std::size_t>(deg(rng)));
    default: return llw::Formula::atom(names[node(rng) % 5]);
  }
}

inline std::size_t depth(const llw::Formula& f) {
  std::size_t d = 0;
  if (f.left) d = std::max(d, depth(*f.left));
  if (f.right) d = std::max(d, depth(*f.right));
  return d + 1;
}

}  // namespace oracle
