#include "llw/models.hpp"

#include <functional>

#include "llw/error.hpp"

namespace llw {

CoherenceSpace coherence_space(Web web, std::vector<std::vector<char>> coh) {
  // Validation lives in the module constructor.
  auto m = coherence_module(web, coh);
  return {std::move(web), std::move(coh)};
}

CoherenceSpace coherence_space(Web web, const std::vector<std::pair<std::string, std::string>>& coherent_pairs) {
  const std::size_t n = web.size();
  std::vector<std::vector<char>> coh(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) coh[i][i] = 1;
  for (const auto& [a, b] : coherent_pairs) {
    const auto i = web.index_of(a), j = web.index_of(b);
    coh[i][j] = coh[j][i] = 1;
  }
  return coherence_space(std::move(web), std::move(coh));
}

CoherenceSpace coherence_of(const BasedModule& m) {
  const auto* c = m.as<pres::Coherence>();
  if (!c) throw UsageError("module is not coherence-presented");
  return {m.web(), c->coh};
}

CoherenceSpace coh_lolli(const CoherenceSpace& a, const CoherenceSpace& b) {
  return coherence_of(*lolli_module(F_embed(a).module, F_embed(b).module));
}

CoherenceSpace coh_tensor(const CoherenceSpace& a, const CoherenceSpace& b) {
  return coherence_of(*tensor_module(F_embed(a).module, F_embed(b).module));
}

std::vector<std::vector<std::size_t>> cliques(const CoherenceSpace& a) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.web.size()) {
      out.push_back(cur);
      return;
    }
    rec(i + 1);
    bool ok = true;
    for (auto j : cur) ok = ok && a.coherent(i, j);
    if (ok) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Based F_embed(const CoherenceSpace& a) { return based(coherence_module(a.web, a.coh)); }

LinMap F_map(const CoherenceSpace& a, const CoherenceSpace& b, const Relation& f) {
  Matrix m(a.web.size(), b.web.size());
  for (const auto& [x, y] : f) {
    if (x >= a.web.size() || y >= b.web.size()) throw UsageError("relation pair out of range");
    m.at(x, y) = 1;
  }
  for (const auto& [x, y] : f)
    for (const auto& [x2, y2] : f) {
      const bool ok = (!a.coherent(x, x2) || b.coherent(y, y2)) && (!b.incoherent(y, y2) || a.incoherent(x, x2));
      if (!ok)
        throw UsageError("relation is not a clique of A -o B: (" + a.web[x] + "," + b.web[y] + ") and (" + a.web[x2] + "," +
                         b.web[y2] + ") are not coherent");
    }
  return make_map(F_embed(a).module, F_embed(b).module, std::move(m));
}

Relation F_invert(const LinMap& g) {
  Relation f;
  const std::size_t n = g.src->size();
  for (std::size_t x = 0; x < n; ++x) {
    auto y = llw::apply(g, unit_vec(n, x));
    if (!y) throw UsageError("F_invert: image of {" + g.src->web()[x] + "} is undefined");
    for (std::size_t j = 0; j < y->size(); ++j)
      if (!(*y)[j].is_zero()) f.emplace(x, j);
  }
  return f;
}

ModulePtr G_embed(const FinitenessSpace& a) { return finiteness_module(a.web); }

std::vector<std::vector<std::size_t>> fin_dual(const std::vector<std::vector<std::size_t>>&, const Web& web) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = web.size();
  if (n > 20) throw Refusal("powerset of a web with more than 20 atoms");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

ProbCohSpace pcoh_space(Web web, std::vector<lp::RVec> generators) {
  const std::size_t n = web.size();
  ProbCohSpace p{std::move(web), Polytope::from_generators(n, std::move(generators))};
  for (std::size_t a = 0; a < n; ++a) {
    lp::RVec e(n, 0);
    e[a] = 1;
    if (sgn(*p.body.max_linear(e)) == 0)
      throw UsageError("atom '" + p.web[a] + "' violates condition (3): no r > 0 with r e_a in P");
  }
  return p;
}

bool pcoh_bipolar_member(const ProbCohSpace& p, const lp::RVec& u) {
  for (const auto& x : u)
    if (sgn(x) < 0) throw UsageError("bipolar membership: negative coordinate");
  return p.body.contains(u);
}

ProbCohSpace pcoh_dual(const ProbCohSpace& p) {
  return {p.web, Polytope::from_generators(p.web.size(), p.body.constraints())};
}

PcohBasis pcoh_gamma_and_basis(const ProbCohSpace& p) {
  auto m = polytope_module(p.web, p.body);
  PcohBasis out{{}, canonical_basis(*m)};
  for (std::size_t a = 0; a < p.web.size(); ++a) out.gamma.push_back(out.basis.e[a][a].value());
  return out;
}

Based H_embed(const ProbCohSpace& p) { return based(polytope_module(p.web, p.body)); }

std::vector<std::pair<std::string, ProbCohSpace>> pcoh_examples() {
  const Rational h(1, 2), t(1, 3);
  const Web a({"a"}), ab({"a", "b"}), abc({"a", "b", "c"});
  return {
      {"unit", pcoh_space(a, {{1}})},
      {"half", pcoh_space(a, {{h}})},
      {"simplex2", pcoh_space(ab, {{1, 0}, {0, 1}})},
      {"square", pcoh_space(ab, {{1, 1}})},
      {"hexagon", pcoh_space(ab, {{h, 1}, {1, h}})},
      {"scaled", pcoh_space(ab, {{2, 0}, {0, t}})},
      {"simplex3", pcoh_space(abc, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})},
  };
}

LinMap H_map(const ProbCohSpace& a, const ProbCohSpace& b, const Matrix& m) {
  LinMap f = make_map(polytope_module(a.web, a.body), polytope_module(b.web, b.body), m);
  auto check = is_morphism(f);
  if (!check.ok) throw UsageError("not a morphism: " + check.counterexample);
  return f;
}

// ---------------------------------------------------------------------------
// Glue

Scalar glue_pairing(const Vec& u, const Vec& x) {
  Scalar s;
  for (std::size_t i = 0; i < u.size(); ++i) s = add(s, multiply(u[i], x[i]));
  return s;
}

std::vector<Vec> glue_universe(std::size_t n, unsigned k) {
  std::vector<Scalar> values;
  for (unsigned v = 0; v <= k; ++v) values.emplace_back(static_cast<long>(v));
  values.push_back(Scalar::infinity());
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const auto& base : out)
      for (const auto& v : values) {
        Vec w = base;
        w.push_back(v);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec> glue_orthogonal(const std::vector<Vec>& u, const std::vector<Vec>& universe) {
  std::vector<Vec> out;
  for (const auto& x : universe)
    if (std::all_of(u.begin(), u.end(), [&](const Vec& v) { return glue_pairing(v, x) <= Scalar(1); })) out.push_back(x);
  return out;
}

GlueObject glue_tight_closure(const Web& web, const std::vector<Vec>& u, unsigned k, const SemiringPtr& s) {
  if (s && !s->is_complete()) throw Refusal("glue closure needs a complete semiring; " + s->id() + " is not");
  for (const auto& v : u)
    if (v.size() != web.size()) throw UsageError("glue vector length does not match the web");
  const auto universe = glue_universe(web.size(), k);
  GlueObject g{web, {}, glue_orthogonal(u, universe)};
  g.U = glue_orthogonal(g.X, universe);
  return g;
}

bool glue_is_morphism(const Matrix& f, const GlueObject& a, const GlueObject& b) {
  if (f.rows != a.web.size() || f.cols != b.web.size()) throw UsageError("glue morphism has the wrong shape");
  for (const auto& u : a.U) {
    const Vec fu = raw_apply(f, u);
    for (const auto& y : b.X)
      if (!(glue_pairing(fu, y) <= Scalar(1))) return false;
  }
  return true;
}

Matrix wrel_compose(const Semiring& s, const Matrix& f, const Matrix& g) {
  if (!s.is_complete()) throw Refusal(s.id() + " is not complete; compose with linear-map composition instead");
  if (f.cols != g.rows) throw UsageError("wrel_compose: inner dimensions differ");
  Matrix h(f.rows, g.cols);
  for (std::size_t i = 0; i < f.rows; ++i)
    for (std::size_t k = 0; k < g.cols; ++k) {
      ScalarFamily fam;
      for (std::size_t j = 0; j < f.cols; ++j) fam.emplace_back(s.raw_mul(f.at(i, j), g.at(j, k)), 1);
      h.at(i, k) = *s.raw_sum(fam);
    }
  return h;
}

}  // namespace llw
