#include "llw/linmaps.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "llw/error.hpp"

namespace llw {
namespace {

bool same(const SemiringPtr& a, const SemiringPtr& b) { return a->id() == b->id(); }

std::string show(const BasedModule& m, const Vec& v) { return to_string(m.web(), v); }

MorphismCheck pass(std::string method) { return {true, std::move(method), {}}; }
MorphismCheck fail(std::string method, std::string why) { return {false, std::move(method), std::move(why)}; }

Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = m.at(rows[i], cols[j]);
  return s;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

bool finite_scalars(const Matrix& m) {
  return std::none_of(m.data.begin(), m.data.end(), [](const Scalar& s) { return s.is_infinite(); });
}

MorphismCheck coherence_check(const LinMap& f, const pres::Coherence& a, const pres::Coherence& b) {
  const auto& m = f.matrix;
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (m.at(i, j).is_zero()) continue;
      if (!m.at(i, j).is_one()) return fail("clique", "entry " + m.at(i, j).to_string() + " is not 0/1");
      support.emplace_back(i, j);
    }
  const auto& wa = f.src->web();
  const auto& wb = f.dst->web();
  for (const auto& [x, y] : support)
    for (const auto& [x2, y2] : support) {
      const bool a_coh = a.coh[x][x2];
      const bool b_coh = b.coh[y][y2];
      const bool a_inc = x == x2 || !a_coh;
      const bool b_inc = y == y2 || !b_coh;
      if ((a_coh && !b_coh) || (b_inc && !a_inc))
        return fail("clique", "(" + wa[x] + "," + wb[y] + ") and (" + wa[x2] + "," + wb[y2] + ") are not coherent in A -o B");
    }
  return pass("clique");
}

MorphismCheck enumeration_check(const LinMap& f) {
  auto carrier = enumerate_carrier(*f.src, 1u << 14);
  if (!carrier) throw Refusal("cannot verify a map from a " + f.src->kind() + " module with an infinite or large carrier");
  std::map<Vec, Vec> image;
  for (const auto& x : *carrier) {
    auto y = llw::apply(f, x);
    if (!y) return fail("enumeration", "image of " + show(*f.src, x) + " is undefined or not admitted");
    image.emplace(x, *y);
  }
  for (const auto& [x, fx] : image) {
    if (auto s = vec_sum_unchecked(*f.src, {{x, Multiplicity::omega()}})) {
      auto t = vec_sum_unchecked(*f.dst, {{fx, Multiplicity::omega()}});
      if (!t || *t != image.at(*s)) return fail("enumeration", "omega copies of " + show(*f.src, x) + " are not preserved");
    }
    for (const auto& [y, fy] : image) {
      if (y < x) continue;
      auto s = vec_sum_unchecked(*f.src, {{x, 1}, {y, 1}});
      if (!s) continue;
      auto t = vec_sum_unchecked(*f.dst, {{fx, 1}, {fy, 1}});
      if (!t || *t != image.at(*s))
        return fail("enumeration", "sum " + show(*f.src, x) + " + " + show(*f.src, y) + " is not preserved");
    }
  }
  return pass("enumeration");
}

MorphismCheck generator_check(const LinMap& f, const pres::PolytopeP& a) {
  if (!finite_scalars(f.matrix)) return fail("generators", "matrix has an infinite entry");
  const auto* coprod = f.dst->as<pres::Coproduct>();
  std::optional<std::size_t> component;
  for (const auto& g : a.body.generators()) {
    const Vec x = from_rational(g);
    const Vec y = raw_apply(f.matrix, x);
    if (coprod) {
      for (std::size_t i = 0; i < coprod->parts.size(); ++i) {
        Vec part;
        for (auto k : coprod->index[i]) part.push_back(y[k]);
        if (is_zero(part)) continue;
        if (component && *component != i)
          return fail("generators", "generators map into different summands, so their sums leave the coproduct");
        component = i;
      }
    }
    if (!f.dst->member(y)) return fail("generators", "image of generator " + show(*f.src, x) + " is " + show(*f.dst, y) + ", not admitted");
  }
  return pass("generators");
}

}  // namespace

LinMap make_map(ModulePtr src, ModulePtr dst, Matrix m) {
  if (m.rows != src->size() || m.cols != dst->size())
    throw UsageError("matrix is " + std::to_string(m.rows) + "x" + std::to_string(m.cols) + " but the modules need " +
                     std::to_string(src->size()) + "x" + std::to_string(dst->size()));
  if (!same(src->acting(), dst->acting())) throw UsageError("map between modules over different semirings");
  return {std::move(src), std::move(dst), std::move(m)};
}

LinMap identity_map(const ModulePtr& m) { return make_map(m, m, Matrix::identity(m->size())); }

std::optional<Vec> apply(const LinMap& f, const Vec& x) {
  if (x.size() != f.src->size()) throw UsageError("apply: vector length does not match the source web");
  const auto& s = *f.dst->coords();
  Vec y(f.matrix.cols);
  for (std::size_t j = 0; j < f.matrix.cols; ++j) {
    ScalarFamily fam;
    for (std::size_t i = 0; i < f.matrix.rows; ++i)
      if (!x[i].is_zero() && !f.matrix.at(i, j).is_zero()) fam.emplace_back(s.raw_mul(f.matrix.at(i, j), x[i]), 1);
    auto r = s.raw_sum(fam);
    if (!r) return std::nullopt;
    y[j] = *r;
  }
  if (!f.dst->member(y)) return std::nullopt;
  return y;
}

MorphismCheck is_morphism(const LinMap& f) {
  const ModulePtr src = normalize(f.src);
  const ModulePtr dst = normalize(f.dst);
  const LinMap g{src, dst, f.matrix};
  for (const auto& s : f.matrix.data)
    if (!dst->coords()->contains(s)) return fail("entries", "entry " + s.to_string() + " is outside " + dst->coords()->id());
  if (src->size() == 0 || dst->size() == 0) return pass("trivial");

  if (const auto* p = dst->as<pres::Product>()) {
    for (std::size_t i = 0; i < p->parts.size(); ++i) {
      auto r = is_morphism({src, p->parts[i], submatrix(f.matrix, iota(src->size()), p->index[i])});
      if (!r.ok) return fail("product/" + r.method, "component " + std::to_string(i + 1) + ": " + r.counterexample);
    }
    return pass("product");
  }
  if (const auto* c = src->as<pres::Coproduct>()) {
    for (std::size_t i = 0; i < c->parts.size(); ++i) {
      auto r = is_morphism({c->parts[i], dst, submatrix(f.matrix, c->index[i], iota(dst->size()))});
      if (!r.ok) return fail("coproduct/" + r.method, "summand " + std::to_string(i + 1) + ": " + r.counterexample);
    }
    return pass("coproduct");
  }
  const auto* ca = src->as<pres::Coherence>();
  const auto* cb = dst->as<pres::Coherence>();
  if (ca && cb) return coherence_check(g, *ca, *cb);
  if (const auto* p = src->as<pres::PolytopeP>()) {
    const auto* c = dst->as<pres::Coproduct>();
    const bool convex_parts =
        c && std::all_of(c->parts.begin(), c->parts.end(), [](const ModulePtr& m) { return normalize(m)->as<pres::PolytopeP>() != nullptr; });
    if (dst->as<pres::PolytopeP>() || (dst->as<pres::Free>() && dst->coords()->id() == "Rpos") || convex_parts)
      return generator_check(g, *p);
  }
  if (src->as<pres::Free>() && dst->as<pres::Free>() && same(src->coords(), dst->coords())) return pass("free");
  return enumeration_check(g);
}

LinMap compose(const LinMap& f, const LinMap& g) {
  if (f.dst->size() != g.src->size() || f.dst->web() != g.src->web())
    throw UsageError("compose: target of the first map is not the source of the second");
  const auto& s = *g.dst->coords();
  Matrix m(f.matrix.rows, g.matrix.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t k = 0; k < m.cols; ++k) {
      ScalarFamily fam;
      for (std::size_t j = 0; j < f.matrix.cols; ++j)
        if (!f.matrix.at(i, j).is_zero() && !g.matrix.at(j, k).is_zero())
          fam.emplace_back(s.raw_mul(f.matrix.at(i, j), g.matrix.at(j, k)), 1);
      auto r = s.raw_sum(fam);
      if (!r)
        throw IntegrityError("compose: entry (" + f.src->web()[i] + "," + g.dst->web()[k] + ") is an undefined sum " +
                             to_string(fam));
      m.at(i, k) = *r;
    }
  return make_map(f.src, g.dst, std::move(m));
}

LinMap tensor_map(const LinMap& f, const LinMap& g, ModulePtr src, ModulePtr dst) {
  return make_map(std::move(src), std::move(dst), kronecker(f.matrix, g.matrix));
}

std::optional<Scalar> pairing(const BasedModule& m, const Vec& phi, const Vec& x) {
  ScalarFamily fam;
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!phi[a].is_zero() && !x[a].is_zero()) fam.emplace_back(m.coords()->raw_mul(phi[a], x[a]), 1);
  auto r = m.coords()->raw_sum(fam);
  if (!r || !m.acting()->contains(*r)) return std::nullopt;
  return r;
}

DualBasis canonical_basis(const BasedModule& m) {
  const std::size_t n = m.size();
  DualBasis b;
  if (const auto* p = m.as<pres::PolytopeP>()) {
    for (std::size_t a = 0; a < n; ++a) {
      lp::RVec dir(n, 0);
      dir[a] = 1;
      auto gamma = p->body.max_linear(dir);
      if (!gamma) throw UsageError("atom '" + m.web()[a] + "' is unbounded (no finite sup)");
      if (sgn(*gamma) == 0) throw UsageError("atom '" + m.web()[a] + "' is dead: no r > 0 has r e_a in P");
      b.e.push_back(unit_vec(n, a, Scalar(*gamma)));
      b.phi.push_back(unit_vec(n, a, Scalar(Rational(1) / *gamma)));
    }
    return b;
  }
  const auto* prod = m.as<pres::Product>();
  const auto* coprod = m.as<pres::Coproduct>();
  if (prod || coprod) {
    const auto& parts = prod ? prod->parts : coprod->parts;
    const auto& index = prod ? prod->index : coprod->index;
    b.e.assign(n, Vec());
    b.phi.assign(n, Vec());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto sub = canonical_basis(*parts[i]);
      b.orthogonal = b.orthogonal && sub.orthogonal;
      for (std::size_t k = 0; k < sub.e.size(); ++k) {
        Vec e(n), phi(n);
        for (std::size_t t = 0; t < index[i].size(); ++t) {
          e[index[i][t]] = sub.e[k][t];
          phi[index[i][t]] = sub.phi[k][t];
        }
        b.e[index[i][k]] = std::move(e);
        b.phi[index[i][k]] = std::move(phi);
      }
    }
    return b;
  }
  for (std::size_t a = 0; a < n; ++a) {
    b.e.push_back(unit_vec(n, a));
    b.phi.push_back(unit_vec(n, a));
  }
  return b;
}

Based based(const ModulePtr& m) { return {m, canonical_basis(*m)}; }

Based unit_object(const SemiringPtr& r) { return based(semiring_module(r)); }

// ---------------------------------------------------------------------------
// Tensor, lolli, with, plus

namespace {

std::vector<Vec> closure_carrier(const BasedModule& shape, std::vector<Vec> seeds) {
  std::set<Vec> all(seeds.begin(), seeds.end());
  all.insert(zero_vec(shape.size()));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> cur(all.begin(), all.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i; j < cur.size(); ++j) {
        Vec s(shape.size());
        bool ok = true;
        for (std::size_t a = 0; a < s.size() && ok; ++a) {
          auto r = sum_pair(*shape.coords(), cur[i][a], cur[j][a]);
          ok = r.has_value();
          if (ok) s[a] = *r;
        }
        if (ok && all.insert(s).second) grew = true;
        if (all.size() > 100000) throw Refusal("tensor carrier closure exceeds 10^5 vectors");
      }
  }
  return {all.begin(), all.end()};
}

Vec outer(const Vec& x, const Vec& y) {
  Vec out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) out.push_back(multiply(a, b));
  return out;
}

std::vector<std::vector<char>> coh_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& rel) {
  std::vector<std::vector<char>> c(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = i == j || rel(i, j);
  return c;
}

}  // namespace

ModulePtr tensor_module(const ModulePtr& a0, const ModulePtr& b0) {
  const ModulePtr a = normalize(a0), b = normalize(b0);
  if (!same(a->acting(), b->acting())) throw UsageError("tensor of modules over different semirings");
  const std::size_t na = a->size(), nb = b->size();
  Web web = product_web(a->web(), b->web());
  if (na == 0 || nb == 0) return zero_module(a->acting());

  if (const auto* c = a->as<pres::Coproduct>()) {
    std::vector<ModulePtr> parts;
    std::vector<std::vector<std::size_t>> index;
    for (std::size_t i = 0; i < c->parts.size(); ++i) {
      parts.push_back(tensor_module(c->parts[i], b));
      index.emplace_back();
      for (auto k : c->index[i])
        for (std::size_t y = 0; y < nb; ++y) index.back().push_back(k * nb + y);
    }
    return coproduct_module(std::move(web), std::move(parts), std::move(index));
  }
  if (const auto* c = b->as<pres::Coproduct>()) {
    std::vector<ModulePtr> parts;
    std::vector<std::vector<std::size_t>> index;
    for (std::size_t j = 0; j < c->parts.size(); ++j) {
      parts.push_back(tensor_module(a, c->parts[j]));
      index.emplace_back();
      for (std::size_t x = 0; x < na; ++x)
        for (auto k : c->index[j]) index.back().push_back(x * nb + k);
    }
    return coproduct_module(std::move(web), std::move(parts), std::move(index));
  }
  const auto* ca = a->as<pres::Coherence>();
  const auto* cb = b->as<pres::Coherence>();
  if (ca && cb)
    return coherence_module(std::move(web), coh_relation(na * nb, [&](std::size_t i, std::size_t j) {
                              return ca->coh[i / nb][j / nb] && cb->coh[i % nb][j % nb];
                            }));
  const auto* pa = a->as<pres::PolytopeP>();
  const auto* pb = b->as<pres::PolytopeP>();
  if (pa && pb) {
    std::vector<lp::RVec> gens;
    for (const auto& g : pa->body.generators())
      for (const auto& h : pb->body.generators()) gens.push_back(to_rational(outer(from_rational(g), from_rational(h))));
    return polytope_module(std::move(web), Polytope::from_generators(na * nb, std::move(gens)));
  }
  if (a->as<pres::Finiteness>() && b->as<pres::Finiteness>()) return finiteness_module(std::move(web));
  if (a->as<pres::Free>() && b->as<pres::Free>() && same(a->coords(), b->coords()))
    return free_module(a->acting(), std::move(web), a->coords());

  auto xa = enumerate_carrier(*a, 4096);
  auto xb = enumerate_carrier(*b, 4096);
  if (xa && xb && same(a->coords(), b->coords())) {
    auto shape = free_module(a->acting(), web, a->coords());
    std::vector<Vec> seeds;
    for (const auto& x : *xa)
      for (const auto& y : *xb) seeds.push_back(outer(x, y));
    return enumerated_module(a->acting(), a->coords(), std::move(web), closure_carrier(*shape, std::move(seeds)));
  }
  throw Refusal("no tensor construction for " + a->kind() + " and " + b->kind() + " presentations");
}

ModulePtr lolli_module(const ModulePtr& a0, const ModulePtr& b0) {
  const ModulePtr a = normalize(a0), b = normalize(b0);
  if (!same(a->acting(), b->acting())) throw UsageError("linear maps between modules over different semirings");
  const std::size_t na = a->size(), nb = b->size();
  Web web = product_web(a->web(), b->web());
  if (na == 0 || nb == 0) return zero_module(a->acting());

  if (const auto* c = a->as<pres::Coproduct>()) {
    std::vector<ModulePtr> parts;
    std::vector<std::vector<std::size_t>> index;
    for (std::size_t i = 0; i < c->parts.size(); ++i) {
      parts.push_back(lolli_module(c->parts[i], b));
      index.emplace_back();
      for (auto k : c->index[i])
        for (std::size_t y = 0; y < nb; ++y) index.back().push_back(k * nb + y);
    }
    return product_module(std::move(web), std::move(parts), std::move(index));
  }
  if (const auto* p = b->as<pres::Product>()) {
    std::vector<ModulePtr> parts;
    std::vector<std::vector<std::size_t>> index;
    for (std::size_t j = 0; j < p->parts.size(); ++j) {
      parts.push_back(lolli_module(a, p->parts[j]));
      index.emplace_back();
      for (std::size_t x = 0; x < na; ++x)
        for (auto k : p->index[j]) index.back().push_back(x * nb + k);
    }
    return product_module(std::move(web), std::move(parts), std::move(index));
  }
  const auto* ca = a->as<pres::Coherence>();
  const auto* cb = b->as<pres::Coherence>();
  if (ca && cb)
    return coherence_module(std::move(web), coh_relation(na * nb, [&](std::size_t i, std::size_t j) {
                              const std::size_t x = i / nb, x2 = j / nb, y = i % nb, y2 = j % nb;
                              const bool a_coh = ca->coh[x][x2], b_coh = cb->coh[y][y2];
                              const bool a_inc = x == x2 || !a_coh, b_inc = y == y2 || !b_coh;
                              return (!a_coh || b_coh) && (!b_inc || a_inc);
                            }));
  const auto* pa = a->as<pres::PolytopeP>();
  const auto* pb = b->as<pres::PolytopeP>();
  if (pa && pb) {
    std::vector<lp::RVec> rows;
    for (const auto& g : pa->body.generators())
      for (const auto& h : pb->body.constraints()) rows.push_back(to_rational(outer(from_rational(g), from_rational(h))));
    return polytope_module(std::move(web), Polytope::from_constraints(na * nb, std::move(rows)));
  }
  if (a->as<pres::Finiteness>() && b->as<pres::Finiteness>()) return finiteness_module(std::move(web));
  if (a->as<pres::Free>() && b->as<pres::Free>() && same(a->coords(), b->coords()))
    return free_module(a->acting(), std::move(web), a->coords());

  // Generic: enumerate matrices, keep morphisms, identify equal functions.
  auto entries = b->coords()->finite_carrier();
  auto xa = enumerate_carrier(*a, 4096);
  if (!entries || !xa) throw Refusal("no linear-map construction for " + a->kind() + " and " + b->kind() + " presentations");
  double count = 1;
  for (std::size_t i = 0; i < na * nb; ++i) count *= static_cast<double>(entries->size());
  if (count > 65536) throw Refusal("too many candidate matrices for an enumerated space of linear maps");
  std::map<std::vector<std::optional<Vec>>, Vec> by_function;
  Matrix m(na, nb);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m.data.size()) {
      const LinMap f{a, b, m};
      if (!is_morphism(f).ok) return;
      std::vector<std::optional<Vec>> fn;
      for (const auto& x : *xa) fn.push_back(llw::apply(f, x));
      by_function.emplace(std::move(fn), m.data);
      return;
    }
    for (const auto& s : *entries) {
      m.data[k] = s;
      rec(k + 1);
    }
  };
  rec(0);
  std::vector<Vec> carrier;
  for (auto& [fn, mat] : by_function) carrier.push_back(mat);
  return enumerated_module(a->acting(), b->coords(), std::move(web), std::move(carrier));
}

Based tensor_obj(const Based& a, const Based& b) {
  Based out{tensor_module(a.module, b.module), {}};
  for (std::size_t i = 0; i < a.basis.e.size(); ++i)
    for (std::size_t j = 0; j < b.basis.e.size(); ++j) {
      out.basis.e.push_back(outer(a.basis.e[i], b.basis.e[j]));
      out.basis.phi.push_back(outer(a.basis.phi[i], b.basis.phi[j]));
    }
  out.basis.orthogonal = a.basis.orthogonal && b.basis.orthogonal;
  return out;
}

Based lolli_obj(const Based& a, const Based& b) {
  Based out{lolli_module(a.module, b.module), {}};
  for (std::size_t i = 0; i < a.basis.e.size(); ++i)
    for (std::size_t j = 0; j < b.basis.e.size(); ++j) {
      out.basis.e.push_back(outer(a.basis.phi[i], b.basis.e[j]));
      out.basis.phi.push_back(outer(a.basis.e[i], b.basis.phi[j]));
    }
  out.basis.orthogonal = a.basis.orthogonal && b.basis.orthogonal;
  return out;
}

namespace {

DualBasis stack_bases(const DualBasis& a, const DualBasis& b) {
  const std::size_t na = a.e.size(), nb = b.e.size();
  DualBasis out;
  auto widen = [&](const Vec& v, bool left) {
    Vec w(na + nb);
    for (std::size_t k = 0; k < v.size(); ++k) w[left ? k : na + k] = v[k];
    return w;
  };
  for (std::size_t i = 0; i < na; ++i) {
    out.e.push_back(widen(a.e[i], true));
    out.phi.push_back(widen(a.phi[i], true));
  }
  for (std::size_t j = 0; j < nb; ++j) {
    out.e.push_back(widen(b.e[j], false));
    out.phi.push_back(widen(b.phi[j], false));
  }
  out.orthogonal = a.orthogonal && b.orthogonal;
  return out;
}

}  // namespace

Based with_obj(const Based& a0, const Based& b0) {
  const ModulePtr a = normalize(a0.module), b = normalize(b0.module);
  DualBasis basis = stack_bases(a0.basis, b0.basis);
  const std::size_t na = a->size(), nb = b->size();
  const auto* ca = a->as<pres::Coherence>();
  const auto* cb = b->as<pres::Coherence>();
  const auto* pa = a->as<pres::PolytopeP>();
  const auto* pb = b->as<pres::PolytopeP>();
  if ((ca && cb) || (pa && pb)) {
    ModulePtr generic = product_module(a->acting(), {a, b});
    if (ca && cb)
      return {coherence_module(generic->web(), coh_relation(na + nb, [&](std::size_t i, std::size_t j) {
                                 if (i < na && j < na) return ca->coh[i][j] != 0;
                                 if (i >= na && j >= na) return cb->coh[i - na][j - na] != 0;
                                 return true;
                               })),
              std::move(basis)};
    std::vector<lp::RVec> rows;
    if (pa->body.has_constraints() && pb->body.has_constraints()) {
      for (const auto& h : pa->body.constraints()) {
        lp::RVec r(na + nb, 0);
        std::copy(h.begin(), h.end(), r.begin());
        rows.push_back(std::move(r));
      }
      for (const auto& h : pb->body.constraints()) {
        lp::RVec r(na + nb, 0);
        std::copy(h.begin(), h.end(), r.begin() + static_cast<std::ptrdiff_t>(na));
        rows.push_back(std::move(r));
      }
      return {polytope_module(generic->web(), Polytope::from_constraints(na + nb, std::move(rows))), std::move(basis)};
    }
    std::vector<lp::RVec> gens;
    for (const auto& g : pa->body.generators())
      for (const auto& h : pb->body.generators()) {
        lp::RVec v = g;
        v.insert(v.end(), h.begin(), h.end());
        gens.push_back(std::move(v));
      }
    return {polytope_module(generic->web(), Polytope::from_generators(na + nb, std::move(gens))), std::move(basis)};
  }
  return {product_module(a->acting(), {a, b}), std::move(basis)};
}

Based plus_obj(const Based& a0, const Based& b0) {
  const ModulePtr a = normalize(a0.module), b = normalize(b0.module);
  DualBasis basis = stack_bases(a0.basis, b0.basis);
  const std::size_t na = a->size(), nb = b->size();
  const auto* ca = a->as<pres::Coherence>();
  const auto* cb = b->as<pres::Coherence>();
  ModulePtr generic = coproduct_module(a->acting(), {a, b});
  if (ca && cb)
    return {coherence_module(generic->web(), coh_relation(na + nb, [&](std::size_t i, std::size_t j) {
                               if (i < na && j < na) return ca->coh[i][j] != 0;
                               if (i >= na && j >= na) return cb->coh[i - na][j - na] != 0;
                               return false;
                             })),
            std::move(basis)};
  return {std::move(generic), std::move(basis)};
}

// ---------------------------------------------------------------------------
// Duality

namespace {

/// Values of each functional (a vector over the dual web) on x.
std::vector<std::optional<Scalar>> as_function(const BasedModule& unit, const std::vector<Vec>& functionals, const Vec& x) {
  std::vector<std::optional<Scalar>> out;
  for (const auto& f : functionals) {
    ScalarFamily fam;
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!f[a].is_zero() && !x[a].is_zero()) fam.emplace_back(unit.coords()->raw_mul(f[a], x[a]), 1);
    out.push_back(unit.coords()->raw_sum(fam));
  }
  return out;
}

}  // namespace

DualEta dual_and_eta(const Based& v) {
  const Based unit = unit_object(v.module->acting());
  DualEta out{lolli_obj(v, unit), {}, {}, false, {}};
  out.ddual = lolli_obj(out.dual, unit);
  out.eta = make_map(v.module, out.ddual.module, Matrix::identity(v.module->size()));

  auto xv = enumerate_carrier(*v.module, 1u << 14);
  auto xd = enumerate_carrier(*out.dual.module, 1u << 14);
  auto xdd = enumerate_carrier(*out.ddual.module, 1u << 14);
  if (xv && xd && xdd) {
    std::map<std::vector<std::optional<Scalar>>, Vec> seen;
    for (const auto& x : *xv) {
      auto fn = as_function(*unit.module, *xd, x);
      auto [it, fresh] = seen.emplace(fn, x);
      if (!fresh) {
        out.reason = "eta is not injective: " + to_string(v.module->web(), it->second) + " and " +
                     to_string(v.module->web(), x) + " agree on every functional";
        return out;
      }
    }
    for (const auto& g : *xdd) {
      if (!seen.count(as_function(*unit.module, *xd, g))) {
        out.reason = "eta is not surjective: " + to_string(out.ddual.module->web(), g) + " is not an evaluation";
        return out;
      }
    }
    auto m = is_morphism(out.eta);
    if (!m.ok) {
      out.reason = "eta is not a morphism: " + m.counterexample;
      return out;
    }
    out.eta_iso = true;
    return out;
  }
  auto forward = is_morphism(out.eta);
  if (!forward.ok) {
    out.reason = "eta is not a morphism: " + forward.counterexample;
    return out;
  }
  auto backward = is_morphism(make_map(out.ddual.module, v.module, Matrix::identity(v.module->size())));
  if (!backward.ok) {
    out.reason = "inverse of eta is not a morphism: " + backward.counterexample;
    return out;
  }
  out.eta_iso = true;
  return out;
}

Matrix matrix_of(const LinMap& f, const DualBasis& bsrc, const DualBasis& bdst) {
  Matrix m(bsrc.e.size(), bdst.phi.size());
  for (std::size_t i = 0; i < bsrc.e.size(); ++i) {
    auto y = llw::apply(f, bsrc.e[i]);
    if (!y) throw IntegrityError("matrix_of: image of basis vector " + std::to_string(i) + " is undefined");
    for (std::size_t j = 0; j < bdst.phi.size(); ++j) {
      auto v = pairing(*f.dst, bdst.phi[j], *y);
      if (!v) throw IntegrityError("matrix_of: coordinate functional is undefined on an image");
      m.at(i, j) = *v;
    }
  }
  return m;
}

Matrix matrix_from(const Matrix& m, const DualBasis& bsrc, const DualBasis& bdst) {
  const std::size_t na = bsrc.phi.empty() ? 0 : bsrc.phi.front().size();
  const std::size_t nb = bdst.e.empty() ? 0 : bdst.e.front().size();
  Matrix out(na, nb);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (m.at(i, j).is_zero()) continue;
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
          out.at(a, b) = add(out.at(a, b), multiply(m.at(i, j), multiply(bsrc.phi[i][a], bdst.e[j][b])));
    }
  return out;
}

BasisReport validate_basis(const BasedModule& m, const DualBasis& b, std::size_t samples, std::uint64_t seed) {
  BasisReport r;
  auto failure = [&](std::string why) {
    r.valid = false;
    if (r.failures.size() < 8) r.failures.push_back(std::move(why));
  };
  const auto& web = m.web();
  const std::size_t k = b.e.size();
  if (b.phi.size() != k) failure("basis has " + std::to_string(k) + " vectors but " + std::to_string(b.phi.size()) + " functionals");
  for (std::size_t i = 0; i < k; ++i)
    if (!m.member(b.e[i])) failure("e_" + std::to_string(i) + " = " + to_string(web, b.e[i]) + " is not in the module");
  if (!r.valid) return r;

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto v = pairing(m, b.phi[i], b.e[j]);
      if (!v || *v != Scalar(i == j ? 1 : 0)) r.orthogonal = false;
    }
  if (b.orthogonal && !r.orthogonal) failure("claimed orthogonal, but phi_i(e_j) != delta_ij");

  const auto sample = sample_carrier(m, samples, seed);
  const auto& xs = sample.vectors;
  const auto& R = *m.acting();
  for (const auto& x : xs) {
    ++r.checked;
    VecFamily parts;
    for (std::size_t i = 0; i < k; ++i) {
      auto c = pairing(m, b.phi[i], x);
      if (!c) {
        failure("phi_" + std::to_string(i) + " is undefined on " + to_string(web, x));
        continue;
      }
      Vec scaled(x.size());
      for (std::size_t a = 0; a < x.size(); ++a) scaled[a] = m.coords()->raw_mul(*c, b.e[i][a]);
      parts.emplace_back(std::move(scaled), 1);
    }
    auto rebuilt = vec_sum_unchecked(m, parts);
    if (!rebuilt || *rebuilt != x) failure("reconstruction fails at " + to_string(web, x));

    auto omega = vec_sum_unchecked(m, {{x, Multiplicity::omega()}});
    for (std::size_t i = 0; i < k && omega; ++i) {
      auto fx = pairing(m, b.phi[i], x);
      auto fs = pairing(m, b.phi[i], *omega);
      auto img = fx ? R.raw_sum({{*fx, Multiplicity::omega()}}) : std::nullopt;
      if (!fs || !img || *fs != *img) failure("phi_" + std::to_string(i) + " does not preserve omega copies of " + to_string(web, x));
    }
  }
  for (std::size_t p = 0; p < xs.size(); ++p)
    for (std::size_t q = p; q < xs.size(); ++q) {
      auto s = vec_sum_unchecked(m, {{xs[p], 1}, {xs[q], 1}});
      if (!s) continue;
      for (std::size_t i = 0; i < k; ++i) {
        auto fx = pairing(m, b.phi[i], xs[p]);
        auto fy = pairing(m, b.phi[i], xs[q]);
        auto fs = pairing(m, b.phi[i], *s);
        auto lhs = fx && fy ? sum_pair(R, *fx, *fy) : std::nullopt;
        if (!fs || !lhs || *fs != *lhs)
          failure("phi_" + std::to_string(i) + " is not linear: phi(" + to_string(web, xs[p]) + " + " + to_string(web, xs[q]) +
                  ") = " + (fs ? fs->to_string() : "undefined") + " but phi(x) + phi(y) = " + (lhs ? lhs->to_string() : "undefined"));
      }
    }
  return r;
}

ModulePtr equalizer_submodule(const LinMap& f, const LinMap& g) {
  if (f.src->web() != g.src->web() || f.dst->web() != g.dst->web()) throw UsageError("equalizer: maps are not parallel");
  auto carrier = enumerate_carrier(*f.src);
  if (!carrier) throw Refusal("equalizer needs an enumerable source carrier");
  std::vector<Vec> keep;
  for (const auto& x : *carrier)
    if (llw::apply(f, x) == llw::apply(g, x)) keep.push_back(x);
  return enumerated_module(f.src->acting(), f.src->coords(), f.src->web(), std::move(keep));
}

Matrix swap_matrix(std::size_t n) {
  Matrix s(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.at(i * n + j, j * n + i) = 1;
  return s;
}

}  // namespace llw
