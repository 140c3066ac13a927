// One line per acceptance criterion. Every comparison is exact; the only
// tolerances are the wall-clock limits printed with each line.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "llw/error.hpp"
#include "llw/exponential.hpp"
#include "llw/interpret.hpp"
#include "llw/models.hpp"
#include "oracles.hpp"

using namespace llw;
using oracle::Q;

namespace {

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

Web letters(std::size_t n, char first = 'a') {
  std::vector<std::string> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(std::string(1, static_cast<char>(first + i)));
  return Web(std::move(w));
}

CoherenceSpace space_of(const oracle::Rel& r, char first = 'a') {
  std::vector<std::vector<char>> c(r.size(), std::vector<char>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) c[i][j] = r[i][j];
  return coherence_space(letters(r.size(), first), std::move(c));
}

std::vector<oracle::Rel> all_spaces(std::size_t max_web) {
  std::vector<oracle::Rel> out;
  for (std::size_t n = 1; n <= max_web; ++n) {
    auto rs = oracle::coherence_relations(n);
    out.insert(out.end(), rs.begin(), rs.end());
  }
  return out;
}

Vec indicator(const std::vector<int>& v) {
  Vec x;
  for (int b : v) x.emplace_back(static_cast<long>(b));
  return x;
}

std::string str(const Matrix& m) { return to_string(m); }

// 1 -----------------------------------------------------------------------------

std::string axioms() {
  std::ostringstream d;
  for (const auto& id : semirings::shipped_ids()) {
    AxiomBounds b;
    b.max_entries = 6;
    b.max_mult = 3;
    b.include_omega = true;
    b.fallback_samples = 10000;
    const auto rep = axiom_report(*semirings::by_id(id), b);
    for (const auto& c : rep.checks) require(c.passed, id + " " + c.axiom + ": " + c.counterexample);
    d << id << (rep.exhaustive ? "(exhaustive) " : "(10^4 samples) ");
  }
  return d.str();
}

// 2 -----------------------------------------------------------------------------

std::string coherence_fully_faithful() {
  const auto spaces = all_spaces(3);
  const auto I = semirings::coherence();
  std::size_t pairs = 0, maps = 0;
  for (const auto& ra : spaces)
    for (const auto& rb : spaces) {
      ++pairs;
      const auto A = space_of(ra), B = space_of(rb, 'x');
      const auto FA = F_embed(A).module, FB = F_embed(B).module;
      std::vector<Vec> carrier;
      for (const auto& c : oracle::cliques(ra)) carrier.push_back(indicator(c));
      const auto EA = enumerated_module(I, I, A.web, carrier);
      const std::size_t na = ra.size(), nb = rb.size();
      std::set<std::vector<std::vector<int>>> verified;
      for (std::uint32_t mask = 0; mask < (1u << (na * nb)); ++mask) {
        std::vector<std::vector<int>> m(na, std::vector<int>(nb));
        Matrix M(na, nb);
        for (std::size_t k = 0; k < na * nb; ++k) {
          m[k / nb][k % nb] = mask >> k & 1;
          M.at(k / nb, k % nb) = static_cast<long>(mask >> k & 1);
        }
        bool by_oracle = true;
        for (const auto& c : oracle::cliques(ra)) by_oracle = by_oracle && oracle::apply_coherence(m, c, rb).has_value();
        const bool by_enumeration = is_morphism(make_map(EA, FB, M)).ok;
        const bool by_cliques = is_morphism(make_map(FA, FB, M)).ok;
        require(by_oracle == by_enumeration && by_oracle == by_cliques, "verdicts disagree on " + str(M));
        if (by_enumeration) verified.insert(m);
      }
      std::set<std::vector<std::vector<int>>> config;
      for (const auto& r : oracle::config_lolli(ra, rb)) {
        config.insert(r);
        Relation rel;
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t b = 0; b < nb; ++b)
            if (r[a][b]) rel.insert({a, b});
        const LinMap g = F_map(A, B, rel);
        for (std::size_t a = 0; a < na; ++a)
          for (std::size_t b = 0; b < nb; ++b) require(g.matrix.at(a, b) == Scalar(r[a][b]), "F_map entry");
        require(F_invert(g) == rel, "F_invert after F_map");
        require(F_map(A, B, F_invert(g)).matrix == g.matrix, "F_map after F_invert");
        ++maps;
      }
      require(verified == config, "verified maps differ from Config(A -o B)");
    }
  return std::to_string(pairs) + " pairs of spaces, " + std::to_string(maps) + " maps";
}

// 3 -----------------------------------------------------------------------------

struct MicroSpace {
  std::vector<std::vector<Q>> gens;
  ProbCohSpace space;
};

std::vector<MicroSpace> micro_spaces() {
  const std::vector<Q> grid{0, Q(1, 2), 1};
  std::vector<std::vector<Q>> points1, points2;
  for (const auto& x : grid)
    if (x != 0) points1.push_back({x});
  for (const auto& x : grid)
    for (const auto& y : grid)
      if (x != 0 || y != 0) points2.push_back({x, y});
  std::vector<MicroSpace> out;
  std::set<std::vector<std::vector<Q>>> seen;
  auto add = [&](std::vector<std::vector<Q>> gens) {
    const std::size_t dim = gens[0].size();
    for (std::size_t a = 0; a < dim; ++a) {
      bool live = false;
      for (const auto& g : gens) live = live || g[a] != 0;
      if (!live) return;
    }
    auto key = oracle::dual_vertices(gens, dim);
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return;
    std::vector<lp::RVec> rg;
    for (const auto& g : gens) rg.push_back(g);
    out.push_back({gens, pcoh_space(letters(dim), rg)});
  };
  for (const auto& p : points1) add({p});
  for (std::size_t i = 0; i < points2.size(); ++i) {
    add({points2[i]});
    for (std::size_t j = i + 1; j < points2.size(); ++j) add({points2[i], points2[j]});
  }
  return out;
}

Q gamma_oracle(const MicroSpace& s, std::size_t a) {
  Q best = 0;
  for (const auto& g : s.gens) best = std::max(best, g[a]);
  return best;
}

std::string pcoh_fully_faithful() {
  const auto spaces = micro_spaces();
  const std::vector<Q> entries{0, Q(1, 2), 1, 2};
  std::size_t checked = 0, accepted = 0, composites = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Matrix>> morphisms;
  for (std::size_t ia = 0; ia < spaces.size(); ++ia)
    for (std::size_t ib = 0; ib < spaces.size(); ++ib) {
      const auto& A = spaces[ia];
      const auto& B = spaces[ib];
      const std::size_t na = A.gens[0].size(), nb = B.gens[0].size(), cells = na * nb;
      std::size_t total = 1;
      for (std::size_t k = 0; k < cells; ++k) total *= entries.size();
      for (std::size_t code = 0; code < total; ++code) {
        Matrix M(na, nb);
        std::vector<std::vector<Q>> m(na, std::vector<Q>(nb));
        std::size_t c = code;
        for (std::size_t k = 0; k < cells; ++k, c /= entries.size()) {
          m[k / nb][k % nb] = entries[c % entries.size()];
          M.at(k / nb, k % nb) = Scalar(entries[c % entries.size()]);
        }
        bool by_oracle = true;
        for (const auto& g : A.gens) {
          std::vector<Q> y(nb, 0);
          for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t a = 0; a < na; ++a) y[b] += g[a] * m[a][b];
          by_oracle = by_oracle && oracle::pcoh_member(B.gens, y);
        }
        bool by_library = true;
        try {
          H_map(A.space, B.space, M);
        } catch (const UsageError&) {
          by_library = false;
        }
        require(by_oracle == by_library, "generator verification disagrees on " + str(M));
        ++checked;
        if (by_library) {
          ++accepted;
          morphisms[{ia, ib}].push_back(M);
        }
      }
    }
  // Composite identity on every composable pair drawn from a fixed sample.
  std::mt19937_64 rng(3);
  for (std::size_t ia = 0; ia < spaces.size(); ++ia)
    for (std::size_t ib = 0; ib < spaces.size(); ++ib)
      for (std::size_t ic = 0; ic < spaces.size(); ++ic) {
        if ((ia + 2 * ib + 3 * ic) % 7 != 0) continue;
        const auto& fs = morphisms[{ia, ib}];
        const auto& gs = morphisms[{ib, ic}];
        if (fs.empty() || gs.empty()) continue;
        const Matrix& f = fs[rng() % fs.size()];
        const Matrix& g = gs[rng() % gs.size()];
        const auto &A = spaces[ia], &B = spaces[ib], &C = spaces[ic];
        const LinMap hf = H_map(A.space, B.space, f), hg = H_map(B.space, C.space, g);
        const LinMap gf = compose(hf, hg);
        const auto ba = pcoh_gamma_and_basis(A.space), bc = pcoh_gamma_and_basis(C.space);
        for (std::size_t a = 0; a < ba.gamma.size(); ++a) require(ba.gamma[a] == gamma_oracle(A, a), "gamma");
        const Matrix rep = matrix_of(gf, ba.basis, bc.basis);
        for (std::size_t a = 0; a < f.rows; ++a)
          for (std::size_t c = 0; c < g.cols; ++c) {
            Q sum = 0;
            for (std::size_t b = 0; b < f.cols; ++b) sum += g.at(b, c).value() * f.at(a, b).value();
            Q expect = gamma_oracle(A, a) / gamma_oracle(C, c) * sum;
            expect.canonicalize();
            require(rep.at(a, c) == Scalar(expect), "matrix of composite at (" + std::to_string(a) + "," + std::to_string(c) + ")");
          }
        ++composites;
      }
  return std::to_string(spaces.size()) + " spaces, " + std::to_string(checked) + " matrices (" + std::to_string(accepted) +
         " morphisms), " + std::to_string(composites) + " composites";
}

// 4 -----------------------------------------------------------------------------

std::vector<std::vector<Q>> pareto(std::vector<std::vector<Q>> pts) {
  std::vector<std::vector<Q>> out;
  for (const auto& p : pts) {
    if (std::all_of(p.begin(), p.end(), [](const Q& x) { return x == 0; })) continue;
    bool dominated = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      bool ge = true;
      for (std::size_t i = 0; i < p.size(); ++i) ge = ge && q[i] >= p[i];
      dominated = dominated || ge;
    }
    if (!dominated && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string bipolar_closure() {
  std::mt19937_64 rng(11);
  const std::vector<Q> coords{0, Q(1, 4), Q(1, 3), Q(1, 2), Q(2, 3), 1, Q(3, 2), 2};
  std::size_t done = 0, low_dim = 0;
  while (done < 50) {
    const std::size_t dim = 1 + rng() % 4, count = 1 + rng() % 4;
    std::vector<lp::RVec> gens;
    std::vector<std::vector<Q>> qgens;
    for (std::size_t k = 0; k < count; ++k) {
      lp::RVec g;
      for (std::size_t i = 0; i < dim; ++i) g.push_back(coords[rng() % coords.size()]);
      qgens.push_back(g);
      gens.push_back(std::move(g));
    }
    bool live = true;
    for (std::size_t i = 0; i < dim; ++i) {
      bool any = false;
      for (const auto& g : gens) any = any || g[i] != 0;
      live = live && any;
    }
    if (!live) continue;
    const auto P = pcoh_space(letters(dim), gens);
    for (const auto& g : gens) require(pcoh_bipolar_member(P, g), "generator outside its bipolar");
    const auto d1 = pcoh_dual(P);
    const auto d3 = pcoh_dual(pcoh_dual(d1));
    const auto c1 = canonical_points(d1.body.generators());
    require(c1 == canonical_points(d3.body.generators()), "P^perp differs from P^perp^perp^perp");
    for (const auto& u : c1)
      for (const auto& g : qgens) {
        Q s = 0;
        for (std::size_t i = 0; i < dim; ++i) s += u[i] * g[i];
        require(s <= 1, "dual generator pairs above 1 with a generator");
      }
    if (dim <= 2) {
      std::vector<std::vector<Q>> lib(c1.begin(), c1.end());
      std::sort(lib.begin(), lib.end());
      require(lib == pareto(oracle::dual_vertices(qgens, dim)), "dual vertices differ from the planar oracle");
      ++low_dim;
    }
    ++done;
  }
  return "50 generator sets, " + std::to_string(low_dim) + " cross-checked in the plane";
}

// 5 -----------------------------------------------------------------------------

void check_eta(const Based& v, const std::string& name) {
  const auto de = dual_and_eta(v);
  require(de.eta_iso, name + ": eta is not an isomorphism: " + de.reason);
  const std::size_t n = v.module->size();
  const LinMap mu = make_map(de.ddual.module, v.module, Matrix::identity(n));
  require(is_morphism(mu).ok, name + ": inverse of eta is not a morphism");
  require(compose(de.eta, mu).matrix == Matrix::identity(n), name + ": mu after eta is not the identity");
  require(compose(mu, de.eta).matrix == Matrix::identity(n), name + ": eta after mu is not the identity");
}

std::string double_negation() {
  std::size_t count = 0;
  for (const auto& r : all_spaces(3)) {
    const auto A = space_of(r);
    check_eta(F_embed(A), "coherence space");
    const auto dd = coherence_of(*dual_and_eta(F_embed(A)).ddual.module);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) {
        const bool once = i == j || !r[i][j];
        const bool twice = i == j || !once;
        require(dd.coherent(i, j) == twice, "double dual relation");
      }
    ++count;
  }
  for (const auto& [name, p] : pcoh_examples()) {
    const Based v = H_embed(p);
    check_eta(v, name);
    if (p.web.size() <= 2) {
      std::vector<std::vector<Q>> gens;
      for (const auto& g : p.body.generators()) gens.push_back(g);
      const ModulePtr ddm = normalize(dual_and_eta(v).ddual.module);
      const auto* dd = ddm->as<pres::PolytopeP>();
      require(dd != nullptr, name + ": double dual is not a polytope");
      for (const auto& g : dd->body.generators()) require(oracle::pcoh_member(gens, g), name + ": double dual is larger");
    }
    ++count;
  }
  return std::to_string(count) + " objects";
}

// 6 -----------------------------------------------------------------------------

std::vector<oracle::Ext> as_ext(const std::vector<Vec>& vs) {
  std::vector<oracle::Ext> out;
  for (const auto& v : vs) {
    oracle::Ext e;
    for (const auto& s : v) e.push_back(s.is_infinite() ? -1 : static_cast<int>(s.value().get_num().get_si()));
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string gluing() {
  const auto ninf = semirings::naturals_inf();
  std::size_t count = 0;
  for (const auto& r : all_spaces(3)) {
    const Web web = letters(r.size());
    std::vector<Vec> u;
    std::vector<oracle::Ext> expect;
    for (const auto& c : oracle::cliques(r)) {
      u.push_back(indicator(c));
      expect.emplace_back(c.begin(), c.end());
    }
    std::sort(expect.begin(), expect.end());
    const auto g = glue_tight_closure(web, u, 1, ninf);
    require(as_ext(g.U) == expect, "closure is not the clique set");
    const auto universe = oracle::ext_universe(r.size());
    auto closed = oracle::ext_orthogonal(oracle::ext_orthogonal(expect, universe), universe);
    std::sort(closed.begin(), closed.end());
    require(closed == expect, "oracle closure is not the clique set");
    require(as_ext(g.X) == [&] {
      auto x = oracle::ext_orthogonal(expect, universe);
      std::sort(x.begin(), x.end());
      return x;
    }(), "orthogonal differs from the oracle");
    require(as_ext(glue_tight_closure(web, g.U, 1, ninf).U) == as_ext(g.U), "closure is not idempotent");
    ++count;
  }
  return std::to_string(count) + " coherence spaces";
}

// 7 -----------------------------------------------------------------------------

struct ExpCase {
  std::string name;
  Based v;
  std::vector<Vec> points;
  /// Expected sup of the ideal at a multiset, by direct reasoning.
  std::function<std::optional<Q>(const std::vector<std::size_t>&)> sup;
};

Q factorial(std::size_t n) {
  Q f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long>(i);
  return f;
}

std::string comonoid() {
  std::vector<ExpCase> cases;
  for (const auto& r : all_spaces(2)) {
    const auto A = space_of(r);
    std::vector<Vec> pts;
    for (const auto& c : oracle::cliques(r)) pts.push_back(indicator(c));
    cases.push_back({"coherence " + std::to_string(r.size()) + (r.size() == 2 && r[0][1] ? " coherent" : ""), F_embed(A), pts,
                     [r](const std::vector<std::size_t>& xi) -> std::optional<Q> {
                       for (auto a : xi)
                         for (auto b : xi)
                           if (!r[a][b]) return std::nullopt;
                       return Q(1);
                     }});
  }
  for (const auto& [name, p] : pcoh_examples()) {
    if (name != "unit" && name != "simplex2") continue;
    std::vector<Vec> pts;
    if (name == "unit")
      for (const Q& x : {Q(0), Q(1, 3), Q(1, 2), Q(1)}) pts.push_back({Scalar(x)});
    else
      for (const auto& [x, y] : std::vector<std::pair<Q, Q>>{{0, 0}, {1, 0}, {0, 1}, {Q(1, 2), Q(1, 2)}, {Q(1, 3), Q(1, 2)}})
        pts.push_back({Scalar(x), Scalar(y)});
    const bool simplex = name == "simplex2";
    cases.push_back({name, H_embed(p), pts, [simplex](const std::vector<std::size_t>& xi) -> std::optional<Q> {
                       if (!simplex) return Q(1);
                       std::map<std::size_t, std::size_t> counts;
                       for (auto a : xi) ++counts[a];
                       Q s = 1 / factorial(xi.size());
                       for (auto& [a, c] : counts) s *= factorial(c);
                       s.canonicalize();
                       return s;
                     }});
  }
  std::size_t checked = 0;
  for (const auto& c : cases)
    for (std::size_t d = 1; d <= 3; ++d) {
      const TruncatedBang b = bang(c.v, d);
      const Web& web = c.v.module->web();
      const std::size_t atoms = web.size();
      // Web and ideals.
      std::vector<std::vector<std::size_t>> index;
      for (const auto& xi : oracle::multisets_upto(atoms, d))
        if (c.sup(xi)) index.push_back(xi);
      require(index.size() == b.index.size(), c.name + ": web size of the exponential");
      for (std::size_t i = 0; i < index.size(); ++i) {
        require(b.index[i].sequence() == index[i], c.name + ": multiset order");
        require(b.ideals[i].sup == Scalar(*c.sup(index[i])), c.name + ": ideal at " + b.index[i].label(web));
      }
      // Comultiplication against the merge of multisets.
      const std::size_t n = index.size();
      const Matrix delta = comult(b).matrix;
      std::vector<std::vector<Q>> dq(n, std::vector<Q>(n * n, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const auto m = oracle::merge(index[i], index[j]);
          for (std::size_t k = 0; k < n; ++k)
            if (index[k] == m) dq[k][i * n + j] = 1;
        }
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c2 = 0; c2 < n * n; ++c2) require(delta.at(k, c2) == Scalar(dq[k][c2]), c.name + ": comult entry");
      // Laws on the oracle matrix, independently of the library.
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            require(dq[k][i * n + j] == dq[k][j * n + i], c.name + ": oracle cocommutativity");
            Q left = 0, right = 0;
            for (std::size_t l = 0; l < n; ++l) {
              // (Δ⊗id)∘Δ and (id⊗Δ)∘Δ read at (i, j, l) through the middle split.
              for (std::size_t m = 0; m < n; ++m) {
                left += dq[k][m * n + l] * dq[m][i * n + j];
                right += dq[k][i * n + m] * dq[m][j * n + l];
              }
              require(left == right, c.name + ": oracle coassociativity");
              left = right = 0;
            }
          }
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
          require(dq[k][0 * n + i] == (k == i ? 1 : 0), c.name + ": oracle left counit");
          require(dq[k][i * n + 0] == (k == i ? 1 : 0), c.name + ": oracle right counit");
        }
      // Library laws, then promotion against the power formula.
      const auto rep = check_comonoid(b, c.points);
      for (const auto& law : rep.laws) require(law.passed, c.name + " degree " + std::to_string(d) + ": " + law.name + " " + law.counterexample);
      std::vector<Q> gamma;
      for (std::size_t a = 0; a < atoms; ++a) gamma.push_back(c.v.basis.e[a][a].value());
      for (const auto& x : c.points) {
        const Vec p = promote(b, x);
        for (std::size_t i = 0; i < n; ++i) {
          Q t = 1;
          for (auto a : index[i]) t *= x[a].value() / gamma[a];
          t.canonicalize();
          require(p[i] == Scalar(t), c.name + ": promotion coordinate");
        }
        const Vec back = raw_apply(dereliction(b).matrix, p);
        require(back == x, c.name + ": dereliction after promotion");
      }
      ++checked;
    }
  return std::to_string(checked) + " (space, degree) cases";
}

// 8 -----------------------------------------------------------------------------

std::string sym_equalizer() {
  std::vector<std::pair<std::string, Based>> cases;
  for (const auto& r : all_spaces(2)) cases.emplace_back("coherence", F_embed(space_of(r)));
  for (std::size_t n = 1; n <= 2; ++n) cases.emplace_back("free", based(free_module(semirings::coherence(), letters(n))));
  std::size_t discrepancies = 0, vectors = 0;
  for (const auto& [name, v] : cases) {
    const SymPower s = sym_power(v, 2);
    const auto sym = enumerate_carrier(*s.based.module);
    require(sym.has_value(), name + ": symmetric square not enumerable");
    std::set<Vec> mapped;
    for (const auto& t : *sym) mapped.insert(raw_apply(s.embed, t));
    const ModulePtr T = s.tensor.module;
    const LinMap swap = make_map(T, T, swap_matrix(v.module->size()));
    const auto eq = enumerate_carrier(*equalizer_submodule(swap, identity_map(T)));
    require(eq.has_value(), name + ": equalizer not enumerable");
    const std::set<Vec> eqset(eq->begin(), eq->end());
    for (const auto& x : mapped) discrepancies += !eqset.count(x);
    for (const auto& x : eqset) discrepancies += !mapped.count(x);
    // Symmetric cliques of the tensor square, computed from the relation.
    const auto rel = normalize(v.module)->as<pres::Coherence>()->coh;
    const std::size_t n = rel.size();
    oracle::Rel sq(n * n, std::vector<bool>(n * n));
    for (std::size_t i = 0; i < n * n; ++i)
      for (std::size_t j = 0; j < n * n; ++j) sq[i][j] = rel[i / n][j / n] && rel[i % n][j % n];
    std::set<Vec> symmetric;
    for (const auto& c : oracle::cliques(sq)) {
      bool sym_ok = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) sym_ok = sym_ok && c[a * n + b] == c[b * n + a];
      if (sym_ok) symmetric.insert(indicator(c));
    }
    for (const auto& x : symmetric) discrepancies += !eqset.count(x);
    for (const auto& x : eqset) discrepancies += !symmetric.count(x);
    vectors += eqset.size();
  }
  require(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
  return std::to_string(cases.size()) + " modules, " + std::to_string(vectors) + " symmetric vectors, 0 discrepancies";
}

// 9 -----------------------------------------------------------------------------

std::string negative_controls() {
  const auto I = semirings::coherence(), B = semirings::boolean();
  const Web star({"*"});
  const auto b_over_i = free_module(I, star, B);
  const auto rep = validate_basis(*b_over_i, DualBasis{{{Scalar(1)}}, {{Scalar(1)}}, true});
  require(!rep.valid, "claimed basis of B as an I-module was accepted");

  const auto sub = free_module(I, star);
  const auto in_f = classify_submodule(*sub, *free_module(I, star, semirings::finiteness()));
  const auto in_n = classify_submodule(*sub, *free_module(I, star, semirings::naturals()));
  require(!in_f.is_sum_reflecting, "I in F reported sum-reflecting");
  require(in_n.is_sum_reflecting && !in_n.partial,
          "I in N not reported sum-reflecting (partial " + std::to_string(in_n.partial) + ", " + in_n.witness + ")");

  bool rejected = false;
  try {
    coherence_module(Web({"a", "b"}), {{1, 1}, {1, 1}}, B);
  } catch (const UsageError& e) {
    rejected = std::string(e.what()).find("x + x") != std::string::npos;
  }
  require(rejected, "coherence presentation over B accepted");
  return "basis rejected (" + rep.failures.front() + "); I in F not sum-reflecting; I in N sum-reflecting; B coherence rejected";
}

// 10 ----------------------------------------------------------------------------

WsObject object_from(const std::string& name, Based b) {
  WsObject o;
  o.name = name;
  o.based = std::move(b);
  return o;
}

std::string frontend() {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto f = oracle::random_formula(rng, 5);
    require(oracle::depth(*f) <= 6, "generator depth");
    const auto text = print_formula(f);
    require(equal(parse_formula(text), f), "round trip failed on " + text);
  }

  std::size_t outputs = 0;
  auto verified = [&](const Workspace& ws, const std::string& term) {
    const TypedMap t = interpret_morphism(ws, parse_morphism(term));
    require(is_morphism(t.map).ok, term + " is not a morphism");
    ++outputs;
    return t;
  };

  const auto examples = pcoh_examples();
  std::vector<ProbCohSpace> small;
  for (const auto& [name, p] : examples)
    if (p.web.size() <= 2) small.push_back(p);
  const std::vector<Q> grid{0, Q(1, 4), Q(1, 2), 1};
  std::size_t triangles = 0, nonzero = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Workspace ws;
    const bool prob = trial % 4 == 3;
    std::vector<Based> abc;
    for (int k = 0; k < 3; ++k) {
      if (prob) {
        abc.push_back(H_embed(small[rng() % small.size()]));
      } else {
        auto rs = oracle::coherence_relations(1 + rng() % 2);
        abc.push_back(F_embed(space_of(rs[rng() % rs.size()])));
      }
    }
    for (int k = 0; k < 3; ++k) {
      const std::string name(1, static_cast<char>('A' + k));
      ws.objects.emplace(name, object_from(name, abc[k]));
      ws.order.push_back(name);
    }
    const ModulePtr src = tensor_obj(abc[0], abc[1]).module, dst = abc[2].module;
    Matrix f(src->size(), dst->size());
    for (int attempt = 0; attempt < 50; ++attempt) {
      Matrix cand(src->size(), dst->size());
      for (auto& e : cand.data) e = prob ? Scalar(grid[rng() % grid.size()]) : Scalar(static_cast<long>(rng() % 3 == 0));
      if (is_morphism(make_map(src, dst, cand)).ok) {
        f = cand;
        break;
      }
    }
    nonzero += !std::all_of(f.data.begin(), f.data.end(), [](const Scalar& x) { return x.is_zero(); });
    ws.matrices.emplace("f", NamedMatrix{parse_formula("A * B"), parse_formula("C"), f});
    const auto curried = verified(ws, "curry(f)");
    verified(ws, "tensor(curry(f), id(B))");
    verified(ws, "eval(B -o C)");
    const auto back = verified(ws, "compose(eval(B -o C), tensor(curry(f), id(B)))");
    require(back.map.matrix == f, "eval after curry differs from f: " + str(back.map.matrix) + " vs " + str(f));
    require(curried.map.matrix.rows == abc[0].module->size(), "curry shape");
    ++triangles;
  }

  // The other combinators, once over coherence spaces and once over probabilistic ones.
  for (int prob = 0; prob < 2; ++prob) {
    Workspace ws;
    const Based a = prob ? H_embed(examples[2].second) : F_embed(space_of(oracle::coherence_relations(2)[0]));
    const Based b = prob ? H_embed(examples[0].second) : F_embed(space_of(oracle::coherence_relations(2)[1]));
    ws.objects.emplace("A", object_from("A", a));
    ws.objects.emplace("B", object_from("B", b));
    for (const char* term : {"id(A & B)", "proj1(A & B)", "proj2(A & B)", "inj1(A + B)", "inj2(A + B)",
                             "pair(proj2(B & A), proj1(B & A))", "comult(!2 A)", "derelict(!2 A)", "counit(!2 A)",
                             "compose(derelict(!2 A), promote(!2 A, {a:1}))", "compose(proj1(A & B), id(A & B))",
                             "eval(A -o B)", "id(A^)", "id(1)"})
      verified(ws, term);
    const Q x = prob ? Q(1, 2) : Q(1);
    const auto dp = verified(ws, "compose(derelict(!3 A), promote(!3 A, {a:" + Scalar(x).to_string() + "}))");
    require(dp.map.matrix.at(0, 0) == Scalar(x) && dp.map.matrix.at(0, 1).is_zero(), "derelict after promote");
  }
  return "10^4 round trips, " + std::to_string(triangles) + " triangle identities (" + std::to_string(nonzero) + " with f non-zero), " + std::to_string(outputs) +
         " interpreter outputs verified";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> all = {
      {1, "semiring axioms", 30, axioms},
      {2, "F is fully faithful", 120, coherence_fully_faithful},
      {3, "H is fully faithful, composite matrices", 120, pcoh_fully_faithful},
      {4, "bipolar closure", 60, bipolar_closure},
      {5, "double negation", 60, double_negation},
      {6, "gluing reconstruction", 60, gluing},
      {7, "exponential comonoid laws", 120, comonoid},
      {8, "symmetric square equals swap equalizer", 60, sym_equalizer},
      {9, "negative controls", 60, negative_controls},
      {10, "frontend", 60, frontend},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit) {
      ok = false;
      detail += "; over time";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [exact; " << secs << " s of "
         << c.limit << " s] " << detail;
    std::cout << line.str() << std::endl;
    failures += !ok;
  }
  return failures == 0 ? 0 : 1;
}
