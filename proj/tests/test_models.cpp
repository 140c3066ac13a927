#include "doctest.h"
#include "llw/error.hpp"
#include "llw/models.hpp"

using namespace llw;

namespace {

using Coh = std::vector<std::vector<char>>;

const Web ab({"a", "b"});

CoherenceSpace incoherent_pair(const Web& w = ab) { return coherence_space(w, Coh{{1, 0}, {0, 1}}); }
CoherenceSpace coherent_pair(const Web& w = ab) { return coherence_space(w, Coh{{1, 1}, {1, 1}}); }
CoherenceSpace single(const char* atom) { return coherence_space(Web({atom}), Coh{{1}}); }
ProbCohSpace simplex() { return pcoh_space(ab, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}); }
ProbCohSpace box() { return pcoh_space(ab, {{Rational(1), Rational(1)}}); }
ProbCohSpace interval() { return pcoh_space(Web({"a"}), {{Rational(1)}}); }

lp::RVec rv(std::initializer_list<Rational> xs) { return lp::RVec(xs); }
Matrix mat(const char* text, std::size_t r, std::size_t c) { return parse_matrix(text, r, c); }
Vec nat(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<CoherenceSpace> small_spaces() {
  return {single("a"), incoherent_pair(), coherent_pair()};
}

}  // namespace

TEST_CASE("linear implication of coherence spaces") {
  const auto one = coh_lolli(single("a"), single("c"));
  CHECK(one.web.size() == 1);
  const auto l1 = coh_lolli(incoherent_pair(), single("c"));
  CHECK(l1.coherent(0, 1));
  const auto l2 = coh_lolli(coherent_pair(), single("c"));
  CHECK_FALSE(l2.coherent(0, 1));
}

TEST_CASE("coherence spaces as modules") {
  const auto a = incoherent_pair(), c = single("c");
  const auto id = F_map(a, a, {{0, 0}, {1, 1}});
  CHECK(id.matrix == Matrix::identity(2));

  const auto f = F_map(a, c, {{0, 0}, {1, 0}});
  CHECK(*llw::apply(f, {1, 0}) == Vec{1});
  CHECK(*llw::apply(f, {0, 1}) == Vec{1});
  CHECK_FALSE(membership(*f.src, {1, 1}));
  CHECK_FALSE(llw::apply(f, {1, 1}));
  CHECK_THROWS_AS(F_map(coherent_pair(), c, {{0, 0}, {1, 0}}), UsageError);

  for (const auto& x : small_spaces())
    for (const auto& y : small_spaces()) {
      const auto l = coh_lolli(x, y);
      for (const auto& clique : cliques(l)) {
        Relation r;
        for (auto k : clique) r.emplace(k / y.web.size(), k % y.web.size());
        CHECK(F_invert(F_map(x, y, r)) == r);
      }
    }
}

TEST_CASE("finiteness spaces") {
  CHECK(fin_dual({}, ab).size() == 4);
  CHECK(fin_dual({{0}}, Web({"a", "b", "c"})).size() == 8);
  const auto g = G_embed(FinitenessSpace{Web({"a"})});
  CHECK_FALSE(vec_sum(*g, {{{1}, Multiplicity::omega()}}));
  CHECK(*vec_sum(*g, {{{1}, 2}}) == Vec{1});
}

TEST_CASE("probabilistic bipolar membership") {
  CHECK(pcoh_bipolar_member(interval(), rv({Rational(2, 3)})));
  CHECK_FALSE(pcoh_bipolar_member(interval(), rv({Rational(3, 2)})));
  CHECK(pcoh_bipolar_member(simplex(), rv({Rational(1, 2), Rational(1, 2)})));
  CHECK_FALSE(pcoh_bipolar_member(simplex(), rv({Rational(1), Rational(1)})));
}

TEST_CASE("probabilistic duals") {
  const auto di = pcoh_dual(interval());
  CHECK(pcoh_bipolar_member(di, rv({Rational(1)})));
  CHECK_FALSE(pcoh_bipolar_member(di, rv({Rational(11, 10)})));

  const auto ds = pcoh_dual(simplex());
  CHECK(pcoh_bipolar_member(ds, rv({Rational(1), Rational(1)})));
  CHECK_FALSE(pcoh_bipolar_member(ds, rv({Rational(1), Rational(11, 10)})));

  const auto db = pcoh_dual(box());
  CHECK(pcoh_bipolar_member(db, rv({Rational(1), Rational(0)})));
  CHECK(pcoh_bipolar_member(db, rv({Rational(1, 2), Rational(1, 2)})));
  CHECK_FALSE(pcoh_bipolar_member(db, rv({Rational(1, 2), Rational(2, 3)})));
}

TEST_CASE("probabilistic bases") {
  const auto i = pcoh_gamma_and_basis(interval());
  CHECK(i.gamma == std::vector<Rational>{1});
  CHECK(i.basis.e.front() == Vec{1});
  CHECK(i.basis.phi.front() == Vec{1});

  const auto s = pcoh_gamma_and_basis(simplex());
  CHECK(s.gamma == std::vector<Rational>{1, 1});

  const auto h = pcoh_gamma_and_basis(pcoh_space(Web({"a"}), {rv({Rational(1, 2)})}));
  CHECK(h.gamma.front() == Rational(1, 2));
  CHECK(h.basis.e.front() == Vec{Scalar(1, 2)});
  CHECK(h.basis.phi.front() == Vec{2});

  CHECK_THROWS_WITH_AS(pcoh_space(ab, {rv({Rational(1), Rational(0)})}), doctest::Contains("r e_a"), UsageError);
}

TEST_CASE("probabilistic maps") {
  CHECK_NOTHROW(H_map(simplex(), simplex(), Matrix::identity(2)));
  CHECK_THROWS_AS(H_map(interval(), interval(), mat("2", 1, 1)), UsageError);
  CHECK_NOTHROW(H_map(simplex(), interval(), mat("1/2; 1/2", 2, 1)));
}

TEST_CASE("tight closure") {
  const auto z = glue_tight_closure(ab, {nat({0, 0})});
  CHECK(z.X.size() == glue_universe(2, 2).size());
  CHECK(z.U == std::vector<Vec>{nat({0, 0})});

  const std::vector<Vec> cl{nat({0, 0}), nat({0, 1}), nat({1, 0})};
  const auto g = glue_tight_closure(ab, cl);
  CHECK(g.X.size() == 4);
  CHECK(g.U == cl);
  const auto again = glue_tight_closure(ab, g.U);
  CHECK(again.U == g.U);
  CHECK(again.X == g.X);
}

TEST_CASE("maps between tight objects") {
  const auto pair = glue_tight_closure(ab, {nat({0, 1}), nat({1, 0})});
  const auto point = glue_tight_closure(Web({"c"}), {nat({1})});
  CHECK(glue_is_morphism(Matrix::identity(2), pair, pair));
  CHECK(glue_is_morphism(mat("1; 1", 2, 1), pair, point));
  Matrix inf(1, 1);
  inf.at(0, 0) = Scalar::infinity();
  CHECK_FALSE(glue_is_morphism(inf, point, point));
}

TEST_CASE("weighted relation composition") {
  const auto& b = *semirings::boolean();
  CHECK(wrel_compose(b, mat("0 1; 0 0", 2, 2), mat("0 0; 1 0", 2, 2)) == mat("1 0; 0 0", 2, 2));
  const auto& n = *semirings::naturals_inf();
  const Matrix f = mat("1 1; 0 inf", 2, 2), g = mat("2 0; 1 1", 2, 2);
  CHECK(wrel_compose(n, f, g) == mat("3 1; inf inf", 2, 2));
  CHECK(wrel_compose(n, Matrix::identity(2), f) == f);
  CHECK(wrel_compose(n, f, Matrix::identity(2)) == f);
}
