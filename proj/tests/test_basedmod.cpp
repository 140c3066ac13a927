#include "doctest.h"
#include "llw/error.hpp"
#include "llw/linmaps.hpp"

using namespace llw;

namespace {

const SemiringPtr I = semirings::coherence();
const Web ab({"a", "b"});
const Web star({"*"});

ModulePtr incoherent_pair() { return coherence_module(ab, {{1, 0}, {0, 1}}); }
ModulePtr coherent_pair() { return coherence_module(ab, {{1, 1}, {1, 1}}); }
ModulePtr interval() { return polytope_module(Web({"a"}), Polytope::from_generators(1, {{Rational(1)}})); }
ModulePtr simplex() {
  return polytope_module(ab, Polytope::from_generators(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}));
}

Vec v(const ModulePtr& m, const char* text) { return parse_vec(m->web(), text); }

std::string sum_text(const ModulePtr& m, const VecFamily& f) {
  const auto r = vec_sum(*m, f);
  return r ? to_string(m->web(), *r) : "undefined";
}

}  // namespace

TEST_CASE("membership") {
  CHECK_FALSE(membership(*incoherent_pair(), v(incoherent_pair(), "{a:1, b:1}")));
  CHECK(membership(*incoherent_pair(), v(incoherent_pair(), "{a:1}")));
  CHECK(membership(*interval(), {Scalar(2, 3)}));
  CHECK_FALSE(membership(*interval(), {Scalar(3, 2)}));
}

TEST_CASE("vector sums") {
  const auto c = coherent_pair();
  CHECK(sum_text(c, {{v(c, "{a:1}"), 1}, {v(c, "{b:1}"), 1}}) == "{a:1, b:1}");
  CHECK(sum_text(c, {{v(c, "{a:1}"), 1}, {v(c, "{a:1}"), 1}}) == "undefined");
  const auto s = simplex();
  CHECK(sum_text(s, {{v(s, "(1/2, 0)"), 1}, {v(s, "(0, 1/4)"), 1}}) == "{a:1/2, b:1/4}");
  CHECK(sum_text(s, {{v(s, "(3/4, 0)"), 1}, {v(s, "(0, 1/2)"), 1}}) == "undefined");
  CHECK_THROWS_AS(vec_sum(*s, {{v(s, "(2, 0)"), 1}}), UsageError);
}

TEST_CASE("scalar action") {
  const auto s = simplex();
  const Vec x = v(s, "(1/3, 1/2)");
  CHECK(scalar_action(*s, 1, x) == x);
  CHECK(scalar_action(*interval(), Scalar(1, 2), {Scalar(2, 3)}) == Vec{Scalar(1, 3)});
  CHECK(is_zero(scalar_action(*incoherent_pair(), 0, v(incoherent_pair(), "{a:1}"))));
}

TEST_CASE("products") {
  const auto one = free_module(I, star);
  const auto p = product_module(I, {one, one});
  CHECK(p->size() == 2);
  CHECK(membership(*p, {1, 1}));
  CHECK(sum_text(p, {{{1, 0}, 1}, {{0, 1}, 1}}) == "{1.*:1, 2.*:1}");
  const auto z = product_module(I, {});
  CHECK(z->size() == 0);
  CHECK(enumerate_carrier(*z)->size() == 1);
}

TEST_CASE("coproducts") {
  const auto one = free_module(I, star);
  const auto c = coproduct_module(I, {one, one});
  CHECK(membership(*c, {1, 0}));
  CHECK_FALSE(membership(*c, {1, 1}));
  CHECK_FALSE(vec_sum(*c, {{{1, 0}, 1}, {{0, 1}, 1}}));

  const auto single = coproduct_module(I, {incoherent_pair()});
  const auto lhs = enumerate_carrier(*single), rhs = enumerate_carrier(*incoherent_pair());
  REQUIRE(lhs);
  CHECK(*lhs == *rhs);
}

TEST_CASE("equalizers") {
  const auto m = coherent_pair();
  const auto id = identity_map(m);
  CHECK(enumerate_carrier(*equalizer_submodule(id, id))->size() == enumerate_carrier(*m)->size());

  const auto a = free_module(I, Web({"a"}));
  const auto eq = enumerate_carrier(*equalizer_submodule(identity_map(a), make_map(a, a, Matrix(1, 1))));
  REQUIRE(eq);
  CHECK(eq->size() == 1);
  CHECK(is_zero(eq->front()));

  const auto t = tensor_module(incoherent_pair(), incoherent_pair());
  const auto sym = enumerate_carrier(*equalizer_submodule(make_map(t, t, swap_matrix(2)), identity_map(t)));
  REQUIRE(sym);
  for (const auto& x : *sym) CHECK(x[1] == x[2]);
}

TEST_CASE("submodule classification") {
  const auto sub = free_module(I, star);
  CHECK_FALSE(classify_submodule(*sub, *free_module(I, star, semirings::finiteness())).is_sum_reflecting);
  const auto in_n = classify_submodule(*sub, *free_module(I, star, semirings::naturals()));
  CHECK(in_n.is_sum_reflecting);
  CHECK(in_n.is_submodule);

  const auto u = semirings::unit_interval();
  const auto in_r = classify_submodule(*semiring_module(u), *free_module(u, star, semirings::nonneg_rationals()));
  CHECK(in_r.is_submodule);
  CHECK(in_r.is_sum_reflecting);
  CHECK(in_r.is_downward_closed);
}

TEST_CASE("vector preorder") {
  const auto c = coherent_pair();
  CHECK(preorder_leq_vec(*c, v(c, "{a:1}"), v(c, "{a:1, b:1}")) == Verdict::True);
  CHECK(preorder_leq_vec(*c, v(c, "{a:1}"), v(c, "{b:1}")) == Verdict::False);
  const auto s = simplex();
  CHECK(preorder_leq_vec(*s, v(s, "(1/4, 1/4)"), v(s, "(1/2, 1/2)")) == Verdict::True);
  CHECK(preorder_leq_vec(*s, v(s, "(1/2, 0)"), v(s, "(1/4, 1/4)")) == Verdict::False);
}

TEST_CASE("vector text") {
  const auto s = simplex();
  CHECK(to_string(ab, v(s, "{b:1/2}")) == "{b:1/2}");
  CHECK_THROWS(parse_vec(ab, "{c:1}"));
  CHECK(parse_matrix("1 0; 0 1", 2, 2) == Matrix::identity(2));
}
