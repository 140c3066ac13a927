#include "doctest.h"
#include "llw/semiring.hpp"

using namespace llw;

namespace {

const Multiplicity w = Multiplicity::omega();

std::string sum_text(const SemiringPtr& s, const ScalarFamily& f) {
  const auto r = sum_family(*s, f);
  return r ? r->to_string() : "undefined";
}

// Finite sums of 1 are 1 except that exactly two copies are undefined.
class TwoCopiesBroken : public Semiring {
 public:
  std::string id() const override { return "broken"; }
  bool contains(const Scalar& s) const override { return s.is_zero() || s.is_one(); }
  std::optional<Scalar> raw_sum(const ScalarFamily& family) const override {
    std::uint64_t ones = 0;
    bool omega = false;
    for (const auto& [v, m] : family) {
      if (!v.is_one()) continue;
      if (m.is_omega()) omega = true;
      else ones += m.count();
    }
    if (!omega && ones == 2) return std::nullopt;
    return Scalar(omega || ones > 0 ? 1 : 0);
  }
  bool is_complete() const override { return false; }
  bool is_finitely_complete() const override { return false; }
  std::optional<std::vector<Scalar>> finite_carrier() const override { return std::vector<Scalar>{0, 1}; }
  std::vector<Scalar> sample_pool() const override { return {0, 1}; }
};

}  // namespace

TEST_CASE("sums of families") {
  using namespace semirings;
  CHECK(sum_text(coherence(), {{1, 1}, {1, 1}}) == "undefined");
  CHECK(sum_text(finiteness(), {{1, 5}}) == "1");
  CHECK(sum_text(finiteness(), {{1, w}}) == "undefined");
  CHECK(sum_text(unit_interval(), {{Scalar(1, 2), 1}, {Scalar(1, 3), 1}}) == "5/6");
  CHECK(sum_text(unit_interval(), {{Scalar(3, 4), 1}, {Scalar(1, 2), 1}}) == "undefined");
  CHECK(sum_text(naturals_inf(), {{1, w}}) == "inf");
  CHECK(sum_text(boolean(), {{1, w}}) == "1");
  CHECK(sum_text(naturals(), {}) == "0");
}

TEST_CASE("sum_family rejects values outside the carrier") {
  CHECK_THROWS(sum_family(*semirings::coherence(), {{2, 1}}));
  CHECK_THROWS(sum_family(*semirings::unit_interval(), {{Scalar::infinity(), 1}}));
}

TEST_CASE("products") {
  CHECK(mul(*semirings::coherence(), 1, 1) == Scalar(1));
  CHECK(mul(*semirings::naturals_inf(), Scalar::infinity(), 0) == Scalar(0));
  CHECK(mul(*semirings::naturals_inf(), Scalar::infinity(), 3) == Scalar::infinity());
  CHECK(mul(*semirings::unit_interval(), Scalar(2, 3), Scalar(1, 2)) == Scalar(1, 3));
}

TEST_CASE("preorder") {
  CHECK(leq(*semirings::unit_interval(), Scalar(1, 3), Scalar(1, 2)));
  CHECK_FALSE(leq(*semirings::unit_interval(), Scalar(1, 2), Scalar(1, 3)));
  CHECK(leq(*semirings::coherence(), 1, 1));
  CHECK_FALSE(leq(*semirings::coherence(), 1, 0));
  CHECK(leq(*semirings::finiteness(), 1, 1));
  CHECK(leq(*semirings::naturals_inf(), 7, Scalar::infinity()));
}

TEST_CASE("naive completion") {
  SUBCASE("N becomes N with infinity") {
    const auto c = naive_complete(semirings::naturals());
    CHECK_FALSE(c.already_complete);
    CHECK(c.semiring->is_complete());
    CHECK(sum_text(c.semiring, {{1, w}}) == "inf");
    CHECK(sum_text(c.semiring, {{2, 3}}) == "6");
  }
  SUBCASE("coherence semiring gains a third value") {
    const auto c = naive_complete(semirings::coherence());
    REQUIRE(c.semiring->finite_carrier());
    CHECK(c.semiring->finite_carrier()->size() == 3);
    CHECK(sum_text(c.semiring, {{1, 2}}) == "inf");
    CHECK(axiom_report(*c.semiring, AxiomBounds{}).all_passed());
  }
  SUBCASE("finiteness semiring") {
    const auto c = naive_complete(semirings::finiteness());
    CHECK(c.semiring->finite_carrier()->size() == 3);
    CHECK(sum_text(c.semiring, {{1, w}}) == "inf");
    CHECK(sum_text(c.semiring, {{1, 4}}) == "1");
  }
  SUBCASE("complete input is returned as is") {
    const auto b = semirings::boolean();
    const auto c = naive_complete(b);
    CHECK(c.already_complete);
    CHECK(c.semiring == b);
  }
}

TEST_CASE("axiom reports") {
  AxiomBounds bounds;
  bounds.max_entries = 4;
  bounds.max_mult = 3;
  const auto i = axiom_report(*semirings::coherence(), bounds);
  CHECK(i.exhaustive);
  CHECK(i.all_passed());
  CHECK(axiom_report(*semirings::boolean(), bounds).all_passed());

  const auto broken = axiom_report(TwoCopiesBroken{}, bounds);
  CHECK_FALSE(broken.all_passed());
  bool association_failed = false;
  for (const auto& c : broken.checks)
    if (!c.passed && c.axiom.find("axiom 3") != std::string::npos) {
      association_failed = true;
      CHECK_FALSE(c.counterexample.empty());
    }
  CHECK(association_failed);
}

TEST_CASE("scalar parsing and printing") {
  CHECK(Scalar::parse("3/6")->to_string() == "1/2");
  CHECK(Scalar::parse("inf")->is_infinite());
  CHECK_FALSE(Scalar::parse("-1"));
  CHECK_FALSE(Scalar::parse("x"));
  CHECK(semirings::by_id("N_inf")->is_complete());
}
