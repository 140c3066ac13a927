#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "llw/semiring.hpp"

namespace llw {
namespace {

using Partial = std::optional<Scalar>;

bool kleene_equal(const Partial& a, const Partial& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

std::string show(const Partial& p) { return p ? p->to_string() : "undefined"; }

class Checker {
 public:
  Checker(const Semiring& s, std::string name) : s_(s) { check_.axiom = std::move(name); }

  template <class F>
  void expect(bool ok, F&& describe) {
    ++check_.instances;
    if (!ok && check_.passed) {
      check_.passed = false;
      check_.counterexample = describe();
    }
  }

  Partial sum(const ScalarFamily& f) const { return s_.raw_sum(f); }
  AxiomCheck take() { return std::move(check_); }

 private:
  const Semiring& s_;
  AxiomCheck check_;
};

ScalarFamily drop_zeros(const ScalarFamily& f) {
  ScalarFamily out;
  for (const auto& e : f)
    if (!e.first.is_zero()) out.push_back(e);
  return out;
}

ScalarFamily merge_equal(const ScalarFamily& f) {
  ScalarFamily out;
  for (const auto& e : f) {
    auto it = std::find_if(out.begin(), out.end(), [&](const FamilyEntry& o) { return o.first == e.first; });
    if (it == out.end())
      out.push_back(e);
    else
      it->second = it->second + e.second;
  }
  return out;
}

/// Splits the first entry that can be split into two entries of the same value.
std::optional<ScalarFamily> split_first(const ScalarFamily& f, bool omega_as_one) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& [v, m] = f[i];
    ScalarFamily out(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(i));
    if (m.is_omega()) {
      out.emplace_back(v, omega_as_one ? Multiplicity(1) : Multiplicity::omega());
      out.emplace_back(v, Multiplicity::omega());
    } else if (m.count() >= 2) {
      out.emplace_back(v, Multiplicity(1));
      out.emplace_back(v, Multiplicity(m.count() - 1));
    } else {
      continue;
    }
    out.insert(out.end(), f.begin() + static_cast<std::ptrdiff_t>(i) + 1, f.end());
    return out;
  }
  return std::nullopt;
}

ScalarFamily omega_replicate(const ScalarFamily& f) {
  ScalarFamily out;
  for (const auto& e : f) out.emplace_back(e.first, Multiplicity::omega());
  return out;
}

/// One way of placing an entry into a two-block partition.
enum class Place { Left, Right, Split };

void partition_family(const ScalarFamily& f, const std::vector<Place>& places, ScalarFamily& left,
                      ScalarFamily& right) {
  left.clear();
  right.clear();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& [v, m] = f[i];
    switch (places[i]) {
      case Place::Left: left.push_back(f[i]); break;
      case Place::Right: right.push_back(f[i]); break;
      case Place::Split:
        if (m.is_omega()) {
          left.emplace_back(v, Multiplicity::omega());
          right.emplace_back(v, Multiplicity::omega());
        } else {
          left.emplace_back(v, Multiplicity(1));
          right.emplace_back(v, Multiplicity(m.count() - 1));
        }
        break;
    }
  }
}

bool splittable(const FamilyEntry& e) { return e.second.is_omega() || e.second.count() >= 2; }

struct Suite {
  const Semiring& s;
  Checker unit{s, "unit (axiom 1)"};
  Checker permutation{s, "permutation and merge invariance (axiom 2)"};
  Checker association{s, "finite-partition association, both directions (axiom 3)"};
  Checker omega_association{s, "omega-fold association (axiom 3)"};
  Checker distributivity{s, "distributivity (x+..)(y+..) <= sum x_i y_j"};
  Checker product{s, "product: unit, commutativity, associativity, zero"};

  explicit Suite(const Semiring& sr) : s(sr) {}

  void check_unit(const std::vector<Scalar>& pool) {
    unit.expect(kleene_equal(unit.sum({}), Scalar()), [] { return "empty family does not sum to 0"; });
    unit.expect(kleene_equal(unit.sum({{Scalar(), Multiplicity::omega()}}), Scalar()),
                [] { return "omega zeros do not sum to 0"; });
    for (const auto& x : pool) {
      for (const ScalarFamily& f : {ScalarFamily{{x, 1}}, ScalarFamily{{Scalar(), 2}, {x, 1}, {Scalar(), Multiplicity::omega()}}}) {
        const Partial r = unit.sum(f);
        unit.expect(kleene_equal(r, x), [&] { return to_string(f) + " sums to " + show(r) + ", expected " + x.to_string(); });
      }
    }
  }

  void check_product(const std::vector<Scalar>& pool) {
    for (const auto& a : pool) {
      product.expect(s.raw_mul(s.one(), a) == a && s.raw_mul(a, s.one()) == a,
                     [&] { return "1*" + a.to_string() + " != " + a.to_string(); });
      product.expect(s.raw_mul(s.zero(), a).is_zero(), [&] { return "0*" + a.to_string() + " != 0"; });
      for (const auto& b : pool) {
        product.expect(s.raw_mul(a, b) == s.raw_mul(b, a),
                       [&] { return a.to_string() + "*" + b.to_string() + " not commutative"; });
        product.expect(s.contains(s.raw_mul(a, b)), [&] { return "product leaves the carrier"; });
        for (const auto& c : pool)
          product.expect(s.raw_mul(s.raw_mul(a, b), c) == s.raw_mul(a, s.raw_mul(b, c)),
                         [&] { return "(" + a.to_string() + "*" + b.to_string() + ")*" + c.to_string() + " not associative"; });
      }
    }
  }

  void check_family(const ScalarFamily& f) {
    const Partial base = permutation.sum(f);
    auto compare = [&](Checker& c, const ScalarFamily& g, const char* what) {
      const Partial r = c.sum(g);
      c.expect(kleene_equal(base, r), [&] {
        return to_string(f) + " sums to " + show(base) + " but its " + what + " " + to_string(g) + " sums to " + show(r);
      });
    };
    ScalarFamily rev(f.rbegin(), f.rend());
    compare(permutation, rev, "reversal");
    if (f.size() > 1) {
      ScalarFamily rot(f.begin() + 1, f.end());
      rot.push_back(f.front());
      compare(permutation, rot, "rotation");
    }
    compare(permutation, drop_zeros(f), "zero-free form");
    compare(permutation, merge_equal(f), "merged form");
    if (auto g = split_first(f, false)) compare(permutation, *g, "split form");
    if (auto g = split_first(f, true)) compare(permutation, *g, "split form");

    // ω-fold: ω copies of the whole family vs. ω copies of its sum.
    {
      const ScalarFamily rep = omega_replicate(f);
      const Partial lhs = omega_association.sum(rep);
      const Partial rhs = base ? omega_association.sum({{*base, Multiplicity::omega()}}) : Partial{};
      omega_association.expect(kleene_equal(lhs, rhs), [&] {
        return "omega copies of " + to_string(f) + " sum to " + show(lhs) + " but omega copies of its sum give " + show(rhs);
      });
    }
  }

  void check_partition(const ScalarFamily& f, const std::vector<Place>& places, ScalarFamily& left, ScalarFamily& right) {
    partition_family(f, places, left, right);
    const Partial whole = association.sum(f);
    const Partial l = association.sum(left);
    const Partial r = association.sum(right);
    const Partial nested = (l && r) ? association.sum({{*l, 1}, {*r, 1}}) : Partial{};
    association.expect(kleene_equal(whole, nested), [&] {
      return to_string(f) + " sums to " + show(whole) + " but blocks " + to_string(left) + " | " + to_string(right) +
             " give " + show(l) + " + " + show(r) + " = " + show(nested);
    });
  }

  void check_distributivity(const ScalarFamily& x, const ScalarFamily& y) {
    const Partial sx = distributivity.sum(x);
    const Partial sy = distributivity.sum(y);
    if (!sx || !sy) {
      distributivity.expect(true, [] { return std::string(); });
      return;
    }
    ScalarFamily prod;
    for (const auto& [a, m] : x)
      for (const auto& [b, n] : y) prod.emplace_back(s.raw_mul(a, b), m * n);
    const Partial p = distributivity.sum(prod);
    const Scalar expected = s.raw_mul(*sx, *sy);
    distributivity.expect(kleene_equal(p, expected), [&] {
      return "(" + to_string(x) + ") * (" + to_string(y) + ") = " + expected.to_string() + " but the double sum is " + show(p);
    });
  }
};

std::vector<FamilyEntry> symbols(const std::vector<Scalar>& pool, const AxiomBounds& b) {
  std::vector<FamilyEntry> out;
  for (const auto& v : pool) {
    for (std::uint64_t m = 1; m <= b.max_mult; ++m) out.emplace_back(v, Multiplicity(m));
    if (b.include_omega) out.emplace_back(v, Multiplicity::omega());
  }
  return out;
}

/// All non-decreasing index sequences of length ≤ max_len over n symbols.
void for_each_multiset(std::size_t n, std::size_t max_len, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    fn(cur);
    if (cur.size() == max_len) return;
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

AxiomReport axiom_report(const Semiring& s, const AxiomBounds& bounds) {
  AxiomReport report;
  report.semiring = s.id();
  const auto carrier = s.finite_carrier();
  const std::vector<Scalar> pool = carrier ? *carrier : s.sample_pool();
  const bool exhaustive = carrier.has_value() && !bounds.samples.has_value();
  report.exhaustive = exhaustive;

  Suite suite(s);
  suite.check_unit(pool);
  suite.check_product(pool);

  const auto syms = symbols(pool, bounds);
  ScalarFamily left, right;

  if (exhaustive) {
    std::vector<ScalarFamily> small;  // families used for distributivity
    for_each_multiset(syms.size(), bounds.max_entries, [&](const std::vector<std::size_t>& idx) {
      ScalarFamily f;
      for (auto i : idx) f.push_back(syms[i]);
      suite.check_family(f);
      if (f.size() <= 3) small.push_back(f);
      // Every two-block partition where each entry goes left, right, or is split.
      std::vector<Place> places(f.size(), Place::Left);
      while (true) {
        suite.check_partition(f, places, left, right);
        std::size_t k = 0;
        for (; k < f.size(); ++k) {
          if (places[k] == Place::Left) {
            places[k] = Place::Right;
            break;
          }
          if (places[k] == Place::Right && splittable(f[k])) {
            places[k] = Place::Split;
            break;
          }
          places[k] = Place::Left;
        }
        if (k == f.size()) break;
      }
    });
    for (const auto& x : small)
      for (const auto& y : small) suite.check_distributivity(x, y);
  } else {
    std::mt19937_64 rng(bounds.seed);
    const std::size_t n = bounds.samples.value_or(bounds.fallback_samples);
    auto random_family = [&](std::size_t max_len) {
      ScalarFamily f;
      const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
      for (std::size_t i = 0; i < len; ++i) f.push_back(syms[std::uniform_int_distribution<std::size_t>(0, syms.size() - 1)(rng)]);
      return f;
    };
    for (std::size_t iter = 0; iter < n; ++iter) {
      const ScalarFamily f = random_family(bounds.max_entries);
      suite.check_family(f);
      std::vector<Place> places(f.size());
      for (int t = 0; t < 16; ++t) {
        for (std::size_t k = 0; k < f.size(); ++k) {
          const int r = std::uniform_int_distribution<int>(0, splittable(f[k]) ? 2 : 1)(rng);
          places[k] = static_cast<Place>(r);
        }
        suite.check_partition(f, places, left, right);
      }
      suite.check_distributivity(random_family(3), random_family(3));
    }
  }

  report.checks.push_back(suite.unit.take());
  report.checks.push_back(suite.permutation.take());
  report.checks.push_back(suite.association.take());
  report.checks.push_back(suite.omega_association.take());
  report.checks.push_back(suite.distributivity.take());
  report.checks.push_back(suite.product.take());
  return report;
}

}  // namespace llw
