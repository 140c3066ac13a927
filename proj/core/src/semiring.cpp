#include "llw/semiring.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "llw/error.hpp"

namespace llw {
namespace {

/// Summary of a family that every shipped sum rule can be read from.
struct Tally {
  bool any_infinite = false;
  bool omega_nonzero = false;  // some nonzero value repeated ω times
  std::uint64_t nonzero_count = 0;  // saturating count of finite nonzero occurrences
  Rational total = 0;          // sum of finite parts with finite multiplicity
};

Tally tally(const ScalarFamily& family) {
  Tally t;
  for (const auto& [value, mult] : family) {
    if (value.is_zero()) continue;
    if (value.is_infinite()) {
      t.any_infinite = true;
      continue;
    }
    if (mult.is_omega()) {
      t.omega_nonzero = true;
      continue;
    }
    t.nonzero_count = std::min<std::uint64_t>(t.nonzero_count + mult.count(), 1u << 30);
    t.total += value.value() * Rational(static_cast<unsigned long>(mult.count()));
  }
  return t;
}

enum class Kind { Coherence, Boolean, Finiteness, Naturals, NaturalsInf, Unit, Rpos };

class Shipped final : public Semiring {
 public:
  explicit Shipped(Kind kind) : kind_(kind) {}

  std::string id() const override {
    switch (kind_) {
      case Kind::Coherence: return "I";
      case Kind::Boolean: return "B";
      case Kind::Finiteness: return "F";
      case Kind::Naturals: return "N";
      case Kind::NaturalsInf: return "Ninf";
      case Kind::Unit: return "unit";
      case Kind::Rpos: return "Rpos";
    }
    return "?";
  }

  bool contains(const Scalar& s) const override {
    switch (kind_) {
      case Kind::Coherence:
      case Kind::Boolean:
      case Kind::Finiteness: return s.is_zero() || s.is_one();
      case Kind::Naturals: return s.is_integer();
      case Kind::NaturalsInf: return s.is_infinite() || s.is_integer();
      case Kind::Unit: return !s.is_infinite() && s.value() <= 1;
      case Kind::Rpos: return !s.is_infinite();
    }
    return false;
  }

  std::optional<Scalar> raw_sum(const ScalarFamily& family) const override {
    const Tally t = tally(family);
    switch (kind_) {
      case Kind::Coherence:
        if (t.omega_nonzero || t.nonzero_count > 1) return std::nullopt;
        return Scalar(static_cast<long>(t.nonzero_count));
      case Kind::Boolean:
        return Scalar((t.omega_nonzero || t.nonzero_count > 0) ? 1 : 0);
      case Kind::Finiteness:
        if (t.omega_nonzero) return std::nullopt;
        return Scalar(t.nonzero_count > 0 ? 1 : 0);
      case Kind::Naturals:
      case Kind::Rpos:
        if (t.omega_nonzero) return std::nullopt;
        return Scalar(t.total);
      case Kind::NaturalsInf:
        if (t.any_infinite || t.omega_nonzero) return Scalar::infinity();
        return Scalar(t.total);
      case Kind::Unit:
        if (t.omega_nonzero || t.total > 1) return std::nullopt;
        return Scalar(t.total);
    }
    return std::nullopt;
  }

  bool is_complete() const override { return kind_ == Kind::Boolean || kind_ == Kind::NaturalsInf; }
  bool is_finitely_complete() const override {
    return kind_ != Kind::Coherence && kind_ != Kind::Unit;
  }

  std::optional<std::vector<Scalar>> finite_carrier() const override {
    if (kind_ == Kind::Coherence || kind_ == Kind::Boolean || kind_ == Kind::Finiteness)
      return std::vector<Scalar>{Scalar(0), Scalar(1)};
    return std::nullopt;
  }

  std::vector<Scalar> sample_pool() const override {
    switch (kind_) {
      case Kind::Coherence:
      case Kind::Boolean:
      case Kind::Finiteness: return {Scalar(0), Scalar(1)};
      case Kind::Naturals: return {Scalar(0), Scalar(1), Scalar(2), Scalar(3)};
      case Kind::NaturalsInf: return {Scalar(0), Scalar(1), Scalar(2), Scalar::infinity()};
      case Kind::Unit:
        return {Scalar(0), Scalar(1, 4), Scalar(1, 3), Scalar(1, 2), Scalar(2, 3), Scalar(3, 4), Scalar(1)};
      case Kind::Rpos:
        return {Scalar(0), Scalar(1, 3), Scalar(1, 2), Scalar(1), Scalar(3, 2), Scalar(2), Scalar(5)};
    }
    return {};
  }

  bool is_cancellative() const override {
    return kind_ == Kind::Naturals || kind_ == Kind::Unit || kind_ == Kind::Rpos;
  }

 private:
  Kind kind_;
};

/// M∞: carrier ⊎ {∞}; sums undefined in the base become ∞.
class NaiveCompletion final : public Semiring {
 public:
  explicit NaiveCompletion(SemiringPtr base) : base_(std::move(base)) {}

  std::string id() const override { return base_->id() + "_inf"; }
  bool contains(const Scalar& s) const override { return s.is_infinite() || base_->contains(s); }

  std::optional<Scalar> raw_sum(const ScalarFamily& family) const override {
    ScalarFamily finite;
    finite.reserve(family.size());
    for (const auto& entry : family) {
      if (entry.first.is_infinite()) return Scalar::infinity();
      finite.push_back(entry);
    }
    if (auto s = base_->raw_sum(finite)) return s;
    return Scalar::infinity();
  }

  Scalar raw_mul(const Scalar& a, const Scalar& b) const override {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_infinite() || b.is_infinite()) return Scalar::infinity();
    return base_->raw_mul(a, b);
  }

  bool is_complete() const override { return true; }
  bool is_finitely_complete() const override { return true; }

  std::optional<std::vector<Scalar>> finite_carrier() const override {
    auto base = base_->finite_carrier();
    if (!base) return std::nullopt;
    base->push_back(Scalar::infinity());
    return base;
  }

  std::vector<Scalar> sample_pool() const override {
    auto pool = base_->sample_pool();
    pool.push_back(Scalar::infinity());
    return pool;
  }

 private:
  SemiringPtr base_;
};

void require_member(const Semiring& s, const Scalar& x) {
  if (!s.contains(x))
    throw UsageError("scalar " + x.to_string() + " is not in the carrier of " + s.id());
}

}  // namespace

std::optional<Scalar> sum_family(const Semiring& s, const ScalarFamily& family) {
  for (const auto& entry : family) require_member(s, entry.first);
  return s.raw_sum(family);
}

std::optional<Scalar> sum_pair(const Semiring& s, const Scalar& a, const Scalar& b) {
  return sum_family(s, ScalarFamily{{a, 1}, {b, 1}});
}

Scalar mul(const Semiring& s, const Scalar& a, const Scalar& b) {
  require_member(s, a);
  require_member(s, b);
  return s.raw_mul(a, b);
}

bool leq(const Semiring& s, const Scalar& a, const Scalar& b) {
  require_member(s, a);
  require_member(s, b);
  if (auto carrier = s.finite_carrier()) {
    return std::any_of(carrier->begin(), carrier->end(), [&](const Scalar& z) {
      auto r = s.raw_sum({{a, 1}, {z, 1}});
      return r && *r == b;
    });
  }
  if (b.is_infinite()) {
    auto r = s.raw_sum({{a, 1}, {b, 1}});
    return r && *r == b;
  }
  if (a.is_infinite() || a > b) return false;
  const Scalar z(Rational(b.value() - a.value()));
  if (!s.contains(z)) return false;
  auto r = s.raw_sum({{a, 1}, {z, 1}});
  return r && *r == b;
}

namespace semirings {

SemiringPtr coherence() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::Coherence);
  return s;
}
SemiringPtr boolean() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::Boolean);
  return s;
}
SemiringPtr finiteness() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::Finiteness);
  return s;
}
SemiringPtr naturals() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::Naturals);
  return s;
}
SemiringPtr naturals_inf() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::NaturalsInf);
  return s;
}
SemiringPtr unit_interval() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::Unit);
  return s;
}
SemiringPtr nonneg_rationals() {
  static const SemiringPtr s = std::make_shared<Shipped>(Kind::Rpos);
  return s;
}

std::vector<std::string> shipped_ids() { return {"I", "B", "F", "N", "Ninf", "unit", "Rpos"}; }

SemiringPtr by_id(std::string_view id) {
  static const std::map<std::string, SemiringPtr, std::less<>> table = {
      {"I", coherence()},        {"B", boolean()},       {"F", finiteness()},
      {"N", naturals()},         {"Ninf", naturals_inf()}, {"unit", unit_interval()},
      {"Rpos", nonneg_rationals()},
  };
  if (auto it = table.find(id); it != table.end()) return it->second;
  constexpr std::string_view suffix = "_inf";
  if (id.size() > suffix.size() && id.substr(id.size() - suffix.size()) == suffix) {
    if (auto base = by_id(id.substr(0, id.size() - suffix.size()))) return naive_complete(base).semiring;
  }
  return nullptr;
}

}  // namespace semirings

Completion naive_complete(const SemiringPtr& s) {
  if (s->is_complete()) return {s, true};
  // ℕ ⊎ {∞} with undefined sums sent to ∞ is exactly ℕ∞.
  if (s == semirings::naturals()) return {semirings::naturals_inf(), false};
  static std::mutex guard;
  static std::map<const Semiring*, SemiringPtr> cache;
  std::lock_guard lock(guard);
  auto& slot = cache[s.get()];
  if (!slot) slot = std::make_shared<NaiveCompletion>(s);
  return {slot, false};
}

}  // namespace llw
