#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace llw {

using Rational = mpq_class;

/// A coefficient: an exact non-negative rational, or the symbol ∞.
///
/// Every shipped carrier (two-element, natural, unit interval, non-negative
/// rational, and their completions) embeds into this representation, so one
/// value type serves all semirings. Rationals are kept canonical.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(Rational value);
  Scalar(long num, long den);

  static Scalar infinity();

  bool is_infinite() const noexcept { return infinite_; }
  bool is_zero() const noexcept { return !infinite_ && sgn(value_) == 0; }
  bool is_one() const noexcept { return !infinite_ && value_ == 1; }
  bool is_integer() const noexcept { return !infinite_ && value_.get_den() == 1; }

  /// Finite value; meaningless for ∞.
  const Rational& value() const noexcept { return value_; }

  /// `p/q`, `n`, or `inf`.
  std::string to_string() const;
  static std::optional<Scalar> parse(std::string_view text);

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Plain extended arithmetic on the embedding (∞ absorbs, 0·∞ = 0).
Scalar add(const Scalar& a, const Scalar& b);
Scalar multiply(const Scalar& a, const Scalar& b);

/// Number of repetitions of a value in a countable family: finite ≥ 1 or ω.
class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr Multiplicity(std::uint64_t count) : count_(count) {}  // NOLINT
  static constexpr Multiplicity omega() {
    Multiplicity m;
    m.omega_ = true;
    m.count_ = 0;
    return m;
  }

  constexpr bool is_omega() const noexcept { return omega_; }
  constexpr std::uint64_t count() const noexcept { return count_; }

  friend constexpr bool operator==(const Multiplicity&, const Multiplicity&) = default;

  std::string to_string() const { return omega_ ? "w" : std::to_string(count_); }

  friend constexpr Multiplicity operator+(Multiplicity a, Multiplicity b) {
    if (a.omega_ || b.omega_) return omega();
    return Multiplicity(a.count_ + b.count_);
  }
  friend constexpr Multiplicity operator*(Multiplicity a, Multiplicity b) {
    if (a.omega_ || b.omega_) return omega();
    return Multiplicity(a.count_ * b.count_);
  }

 private:
  std::uint64_t count_ = 1;
  bool omega_ = false;
};

/// A countable family, presented by its finitely many distinct values.
///
/// Entry order and splitting/merging of equal values are unobservable to
/// every sum; zero entries can be dropped.
using FamilyEntry = std::pair<Scalar, Multiplicity>;
using ScalarFamily = std::vector<FamilyEntry>;

std::string to_string(const ScalarFamily& family);

}  // namespace llw
