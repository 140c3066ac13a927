#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llw/scalar.hpp"

namespace llw {

/// A Σ-semiring: a carrier with a partial countable sum and a total product.
///
/// Implementations describe the carrier and the raw operations; the checked
/// entry points below validate carrier membership and are what callers use.
/// Instances are immutable and shared.
class Semiring {
 public:
  virtual ~Semiring() = default;

  /// Identifier used by the workspace format and CLI (`I`, `B`, `F`, ...).
  virtual std::string id() const = 0;
  virtual bool contains(const Scalar& s) const = 0;

  /// Sum of a family whose values all lie in the carrier; nullopt = undefined.
  virtual std::optional<Scalar> raw_sum(const ScalarFamily& family) const = 0;
  virtual Scalar raw_mul(const Scalar& a, const Scalar& b) const { return multiply(a, b); }

  virtual bool is_complete() const = 0;
  virtual bool is_finitely_complete() const = 0;

  /// Whole carrier when it is finite.
  virtual std::optional<std::vector<Scalar>> finite_carrier() const { return std::nullopt; }
  /// Representative values for sampled checks; the full carrier when finite.
  virtual std::vector<Scalar> sample_pool() const = 0;
  /// x + z = y determines z (finite rational carriers).
  virtual bool is_cancellative() const { return false; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
};

using SemiringPtr = std::shared_ptr<const Semiring>;

/// Checked sum: throws UsageError on carrier mismatch. Undefined is nullopt.
std::optional<Scalar> sum_family(const Semiring& s, const ScalarFamily& family);
std::optional<Scalar> sum_pair(const Semiring& s, const Scalar& a, const Scalar& b);
Scalar mul(const Semiring& s, const Scalar& a, const Scalar& b);

/// Associated preorder: a ≤ b iff a + z = b for some z.
bool leq(const Semiring& s, const Scalar& a, const Scalar& b);

namespace semirings {
SemiringPtr coherence();   // 𝕀: {0,1}, 1 + 1 undefined
SemiringPtr boolean();     // 𝔹: {0,1}, join
SemiringPtr finiteness();  // 𝔽: {0,1}, finite sums of 1 are 1
SemiringPtr naturals();    // ℕ
SemiringPtr naturals_inf();  // ℕ∞
SemiringPtr unit_interval();  // [0,1] ∩ ℚ
SemiringPtr nonneg_rationals();  // ℚ≥0, stands in for ℝ≥0

/// `I`, `B`, `F`, `N`, `Ninf`, `unit`, `Rpos`, or a completion `<id>_inf`.
SemiringPtr by_id(std::string_view id);
std::vector<std::string> shipped_ids();
}  // namespace semirings

struct Completion {
  SemiringPtr semiring;
  /// Input was already complete; the result is the input itself.
  bool already_complete = false;
};

/// Adjoin ∞ and send every undefined sum to it; ∞·0 = 0, ∞·x = ∞ otherwise.
Completion naive_complete(const SemiringPtr& s);

// ---------------------------------------------------------------------------
// Bounded axiom checking.

struct AxiomBounds {
  std::size_t max_entries = 4;
  std::uint64_t max_mult = 3;
  bool include_omega = true;
  /// nullopt = exhaustive over the carrier (finite carriers only; otherwise
  /// falls back to `fallback_samples`).
  std::optional<std::size_t> samples;
  std::size_t fallback_samples = 10000;
  std::uint64_t seed = 1;
};

struct AxiomCheck {
  std::string axiom;
  std::uint64_t instances = 0;
  bool passed = true;
  std::string counterexample;
};

struct AxiomReport {
  std::string semiring;
  bool exhaustive = false;
  std::vector<AxiomCheck> checks;

  bool all_passed() const;
};

AxiomReport axiom_report(const Semiring& s, const AxiomBounds& bounds);

}  // namespace llw
