#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llw/linmaps.hpp"

namespace llw {

/// A finite multiset of atoms, as counts in web order.
struct MultisetIndex {
  std::vector<std::size_t> counts;

  std::size_t degree() const;
  /// Atoms in non-decreasing order, each repeated by its count.
  std::vector<std::size_t> sequence() const;
  std::string label(const Web& web) const;

  MultisetIndex operator+(const MultisetIndex& o) const;
  friend bool operator==(const MultisetIndex&, const MultisetIndex&) = default;
  /// By degree, then by sequence.
  friend bool operator<(const MultisetIndex& a, const MultisetIndex& b);
};

std::vector<MultisetIndex> multisets(std::size_t atoms, std::size_t degree);
/// `[a,a,b]`
MultisetIndex parse_multiset(const Web& web, std::string_view text);

struct IdealGamma {
  enum class Kind { FullUnit, Interval, Zero };
  MultisetIndex xi;
  /// Largest r for which r times the orbit sum is defined.
  Scalar sup;
  Kind kind = Kind::Zero;
};

std::string to_string(IdealGamma::Kind k);

/// V^{⊗n}, left-nested so that sequences index it src-major.
Based tensor_power(const Based& v, std::size_t n);

IdealGamma ideal_gamma(const Based& v, const MultisetIndex& xi);

struct SymPower {
  Based based;
  std::vector<MultisetIndex> index;
  /// Rows: multisets; columns: the tensor power's web.
  Matrix embed;
  Based tensor;
};

SymPower sym_power(const Based& v, std::size_t n);

struct TruncatedBang {
  Based base;
  std::size_t degree = 0;
  std::vector<MultisetIndex> index;
  Based bang;
  std::vector<Rational> base_gamma;
  std::vector<IdealGamma> ideals;

  std::optional<std::size_t> find(const MultisetIndex& xi) const;
};

TruncatedBang bang(const Based& v, std::size_t degree);
/// Coordinates ∏ (x_a/γ_a)^{ξ(a)} on every multiset of the web.
Vec promote(const TruncatedBang& b, const Vec& x);
LinMap comult(const TruncatedBang& b);
LinMap counit(const TruncatedBang& b);
LinMap dereliction(const TruncatedBang& b);

struct ComonoidReport {
  struct Law {
    std::string name;
    bool passed = true;
    std::string counterexample;
  };
  std::vector<Law> laws;
  /// Informational: how many sample promotions the exponential admits.
  std::size_t promotions_admitted = 0, promotions_checked = 0;

  bool all_passed() const;
};

/// Sample points of the base for the promotion laws.
std::vector<Vec> default_points(const Based& v);
ComonoidReport check_comonoid(const TruncatedBang& b, const std::vector<Vec>& points,
                              const std::optional<Matrix>& comult_override = std::nullopt);

}  // namespace llw
