#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "llw/polytope.hpp"
#include "llw/semiring.hpp"

namespace llw {

/// Ordered, duplicate-free atom labels; the order fixes matrix layout.
class Web {
 public:
  Web() = default;
  explicit Web(std::vector<std::string> atoms);

  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  const std::string& operator[](std::size_t i) const { return atoms_[i]; }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const Web&, const Web&) = default;

 private:
  std::vector<std::string> atoms_;
};

/// Src-major pairs `(a,b)`.
Web product_web(const Web& a, const Web& b);

/// Dense coordinates in web order.
using Vec = std::vector<Scalar>;
using VecFamily = std::vector<std::pair<Vec, Multiplicity>>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i, Scalar value = 1);
bool is_zero(const Vec& v);
/// `{a:1, b:1/2}`; zero coordinates are omitted.
std::string to_string(const Web& web, const Vec& v);
/// Accepts `{a:1, b:1/2}` or positional `(1, 1/2)`.
Vec parse_vec(const Web& web, std::string_view text);

lp::RVec to_rational(const Vec& v);
Vec from_rational(const lp::RVec& v);

/// Rows are source atoms, columns destination atoms.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Scalar> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static Matrix identity(std::size_t n);

  Scalar& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Entries separated by spaces, rows by `; `.
std::string to_string(const Matrix& m);
Matrix parse_matrix(std::string_view text, std::size_t rows, std::size_t cols);
Matrix transpose(const Matrix& m);
/// Kronecker product with src-major pair order on both sides.
Matrix kronecker(const Matrix& a, const Matrix& b);
/// Plain extended arithmetic, no definedness checks.
Matrix raw_product(const Matrix& a, const Matrix& b);
Vec raw_apply(const Matrix& m, const Vec& x);

class BasedModule;
using ModulePtr = std::shared_ptr<const BasedModule>;

namespace pres {
struct Free {};
/// 0/1 vectors whose support is a clique; `coh` is reflexive and symmetric.
struct Coherence {
  std::vector<std::vector<char>> coh;
};
struct Finiteness {};
struct PolytopeP {
  Polytope body;
};
struct Enumerated {
  std::vector<Vec> carrier;  // sorted
};
/// `index[i][k]` is the position of part i's atom k in the module's web.
struct Product {
  std::vector<ModulePtr> parts;
  std::vector<std::vector<std::size_t>> index;
};
struct Coproduct {
  std::vector<ModulePtr> parts;
  std::vector<std::vector<std::size_t>> index;
};
/// Admits v iff v's image under `embed` is admitted by `target`.
struct Pullback {
  ModulePtr target;
  Matrix embed;
};
}  // namespace pres

using Presentation =
    std::variant<pres::Free, pres::Coherence, pres::Finiteness, pres::PolytopeP, pres::Enumerated, pres::Product,
                 pres::Coproduct, pres::Pullback>;

/// A finite-web module: an acting semiring, the semiring in which coordinates
/// live and are summed, and a presentation deciding which vectors exist.
class BasedModule {
 public:
  BasedModule(SemiringPtr acting, SemiringPtr coords, Web web, Presentation p);

  const SemiringPtr& acting() const noexcept { return acting_; }
  const SemiringPtr& coords() const noexcept { return coords_; }
  const Web& web() const noexcept { return web_; }
  std::size_t size() const noexcept { return web_.size(); }
  const Presentation& presentation() const noexcept { return pres_; }
  std::string kind() const;

  bool member(const Vec& v) const;

  template <class P>
  const P* as() const {
    return std::get_if<P>(&pres_);
  }

 private:
  SemiringPtr acting_, coords_;
  Web web_;
  Presentation pres_;
};

ModulePtr free_module(SemiringPtr r, Web web, SemiringPtr coords = nullptr);
ModulePtr coherence_module(Web web, std::vector<std::vector<char>> coh, SemiringPtr acting = nullptr);
ModulePtr finiteness_module(Web web);
ModulePtr polytope_module(Web web, Polytope body);
ModulePtr enumerated_module(SemiringPtr acting, SemiringPtr coords, Web web, std::vector<Vec> carrier);
ModulePtr pullback_module(Web web, ModulePtr target, Matrix embed);
/// Free over the empty web.
ModulePtr zero_module(SemiringPtr r);
/// R over itself on the one-atom web `*`, in its canonical presentation.
ModulePtr semiring_module(SemiringPtr r);
ModulePtr product_module(SemiringPtr r, const std::vector<ModulePtr>& parts);
ModulePtr coproduct_module(SemiringPtr r, const std::vector<ModulePtr>& parts);
/// Product/coproduct with an explicit web and placement of the parts.
ModulePtr product_module(Web web, std::vector<ModulePtr> parts, std::vector<std::vector<std::size_t>> index);
ModulePtr coproduct_module(Web web, std::vector<ModulePtr> parts, std::vector<std::vector<std::size_t>> index);

/// Free 𝕀 as the complete coherence space, free [0,1] as the unit box.
ModulePtr normalize(const ModulePtr& m);

bool membership(const BasedModule& m, const Vec& v);
/// Coordinatewise sum, then membership. Non-member input is a UsageError.
std::optional<Vec> vec_sum(const BasedModule& m, const VecFamily& family);
std::optional<Vec> vec_sum_unchecked(const BasedModule& m, const VecFamily& family);
Vec scalar_action(const BasedModule& m, const Scalar& r, const Vec& v);

/// Whole carrier when finite and at most `cap` vectors.
std::optional<std::vector<Vec>> enumerate_carrier(const BasedModule& m, std::size_t cap = 1000000);

struct CarrierSample {
  std::vector<Vec> vectors;
  bool complete = false;
};
/// Whole carrier when enumerable, otherwise a deterministic sample.
CarrierSample sample_carrier(const BasedModule& m, std::size_t cap, std::uint64_t seed = 1);

enum class Verdict { False, True, Unknown };
std::string to_string(Verdict v);

Verdict preorder_leq_vec(const BasedModule& m, const Vec& x, const Vec& y, std::size_t cap = 1000000);

struct SubmoduleVerdict {
  bool is_submodule = true;
  bool is_sum_reflecting = true;
  bool is_downward_closed = true;
  /// The submodule's carrier was sampled, so the first two verdicts are bounded.
  bool partial = false;
  /// The ambient carrier was sampled or an order query was undecided.
  bool downward_partial = false;
  std::string witness;
};
SubmoduleVerdict classify_submodule(const BasedModule& sub, const BasedModule& sup, std::size_t cap = 4096);

}  // namespace llw
