#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "llw/basedmod.hpp"

namespace llw {

struct LinMap {
  ModulePtr src, dst;
  Matrix matrix;
};

LinMap make_map(ModulePtr src, ModulePtr dst, Matrix m);
LinMap identity_map(const ModulePtr& m);

/// Image of an admitted vector; undefined if a coordinate sum is undefined or
/// the image is not admitted.
std::optional<Vec> apply(const LinMap& f, const Vec& x);

struct MorphismCheck {
  bool ok = false;
  std::string method;
  std::string counterexample;
};

/// Coherence clique condition, generator images for probabilistic sources,
/// or bounded enumeration of the source carrier. Throws Refusal when none
/// of these applies.
MorphismCheck is_morphism(const LinMap& f);

/// f then g: (g ∘ f)_{i,k} = Σ_j f_{i,j} g_{j,k}, summed in g's target.
LinMap compose(const LinMap& f, const LinMap& g);
LinMap tensor_map(const LinMap& f, const LinMap& g, ModulePtr src, ModulePtr dst);

/// e_i are vectors of the module, phi_i covectors; both in web coordinates.
struct DualBasis {
  std::vector<Vec> e;
  std::vector<Vec> phi;
  bool orthogonal = true;
};

struct Based {
  ModulePtr module;
  DualBasis basis;
};

/// φ(x) = Σ_a φ[a]·x[a] in the module's coordinates, required to land in
/// the acting semiring.
std::optional<Scalar> pairing(const BasedModule& m, const Vec& phi, const Vec& x);

DualBasis canonical_basis(const BasedModule& m);
Based based(const ModulePtr& m);
/// The semiring as a module over itself, with basis (1, id).
Based unit_object(const SemiringPtr& r);

Based tensor_obj(const Based& a, const Based& b);
Based lolli_obj(const Based& a, const Based& b);
Based with_obj(const Based& a, const Based& b);
Based plus_obj(const Based& a, const Based& b);

ModulePtr tensor_module(const ModulePtr& a, const ModulePtr& b);
ModulePtr lolli_module(const ModulePtr& a, const ModulePtr& b);

struct DualEta {
  Based dual, ddual;
  LinMap eta;
  bool eta_iso = false;
  std::string reason;
};

DualEta dual_and_eta(const Based& v);

/// Entry (i,j) = ψ_j(f(e_i)).
Matrix matrix_of(const LinMap& f, const DualBasis& bsrc, const DualBasis& bdst);
/// Inverse of matrix_of: f = Σ M_{i,j} · (d_j φ_i) in web coordinates.
Matrix matrix_from(const Matrix& m, const DualBasis& bsrc, const DualBasis& bdst);

struct BasisReport {
  bool valid = true;
  bool orthogonal = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

BasisReport validate_basis(const BasedModule& m, const DualBasis& b, std::size_t samples = 64, std::uint64_t seed = 1);

ModulePtr equalizer_submodule(const LinMap& f, const LinMap& g);

/// Swap of the factors of a tensor square, as a permutation matrix.
Matrix swap_matrix(std::size_t n);

}  // namespace llw
