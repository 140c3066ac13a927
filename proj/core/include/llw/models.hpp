#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "llw/linmaps.hpp"

namespace llw {

// Coherence spaces ------------------------------------------------------------

/// Web with a reflexive symmetric coherence relation.
struct CoherenceSpace {
  Web web;
  std::vector<std::vector<char>> coh;

  bool coherent(std::size_t a, std::size_t b) const { return coh[a][b] != 0; }
  /// a ≍ b: equal or not coherent.
  bool incoherent(std::size_t a, std::size_t b) const { return a == b || !coh[a][b]; }
};

CoherenceSpace coherence_space(Web web, std::vector<std::vector<char>> coh);
CoherenceSpace coherence_space(Web web, const std::vector<std::pair<std::string, std::string>>& coherent_pairs);
/// Reads the relation back from a coherence-presented module.
CoherenceSpace coherence_of(const BasedModule& m);

CoherenceSpace coh_lolli(const CoherenceSpace& a, const CoherenceSpace& b);
CoherenceSpace coh_tensor(const CoherenceSpace& a, const CoherenceSpace& b);

/// Config(A), each clique as sorted atom indices.
std::vector<std::vector<std::size_t>> cliques(const CoherenceSpace& a);

using Relation = std::set<std::pair<std::size_t, std::size_t>>;

Based F_embed(const CoherenceSpace& a);
/// Throws UsageError naming a violating pair when f is not in Config(A -o B).
LinMap F_map(const CoherenceSpace& a, const CoherenceSpace& b, const Relation& f);
/// (a,b) ∈ f iff b ∈ g({a}).
Relation F_invert(const LinMap& g);

// Finiteness spaces -----------------------------------------------------------

struct FinitenessSpace {
  Web web;
};

ModulePtr G_embed(const FinitenessSpace& a);
/// Supports u with #(x ∩ u) finite for all x in X; the powerset on finite webs.
std::vector<std::vector<std::size_t>> fin_dual(const std::vector<std::vector<std::size_t>>& family, const Web& web);

// Probabilistic coherence spaces -----------------------------------------------

struct ProbCohSpace {
  Web web;
  Polytope body;
};

/// Rejects dead atoms (every generator is 0 there).
ProbCohSpace pcoh_space(Web web, std::vector<lp::RVec> generators);
bool pcoh_bipolar_member(const ProbCohSpace& p, const lp::RVec& u);
/// Generators of P^⊥ by exact vertex enumeration.
ProbCohSpace pcoh_dual(const ProbCohSpace& p);

struct PcohBasis {
  std::vector<Rational> gamma;
  DualBasis basis;
};
PcohBasis pcoh_gamma_and_basis(const ProbCohSpace& p);

Based H_embed(const ProbCohSpace& p);

/// unit, half, simplex2, square, hexagon, scaled, simplex3.
std::vector<std::pair<std::string, ProbCohSpace>> pcoh_examples();
/// Throws UsageError naming a generator whose image leaves P(B).
LinMap H_map(const ProbCohSpace& a, const ProbCohSpace& b, const Matrix& m);

// Double gluing over ℕ∞ ---------------------------------------------------------

/// (R, U, X) with U, X sets of vectors over the web R.
struct GlueObject {
  Web web;
  std::vector<Vec> U, X;
};

/// Vectors with coordinates in {0, 1, ..., k, ∞}.
std::vector<Vec> glue_universe(std::size_t n, unsigned k);
/// {x in universe | ⟨u, x⟩ ≤ 1 for all u in U}.
std::vector<Vec> glue_orthogonal(const std::vector<Vec>& u, const std::vector<Vec>& universe);
/// Returns (R, U°°, U°); refuses a non-complete semiring.
GlueObject glue_tight_closure(const Web& web, const std::vector<Vec>& u, unsigned k = 2, const SemiringPtr& s = nullptr);
bool glue_is_morphism(const Matrix& f, const GlueObject& a, const GlueObject& b);
Scalar glue_pairing(const Vec& u, const Vec& x);

/// Plain matrix product over a complete semiring.
Matrix wrel_compose(const Semiring& s, const Matrix& f, const Matrix& g);

}  // namespace llw
