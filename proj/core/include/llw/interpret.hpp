#pragma once

#include <map>
#include <string>

#include "llw/exponential.hpp"
#include "llw/morphism.hpp"
#include "llw/workspace.hpp"

namespace llw {

struct TypedMap {
  FormulaPtr src, dst;
  LinMap map;
};

class Interpreter {
 public:
  explicit Interpreter(const Workspace& ws) : ws_(ws) {}

  /// Named formulas are inlined; the units use the workspace semiring, or the
  /// acting semiring of the first bound atom (in the formula, else in the
  /// morphism term being evaluated), or 𝕀.
  Based formula(const FormulaPtr& f);
  /// Untyped combinators are checked against their arguments' types.
  TypedMap morphism(const MorphismPtr& m);
  FormulaPtr expand(const FormulaPtr& f) const;
  const TruncatedBang& bang_of(const FormulaPtr& bang_formula);

 private:
  Based formula(const FormulaPtr& f, const SemiringPtr& r);
  SemiringPtr semiring_for(const FormulaPtr& f) const;
  SemiringPtr atom_semiring(const FormulaPtr& f) const;
  TypedMap eval_term(const MorphismPtr& m);
  void same_type(const FormulaPtr& a, const FormulaPtr& b, const std::string& where) const;

  const Workspace& ws_;
  SemiringPtr context_;
  std::map<std::string, Based> cache_;
  std::map<std::string, TruncatedBang> bangs_;
};

Based interpret_formula(const Workspace& ws, const FormulaPtr& f);
/// Throws IntegrityError when the result fails is_morphism.
TypedMap interpret_morphism(const Workspace& ws, const MorphismPtr& m);

}  // namespace llw
