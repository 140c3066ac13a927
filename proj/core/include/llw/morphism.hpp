#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "llw/formula.hpp"

namespace llw {

struct MorphismExpr;
using MorphismPtr = std::shared_ptr<const MorphismExpr>;

/// Combinator terms. `compose(g, f)` is g after f.
///
///   id(A)  proj1(A & B)  proj2(A & B)  inj1(A + B)  inj2(A + B)
///   eval(A -o B)  derelict(!d A)  comult(!d A)  counit(!d A)
///   compose(g, f)  tensor(f, g)  pair(f, g)  curry(f)
///   promote(!d A, {a:1})  matrix(A, B, [1 0; 0 1])  name
struct MorphismExpr {
  enum class Kind {
    Id, Compose, Tensor, Pair, Proj1, Proj2, Inj1, Inj2, Curry, Eval, Promote, Derelict, Comult, Counit, Matrix, Named
  };

  Kind kind = Kind::Id;
  std::vector<FormulaPtr> types;
  std::vector<MorphismPtr> args;
  /// Vector literal for Promote, matrix body for Matrix, reference for Named.
  std::string text;
};

MorphismPtr parse_morphism(std::string_view text);
std::string print_morphism(const MorphismExpr& m);
inline std::string print_morphism(const MorphismPtr& m) { return print_morphism(*m); }

}  // namespace llw
