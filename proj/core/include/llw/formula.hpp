#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace llw {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, One, Zero, Top, Bottom, Tensor, Lolli, With, Plus, Dual, Bang };

  Kind kind = Kind::One;
  std::string name;  // Atom
  FormulaPtr left, right;  // right unused for unary nodes
  std::size_t degree = 0;  // Bang

  static FormulaPtr atom(std::string name);
  static FormulaPtr unit(Kind k);
  static FormulaPtr binary(Kind k, FormulaPtr l, FormulaPtr r);
  static FormulaPtr dual(FormulaPtr f);
  static FormulaPtr bang(FormulaPtr f, std::size_t degree);

  bool is_binary() const;
};

bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

/// Loosest to tightest: -o (right), & and + (left), * (left), prefix !d, postfix ^.
/// `A | B` and `?d A` expand to (A^ * B^)^ and (!d A^)^.
FormulaPtr parse_formula(std::string_view text);
/// Binary operands are always parenthesized: `A -o (B * C)`.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

}  // namespace llw
