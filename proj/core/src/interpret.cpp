#include "llw/interpret.hpp"

#include <functional>

#include "llw/error.hpp"

namespace llw {

namespace {

using FK = Formula::Kind;
using MK = MorphismExpr::Kind;

const FormulaPtr& one() {
  static const FormulaPtr f = Formula::unit(FK::One);
  return f;
}


}  // namespace

FormulaPtr Interpreter::expand(const FormulaPtr& f) const {
  switch (f->kind) {
    case FK::Atom: {
      auto it = ws_.formulas.find(f->name);
      return it == ws_.formulas.end() ? f : expand(it->second);
    }
    case FK::Tensor:
    case FK::Lolli:
    case FK::With:
    case FK::Plus: return Formula::binary(f->kind, expand(f->left), expand(f->right));
    case FK::Dual: return Formula::dual(expand(f->left));
    case FK::Bang: return Formula::bang(expand(f->left), f->degree);
    default: return f;
  }
}

SemiringPtr Interpreter::atom_semiring(const FormulaPtr& f) const {
  SemiringPtr found;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
    if (found || !g) return;
    if (g->kind == FK::Atom) {
      auto it = ws_.objects.find(g->name);
      if (it != ws_.objects.end() && it->second.based.module) found = it->second.based.module->acting();
      return;
    }
    walk(g->left);
    walk(g->right);
  };
  walk(expand(f));
  return found;
}

SemiringPtr Interpreter::semiring_for(const FormulaPtr& f) const {
  if (ws_.semiring) return ws_.semiring;
  if (auto r = atom_semiring(f)) return r;
  return context_ ? context_ : semirings::coherence();
}

Based Interpreter::formula(const FormulaPtr& f) { return formula(expand(f), semiring_for(f)); }

Based Interpreter::formula(const FormulaPtr& f, const SemiringPtr& r) {
  const std::string key = print_formula(f) + "@" + r->id();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Based out;
  switch (f->kind) {
    case FK::Atom: {
      auto it = ws_.objects.find(f->name);
      if (it == ws_.objects.end()) throw UsageError("unbound atom '" + f->name + "'");
      if (!it->second.based.module) throw UsageError("'" + f->name + "' is a glue object and has no module");
      out = it->second.based;
      break;
    }
    case FK::One: out = unit_object(r); break;
    case FK::Zero:
    case FK::Top: out = based(zero_module(r)); break;
    case FK::Bottom: out = lolli_obj(unit_object(r), unit_object(r)); break;
    case FK::Tensor: out = tensor_obj(formula(f->left, r), formula(f->right, r)); break;
    case FK::Lolli: out = lolli_obj(formula(f->left, r), formula(f->right, r)); break;
    case FK::With: out = with_obj(formula(f->left, r), formula(f->right, r)); break;
    case FK::Plus: out = plus_obj(formula(f->left, r), formula(f->right, r)); break;
    case FK::Dual: {
      const Based inner = formula(f->left, r);
      out = lolli_obj(inner, unit_object(inner.module->acting()));
      break;
    }
    case FK::Bang: {
      const std::string bkey = print_formula(f) + "@" + r->id();
      auto it = bangs_.find(bkey);
      if (it == bangs_.end()) it = bangs_.emplace(bkey, bang(formula(f->left, r), f->degree)).first;
      out = it->second.bang;
      break;
    }
  }
  cache_.emplace(key, out);
  return out;
}

const TruncatedBang& Interpreter::bang_of(const FormulaPtr& f0) {
  const FormulaPtr f = expand(f0);
  if (f->kind != FK::Bang) throw UsageError("expected a formula of the form !d A, got " + print_formula(f));
  const SemiringPtr r = semiring_for(f);
  formula(f, r);
  return bangs_.at(print_formula(f) + "@" + r->id());
}

void Interpreter::same_type(const FormulaPtr& a, const FormulaPtr& b, const std::string& where) const {
  if (!equal(expand(a), expand(b)))
    throw UsageError(where + ": type mismatch between " + print_formula(a) + " and " + print_formula(b));
}

TypedMap Interpreter::eval_term(const MorphismPtr& m) {
  auto map_of = [&](const FormulaPtr& src, const FormulaPtr& dst, Matrix mat) {
    return TypedMap{src, dst, make_map(formula(src).module, formula(dst).module, std::move(mat))};
  };
  auto size_of = [&](const FormulaPtr& f) { return formula(f).module->size(); };

  switch (m->kind) {
    case MK::Id: {
      const auto& a = m->types[0];
      return {a, a, identity_map(formula(a).module)};
    }
    case MK::Compose: {
      const TypedMap g = eval_term(m->args[0]);
      const TypedMap f = eval_term(m->args[1]);
      same_type(f.dst, g.src, "compose");
      return {f.src, g.dst, compose(f.map, g.map)};
    }
    case MK::Tensor: {
      const TypedMap f = eval_term(m->args[0]);
      const TypedMap g = eval_term(m->args[1]);
      auto src = Formula::binary(FK::Tensor, f.src, g.src);
      auto dst = Formula::binary(FK::Tensor, f.dst, g.dst);
      return {src, dst, tensor_map(f.map, g.map, formula(src).module, formula(dst).module)};
    }
    case MK::Pair: {
      const TypedMap f = eval_term(m->args[0]);
      const TypedMap g = eval_term(m->args[1]);
      same_type(f.src, g.src, "pair");
      const std::size_t rows = f.map.matrix.rows, nf = f.map.matrix.cols, ng = g.map.matrix.cols;
      Matrix mat(rows, nf + ng);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < nf; ++j) mat.at(i, j) = f.map.matrix.at(i, j);
        for (std::size_t j = 0; j < ng; ++j) mat.at(i, nf + j) = g.map.matrix.at(i, j);
      }
      return map_of(f.src, Formula::binary(FK::With, f.dst, g.dst), std::move(mat));
    }
    case MK::Proj1:
    case MK::Proj2:
    case MK::Inj1:
    case MK::Inj2: {
      const bool proj = m->kind == MK::Proj1 || m->kind == MK::Proj2;
      const bool first = m->kind == MK::Proj1 || m->kind == MK::Inj1;
      const FormulaPtr t = expand(m->types[0]);
      if (t->kind != (proj ? FK::With : FK::Plus))
        throw UsageError(std::string(proj ? "projection expects A & B" : "injection expects A + B") + ", got " +
                         print_formula(m->types[0]));
      const std::size_t na = size_of(t->left), nb = size_of(t->right);
      const FormulaPtr part = first ? t->left : t->right;
      const std::size_t offset = first ? 0 : na, n = first ? na : nb;
      Matrix mat = proj ? Matrix(na + nb, n) : Matrix(n, na + nb);
      for (std::size_t k = 0; k < n; ++k) (proj ? mat.at(offset + k, k) : mat.at(k, offset + k)) = 1;
      return proj ? map_of(m->types[0], part, std::move(mat)) : map_of(part, m->types[0], std::move(mat));
    }
    case MK::Curry: {
      const TypedMap f = eval_term(m->args[0]);
      const FormulaPtr src = expand(f.src);
      if (src->kind != FK::Tensor) throw UsageError("curry expects a map out of A * B, got " + print_formula(f.src));
      const std::size_t na = size_of(src->left), nb = size_of(src->right), nz = f.map.matrix.cols;
      Matrix mat(na, nb * nz);
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t z = 0; z < nz; ++z) mat.at(a, b * nz + z) = f.map.matrix.at(a * nb + b, z);
      return map_of(src->left, Formula::binary(FK::Lolli, src->right, f.dst), std::move(mat));
    }
    case MK::Eval: {
      const FormulaPtr t = expand(m->types[0]);
      if (t->kind != FK::Lolli) throw UsageError("eval expects A -o B, got " + print_formula(m->types[0]));
      const std::size_t na = size_of(t->left), nb = size_of(t->right);
      Matrix mat(na * nb * na, nb);
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) mat.at((a * nb + b) * na + a, b) = 1;
      return map_of(Formula::binary(FK::Tensor, m->types[0], t->left), t->right, std::move(mat));
    }
    case MK::Promote: {
      const TruncatedBang& b = bang_of(m->types[0]);
      const Vec x = parse_vec(b.base.module->web(), m->text);
      const Vec p = promote(b, x);
      Matrix mat(1, p.size());
      for (std::size_t j = 0; j < p.size(); ++j) mat.at(0, j) = p[j];
      return map_of(one(), m->types[0], std::move(mat));
    }
    case MK::Derelict: {
      const TruncatedBang& b = bang_of(m->types[0]);
      return map_of(m->types[0], expand(m->types[0])->left, dereliction(b).matrix);
    }
    case MK::Comult: {
      const TruncatedBang& b = bang_of(m->types[0]);
      return map_of(m->types[0], Formula::binary(FK::Tensor, m->types[0], m->types[0]), comult(b).matrix);
    }
    case MK::Counit: {
      const TruncatedBang& b = bang_of(m->types[0]);
      return map_of(m->types[0], one(), counit(b).matrix);
    }
    case MK::Matrix: {
      const std::size_t na = size_of(m->types[0]), nb = size_of(m->types[1]);
      TypedMap t = map_of(m->types[0], m->types[1], parse_matrix(m->text, na, nb));
      const auto check = is_morphism(t.map);
      if (!check.ok) throw UsageError(print_morphism(*m) + " is not a morphism: " + check.counterexample);
      return t;
    }
    case MK::Named: {
      auto it = ws_.matrices.find(m->text);
      if (it == ws_.matrices.end()) throw UsageError("unknown matrix '" + m->text + "'");
      return map_of(it->second.src, it->second.dst, it->second.matrix);
    }
  }
  throw IntegrityError("unhandled morphism combinator");
}

TypedMap Interpreter::morphism(const MorphismPtr& m) {
  std::function<void(const MorphismExpr&)> scan = [&](const MorphismExpr& e) {
    for (const auto& t : e.types)
      if (!context_) context_ = atom_semiring(t);
    if (e.kind == MK::Named && !context_)
      if (auto it = ws_.matrices.find(e.text); it != ws_.matrices.end())
        context_ = atom_semiring(Formula::binary(FK::Tensor, it->second.src, it->second.dst));
    for (const auto& a : e.args) scan(*a);
  };
  context_ = nullptr;
  scan(*m);
  TypedMap t = eval_term(m);
  const auto check = is_morphism(t.map);
  if (!check.ok)
    throw IntegrityError(print_morphism(*m) + " produced a matrix that is not a morphism: " + check.counterexample);
  return t;
}

Based interpret_formula(const Workspace& ws, const FormulaPtr& f) { return Interpreter(ws).formula(f); }

TypedMap interpret_morphism(const Workspace& ws, const MorphismPtr& m) { return Interpreter(ws).morphism(m); }

}  // namespace llw
