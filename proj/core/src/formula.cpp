#include "llw/formula.hpp"

#include <cctype>
#include <set>
#include <vector>

#include "llw/error.hpp"

namespace llw {

FormulaPtr Formula::atom(std::string name) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->name = std::move(name);
  return f;
}

FormulaPtr Formula::unit(Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

FormulaPtr Formula::binary(Kind k, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr Formula::dual(FormulaPtr inner) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Dual;
  f->left = std::move(inner);
  return f;
}

FormulaPtr Formula::bang(FormulaPtr inner, std::size_t degree) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Bang;
  f->left = std::move(inner);
  f->degree = degree;
  return f;
}

bool Formula::is_binary() const {
  return kind == Kind::Tensor || kind == Kind::Lolli || kind == Kind::With || kind == Kind::Plus;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.name != b.name || a.degree != b.degree) return false;
  if (bool(a.left) != bool(b.left) || bool(a.right) != bool(b.right)) return false;
  if (a.left && !equal(*a.left, *b.left)) return false;
  if (a.right && !equal(*a.right, *b.right)) return false;
  return true;
}

namespace {

enum class Tok { Atom, One, Zero, Top, Bottom, Lolli, Tensor, Par, With, Plus, Bang, Quest, Dual, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t degree = 0;
  std::size_t line = 1, col = 1;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::One: return "'1'";
    case Tok::Zero: return "'0'";
    case Tok::Top: return "'T'";
    case Tok::Bottom: return "'_|_'";
    case Tok::Lolli: return "'-o'";
    case Tok::Tensor: return "'*'";
    case Tok::Par: return "'|'";
    case Tok::With: return "'&'";
    case Tok::Plus: return "'+'";
    case Tok::Bang: return "'!d'";
    case Tok::Quest: return "'?d'";
    case Tok::Dual: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    default: return "end of input";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t{Tok::End, {}, 0, line_, col_};
      if (pos_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      static const std::pair<std::string_view, Tok> symbols[] = {
          {"⊸", Tok::Lolli}, {"-o", Tok::Lolli}, {"⊗", Tok::Tensor}, {"*", Tok::Tensor}, {"⅋", Tok::Par},
          {"|", Tok::Par},   {"&", Tok::With},   {"⊕", Tok::Plus},   {"+", Tok::Plus},   {"⊤", Tok::Top},
          {"⊥", Tok::Bottom}, {"_|_", Tok::Bottom}, {"^", Tok::Dual}, {"(", Tok::LParen}, {")", Tok::RParen},
          {"1", Tok::One},   {"0", Tok::Zero}};
      bool matched = false;
      for (const auto& [sym, kind] : symbols) {
        if (s_.substr(pos_, sym.size()) == sym) {
          if ((kind == Tok::One || kind == Tok::Zero) && pos_ + 1 < s_.size() &&
              std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
            break;
          t.kind = kind;
          t.text = sym;
          advance(sym.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        const char c = s_[pos_];
        if (c == '!' || c == '?') {
          t.kind = c == '!' ? Tok::Bang : Tok::Quest;
          advance(1);
          const std::size_t start = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance(1);
          if (start == pos_) throw ParseError(std::string("expected a degree after '") + c + "'", line_, col_);
          t.text = std::string(s_.substr(start, pos_ - start));
          t.degree = std::stoul(t.text);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          const std::size_t start = pos_;
          while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
            advance(1);
          t.text = std::string(s_.substr(start, pos_ - start));
          t.kind = t.text == "T" ? Tok::Top : Tok::Atom;
        } else {
          throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance(1);
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned char c = s_[pos_++];
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  FormulaPtr parse() {
    auto f = lolli();
    if (peek().kind != Tok::End) fail({Tok::Lolli, Tok::With, Tok::Plus, Tok::Tensor, Tok::Par, Tok::Dual, Tok::End});
    return f;
  }

 private:
  const Token& peek() const { return t_[i_]; }
  const Token& next() { return t_[i_++]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::string msg = "unexpected " + (peek().kind == Tok::End ? std::string("end of input") : "'" + peek().text + "'") +
                      "; expected one of:";
    bool first = true;
    for (auto e : expected) {
      msg += first ? " " : ", ";
      msg += describe(e);
      first = false;
    }
    throw ParseError(msg, peek().line, peek().col);
  }

  FormulaPtr lolli() {
    auto l = additive();
    if (peek().kind == Tok::Lolli) {
      next();
      return Formula::binary(Formula::Kind::Lolli, l, lolli());
    }
    return l;
  }

  FormulaPtr additive() {
    auto l = multiplicative();
    while (peek().kind == Tok::With || peek().kind == Tok::Plus) {
      const auto k = next().kind == Tok::With ? Formula::Kind::With : Formula::Kind::Plus;
      l = Formula::binary(k, l, multiplicative());
    }
    return l;
  }

  FormulaPtr multiplicative() {
    auto l = prefix();
    while (peek().kind == Tok::Tensor || peek().kind == Tok::Par) {
      const bool par = next().kind == Tok::Par;
      auto r = prefix();
      l = par ? Formula::dual(Formula::binary(Formula::Kind::Tensor, Formula::dual(l), Formula::dual(r)))
              : Formula::binary(Formula::Kind::Tensor, l, r);
    }
    return l;
  }

  FormulaPtr prefix() {
    if (peek().kind == Tok::Bang) {
      const auto d = next().degree;
      return Formula::bang(prefix(), d);
    }
    if (peek().kind == Tok::Quest) {
      const auto d = next().degree;
      return Formula::dual(Formula::bang(Formula::dual(prefix()), d));
    }
    return postfix();
  }

  FormulaPtr postfix() {
    auto f = primary();
    while (peek().kind == Tok::Dual) {
      next();
      f = Formula::dual(f);
    }
    return f;
  }

  FormulaPtr primary() {
    switch (peek().kind) {
      case Tok::Atom: return Formula::atom(next().text);
      case Tok::One: next(); return Formula::unit(Formula::Kind::One);
      case Tok::Zero: next(); return Formula::unit(Formula::Kind::Zero);
      case Tok::Top: next(); return Formula::unit(Formula::Kind::Top);
      case Tok::Bottom: next(); return Formula::unit(Formula::Kind::Bottom);
      case Tok::LParen: {
        next();
        auto f = lolli();
        if (peek().kind != Tok::RParen) fail({Tok::RParen, Tok::Lolli, Tok::With, Tok::Plus, Tok::Tensor, Tok::Dual});
        next();
        return f;
      }
      default:
        fail({Tok::Atom, Tok::LParen, Tok::One, Tok::Zero, Tok::Top, Tok::Bottom, Tok::Bang, Tok::Quest});
    }
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
};

std::string operand(const Formula& f) {
  const std::string s = print_formula(f);
  return f.is_binary() ? "(" + s + ")" : s;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(Lexer(text).run()).parse(); }

std::string print_formula(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Atom: return f.name;
    case K::One: return "1";
    case K::Zero: return "0";
    case K::Top: return "T";
    case K::Bottom: return "_|_";
    case K::Tensor: return operand(*f.left) + " * " + operand(*f.right);
    case K::Lolli: return operand(*f.left) + " -o " + operand(*f.right);
    case K::With: return operand(*f.left) + " & " + operand(*f.right);
    case K::Plus: return operand(*f.left) + " + " + operand(*f.right);
    case K::Bang: return "!" + std::to_string(f.degree) + " " + operand(*f.left);
    case K::Dual: {
      const auto& in = *f.left;
      const bool bare = !in.is_binary() && in.kind != K::Bang;
      return (bare ? print_formula(in) : "(" + print_formula(in) + ")") + "^";
    }
  }
  return {};
}

}  // namespace llw
