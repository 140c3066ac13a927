#include "llw/morphism.hpp"

#include <cctype>
#include <map>

#include "llw/error.hpp"

namespace llw {

namespace {

using K = MorphismExpr::Kind;

enum class Arg { Formula, Morphism, Vector, Matrix };

struct Signature {
  K kind;
  std::vector<Arg> args;
};

const std::map<std::string, Signature, std::less<>>& signatures() {
  static const std::map<std::string, Signature, std::less<>> table = {
      {"id", {K::Id, {Arg::Formula}}},
      {"proj1", {K::Proj1, {Arg::Formula}}},
      {"proj2", {K::Proj2, {Arg::Formula}}},
      {"inj1", {K::Inj1, {Arg::Formula}}},
      {"inj2", {K::Inj2, {Arg::Formula}}},
      {"eval", {K::Eval, {Arg::Formula}}},
      {"derelict", {K::Derelict, {Arg::Formula}}},
      {"comult", {K::Comult, {Arg::Formula}}},
      {"counit", {K::Counit, {Arg::Formula}}},
      {"compose", {K::Compose, {Arg::Morphism, Arg::Morphism}}},
      {"tensor", {K::Tensor, {Arg::Morphism, Arg::Morphism}}},
      {"pair", {K::Pair, {Arg::Morphism, Arg::Morphism}}},
      {"curry", {K::Curry, {Arg::Morphism}}},
      {"promote", {K::Promote, {Arg::Formula, Arg::Vector}}},
      {"matrix", {K::Matrix, {Arg::Formula, Arg::Formula, Arg::Matrix}}},
  };
  return table;
}

const std::string& name_of(K k) {
  for (const auto& [name, sig] : signatures())
    if (sig.kind == k) return name;
  static const std::string none;
  return none;
}

struct Span {
  std::string_view text;
  std::size_t offset;
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& msg, std::size_t offset) { throw ParseError(msg, 1, offset + 1); }

/// Splits on commas outside brackets of any kind.
std::vector<Span> split_args(Span body) {
  std::vector<Span> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.text.size(); ++i) {
    const char c = body.text[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (depth < 0) fail("unbalanced bracket", body.offset + i);
    if (c == ',' && depth == 0) {
      out.push_back({body.text.substr(start, i - start), body.offset + start});
      start = i + 1;
    }
  }
  if (depth != 0) fail("unbalanced bracket", body.offset + body.text.size());
  out.push_back({body.text.substr(start), body.offset + start});
  return out;
}

MorphismPtr parse(Span s) {
  std::size_t lead = 0;
  s.text = trim(s.text, &lead);
  s.offset += lead;
  if (s.text.empty()) fail("expected a morphism term", s.offset);
  std::size_t i = 0;
  while (i < s.text.size() && (std::isalnum(static_cast<unsigned char>(s.text[i])) || s.text[i] == '_')) ++i;
  if (i == 0) fail("expected a combinator or a matrix name", s.offset);
  const std::string_view head = s.text.substr(0, i);
  const std::string_view rest = trim(s.text.substr(i));
  auto e = std::make_shared<MorphismExpr>();
  if (rest.empty()) {
    if (signatures().count(head)) fail("combinator '" + std::string(head) + "' needs arguments", s.offset + i);
    e->kind = K::Named;
    e->text = std::string(head);
    return e;
  }
  const auto it = signatures().find(head);
  if (it == signatures().end()) fail("unknown combinator '" + std::string(head) + "'", s.offset);
  if (rest.front() != '(' || rest.back() != ')') fail("expected '(' after '" + std::string(head) + "'", s.offset + i);
  const std::size_t open = s.text.find('(', i);
  const Span body{s.text.substr(open + 1, s.text.size() - open - 2), s.offset + open + 1};
  auto parts = split_args(body);
  const auto& sig = it->second;
  if (parts.size() != sig.args.size())
    fail(std::string(head) + " takes " + std::to_string(sig.args.size()) + " argument(s), got " + std::to_string(parts.size()),
         s.offset + open);
  e->kind = sig.kind;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::size_t pl = 0;
    const std::string_view arg = trim(parts[k].text, &pl);
    const std::size_t at = parts[k].offset + pl;
    switch (sig.args[k]) {
      case Arg::Formula:
        try {
          e->types.push_back(parse_formula(arg));
        } catch (const ParseError& err) {
          throw ParseError(err.message(), 1, at + err.column());
        }
        break;
      case Arg::Morphism:
        e->args.push_back(parse({parts[k].text, parts[k].offset}));
        break;
      case Arg::Vector:
        if (arg.empty() || (arg.front() != '{' && arg.front() != '(')) fail("expected a vector literal", at);
        e->text = std::string(arg);
        break;
      case Arg::Matrix:
        if (arg.size() < 2 || arg.front() != '[' || arg.back() != ']') fail("expected a matrix literal [..; ..]", at);
        e->text = std::string(trim(arg.substr(1, arg.size() - 2)));
        break;
    }
  }
  return e;
}

}  // namespace

MorphismPtr parse_morphism(std::string_view text) { return parse({text, 0}); }

std::string print_morphism(const MorphismExpr& m) {
  switch (m.kind) {
    case K::Named: return m.text;
    case K::Promote: return "promote(" + print_formula(m.types[0]) + ", " + m.text + ")";
    case K::Matrix: return "matrix(" + print_formula(m.types[0]) + ", " + print_formula(m.types[1]) + ", [" + m.text + "])";
    default: break;
  }
  std::string out = name_of(m.kind) + "(";
  bool first = true;
  for (const auto& t : m.types) {
    out += (first ? "" : ", ") + print_formula(t);
    first = false;
  }
  for (const auto& a : m.args) {
    out += (first ? "" : ", ") + print_morphism(*a);
    first = false;
  }
  return out + ")";
}

}  // namespace llw
