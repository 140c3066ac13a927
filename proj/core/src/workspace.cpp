#include "llw/workspace.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "llw/error.hpp"
#include "llw/interpret.hpp"

namespace llw {

std::string to_string(WsObject::Kind k) {
  switch (k) {
    case WsObject::Kind::Coherence: return "cohspace";
    case WsObject::Kind::Pcoh: return "pcoh";
    case WsObject::Kind::Finiteness: return "finspace";
    case WsObject::Kind::Glue: return "glue";
    default: return "module";
  }
}

const WsObject& Workspace::object(const std::string& name) const {
  auto it = objects.find(name);
  if (it == objects.end()) throw UsageError("no object named '" + name + "' in the workspace");
  return it->second;
}

bool Workspace::defines(const std::string& name) const {
  return objects.count(name) || formulas.count(name) || matrices.count(name);
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  /// Skips blanks and comments; stops at newlines when `lines` is set.
  void skip(bool newlines = true) {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') step();
      } else if (c == '\n' ? newlines : std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    step();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      step();
    if (start == pos_) error("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  void keyword(std::string_view kw) {
    const auto save = *this;
    if (ident() != kw) {
      *this = save;
      error("expected '" + std::string(kw) + "'");
    }
  }

  bool peek_keyword(std::string_view kw) {
    const auto save = *this;
    bool ok = false;
    try {
      ok = ident() == kw;
    } catch (const ParseError&) {
    }
    *this = save;
    return ok;
  }

  /// Text up to (not including) the first unbracketed stop character.
  std::string until(std::string_view stops, bool stop_at_newline = false) {
    skip();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (depth == 0 && (stops.find(c) != std::string_view::npos || (stop_at_newline && c == '\n'))) break;
      if (c == '(' || c == '[' || c == '{') ++depth;
      if (c == ')' || c == ']' || c == '}') --depth;
      if (depth < 0) break;
      step();
    }
    std::string out(s_.substr(start, pos_ - start));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }

  /// `[a, b, c]`
  std::vector<std::string> name_list() {
    expect('[');
    std::vector<std::string> out;
    if (accept(']')) return out;
    do out.push_back(ident());
    while (accept(','));
    expect(']');
    return out;
  }

  /// `(x, y, ...)` as raw text including the parentheses.
  std::string tuple() {
    skip();
    const auto l = line_, c = col_;
    if (!peek('(')) error("expected '('");
    const std::size_t start = pos_;
    int depth = 0;
    do {
      if (pos_ >= s_.size()) throw ParseError("unterminated '('", l, c);
      if (s_[pos_] == '(') ++depth;
      if (s_[pos_] == ')') --depth;
      step();
    } while (depth > 0);
    return std::string(s_.substr(start, pos_ - start));
  }

  void end_of_line() {
    skip(false);
    if (pos_ < s_.size() && s_[pos_] != '\n') error("unexpected text after declaration");
  }

  [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  void step() {
    if (s_[pos_++] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(s_[pos_ - 1]) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

lp::RVec rational_tuple(const Web& web, const std::string& text, const std::string& owner) {
  const Vec v = parse_vec(web, text);
  for (const auto& s : v)
    if (s.is_infinite()) throw UsageError(owner + ": coordinates must be finite rationals");
  return to_rational(v);
}

std::vector<std::pair<std::string, std::string>> pair_names(const std::string& tuple) {
  Scanner sc(tuple);
  sc.expect('(');
  std::string a = sc.ident();
  sc.expect(',');
  std::string b = sc.ident();
  sc.expect(')');
  return {{std::move(a), std::move(b)}};
}

void check_atoms(const Web& web, const std::vector<std::pair<std::string, std::string>>& pairs, const std::string& owner) {
  for (const auto& [a, b] : pairs)
    for (const auto& x : {a, b})
      if (!web.find(x)) throw UsageError(owner + ": unknown atom '" + x + "'");
}

WsObject coherence_object(const std::string& name, Web web, const std::vector<std::pair<std::string, std::string>>& pairs) {
  check_atoms(web, pairs, "cohspace '" + name + "'");
  WsObject o;
  o.kind = WsObject::Kind::Coherence;
  o.name = name;
  o.coh = coherence_space(std::move(web), pairs);
  o.based = F_embed(*o.coh);
  return o;
}

WsObject pcoh_object(const std::string& name, Web web, std::vector<lp::RVec> gens) {
  WsObject o;
  o.kind = WsObject::Kind::Pcoh;
  o.name = name;
  try {
    o.pcoh = pcoh_space(std::move(web), std::move(gens));
  } catch (const UsageError& e) {
    throw UsageError("pcoh '" + name + "': " + e.what());
  }
  o.based = H_embed(*o.pcoh);
  const auto report = validate_basis(*o.based.module, o.based.basis, 16);
  if (!report.valid) throw UsageError("pcoh '" + name + "': basis check failed: " + report.failures.front());
  return o;
}

/// Body of `cohspace` / `pcoh` / `finspace` / `glue` blocks or of the
/// parenthesized module constructors: `key value; key value; ...`.
struct Items {
  std::vector<std::string> atoms;
  bool has_atoms = false;
  std::vector<std::string> coherent, gens, us, vectors;
  std::string semiring;
};

Items read_items(Scanner& sc, char close, const std::string& owner, bool leading_semiring) {
  Items it;
  if (leading_semiring) {
    it.semiring = sc.ident();
    sc.expect(',');
  }
  while (!sc.peek(close)) {
    if (sc.peek('{') || sc.peek('(')) {
      it.vectors.push_back(sc.until(std::string(";") + close));
    } else {
      const std::string key = sc.ident();
      if (key == "atoms" || key == "web") {
        it.atoms = sc.name_list();
        it.has_atoms = true;
      } else if (key == "coherent") {
        do it.coherent.push_back(sc.tuple());
        while (sc.accept(','));
      } else if (key == "gen" || key == "u") {
        (key == "gen" ? it.gens : it.us).push_back(sc.tuple());
      } else if (key == "generators") {
        sc.expect('[');
        if (!sc.accept(']')) {
          do it.gens.push_back(sc.tuple());
          while (sc.accept(','));
          sc.expect(']');
        }
      } else {
        sc.error(owner + ": unknown item '" + key + "'");
      }
    }
    if (!sc.accept(';')) break;
  }
  sc.expect(close);
  if (!it.has_atoms) throw UsageError(owner + ": missing atom list");
  return it;
}

}  // namespace

Workspace parse_workspace(std::string_view text) {
  Workspace ws;
  Scanner sc(text);

  while (!sc.at_end()) {
    const std::size_t line = sc.line(), col = sc.col();
    const std::string kw = sc.ident();
    auto declare = [&](const std::string& name) {
      if (ws.defines(name)) throw ParseError("duplicate name '" + name + "'", line, col);
      ws.order.push_back(name);
    };
    try {
      if (kw == "semiring") {
        ws.semiring = semirings::by_id(sc.ident());
      } else if (kw == "cohspace" || kw == "pcoh" || kw == "finspace" || kw == "glue") {
        const std::string name = sc.ident();
        declare(name);
        sc.expect('{');
        const Items it = read_items(sc, '}', kw + " '" + name + "'", false);
        Web web(it.atoms);
        if (kw == "cohspace") {
          std::vector<std::pair<std::string, std::string>> pairs;
          for (const auto& t : it.coherent)
            for (auto& p : pair_names(t)) pairs.push_back(std::move(p));
          ws.objects.emplace(name, coherence_object(name, std::move(web), pairs));
        } else if (kw == "pcoh") {
          std::vector<lp::RVec> gens;
          for (const auto& g : it.gens) gens.push_back(rational_tuple(web, g, "pcoh '" + name + "'"));
          ws.objects.emplace(name, pcoh_object(name, std::move(web), std::move(gens)));
        } else if (kw == "finspace") {
          WsObject o;
          o.kind = WsObject::Kind::Finiteness;
          o.name = name;
          o.based = based(G_embed(FinitenessSpace{std::move(web)}));
          ws.objects.emplace(name, std::move(o));
        } else {
          WsObject o;
          o.kind = WsObject::Kind::Glue;
          o.name = name;
          GlueObject g{web, {}, {}};
          for (const auto& u : it.us) g.U.push_back(parse_vec(web, u));
          o.glue = std::move(g);
          ws.objects.emplace(name, std::move(o));
        }
      } else if (kw == "module") {
        const std::string name = sc.ident();
        declare(name);
        sc.expect('=');
        const std::string ctor = sc.ident();
        sc.expect('(');
        const std::string owner = "module '" + name + "'";
        const bool with_semiring = ctor == "free" || ctor == "enumerated";
        const Items it = read_items(sc, ')', owner, with_semiring);
        Web web(it.atoms);
        WsObject o;
        o.name = name;
        if (ctor == "free") {
          o.based = based(free_module(semirings::by_id(it.semiring), std::move(web)));
        } else if (ctor == "coherence") {
          std::vector<std::pair<std::string, std::string>> pairs;
          for (const auto& t : it.coherent)
            for (auto& p : pair_names(t)) pairs.push_back(std::move(p));
          o = coherence_object(name, std::move(web), pairs);
        } else if (ctor == "pcoh") {
          std::vector<lp::RVec> gens;
          for (const auto& g : it.gens) gens.push_back(rational_tuple(web, g, owner));
          o = pcoh_object(name, std::move(web), std::move(gens));
        } else if (ctor == "finiteness") {
          o.based = based(G_embed(FinitenessSpace{std::move(web)}));
        } else if (ctor == "enumerated") {
          const auto r = semirings::by_id(it.semiring);
          std::vector<Vec> carrier;
          for (const auto& v : it.vectors) carrier.push_back(parse_vec(web, v));
          o.based = based(enumerated_module(r, r, std::move(web), std::move(carrier)));
        } else {
          throw UsageError(owner + ": unknown constructor '" + ctor + "'");
        }
        o.kind = WsObject::Kind::Module;
        ws.objects.emplace(name, std::move(o));
      } else if (kw == "formula") {
        const std::string name = sc.ident();
        declare(name);
        sc.expect('=');
        const std::size_t fl = sc.line(), fc = sc.col();
        const std::string body = sc.until("", true);
        FormulaPtr f;
        try {
          f = parse_formula(body);
        } catch (const ParseError& e) {
          throw ParseError(e.message(), fl + e.line() - 1, e.line() == 1 ? fc + e.column() - 1 : e.column());
        }
        ws.formulas.emplace(name, f);
        Interpreter(ws).formula(f);
      } else if (kw == "matrix") {
        const std::string name = sc.ident();
        declare(name);
        sc.expect(':');
        const std::size_t fl = sc.line(), fc = sc.col();
        const std::string type = sc.until("=");
        sc.expect('=');
        const std::string body = sc.until("", true);
        FormulaPtr f;
        try {
          f = parse_formula(type);
        } catch (const ParseError& e) {
          throw ParseError(e.message(), fl, fc + e.column() - 1);
        }
        Interpreter in(ws);
        const FormulaPtr t = in.expand(f);
        if (t->kind != Formula::Kind::Lolli) throw UsageError("matrix '" + name + "': type must be A -o B");
        const Based a = in.formula(t->left), b = in.formula(t->right);
        NamedMatrix nm{t->left, t->right, parse_matrix(body, a.module->size(), b.module->size())};
        const auto check = is_morphism(make_map(a.module, b.module, nm.matrix));
        if (!check.ok) throw UsageError("matrix '" + name + "' is not a morphism: " + check.counterexample);
        ws.matrices.emplace(name, std::move(nm));
      } else {
        throw ParseError("unknown declaration '" + kw + "'", line, col);
      }
      sc.end_of_line();
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line, col);
    }
  }
  return ws;
}

Workspace load_workspace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open workspace '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

}  // namespace llw
