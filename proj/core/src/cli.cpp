#include "llw/cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "llw/error.hpp"
#include "llw/interpret.hpp"
#include "llw/report.hpp"

namespace llw {

namespace {

using nlohmann::json;

struct Flags {
  std::size_t degree = 2;
  std::optional<std::size_t> bound;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool as_json() const { return format == "json"; }
};

std::string matrix_text(const Matrix& m) { return to_string(m) + "\n"; }

int check_axioms(const std::string& id, const Flags& fl, std::ostream& out) {
  AxiomBounds b;
  b.max_entries = fl.bound.value_or(4);
  b.seed = fl.seed;
  const auto rep = axiom_report(*semirings::by_id(id), b);
  if (fl.as_json()) {
    json j{{"semiring", rep.semiring}, {"exhaustive", rep.exhaustive}, {"passed", rep.all_passed()}};
    for (const auto& c : rep.checks)
      j["checks"].push_back({{"axiom", c.axiom}, {"instances", c.instances}, {"passed", c.passed}, {"counterexample", c.counterexample}});
    out << j.dump(2) << "\n";
  } else {
    out << rep.semiring << (rep.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
    for (const auto& c : rep.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.axiom << " [" << c.instances << "]";
      if (!c.passed) out << ": " << c.counterexample;
      out << "\n";
    }
  }
  return rep.all_passed() ? 0 : 1;
}

void describe_module(const Based& b, std::ostream& out) {
  const auto& m = *b.module;
  out << "kind " << m.kind() << "\nsemiring " << m.acting()->id() << "\nweb [";
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? ", " : "") << m.web()[i];
  out << "]\n";
}

int eval(const Workspace& ws, const std::string& expr, bool in_basis, const Flags& fl, std::ostream& out) {
  Interpreter in(ws);
  MorphismPtr m;
  try {
    m = parse_morphism(expr);
    if (m->kind == MorphismExpr::Kind::Named && !ws.matrices.count(m->text)) m = nullptr;
  } catch (const ParseError&) {
    m = nullptr;
  }
  if (!m) {
    if (in_basis) throw UsageError("show-matrix expects a morphism term");
    describe_module(in.formula(parse_formula(expr)), out);
    return 0;
  }
  const TypedMap t = in.morphism(m);
  const Matrix mat = in_basis ? matrix_of(t.map, in.formula(t.src).basis, in.formula(t.dst).basis) : t.map.matrix;
  if (fl.as_json())
    out << json{{"src", print_formula(t.src)}, {"dst", print_formula(t.dst)}, {"matrix", to_string(mat)}}.dump(2) << "\n";
  else
    out << matrix_text(mat);
  return 0;
}

int check_morphism(const Workspace& ws, const std::string& expr, std::ostream& out) {
  Interpreter in(ws);
  const MorphismPtr m = parse_morphism(expr);
  LinMap f;
  if (m->kind == MorphismExpr::Kind::Matrix) {
    const Based a = in.formula(m->types[0]), b = in.formula(m->types[1]);
    f = make_map(a.module, b.module, parse_matrix(m->text, a.module->size(), b.module->size()));
  } else {
    try {
      f = in.morphism(m).map;
    } catch (const IntegrityError& e) {
      out << "morphism: no: " << e.what() << "\n";
      return 1;
    }
  }
  const auto check = is_morphism(f);
  out << "morphism: " << (check.ok ? "yes" : "no") << " (" << check.method << ")";
  if (!check.ok) out << ": " << check.counterexample;
  out << "\n";
  return check.ok ? 0 : 1;
}

int dual(const Workspace& ws, const std::string& name, std::ostream& out) {
  const WsObject& o = ws.object(name);
  if (o.coh) {
    const auto& c = *o.coh;
    out << "cohspace " << name << "^ { atoms [";
    for (std::size_t i = 0; i < c.web.size(); ++i) out << (i ? ", " : "") << c.web[i];
    out << "];";
    for (std::size_t i = 0; i < c.web.size(); ++i)
      for (std::size_t j = i + 1; j < c.web.size(); ++j)
        if (!c.coherent(i, j)) out << " coherent (" << c.web[i] << "," << c.web[j] << ");";
    out << " }\n";
    return 0;
  }
  if (o.pcoh) {
    const auto d = pcoh_dual(*o.pcoh);
    out << "pcoh " << name << "^ { atoms [";
    for (std::size_t i = 0; i < d.web.size(); ++i) out << (i ? ", " : "") << d.web[i];
    out << "];";
    for (const auto& g : canonical_points(d.body.generators())) {
      out << " gen (";
      for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << Scalar(g[i]).to_string();
      out << ");";
    }
    out << " }\n";
    return 0;
  }
  if (!o.based.module) throw UsageError("'" + name + "' has no dual");
  const auto de = dual_and_eta(o.based);
  describe_module(de.dual, out);
  out << "eta " << (de.eta_iso ? "isomorphism" : "not an isomorphism: " + de.reason) << "\n";
  return 0;
}

int bipolar(const Workspace& ws, const std::string& name, const std::string& vec, const Flags& fl, std::ostream& out) {
  const WsObject& o = ws.object(name);
  if (!o.pcoh) throw UsageError("'" + name + "' is not a probabilistic coherence space");
  const Vec v = parse_vec(o.pcoh->web, vec);
  for (const auto& s : v)
    if (s.is_infinite()) throw UsageError("bipolar membership needs finite coordinates");
  const bool member = pcoh_bipolar_member(*o.pcoh, to_rational(v));
  if (fl.as_json())
    out << json{{"member", member}}.dump() << "\n";
  else
    out << (member ? "true" : "false") << "\n";
  return 0;
}

const Based& based_object(const Workspace& ws, const std::string& name) {
  const WsObject& o = ws.object(name);
  if (!o.based.module) throw UsageError("'" + name + "' has no module");
  return o.based;
}

int show_bang(const Workspace& ws, const std::string& name, const Flags& fl, std::ostream& out) {
  const Based& v = based_object(ws, name);
  const auto b = bang(v, fl.degree);
  const Web& web = b.bang.module->web();
  for (std::size_t i = 0; i < b.index.size(); ++i)
    out << web[i] << " " << b.ideals[i].sup.to_string() << " " << to_string(b.ideals[i].kind) << "\n";
  return 0;
}

int show_promote(const Workspace& ws, const std::string& name, const std::string& vec, const Flags& fl, std::ostream& out) {
  const Based& v = based_object(ws, name);
  const auto b = bang(v, fl.degree);
  const Vec p = promote(b, parse_vec(v.module->web(), vec));
  out << to_string(b.bang.module->web(), p) << "\n";
  return 0;
}

int show_comonoid(const Workspace& ws, const std::string& name, const Flags& fl, std::ostream& out) {
  const Based& v = based_object(ws, name);
  const auto b = bang(v, fl.degree);
  const auto rep = check_comonoid(b, default_points(v));
  if (fl.as_json()) {
    json j{{"passed", rep.all_passed()}, {"promotions_admitted", rep.promotions_admitted},
           {"promotions_checked", rep.promotions_checked}};
    for (const auto& l : rep.laws) j["laws"].push_back({{"law", l.name}, {"passed", l.passed}, {"counterexample", l.counterexample}});
    out << j.dump(2) << "\n";
  } else {
    for (const auto& l : rep.laws) {
      out << (l.passed ? "PASS " : "FAIL ") << l.name;
      if (!l.passed) out << ": " << l.counterexample;
      out << "\n";
    }
    out << "promotions admitted " << rep.promotions_admitted << "/" << rep.promotions_checked << "\n";
  }
  return rep.all_passed() ? 0 : 1;
}

int glue_close(const Workspace& ws, const std::string& name, const Flags& fl, std::ostream& out) {
  const WsObject& o = ws.object(name);
  if (!o.glue) throw UsageError("'" + name + "' is not a glue object");
  const auto g = glue_tight_closure(o.glue->web, o.glue->U, static_cast<unsigned>(fl.bound.value_or(1)));
  auto list = [&](const char* title, std::vector<Vec> vs) {
    std::sort(vs.begin(), vs.end());
    out << title << " " << vs.size() << "\n";
    for (const auto& v : vs) {
      out << "  (";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].to_string();
      out << ")\n";
    }
  };
  list("closure", g.U);
  list("orthogonal", g.X);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear-algebraic models of linear logic at finite scale", "llw"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags fl;
  app.add_option("--degree", fl.degree, "Truncation degree of the exponential");
  app.add_option("--bound", fl.bound, "Family size for axiom checks, coordinate bound for gluing");
  app.add_option("--seed", fl.seed, "Seed for sampled suites");
  app.add_option("--format", fl.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string a1, a2, a3;
  std::optional<std::string> opt_ws;
  std::function<int()> action;
  auto sub = [&](const char* name, const char* help, std::vector<std::pair<const char*, std::string*>> pos,
                 std::function<int()> act) {
    auto* s = app.add_subcommand(name, help);
    for (auto& [pname, target] : pos) s->add_option(pname, *target)->required();
    s->callback([&action, act] { action = act; });
    return s;
  };
  auto with_ws = [&](auto fn) {
    return [&, fn] { return fn(load_workspace(a1)); };
  };

  sub("check-axioms", "Check the sum and product axioms of a semiring", {{"semiring", &a1}},
      [&] { return check_axioms(a1, fl, out); });
  sub("eval", "Evaluate a morphism term (web coordinates) or describe a formula", {{"workspace", &a1}, {"expr", &a2}},
      with_ws([&](const Workspace& ws) { return eval(ws, a2, false, fl, out); }));
  sub("show-matrix", "Matrix of a morphism term in the dual bases", {{"workspace", &a1}, {"expr", &a2}},
      with_ws([&](const Workspace& ws) { return eval(ws, a2, true, fl, out); }));
  sub("dual", "Dual of a workspace object", {{"workspace", &a1}, {"object", &a2}},
      with_ws([&](const Workspace& ws) { return dual(ws, a2, out); }));
  sub("bipolar", "Membership in the bipolar of a probabilistic space", {{"workspace", &a1}, {"object", &a2}, {"vector", &a3}},
      with_ws([&](const Workspace& ws) { return bipolar(ws, a2, a3, fl, out); }));
  sub("bang", "Web and ideals of the truncated exponential", {{"workspace", &a1}, {"object", &a2}},
      with_ws([&](const Workspace& ws) { return show_bang(ws, a2, fl, out); }));
  sub("promote", "Promotion of a vector", {{"workspace", &a1}, {"object", &a2}, {"vector", &a3}},
      with_ws([&](const Workspace& ws) { return show_promote(ws, a2, a3, fl, out); }));
  sub("check-comonoid", "Comonoid laws of the truncated exponential", {{"workspace", &a1}, {"object", &a2}},
      with_ws([&](const Workspace& ws) { return show_comonoid(ws, a2, fl, out); }));
  sub("glue-close", "Tight closure of a glue object", {{"workspace", &a1}, {"object", &a2}},
      with_ws([&](const Workspace& ws) { return glue_close(ws, a2, fl, out); }));
  sub("check-morphism", "Verify that a term denotes a morphism", {{"workspace", &a1}, {"expr", &a2}},
      with_ws([&](const Workspace& ws) { return check_morphism(ws, a2, out); }));
  auto* rep = app.add_subcommand("report", "Run the property suites");
  rep->add_option("workspace", opt_ws);
  rep->callback([&] {
    action = [&] {
      ReportOptions ro;
      ro.degree = fl.degree;
      ro.bound = fl.bound.value_or(ro.bound);
      ro.seed = fl.seed;
      std::optional<Workspace> ws;
      if (opt_ws) ws = load_workspace(*opt_ws);
      const Report r = run_report(ws ? &*ws : nullptr, ro);
      out << (fl.as_json() ? to_json(r) : to_text(r));
      return r.all_passed() ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "llw: " << e.what() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    err << "llw: parse error at " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "llw: " << e.what() << "\n";
    return 2;
  } catch (const Refusal& e) {
    err << "llw: refused: " << e.what() << "\n";
    return 2;
  } catch (const IntegrityError& e) {
    err << "llw: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace llw
