#include "llw/exponential.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "llw/error.hpp"

namespace llw {

std::size_t MultisetIndex::degree() const {
  std::size_t d = 0;
  for (auto c : counts) d += c;
  return d;
}

std::vector<std::size_t> MultisetIndex::sequence() const {
  std::vector<std::size_t> s;
  for (std::size_t a = 0; a < counts.size(); ++a) s.insert(s.end(), counts[a], a);
  return s;
}

std::string MultisetIndex::label(const Web& web) const {
  std::string out = "[";
  bool first = true;
  for (auto a : sequence()) {
    if (!first) out += ",";
    first = false;
    out += web[a];
  }
  return out + "]";
}

MultisetIndex MultisetIndex::operator+(const MultisetIndex& o) const {
  MultisetIndex r = *this;
  for (std::size_t a = 0; a < r.counts.size(); ++a) r.counts[a] += o.counts[a];
  return r;
}

bool operator<(const MultisetIndex& a, const MultisetIndex& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.sequence() < b.sequence();
}

std::vector<MultisetIndex> multisets(std::size_t atoms, std::size_t degree) {
  std::vector<MultisetIndex> out;
  std::vector<std::size_t> seq;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (seq.size() == degree) {
      MultisetIndex m{std::vector<std::size_t>(atoms, 0)};
      for (auto a : seq) ++m.counts[a];
      out.push_back(std::move(m));
      return;
    }
    for (std::size_t a = from; a < atoms; ++a) {
      seq.push_back(a);
      rec(a);
      seq.pop_back();
    }
  };
  rec(0);
  return out;
}

MultisetIndex parse_multiset(const Web& web, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw UsageError("multiset literal must look like [a,a,b]");
  MultisetIndex m{std::vector<std::size_t>(web.size(), 0)};
  std::string_view body = trim(text.substr(1, text.size() - 2));
  while (!body.empty()) {
    const auto comma = body.find(',');
    ++m.counts[web.index_of(trim(body.substr(0, comma)))];
    if (comma == std::string_view::npos) break;
    body = trim(body.substr(comma + 1));
  }
  return m;
}

std::string to_string(IdealGamma::Kind k) {
  switch (k) {
    case IdealGamma::Kind::FullUnit: return "full-unit";
    case IdealGamma::Kind::Interval: return "interval";
    default: return "zero";
  }
}

namespace {

/// γ_a with e_a = γ_a δ_a and φ_a = δ_a / γ_a.
std::vector<Rational> diagonal_gammas(const Based& v) {
  const std::size_t n = v.module->size();
  if (!v.basis.orthogonal) throw Refusal("the exponential needs an orthogonal basis");
  if (v.basis.e.size() != n) throw Refusal("the exponential needs one basis vector per atom");
  std::vector<Rational> g(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      if (!v.basis.e[a][b].is_zero() || !v.basis.phi[a][b].is_zero())
        throw Refusal("the exponential needs a basis of scaled unit vectors");
    }
    const Scalar& e = v.basis.e[a][a];
    if (e.is_infinite() || e.is_zero()) throw Refusal("basis vector at '" + v.module->web()[a] + "' is not a positive rational");
    g[a] = e.value();
  }
  return g;
}

std::size_t sequence_index(const std::vector<std::size_t>& s, std::size_t n) {
  std::size_t i = 0;
  for (auto a : s) i = i * n + a;
  return i;
}

/// Orbit sum of e_s over the sequences of ξ, in the tensor power's web.
Vec orbit_vector(const MultisetIndex& xi, const std::vector<Rational>& gamma) {
  const std::size_t n = gamma.size();
  std::size_t size = 1;
  for (std::size_t i = 0; i < xi.degree(); ++i) size *= n;
  Vec v(size);
  auto s = xi.sequence();
  Rational weight = 1;
  for (auto a : s) weight *= gamma[a];
  do {
    v[sequence_index(s, n)] = Scalar(weight);
  } while (std::next_permutation(s.begin(), s.end()));
  return v;
}

std::vector<Vec> orbit_terms(const MultisetIndex& xi, const std::vector<Rational>& gamma) {
  const std::size_t n = gamma.size();
  std::size_t size = 1;
  for (std::size_t i = 0; i < xi.degree(); ++i) size *= n;
  std::vector<Vec> out;
  auto s = xi.sequence();
  Rational weight = 1;
  for (auto a : s) weight *= gamma[a];
  do {
    out.push_back(unit_vec(size, sequence_index(s, n), Scalar(weight)));
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

DualBasis scaled_unit_basis(const std::vector<IdealGamma>& ideals) {
  const std::size_t n = ideals.size();
  DualBasis b;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar c = ideals[i].sup.is_infinite() || ideals[i].sup.is_zero() ? Scalar(1) : ideals[i].sup;
    b.e.push_back(unit_vec(n, i, c));
    b.phi.push_back(unit_vec(n, i, Scalar(Rational(1) / c.value())));
  }
  return b;
}

Scalar power_product(const MultisetIndex& xi, const Vec& x, const std::vector<Rational>& gamma) {
  Scalar t = 1;
  for (std::size_t a = 0; a < xi.counts.size(); ++a)
    for (std::size_t k = 0; k < xi.counts[a]; ++k) {
      if (x[a].is_infinite()) throw UsageError("cannot promote an infinite coordinate");
      t = multiply(t, Scalar(Rational(x[a].value() / gamma[a])));
    }
  return t;
}

}  // namespace

Based tensor_power(const Based& v, std::size_t n) {
  if (n == 0) return unit_object(v.module->acting());
  Based t = v;
  for (std::size_t i = 1; i < n; ++i) t = tensor_obj(t, v);
  return t;
}

IdealGamma ideal_gamma(const Based& v, const MultisetIndex& xi) {
  const auto gamma = diagonal_gammas(v);
  if (xi.counts.size() != gamma.size()) throw UsageError("multiset does not match the web");
  IdealGamma out{xi, Scalar(1), IdealGamma::Kind::FullUnit};
  const Based t = tensor_power(v, xi.degree());
  const ModulePtr tm = normalize(t.module);
  const auto& acting = *v.module->acting();
  if (acting.id() == "unit") {
    const auto* p = tm->as<pres::PolytopeP>();
    if (!p) throw Refusal("tensor power of a [0,1]-module is not probabilistic");
    auto r = p->body.max_scale(to_rational(orbit_vector(xi, gamma)));
    out.sup = (!r || *r >= 1) ? Scalar(1) : Scalar(*r);
  } else if (acting.finite_carrier()) {
    VecFamily fam;
    for (auto& term : orbit_terms(xi, gamma)) fam.emplace_back(std::move(term), 1);
    out.sup = vec_sum_unchecked(*tm, fam) ? Scalar(1) : Scalar(0);
  }
  if (out.sup.is_zero())
    out.kind = IdealGamma::Kind::Zero;
  else if (out.sup.is_one())
    out.kind = IdealGamma::Kind::FullUnit;
  else
    out.kind = IdealGamma::Kind::Interval;
  return out;
}

SymPower sym_power(const Based& v, std::size_t n) {
  if (n > 6) throw Refusal("symmetric powers are limited to degree 6");
  const auto gamma = diagonal_gammas(v);
  const std::size_t atoms = gamma.size();
  SymPower out;
  out.tensor = tensor_power(v, n);
  std::vector<IdealGamma> ideals;
  for (auto& xi : multisets(atoms, n)) {
    auto ig = ideal_gamma(v, xi);
    if (ig.kind == IdealGamma::Kind::Zero) continue;
    out.index.push_back(xi);
    ideals.push_back(std::move(ig));
  }
  const ModulePtr target = normalize(out.tensor.module);
  out.embed = Matrix(out.index.size(), target->size());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < out.index.size(); ++i) {
    labels.push_back(out.index[i].label(v.module->web()));
    const Vec o = orbit_vector(out.index[i], gamma);
    for (std::size_t j = 0; j < o.size(); ++j) out.embed.at(i, j) = o[j];
  }
  out.based = {pullback_module(Web(std::move(labels)), target, out.embed), scaled_unit_basis(ideals)};
  return out;
}

std::optional<std::size_t> TruncatedBang::find(const MultisetIndex& xi) const {
  auto it = std::lower_bound(index.begin(), index.end(), xi);
  if (it == index.end() || !(*it == xi)) return std::nullopt;
  return static_cast<std::size_t>(it - index.begin());
}

TruncatedBang bang(const Based& v, std::size_t degree) {
  if (degree > 6) throw Refusal("the exponential is limited to degree 6");
  TruncatedBang b;
  b.base = v;
  b.degree = degree;
  b.base_gamma = diagonal_gammas(v);
  const std::size_t atoms = b.base_gamma.size();
  for (std::size_t n = 0; n <= degree; ++n)
    for (auto& xi : multisets(atoms, n)) {
      auto ig = ideal_gamma(v, xi);
      if (ig.kind == IdealGamma::Kind::Zero) continue;
      b.index.push_back(xi);
      b.ideals.push_back(std::move(ig));
    }
  std::vector<std::string> labels;
  for (const auto& xi : b.index) labels.push_back(xi.label(v.module->web()));
  Web web(std::move(labels));
  const std::size_t n = b.index.size();

  const ModulePtr base = normalize(v.module);
  ModulePtr module;
  if (const auto* c = base->as<pres::Coherence>()) {
    std::vector<std::vector<char>> coh(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto support = (b.index[i] + b.index[j]).counts;
        bool ok = true;
        for (std::size_t x = 0; x < atoms && ok; ++x)
          for (std::size_t y = 0; y < atoms && ok; ++y)
            if (support[x] && support[y] && !c->coh[x][y]) ok = false;
        coh[i][j] = ok;
      }
    module = coherence_module(std::move(web), std::move(coh));
  } else if (const auto* p = base->as<pres::PolytopeP>()) {
    std::vector<lp::RVec> gens;
    for (const auto& g : p->body.generators()) {
      const Vec x = from_rational(g);
      lp::RVec t;
      for (const auto& xi : b.index) t.push_back(power_product(xi, x, b.base_gamma).value());
      gens.push_back(std::move(t));
    }
    module = polytope_module(std::move(web), Polytope::from_generators(n, std::move(gens)));
  } else {
    throw Refusal("the exponential needs a coherence or probabilistic presentation, not " + base->kind());
  }
  b.bang = {module, scaled_unit_basis(b.ideals)};
  return b;
}

Vec promote(const TruncatedBang& b, const Vec& x) {
  if (x.size() != b.base_gamma.size()) throw UsageError("promote: vector length does not match the web");
  if (!b.base.module->member(x)) throw UsageError("promote: " + to_string(b.base.module->web(), x) + " is not in the module");
  Vec t;
  for (const auto& xi : b.index) t.push_back(power_product(xi, x, b.base_gamma));
  return t;
}

LinMap comult(const TruncatedBang& b) {
  const std::size_t n = b.index.size();
  const ModulePtr square = tensor_module(b.bang.module, b.bang.module);
  Matrix m(n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (auto k = b.find(b.index[i] + b.index[j])) m.at(*k, i * n + j) = 1;
  return make_map(b.bang.module, square, std::move(m));
}

LinMap counit(const TruncatedBang& b) {
  const auto unit = unit_object(b.bang.module->acting());
  Matrix m(b.index.size(), 1);
  m.at(0, 0) = 1;
  return make_map(b.bang.module, unit.module, std::move(m));
}

LinMap dereliction(const TruncatedBang& b) {
  if (b.degree == 0) throw UsageError("dereliction needs degree at least 1");
  const std::size_t atoms = b.base_gamma.size();
  Matrix m(b.index.size(), atoms);
  for (std::size_t a = 0; a < atoms; ++a) {
    MultisetIndex xi{std::vector<std::size_t>(atoms, 0)};
    xi.counts[a] = 1;
    if (auto i = b.find(xi)) m.at(*i, a) = Scalar(b.base_gamma[a]);
  }
  return make_map(b.bang.module, b.base.module, std::move(m));
}

bool ComonoidReport::all_passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const Law& l) { return l.passed; });
}

std::vector<Vec> default_points(const Based& v) {
  return sample_carrier(*v.module, 24, 7).vectors;
}

ComonoidReport check_comonoid(const TruncatedBang& b, const std::vector<Vec>& points, const std::optional<Matrix>& comult_override) {
  const std::size_t n = b.index.size();
  const Matrix delta = comult_override ? *comult_override : comult(b).matrix;
  if (delta.rows != n || delta.cols != n * n) throw UsageError("comultiplication matrix has the wrong shape");
  const Web& web = b.base.module->web();
  auto name = [&](std::size_t i) { return b.index[i].label(web); };
  ComonoidReport r;
  r.laws.reserve(8);
  auto law = [&](std::string title) -> ComonoidReport::Law& {
    r.laws.push_back({std::move(title), true, {}});
    return r.laws.back();
  };
  auto flag = [](ComonoidReport::Law& l, std::string why) {
    if (l.passed) {
      l.passed = false;
      l.counterexample = std::move(why);
    }
  };

  {
    auto& l = law("cocommutativity");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (delta.at(x, i * n + j) != delta.at(x, j * n + i))
            flag(l, "at " + name(x) + " -> (" + name(i) + ", " + name(j) + ")");
  }
  const Matrix id = Matrix::identity(n);
  {
    auto& l = law("coassociativity");
    const Matrix left = raw_product(delta, kronecker(delta, id));
    const Matrix right = raw_product(delta, kronecker(id, delta));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t c = 0; c < n * n * n; ++c)
        if (left.at(x, c) != right.at(x, c))
          flag(l, "at " + name(x) + " -> (" + name(c / (n * n)) + ", " + name(c / n % n) + ", " + name(c % n) + "): " +
                      left.at(x, c).to_string() + " vs " + right.at(x, c).to_string());
  }
  Matrix eps(n, 1);
  eps.at(0, 0) = 1;
  {
    auto& l = law("left counit");
    const Matrix m = raw_product(delta, kronecker(eps, id));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (m.at(x, y) != id.at(x, y)) flag(l, "at (" + name(x) + ", " + name(y) + ")");
  }
  {
    auto& l = law("right counit");
    const Matrix m = raw_product(delta, kronecker(id, eps));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (m.at(x, y) != id.at(x, y)) flag(l, "at (" + name(x) + ", " + name(y) + ")");
  }
  auto& derel = law("dereliction after promotion");
  auto& compat = law("comultiplication after promotion");
  const bool has_degree_one = b.degree >= 1;
  const Matrix der = has_degree_one ? dereliction(b).matrix : Matrix();
  for (const auto& x : points) {
    const Vec p = promote(b, x);
    ++r.promotions_checked;
    if (b.bang.module->member(p)) ++r.promotions_admitted;
    if (has_degree_one && raw_apply(der, p) != x) flag(derel, "at " + to_string(web, x));
    const Vec dp = raw_apply(delta, p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (b.index[i].degree() + b.index[j].degree() > b.degree) continue;
        if (dp[i * n + j] != multiply(p[i], p[j]))
          flag(compat, "at " + to_string(web, x) + ", component (" + name(i) + ", " + name(j) + ")");
      }
  }
  return r;
}

}  // namespace llw
