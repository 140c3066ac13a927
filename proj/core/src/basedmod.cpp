#include "llw/basedmod.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "llw/error.hpp"

namespace llw {

// ---------------------------------------------------------------------------
// Webs, vectors, matrices

Web::Web(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  std::set<std::string_view> seen;
  for (const auto& a : atoms_) {
    if (a.empty()) throw UsageError("web atom labels must be non-empty");
    if (!seen.insert(a).second) throw UsageError("duplicate web atom '" + a + "'");
  }
}

std::optional<std::size_t> Web::find(std::string_view label) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == label) return i;
  return std::nullopt;
}

std::size_t Web::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw UsageError("unknown atom '" + std::string(label) + "'");
}

Web product_web(const Web& a, const Web& b) {
  std::vector<std::string> atoms;
  atoms.reserve(a.size() * b.size());
  for (const auto& x : a.atoms())
    for (const auto& y : b.atoms()) atoms.push_back("(" + x + "," + y + ")");
  return Web(std::move(atoms));
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i, Scalar value) {
  Vec v(n);
  v[i] = std::move(value);
  return v;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::string to_string(const Web& web, const Vec& v) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!first) out += ", ";
    first = false;
    out += web[i] + ":" + v[i].to_string();
  }
  return out + "}";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Splits on `sep` outside of brackets.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

Scalar parse_scalar(std::string_view text) {
  if (auto s = Scalar::parse(trim(text))) return *s;
  throw UsageError("bad scalar literal '" + std::string(text) + "'");
}

}  // namespace

Vec parse_vec(const Web& web, std::string_view text) {
  text = trim(text);
  if (text.size() < 2) throw UsageError("bad vector literal '" + std::string(text) + "'");
  const char open = text.front(), close = text.back();
  const std::string_view body = trim(text.substr(1, text.size() - 2));
  Vec v(web.size());
  if (open == '{' && close == '}') {
    if (body.empty()) return v;
    for (auto entry : split_top(body, ',')) {
      const auto colon = entry.rfind(':');
      if (colon == std::string_view::npos) throw UsageError("vector entry '" + std::string(entry) + "' lacks ':'");
      v[web.index_of(trim(entry.substr(0, colon)))] = parse_scalar(entry.substr(colon + 1));
    }
    return v;
  }
  if (open == '(' && close == ')') {
    if (body.empty() && web.empty()) return v;
    auto parts = split_top(body, ',');
    if (parts.size() != web.size())
      throw UsageError("vector literal has " + std::to_string(parts.size()) + " entries for a web of size " +
                       std::to_string(web.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v[i] = parse_scalar(parts[i]);
    return v;
  }
  throw UsageError("bad vector literal '" + std::string(text) + "'");
}

lp::RVec to_rational(const Vec& v) {
  lp::RVec out;
  out.reserve(v.size());
  for (const auto& s : v) {
    if (s.is_infinite()) throw UsageError("infinite coordinate where a rational is required");
    out.push_back(s.value());
  }
  return out;
}

Vec from_rational(const lp::RVec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& r : v) out.emplace_back(r);
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::string to_string(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) out += " ";
      out += m.at(i, j).to_string();
    }
  }
  return out;
}

Matrix parse_matrix(std::string_view text, std::size_t rows, std::size_t cols) {
  text = trim(text);
  if (!text.empty() && text.front() == '[' && text.back() == ']') text = trim(text.substr(1, text.size() - 2));
  Matrix m(rows, cols);
  auto row_texts = split_top(text, ';');
  if (rows == 0 && row_texts.size() == 1 && row_texts[0].empty()) return m;
  if (row_texts.size() != rows)
    throw UsageError("matrix has " + std::to_string(row_texts.size()) + " rows, expected " + std::to_string(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::string_view> entries;
    std::string_view r = row_texts[i];
    std::size_t pos = 0;
    while (pos < r.size()) {
      while (pos < r.size() && (std::isspace(static_cast<unsigned char>(r[pos])) || r[pos] == ',')) ++pos;
      std::size_t end = pos;
      while (end < r.size() && !std::isspace(static_cast<unsigned char>(r[end])) && r[end] != ',') ++end;
      if (end > pos) entries.push_back(r.substr(pos, end - pos));
      pos = end;
    }
    if (entries.size() != cols)
      throw UsageError("matrix row " + std::to_string(i + 1) + " has " + std::to_string(entries.size()) +
                       " entries, expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = parse_scalar(entries[j]);
  }
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows; ++p)
        for (std::size_t q = 0; q < b.cols; ++q) k.at(i * b.rows + p, j * b.cols + q) = multiply(a.at(i, j), b.at(p, q));
    }
  return k;
}

Matrix raw_product(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw UsageError("matrix product: inner dimensions differ");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      const Scalar& x = a.at(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.cols; ++k)
        if (!b.at(j, k).is_zero()) c.at(i, k) = add(c.at(i, k), multiply(x, b.at(j, k)));
    }
  return c;
}

Vec raw_apply(const Matrix& m, const Vec& x) {
  Vec y(m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero()) y[j] = add(y[j], multiply(m.at(i, j), x[i]));
  }
  return y;
}

// ---------------------------------------------------------------------------
// Modules

namespace {

bool same(const SemiringPtr& a, const SemiringPtr& b) { return a->id() == b->id(); }

Vec slice(const Vec& v, const std::vector<std::size_t>& index) {
  Vec out;
  out.reserve(index.size());
  for (auto i : index) out.push_back(v[i]);
  return out;
}

std::optional<Vec> image_in(const BasedModule& target, const Matrix& embed, const Vec& v) {
  Vec out(embed.cols);
  const auto& s = *target.coords();
  for (std::size_t j = 0; j < embed.cols; ++j) {
    ScalarFamily fam;
    for (std::size_t i = 0; i < embed.rows; ++i)
      if (!embed.at(i, j).is_zero() && !v[i].is_zero()) fam.emplace_back(s.raw_mul(embed.at(i, j), v[i]), 1);
    auto r = s.raw_sum(fam);
    if (!r) return std::nullopt;
    out[j] = *r;
  }
  return out;
}

void check_layout(const Web& web, const std::vector<ModulePtr>& parts, const std::vector<std::vector<std::size_t>>& index) {
  if (parts.size() != index.size()) throw UsageError("product layout: one index map per part required");
  std::vector<int> hit(web.size(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (index[i].size() != parts[i]->size()) throw UsageError("product layout: index map size mismatch");
    for (auto k : index[i]) {
      if (k >= web.size()) throw UsageError("product layout: index out of range");
      ++hit[k];
    }
  }
  if (std::any_of(hit.begin(), hit.end(), [](int h) { return h != 1; }))
    throw UsageError("product layout: parts must cover the web exactly once");
}

}  // namespace

BasedModule::BasedModule(SemiringPtr acting, SemiringPtr coords, Web web, Presentation p)
    : acting_(std::move(acting)), coords_(std::move(coords)), web_(std::move(web)), pres_(std::move(p)) {
  const std::size_t n = web_.size();
  std::visit(
      [&](auto& pr) {
        using P = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<P, pres::Coherence>) {
          if (pr.coh.size() != n) throw UsageError("coherence relation size does not match the web");
          for (std::size_t i = 0; i < n; ++i) {
            if (pr.coh[i].size() != n) throw UsageError("coherence relation size does not match the web");
            if (!pr.coh[i][i]) throw UsageError("coherence relation is not reflexive at '" + web_[i] + "'");
            for (std::size_t j = 0; j < n; ++j)
              if (pr.coh[i][j] != pr.coh[j][i]) throw UsageError("coherence relation is not symmetric");
          }
        } else if constexpr (std::is_same_v<P, pres::PolytopeP>) {
          if (pr.body.dim() != n) throw UsageError("polytope dimension does not match the web");
          if (acting_->id() != "unit" || coords_->id() != "Rpos")
            throw UsageError("probabilistic presentation needs [0,1] acting on non-negative rational coordinates");
        } else if constexpr (std::is_same_v<P, pres::Finiteness>) {
          if (acting_->id() != "F" || coords_->id() != "F") throw UsageError("finiteness presentation needs the semiring F");
        } else if constexpr (std::is_same_v<P, pres::Enumerated>) {
          if (pr.carrier.size() > 1000000) throw Refusal("enumerated carrier exceeds 10^6 vectors");
          for (const auto& v : pr.carrier) {
            if (v.size() != n) throw UsageError("enumerated vector has the wrong length");
            for (const auto& s : v)
              if (!coords_->contains(s)) throw UsageError("enumerated vector leaves the coordinate carrier");
          }
          std::sort(pr.carrier.begin(), pr.carrier.end());
          pr.carrier.erase(std::unique(pr.carrier.begin(), pr.carrier.end()), pr.carrier.end());
          if (!std::binary_search(pr.carrier.begin(), pr.carrier.end(), zero_vec(n)))
            throw UsageError("enumerated carrier must contain the zero vector");
        } else if constexpr (std::is_same_v<P, pres::Product> || std::is_same_v<P, pres::Coproduct>) {
          check_layout(web_, pr.parts, pr.index);
          for (const auto& part : pr.parts)
            if (!same(part->acting(), acting_) || !same(part->coords(), coords_))
              throw UsageError("product parts must share the acting and coordinate semirings");
        } else if constexpr (std::is_same_v<P, pres::Pullback>) {
          if (pr.embed.rows != n || pr.embed.cols != pr.target->size())
            throw UsageError("pullback embedding has the wrong shape");
          if (!same(pr.target->coords(), coords_)) throw UsageError("pullback must share coordinates with its target");
        }
      },
      pres_);

  // A module over 𝔹 must satisfy x + x = x.
  if (acting_->id() == "B") {
    for (std::size_t a = 0; a < n; ++a) {
      const Vec e = unit_vec(n, a);
      if (!member(e)) continue;
      auto twice = vec_sum_unchecked(*this, {{e, 2}});
      if (!twice || *twice != e)
        throw UsageError("not a B-module: x + x = x fails for x = " + to_string(web_, e) + " (x + x is " +
                         (twice ? to_string(web_, *twice) : std::string("undefined")) + ")");
    }
  }
  if (std::holds_alternative<pres::Coherence>(pres_) && (acting_->id() != "I" || coords_->id() != "I"))
    throw UsageError("coherence presentation needs the semiring I");

  if (auto* e = std::get_if<pres::Enumerated>(&pres_)) {
    const auto scalars = acting_->sample_pool();
    for (const auto& v : e->carrier)
      for (const auto& r : scalars) {
        Vec w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = coords_->raw_mul(r, v[i]);
        if (!std::binary_search(e->carrier.begin(), e->carrier.end(), w))
          throw UsageError("enumerated carrier is not closed under the action of " + r.to_string());
      }
  }
}

std::string BasedModule::kind() const {
  static const char* names[] = {"free", "coherence", "finiteness", "pcoh", "enumerated", "product", "coproduct", "pullback"};
  return names[pres_.index()];
}

bool BasedModule::member(const Vec& v) const {
  const std::size_t n = web_.size();
  if (v.size() != n) throw UsageError("vector length does not match the web");
  for (const auto& s : v)
    if (!coords_->contains(s)) return false;
  return std::visit(
      [&](const auto& pr) -> bool {
        using P = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<P, pres::Free>) {
          return true;
        } else if constexpr (std::is_same_v<P, pres::Coherence>) {
          for (std::size_t i = 0; i < n; ++i) {
            if (v[i].is_zero()) continue;
            if (!v[i].is_one()) return false;
            for (std::size_t j = i + 1; j < n; ++j)
              if (!v[j].is_zero() && !pr.coh[i][j]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<P, pres::Finiteness>) {
          return true;
        } else if constexpr (std::is_same_v<P, pres::PolytopeP>) {
          return pr.body.contains(to_rational(v));
        } else if constexpr (std::is_same_v<P, pres::Enumerated>) {
          return std::binary_search(pr.carrier.begin(), pr.carrier.end(), v);
        } else if constexpr (std::is_same_v<P, pres::Product>) {
          for (std::size_t i = 0; i < pr.parts.size(); ++i)
            if (!pr.parts[i]->member(slice(v, pr.index[i]))) return false;
          return true;
        } else if constexpr (std::is_same_v<P, pres::Coproduct>) {
          std::size_t nonzero = 0;
          for (std::size_t i = 0; i < pr.parts.size(); ++i) {
            const Vec s = slice(v, pr.index[i]);
            if (!is_zero(s)) ++nonzero;
            if (!pr.parts[i]->member(s)) return false;
          }
          return nonzero <= 1;
        } else {
          auto img = image_in(*pr.target, pr.embed, v);
          return img && pr.target->member(*img);
        }
      },
      pres_);
}

ModulePtr free_module(SemiringPtr r, Web web, SemiringPtr coords) {
  if (!coords) coords = r;
  return std::make_shared<BasedModule>(std::move(r), std::move(coords), std::move(web), pres::Free{});
}

ModulePtr coherence_module(Web web, std::vector<std::vector<char>> coh, SemiringPtr acting) {
  if (!acting) acting = semirings::coherence();
  return std::make_shared<BasedModule>(std::move(acting), semirings::coherence(), std::move(web),
                                       pres::Coherence{std::move(coh)});
}

ModulePtr finiteness_module(Web web) {
  return std::make_shared<BasedModule>(semirings::finiteness(), semirings::finiteness(), std::move(web), pres::Finiteness{});
}

ModulePtr polytope_module(Web web, Polytope body) {
  return std::make_shared<BasedModule>(semirings::unit_interval(), semirings::nonneg_rationals(), std::move(web),
                                       pres::PolytopeP{std::move(body)});
}

ModulePtr enumerated_module(SemiringPtr acting, SemiringPtr coords, Web web, std::vector<Vec> carrier) {
  return std::make_shared<BasedModule>(std::move(acting), std::move(coords), std::move(web),
                                       pres::Enumerated{std::move(carrier)});
}

ModulePtr pullback_module(Web web, ModulePtr target, Matrix embed) {
  auto acting = target->acting();
  auto coords = target->coords();
  return std::make_shared<BasedModule>(std::move(acting), std::move(coords), std::move(web),
                                       pres::Pullback{std::move(target), std::move(embed)});
}

ModulePtr zero_module(SemiringPtr r) { return free_module(std::move(r), Web{}); }

ModulePtr semiring_module(SemiringPtr r) {
  Web web({"*"});
  if (r->id() == "I") return coherence_module(std::move(web), {{1}});
  if (r->id() == "unit") return polytope_module(std::move(web), Polytope::from_generators(1, {{Rational(1)}}));
  return free_module(std::move(r), std::move(web));
}

namespace {

std::pair<Web, std::vector<std::vector<std::size_t>>> stacked_layout(const std::vector<ModulePtr>& parts) {
  std::vector<std::string> atoms;
  std::vector<std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    index.emplace_back();
    for (const auto& a : parts[i]->web().atoms()) {
      index.back().push_back(atoms.size());
      atoms.push_back(std::to_string(i + 1) + "." + a);
    }
  }
  return {Web(std::move(atoms)), std::move(index)};
}

SemiringPtr shared_coords(const SemiringPtr& r, const std::vector<ModulePtr>& parts) {
  for (const auto& p : parts)
    if (!same(p->acting(), r)) throw UsageError("product parts must share the semiring " + r->id());
  if (parts.empty()) return r;
  return parts.front()->coords();
}

}  // namespace

ModulePtr product_module(SemiringPtr r, const std::vector<ModulePtr>& parts) {
  if (parts.empty()) return zero_module(r);
  auto coords = shared_coords(r, parts);
  auto [web, index] = stacked_layout(parts);
  return std::make_shared<BasedModule>(r, coords, std::move(web), pres::Product{parts, std::move(index)});
}

ModulePtr coproduct_module(SemiringPtr r, const std::vector<ModulePtr>& parts) {
  if (parts.empty()) return zero_module(r);
  auto coords = shared_coords(r, parts);
  auto [web, index] = stacked_layout(parts);
  return std::make_shared<BasedModule>(r, coords, std::move(web), pres::Coproduct{parts, std::move(index)});
}

ModulePtr product_module(Web web, std::vector<ModulePtr> parts, std::vector<std::vector<std::size_t>> index) {
  if (parts.empty()) throw UsageError("explicit product layout needs at least one part");
  auto r = parts.front()->acting();
  auto coords = shared_coords(r, parts);
  return std::make_shared<BasedModule>(r, coords, std::move(web), pres::Product{std::move(parts), std::move(index)});
}

ModulePtr coproduct_module(Web web, std::vector<ModulePtr> parts, std::vector<std::vector<std::size_t>> index) {
  if (parts.empty()) throw UsageError("explicit coproduct layout needs at least one part");
  auto r = parts.front()->acting();
  auto coords = shared_coords(r, parts);
  return std::make_shared<BasedModule>(r, coords, std::move(web), pres::Coproduct{std::move(parts), std::move(index)});
}

ModulePtr normalize(const ModulePtr& m) {
  if (!m->as<pres::Free>()) return m;
  const std::size_t n = m->size();
  if (m->acting()->id() == "I" && m->coords()->id() == "I")
    return coherence_module(m->web(), std::vector<std::vector<char>>(n, std::vector<char>(n, 1)));
  if (m->acting()->id() == "unit" && m->coords()->id() == "unit")
    return polytope_module(m->web(), Polytope::from_generators(n, {lp::RVec(n, 1)}));
  return m;
}

bool membership(const BasedModule& m, const Vec& v) { return m.member(v); }

std::optional<Vec> vec_sum_unchecked(const BasedModule& m, const VecFamily& family) {
  const std::size_t n = m.size();
  Vec out(n);
  for (std::size_t a = 0; a < n; ++a) {
    ScalarFamily fam;
    for (const auto& [v, mult] : family)
      if (!v[a].is_zero()) fam.emplace_back(v[a], mult);
    auto s = m.coords()->raw_sum(fam);
    if (!s) return std::nullopt;
    out[a] = *s;
  }
  if (!m.member(out)) return std::nullopt;
  return out;
}

std::optional<Vec> vec_sum(const BasedModule& m, const VecFamily& family) {
  for (const auto& [v, mult] : family)
    if (!m.member(v)) throw UsageError("vec_sum: " + to_string(m.web(), v) + " is not in the module");
  return vec_sum_unchecked(m, family);
}

Vec scalar_action(const BasedModule& m, const Scalar& r, const Vec& v) {
  if (!m.acting()->contains(r)) throw UsageError("scalar " + r.to_string() + " is not in " + m.acting()->id());
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = m.coords()->raw_mul(r, v[i]);
  if (!m.member(out))
    throw IntegrityError("presentation rejects " + r.to_string() + " * " + to_string(m.web(), v));
  return out;
}

// ---------------------------------------------------------------------------
// Carriers

namespace {

/// Cartesian product of per-coordinate choices, each vector filtered by keep.
std::optional<std::vector<Vec>> product_of(const std::vector<std::vector<Scalar>>& choices, std::size_t cap,
                                           const std::function<bool(const Vec&)>& keep) {
  double total = 1;
  for (const auto& c : choices) total *= static_cast<double>(c.size());
  if (total > static_cast<double>(cap) * 64) return std::nullopt;
  std::vector<Vec> out;
  Vec cur(choices.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      if (keep(cur)) {
        if (out.size() >= cap) return false;
        out.push_back(cur);
      }
      return true;
    }
    for (const auto& s : choices[i]) {
      cur[i] = s;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  if (!rec(0)) return std::nullopt;
  return out;
}

void place(Vec& into, const Vec& part, const std::vector<std::size_t>& index) {
  for (std::size_t k = 0; k < index.size(); ++k) into[index[k]] = part[k];
}

}  // namespace

std::optional<std::vector<Vec>> enumerate_carrier(const BasedModule& m, std::size_t cap) {
  const std::size_t n = m.size();
  if (n == 0) return std::vector<Vec>{Vec{}};
  auto all = [](const Vec&) { return true; };
  return std::visit(
      [&](const auto& pr) -> std::optional<std::vector<Vec>> {
        using P = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<P, pres::Free> || std::is_same_v<P, pres::Pullback>) {
          auto carrier = m.coords()->finite_carrier();
          if (!carrier) return std::nullopt;
          std::vector<std::vector<Scalar>> choices(n, *carrier);
          if constexpr (std::is_same_v<P, pres::Free>)
            return product_of(choices, cap, all);
          else
            return product_of(choices, cap, [&](const Vec& v) { return m.member(v); });
        } else if constexpr (std::is_same_v<P, pres::Finiteness>) {
          return product_of(std::vector<std::vector<Scalar>>(n, {Scalar(0), Scalar(1)}), cap, all);
        } else if constexpr (std::is_same_v<P, pres::Coherence>) {
          std::vector<Vec> out;
          Vec cur(n);
          std::vector<std::size_t> chosen;
          std::function<bool(std::size_t)> rec = [&](std::size_t i) {
            if (i == n) {
              if (out.size() >= cap) return false;
              out.push_back(cur);
              return true;
            }
            if (!rec(i + 1)) return false;
            if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t j) { return pr.coh[i][j] != 0; })) {
              cur[i] = 1;
              chosen.push_back(i);
              const bool ok = rec(i + 1);
              chosen.pop_back();
              cur[i] = 0;
              if (!ok) return false;
            }
            return true;
          };
          if (!rec(0)) return std::nullopt;
          std::sort(out.begin(), out.end());
          return out;
        } else if constexpr (std::is_same_v<P, pres::PolytopeP>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<P, pres::Enumerated>) {
          if (pr.carrier.size() > cap) return std::nullopt;
          return pr.carrier;
        } else if constexpr (std::is_same_v<P, pres::Product>) {
          std::vector<Vec> out{zero_vec(n)};
          for (std::size_t i = 0; i < pr.parts.size(); ++i) {
            auto part = enumerate_carrier(*pr.parts[i], cap);
            if (!part || out.size() * part->size() > cap) return std::nullopt;
            std::vector<Vec> next;
            for (const auto& base : out)
              for (const auto& p : *part) {
                Vec v = base;
                place(v, p, pr.index[i]);
                next.push_back(std::move(v));
              }
            out = std::move(next);
          }
          std::sort(out.begin(), out.end());
          return out;
        } else {
          std::vector<Vec> out{zero_vec(n)};
          for (std::size_t i = 0; i < pr.parts.size(); ++i) {
            auto part = enumerate_carrier(*pr.parts[i], cap);
            if (!part) return std::nullopt;
            for (const auto& p : *part) {
              if (is_zero(p)) continue;
              Vec v = zero_vec(n);
              place(v, p, pr.index[i]);
              out.push_back(std::move(v));
            }
            if (out.size() > cap) return std::nullopt;
          }
          std::sort(out.begin(), out.end());
          return out;
        }
      },
      m.presentation());
}

CarrierSample sample_carrier(const BasedModule& m, std::size_t cap, std::uint64_t seed) {
  if (auto all = enumerate_carrier(m, cap)) return {std::move(*all), true};
  const std::size_t n = m.size();
  std::mt19937_64 rng(seed);
  CarrierSample out;
  std::set<Vec> seen;
  auto push = [&](Vec v) {
    if (seen.size() < cap && m.member(v) && seen.insert(v).second) out.vectors.push_back(std::move(v));
  };
  push(zero_vec(n));

  if (const auto* p = m.as<pres::PolytopeP>()) {
    std::vector<lp::RVec> points;
    try {
      points = p->body.generators();
    } catch (const Refusal&) {
      for (std::size_t a = 0; a < n; ++a) {
        lp::RVec e(n, 0);
        e[a] = 1;
        if (auto g = p->body.max_linear(e)) {
          e[a] = *g;
          points.push_back(e);
        }
      }
    }
    for (const auto& g : points) {
      push(from_rational(g));
      lp::RVec half = g;
      for (auto& x : half) x /= 2;
      push(from_rational(half));
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        lp::RVec mid(n);
        for (std::size_t a = 0; a < n; ++a) mid[a] = (points[i][a] + points[j][a]) / 2;
        push(from_rational(mid));
      }
    // Random convex combinations scaled into the body.
    std::uniform_int_distribution<int> weight(0, 4);
    for (std::size_t t = 0; t < cap * 4 && out.vectors.size() < cap && !points.empty(); ++t) {
      std::vector<int> w(points.size());
      int total = 0;
      for (auto& x : w) total += (x = weight(rng));
      if (total == 0) continue;
      const int scale = std::uniform_int_distribution<int>(1, 3)(rng);
      lp::RVec v(n, 0);
      for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t a = 0; a < n; ++a) v[a] += points[i][a] * Rational(w[i], total * scale);
      for (auto& x : v) x.canonicalize();
      push(from_rational(v));
    }
    return out;
  }

  // Coordinates drawn from the sample pool.
  const auto pool = m.coords()->sample_pool();
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(pool.size());
  if (total <= static_cast<double>(cap)) {
    if (auto all = product_of(std::vector<std::vector<Scalar>>(n, pool), cap, [&](const Vec& v) { return m.member(v); })) {
      for (auto& v : *all) push(std::move(v));
      return out;
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t t = 0; t < cap * 8 && out.vectors.size() < cap; ++t) {
    Vec v(n);
    for (auto& x : v) x = pool[pick(rng)];
    push(std::move(v));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "unknown";
  }
}

Verdict preorder_leq_vec(const BasedModule& m, const Vec& x, const Vec& y, std::size_t cap) {
  if (!m.member(x) || !m.member(y)) throw UsageError("preorder: both vectors must be in the module");
  if (m.coords()->is_cancellative()) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > y[i]) return Verdict::False;
      z[i] = Scalar(Rational(y[i].value() - x[i].value()));
    }
    if (!m.member(z)) return Verdict::False;
    auto s = vec_sum_unchecked(m, {{x, 1}, {z, 1}});
    return s && *s == y ? Verdict::True : Verdict::False;
  }
  auto carrier = enumerate_carrier(m, cap);
  if (!carrier) return Verdict::Unknown;
  for (const auto& z : *carrier) {
    auto s = vec_sum_unchecked(m, {{x, 1}, {z, 1}});
    if (s && *s == y) return Verdict::True;
  }
  return Verdict::False;
}

SubmoduleVerdict classify_submodule(const BasedModule& sub, const BasedModule& sup, std::size_t cap) {
  if (sub.size() != sup.size()) throw UsageError("classify_submodule: webs differ");
  if (!same(sub.acting(), sup.acting())) throw UsageError("classify_submodule: acting semirings differ");
  SubmoduleVerdict v;
  const auto s = sample_carrier(sub, cap);
  const auto p = sample_carrier(sup, cap);
  v.partial = !s.complete;
  v.downward_partial = !p.complete;
  auto note = [&](bool& flag, std::string why) {
    if (flag) {
      flag = false;
      if (v.witness.empty()) v.witness = std::move(why);
    }
  };
  const auto& web = sub.web();
  for (const auto& x : s.vectors) {
    if (!sup.member(x)) note(v.is_submodule, to_string(web, x) + " is not in the ambient module");
  }
  auto families = [&](const Vec& x, const Vec* y) -> VecFamily {
    if (y) return {{x, 1}, {*y, 1}};
    return {{x, Multiplicity::omega()}};
  };
  auto check = [&](const VecFamily& fam) {
    auto in_sub = vec_sum_unchecked(sub, fam);
    auto in_sup = vec_sum_unchecked(sup, fam);
    std::string shown = to_string(web, fam[0].first) + (fam.size() > 1 ? " + " + to_string(web, fam[1].first) : " * w");
    if (in_sub && (!in_sup || *in_sup != *in_sub)) note(v.is_submodule, "sum " + shown + " is not preserved");
    if (in_sup && sub.member(*in_sup) && !in_sub)
      note(v.is_sum_reflecting, "sum " + shown + " = " + to_string(web, *in_sup) + " exists only in the ambient module");
  };
  for (std::size_t i = 0; i < s.vectors.size(); ++i) {
    check(families(s.vectors[i], nullptr));
    for (std::size_t j = i; j < s.vectors.size(); ++j) check(families(s.vectors[i], &s.vectors[j]));
  }
  for (const auto& y : s.vectors)
    for (const auto& x : p.vectors) {
      if (sub.member(x)) continue;
      const Verdict le = preorder_leq_vec(sup, x, y);
      if (le == Verdict::True) note(v.is_downward_closed, to_string(web, x) + " <= " + to_string(web, y) + " escapes");
      if (le == Verdict::Unknown) v.downward_partial = true;
    }
  return v;
}

}  // namespace llw
