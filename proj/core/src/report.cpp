#include "llw/report.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <sstream>

#include <json.hpp>

#include "llw/error.hpp"
#include "llw/exponential.hpp"

namespace llw {

bool Report::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

namespace {

using Job = std::function<SuiteResult()>;

SuiteResult timed(const std::string& name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult r;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const Refusal& e) {
    r.refused = true;
    r.detail = std::string("refused: ") + e.what();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void axioms(SuiteResult& r, const std::string& id, const ReportOptions& opt) {
  AxiomBounds b;
  b.max_entries = opt.bound;
  b.seed = opt.seed;
  b.fallback_samples = opt.samples;
  const auto rep = axiom_report(*semirings::by_id(id), b);
  std::uint64_t n = 0;
  for (const auto& c : rep.checks) {
    n += c.instances;
    if (!c.passed && r.passed) {
      r.passed = false;
      r.detail = c.axiom + ": " + c.counterexample;
    }
  }
  if (r.passed) r.detail = std::to_string(n) + (rep.exhaustive ? " instances, exhaustive" : " instances, sampled");
}

std::vector<Job> object_jobs(const Workspace& ws, const ReportOptions& opt) {
  std::vector<Job> jobs;
  for (const auto& name : ws.order) {
    auto it = ws.objects.find(name);
    if (it == ws.objects.end()) continue;
    const WsObject* o = &it->second;
    if (o->kind == WsObject::Kind::Glue) {
      jobs.push_back([o] {
        return timed("glue closure " + o->name, [&](SuiteResult& r) {
          const auto once = glue_tight_closure(o->glue->web, o->glue->U);
          const auto twice = glue_tight_closure(o->glue->web, once.U);
          std::vector<Vec> a = once.U, b = twice.U;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          r.passed = a == b;
          r.detail = std::to_string(a.size()) + " vectors in the closure" + (r.passed ? "" : ", closure not idempotent");
        });
      });
      continue;
    }
    jobs.push_back([o, opt] {
      return timed("basis " + o->name, [&](SuiteResult& r) {
        const auto rep = validate_basis(*o->based.module, o->based.basis, 64, opt.seed);
        r.passed = rep.valid;
        r.detail = rep.valid ? std::to_string(rep.checked) + " vectors reconstructed" : rep.failures.front();
      });
    });
    if (o->kind != WsObject::Kind::Coherence && o->kind != WsObject::Kind::Pcoh) continue;
    jobs.push_back([o] {
      return timed("double dual " + o->name, [&](SuiteResult& r) {
        const auto de = dual_and_eta(o->based);
        r.passed = de.eta_iso;
        r.detail = de.eta_iso ? "eta is an isomorphism" : de.reason;
      });
    });
    if (o->pcoh)
      jobs.push_back([o] {
        return timed("bipolar " + o->name, [&](SuiteResult& r) {
          const auto& p = *o->pcoh;
          for (const auto& g : p.body.generators())
            if (!pcoh_bipolar_member(p, g)) {
              r.passed = false;
              r.detail = "generator " + to_string(p.web, from_rational(g)) + " outside the bipolar";
              return;
            }
          const auto d1 = pcoh_dual(p), d3 = pcoh_dual(pcoh_dual(d1));
          r.passed = canonical_points(d1.body.generators()) == canonical_points(d3.body.generators());
          r.detail = r.passed ? "dual is stable under double dual" : "dual and triple dual differ";
        });
      });
    jobs.push_back([o, opt] {
      return timed("comonoid " + o->name + " at degree " + std::to_string(opt.degree), [&](SuiteResult& r) {
        const auto b = bang(o->based, opt.degree);
        const auto rep = check_comonoid(b, default_points(o->based));
        r.passed = rep.all_passed();
        for (const auto& law : rep.laws)
          if (!law.passed) {
            r.detail = law.name + " fails " + law.counterexample;
            return;
          }
        r.detail = std::to_string(b.index.size()) + " multisets, " + std::to_string(rep.promotions_admitted) + "/" +
                   std::to_string(rep.promotions_checked) + " promotions admitted";
      });
    });
  }
  return jobs;
}

}  // namespace

Report run_report(const Workspace* ws, const ReportOptions& opt) {
  std::vector<Job> jobs;
  for (const auto& id : semirings::shipped_ids())
    jobs.push_back([id, opt] { return timed("axioms " + id, [&](SuiteResult& r) { axioms(r, id, opt); }); });
  if (ws) {
    auto more = object_jobs(*ws, opt);
    jobs.insert(jobs.end(), more.begin(), more.end());
  }
  std::vector<std::future<SuiteResult>> running;
  for (auto& j : jobs) running.push_back(std::async(std::launch::async, j));
  Report rep;
  for (auto& f : running) rep.suites.push_back(f.get());
  return rep;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const auto& s : r.suites) {
    out << (s.refused ? "SKIP " : s.passed ? "PASS " : "FAIL ") << s.name;
    if (!s.detail.empty()) out << ": " << s.detail;
    out << "\n";
    passed += s.passed;
  }
  out << passed << "/" << r.suites.size() << " suites passed\n";
  return out.str();
}

std::string to_json(const Report& r) {
  nlohmann::json j;
  j["passed"] = r.all_passed();
  j["suites"] = nlohmann::json::array();
  for (const auto& s : r.suites)
    j["suites"].push_back({{"name", s.name}, {"passed", s.passed}, {"refused", s.refused}, {"detail", s.detail}});
  return j.dump(2) + "\n";
}

}  // namespace llw
