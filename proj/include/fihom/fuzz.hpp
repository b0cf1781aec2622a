#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fihom/invariants.hpp"
#include "fihom/koszul.hpp"
#include "fihom/presentation_io.hpp"
#include "fihom/rng.hpp"

namespace fihom {

// Seeded presentation fuzzing: up to 3 generators of degree <= 3, up to 4
// relations of degree <= 4, coefficients uniform in {-2,...,2}. The
// truncation is picked per draw so that the free cover stays desk-sized.
struct FuzzConfig {
  std::uint64_t seed = 1;
  int count = 50;
  FieldSpec field = FieldSpec::rationals();
  int a_max = 4;
  bool run_suite = true;
  bool run_cone = true;
  bool run_les = true;
  int n_cap = 7;
  int window_margin = 2;     // degrees past the certification bound
  long dim_cap = 150;        // free cover dimension cap at the window top
  long les_layer_cap = 240;  // dense layer cap for the LES machinery
  int max_gen_degree = 3;
  int max_rel_degree = 4;
};

inline Presentation random_presentation(Rng& rng, const FuzzConfig& cfg) {
  Presentation p;
  int n_gen = static_cast<int>(rng.range(1, 3));
  for (int g = 0; g < n_gen; ++g) {
    p.generator_degrees.push_back(
        static_cast<int>(rng.range(0, cfg.max_gen_degree)));
    p.generator_labels.push_back("g" + std::to_string(g));
  }
  int n_rel = static_cast<int>(rng.range(0, 4));
  for (int t = 0; t < n_rel; ++t) {
    PresRelation rel;
    rel.degree = static_cast<int>(rng.range(0, cfg.max_rel_degree));
    int n_terms = static_cast<int>(rng.range(1, 3));
    for (int s = 0; s < n_terms; ++s) {
      // pick a generator that fits inside the relation degree
      std::vector<int> eligible;
      for (int g = 0; g < n_gen; ++g)
        if (p.generator_degrees[static_cast<size_t>(g)] <= rel.degree)
          eligible.push_back(g);
      if (eligible.empty()) break;
      PresTerm term;
      term.gen = eligible[rng.below(eligible.size())];
      int m = p.generator_degrees[static_cast<size_t>(term.gen)];
      std::vector<int> pool;
      for (int x = 1; x <= rel.degree; ++x) pool.push_back(x);
      std::vector<int> img;
      for (int i = 0; i < m; ++i) {
        size_t pick = static_cast<size_t>(rng.below(pool.size()));
        img.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<long>(pick));
      }
      term.inj = Injection(m, rel.degree, img);
      term.coeff = std::to_string(rng.range(-2, 2));
      rel.terms.push_back(std::move(term));
    }
    if (!rel.terms.empty()) p.relations.push_back(std::move(rel));
  }
  return p;
}

// Window choice: aim window_margin degrees past the certification bound,
// shrink while the free cover at the top is predicted too fat.
inline int pick_truncation(const Presentation& p, const FuzzConfig& cfg) {
  PresBounds b{p.max_generator_degree(), p.max_relation_degree()};
  ExtDegree ce = b.ce_bound();
  int deep = std::max(ce.finite() + cfg.window_margin + (ce.finite() < 2 ? 1 : 0),
                      b.k_eff() + 3);
  int target = std::max(std::min(cfg.n_cap, deep), 3);
  auto cover_dim = [&](int n) {
    long d = 0;
    for (int m : p.generator_degrees) d += falling_factorial(n, m);
    return d;
  };
  while (target > 3 && cover_dim(target) > cfg.dim_cap) --target;
  return target;
}

struct FuzzSummary {
  std::uint64_t seed = 0;
  int count = 0;
  std::string field;
  std::map<std::string, std::array<long, 3>> per_theorem;  // pass/fail/uncert
  long cone_pass = 0, cone_fail = 0;
  long les_pass = 0, les_fail = 0, les_skipped = 0;
  long failures = 0;
  std::vector<json> failure_payloads;

  json to_json() const {
    json j;
    j["seed"] = seed;
    j["count"] = count;
    j["field"] = field;
    json per;
    for (const auto& [name, tally] : per_theorem)
      per[name] = {{"pass", tally[0]}, {"fail", tally[1]}, {"uncertified", tally[2]}};
    j["theorems"] = per;
    j["cone"] = {{"pass", cone_pass}, {"fail", cone_fail}};
    j["les"] = {{"pass", les_pass}, {"fail", les_fail}, {"skipped", les_skipped}};
    j["failures"] = failures;
    return j;
  }
};

template <FieldContext F>
FuzzSummary run_fuzz(const FuzzConfig& cfg, const F& field,
                     const RankPolicy& policy) {
  FuzzSummary sum;
  sum.seed = cfg.seed;
  sum.count = cfg.count;
  sum.field = field.name();
  for (int trial = 0; trial < cfg.count; ++trial) {
    Rng rng(cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial));
    Presentation pres = random_presentation(rng, cfg);
    int n = pick_truncation(pres, cfg);
    PresentedModule<F> pm = from_presentation(pres, field, n);
    auto payload_for = [&](const std::string& what, const std::string& line) {
      ModuleFile mf;
      mf.field = cfg.field;
      mf.truncation = n;
      mf.presentation = pres;
      json p;
      p["seed"] = cfg.seed;
      p["trial"] = trial;
      p["check"] = what;
      p["result"] = line;
      p["module"] = serialize_module_file(mf);
      return p;
    };
    if (cfg.run_suite) {
      auto results = theorem_suite(pm, cfg.a_max, policy);
      for (const auto& r : results) {
        auto& tally = sum.per_theorem[r.theorem];
        if (r.verdict == Verdict::Pass) ++tally[0];
        if (r.verdict == Verdict::Fail) {
          ++tally[1];
          ++sum.failures;
          sum.failure_payloads.push_back(payload_for(r.theorem, r.line()));
        }
        if (r.verdict == Verdict::Uncertified) ++tally[2];
      }
    }
    if (cfg.run_cone && pm.V.N >= 1) {
      auto rep = cone_phi_check(pm.V, pm.V.N - 1, cfg.a_max, policy);
      if (rep.all_pass) {
        ++sum.cone_pass;
      } else {
        ++sum.cone_fail;
        ++sum.failures;
        sum.failure_payloads.push_back(payload_for("cone", rep.first_failure()));
      }
    }
    if (cfg.run_les && pm.V.N >= 1) {
      long worst = 0;
      for (int nn = 0; nn <= pm.V.N; ++nn)
        for (int a = 0; a <= cfg.a_max + 1 && a <= nn; ++a)
          worst = std::max(worst, binomial(nn, a) *
                                      pm.V.dim(nn - a));
      if (worst > cfg.les_layer_cap) {
        ++sum.les_skipped;
      } else {
        auto rep = les_exactness_check(pm.V, cfg.a_max, pm.V.N - 1, policy);
        if (rep.all_pass) {
          ++sum.les_pass;
        } else {
          ++sum.les_fail;
          ++sum.failures;
          sum.failure_payloads.push_back(payload_for("les", rep.first_failure()));
        }
      }
    }
  }
  return sum;
}

}  // namespace fihom
