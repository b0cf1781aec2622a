// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything runs with the paired rank policy, so each rank query is
// answered by both elimination backends and must agree (criterion 10).

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "fihom/fihom.hpp"

using namespace fihom;

namespace {

const Rationals Q;
const PrimeField FP{32003};

struct Line {
  bool pass;
  std::string text;
};

std::vector<Line> g_lines;
bool g_all_pass = true;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(int id, const std::string& name, bool ok, double secs,
            double budget, const std::string& detail) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s criterion %d (%s): %s  [%.2fs < %.0fs]",
                ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(), secs,
                budget);
  g_lines.push_back({ok, buf});
  std::printf("%s\n", buf);
  std::fflush(stdout);
  g_all_pass = g_all_pass && ok;
}

Presentation torsion_k0_pres() {
  Presentation p;
  p.generator_degrees = {0};
  PresRelation rel;
  rel.degree = 1;
  rel.terms.push_back({0, Injection(0, 1, {}), "1"});
  p.relations.push_back(rel);
  return p;
}

// corpus entry: a built module with its presentation bounds
template <FieldContext F>
struct CorpusEntry {
  PresentedModule<F> pm;
  int trial = 0;
};

// Fuzz corpus with the window shrunk until the dense layer machinery fits.
template <FieldContext F>
std::vector<CorpusEntry<F>> build_corpus(const F& field, std::uint64_t seed,
                                         int count, const FuzzConfig& cfg,
                                         bool fit_les_cap) {
  std::vector<CorpusEntry<F>> out;
  for (int trial = 0; trial < count; ++trial) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial));
    Presentation pres = random_presentation(rng, cfg);
    int n = pick_truncation(pres, cfg);
    PresentedModule<F> pm = from_presentation(pres, field, n);
    if (fit_les_cap) {
      auto worst_layer = [&](const PresentedModule<F>& m) {
        long worst = 0;
        for (int nn = 0; nn <= m.V.N; ++nn)
          for (int a = 0; a <= cfg.a_max + 1 && a <= nn; ++a)
            worst = std::max(worst, binomial(nn, a) * m.V.dim(nn - a));
        return worst;
      };
      while (n > 3 && worst_layer(pm) > cfg.les_layer_cap) {
        --n;
        pm = from_presentation(pres, field, n);
      }
    }
    out.push_back({std::move(pm), trial});
  }
  return out;
}

// --- criterion 1: diagonal table for the torsion module -------------------
void criterion_1(const RankPolicy& policy) {
  auto t0 = std::chrono::steady_clock::now();
  auto pm = from_presentation(torsion_k0_pres(), Q, 8);
  HomologyTable t = homology_table(pm.V, 8, 8, policy);
  bool ok = true;
  for (int a = 0; a <= 8; ++a)
    for (int n = 0; n <= 8; ++n)
      if (t.at(a, n) != (a == n ? 1 : 0)) ok = false;
  double secs = seconds_since(t0);
  report(1, "diagonal table", ok && secs < 1.0, secs, 1,
         ok ? "h[a][n] = [a=n] for 0<=a,n<=8" : "table mismatch");
}

// --- criterion 2: projective acyclicity ------------------------------------
void criterion_2(const RankPolicy& policy) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string why = "M(0..3) acyclic, h0 = m! at n = m";
  for (int m = 0; m <= 3 && ok; ++m) {
    auto v = free_module(Q, m, 8);
    HomologyTable t = homology_table(v, 8, 8, policy);
    long mfact = 1;
    for (int i = 2; i <= m; ++i) mfact *= i;
    for (int n = 0; n <= 8; ++n) {
      if (t.at(0, n) != (n == m ? mfact : 0)) ok = false;
      for (int a = 1; a <= 8; ++a)
        if (t.at(a, n) != 0) ok = false;
    }
    if (!ok) why = "failure at M(" + std::to_string(m) + ")";
  }
  double secs = seconds_since(t0);
  report(2, "projective acyclicity", ok && secs < 10.0, secs, 10, why);
}

// --- criteria 3 and 4: cone isomorphism and LES exactness ------------------
void criteria_3_4(const RankPolicy& policy) {
  FuzzConfig cfg;
  cfg.a_max = 4;
  cfg.max_gen_degree = 3;
  cfg.max_rel_degree = 3;  // the (k,d <= 3, N <= 7) corpus
  cfg.n_cap = 7;
  auto t0 = std::chrono::steady_clock::now();
  auto corpus = build_corpus(Q, 2001, 100, cfg, true);

  long cells = 0;
  bool cone_ok = true;
  std::string cone_why;
  auto check_cone = [&](const TruncatedFIModule<Rationals>& v,
                        const std::string& tag) {
    if (v.N < 1) return;
    auto rep = cone_phi_check(v, v.N - 1, cfg.a_max, policy);
    cells += rep.cells_checked;
    if (!rep.all_pass && cone_ok) {
      cone_ok = false;
      cone_why = tag + ": " + rep.first_failure();
    }
  };
  for (int m = 0; m <= 2; ++m) check_cone(free_module(Q, m, 7), "M" + std::to_string(m));
  for (const auto& e : corpus)
    check_cone(e.pm.V, "trial " + std::to_string(e.trial));
  double secs3 = seconds_since(t0);
  report(3, "cone isomorphism", cone_ok && secs3 < 120.0, secs3, 120,
         cone_ok ? std::to_string(cells) + " bidegrees on 103 modules"
                 : cone_why);

  auto t1 = std::chrono::steady_clock::now();
  long nodes = 0;
  bool les_ok = true;
  std::string les_why;
  auto check_les = [&](const TruncatedFIModule<Rationals>& v,
                       const std::string& tag) {
    if (v.N < 1) return;
    auto rep = les_exactness_check(v, 4, v.N - 1, policy);
    nodes += rep.nodes_checked;
    if (!rep.all_pass && les_ok) {
      les_ok = false;
      les_why = tag + ": " + rep.first_failure();
    }
  };
  for (int m = 0; m <= 2; ++m) check_les(free_module(Q, m, 7), "M" + std::to_string(m));
  for (const auto& e : corpus)
    check_les(e.pm.V, "trial " + std::to_string(e.trial));
  double secs4 = seconds_since(t1);
  report(4, "LES exactness", les_ok && secs4 < 180.0, secs4, 180,
         les_ok ? std::to_string(nodes) + " nodes on 103 modules" : les_why);
}

// --- criteria 5 through 9 over the 500-presentation corpus -----------------
struct SuiteTally {
  long hd_bound_fail = 0;       // criterion 5
  long td_tower_fail = 0;       // criterion 6
  long shift_acyclic_fail = 0;  // criterion 7
  long shift_checked = 0, shift_skipped = 0;
  long mono_fail = 0;           // criterion 8
  long mono_applicable = 0;
  long mono_complete = 0;       // fully certified strict chains
  long liyu_fail = 0;           // criterion 9
  long liyu_applicable = 0;
  long modules = 0;
  std::string first_failure;
};

template <FieldContext F>
void tally_corpus(const F& field, std::uint64_t seed, int count,
                  SuiteTally& tally, const RankPolicy& policy, int n_cap,
                  int margin, long dim_cap) {
  FuzzConfig cfg;
  cfg.a_max = 4;
  cfg.n_cap = n_cap;
  cfg.window_margin = margin;
  cfg.dim_cap = dim_cap;
  auto corpus = build_corpus(field, seed, count, cfg, false);
  for (const auto& e : corpus) {
    ++tally.modules;
    auto note_fail = [&](const BoundCheckResult& r) {
      if (tally.first_failure.empty())
        tally.first_failure =
            field.name() + " trial " + std::to_string(e.trial) + ": " + r.line();
    };
    auto results = theorem_suite(e.pm, cfg.a_max, policy);
    bool nonacyclic = false;
    for (const auto& r : results) {
      bool fail = r.verdict == Verdict::Fail;
      if (fail) note_fail(r);
      if (r.theorem == "hd_window_bound" && fail) ++tally.hd_bound_fail;
      if ((r.theorem == "td_bound" || r.theorem == "reg_by_D_tower" ||
           r.theorem == "reg_by_S_tower" || r.theorem == "tower_le_ce" ||
           r.theorem == "reg_ce_bound") &&
          fail)
        ++tally.td_tower_fail;
      if (r.theorem == "NV_ce_bound" && fail) ++tally.shift_acyclic_fail;
      if (r.theorem == "monotonicity") {
        if (r.detail.find("vacuous") == std::string::npos) ++tally.mono_applicable;
        if (r.verdict == Verdict::Pass &&
            r.detail.find("vacuous") == std::string::npos)
          ++tally.mono_complete;
        if (fail) ++tally.mono_fail;
      }
      if (r.theorem == "stabilization" && fail) ++tally.mono_fail;
      if (r.theorem == "liyu_reduction") {
        if (r.detail.find("vacuous") == std::string::npos) ++tally.liyu_applicable;
        if (fail) ++tally.liyu_fail;
      }
    }
    (void)nonacyclic;
    // criterion 7, first half: H_1(S^{min{k,d}+d} V) vanishes where computable
    ExtDegree b = e.pm.bounds.acyclicity_bound();
    if (b.is_finite() && e.pm.V.N >= b.finite() && b.finite() > 0) {
      auto w = shift_iterated(e.pm.V, b.finite());
      HomologyTable t = homology_table(w, 1, w.N, policy);
      ++tally.shift_checked;
      if (!t.row_zero(1)) {
        ++tally.shift_acyclic_fail;
        if (tally.first_failure.empty())
          tally.first_failure = field.name() + " trial " +
                                std::to_string(e.trial) +
                                ": H_1 after the acyclic shift bound";
      }
    } else {
      ++tally.shift_skipped;
    }
  }
}

void criteria_5_to_9(const RankPolicy& policy) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteTally tally;
  tally_corpus(Q, 5001, 150, tally, policy, 7, 2, 150);
  // the modular corpus is an order of magnitude cheaper, so it can afford a
  // wider window and certifies deeper into the hd tower
  tally_corpus(FP, 5002, 350, tally, policy, 8, 4, 120);
  double secs = seconds_since(t0);
  std::string base = std::to_string(tally.modules) + " modules (Q and F_32003)";
  report(5, "regularity window bound",
         tally.hd_bound_fail == 0 && secs < 300.0, secs, 300,
         tally.hd_bound_fail == 0 ? base : tally.first_failure);
  report(6, "torsion and tower bounds", tally.td_tower_fail == 0, secs, 300,
         tally.td_tower_fail == 0 ? base : tally.first_failure);
  report(7, "shift acyclicity",
         tally.shift_acyclic_fail == 0, secs, 300,
         tally.shift_acyclic_fail == 0
             ? std::to_string(tally.shift_checked) + " full-shift checks, " +
                   std::to_string(tally.shift_skipped) + " beyond window"
             : tally.first_failure);
  report(8, "monotonicity and stabilization", tally.mono_fail == 0, secs, 300,
         tally.mono_fail == 0 ? std::to_string(tally.mono_applicable) +
                                    " non-acyclic modules, " +
                                    std::to_string(tally.mono_complete) +
                                    " with fully certified chains"
                              : tally.first_failure);
  report(9, "Li-Yu reduction", tally.liyu_fail == 0, secs, 300,
         tally.liyu_fail == 0 ? std::to_string(tally.liyu_applicable) +
                                    " non-acyclic modules"
                              : tally.first_failure);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  RankPolicy paired;
  paired.paired = true;
  try {
    criterion_1(paired);
    criterion_2(paired);
    criteria_3_4(paired);
    criteria_5_to_9(paired);
  } catch (const oracle_mismatch_error& e) {
    report(10, "oracle equivalence", false, seconds_since(t0), 600, e.what());
    return 1;
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance run aborted: %s\n", e.what());
    return 1;
  }
  double total = seconds_since(t0);
  // Every rank query above ran under both backends and agreed; mismatches
  // would have thrown.
  report(10, "oracle equivalence", paired.paired_checks > 0 && total < 600.0,
         total, 600,
         std::to_string(paired.paired_checks) +
             " paired rank checks, zero mismatches, total " +
             std::to_string(static_cast<long>(total)) + "s");
  return g_all_pass ? 0 : 1;
}
