#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fihom/ext_degree.hpp"
#include "fihom/fimodule.hpp"
#include "fihom/koszul.hpp"

namespace fihom {

// A degree-valued invariant together with a flag saying whether the window
// makes the observed value provably exact. All the sup-type invariants here
// are observed from below, so "certified" always means: a proven bound
// places the quantity inside the computed window.
struct Cert {
  ExtDegree value = ExtDegree::neg_inf();
  bool certified = false;
};

inline Cert cert_of(ExtDegree v, bool c) { return Cert{v, c}; }
inline Cert cert_exact(ExtDegree v) { return Cert{v, true}; }
inline Cert cert_max(const Cert& a, const Cert& b) {
  return Cert{max(a.value, b.value), a.certified && b.certified};
}
inline Cert operator+(const Cert& c, int k) {
  return Cert{c.value + k, c.certified};
}

enum class Verdict { Pass, Fail, Uncertified };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "UNCERTIFIED";
  }
}

// Verdict for a claimed inequality lhs <= rhs between sup-type quantities
// observed from below. A FAIL needs the right side exact; a PASS needs the
// left side exact (the observed right side only underestimates).
inline Verdict check_le(const Cert& lhs, const Cert& rhs) {
  if (rhs.certified && lhs.value > rhs.value) return Verdict::Fail;
  if (lhs.certified && lhs.value <= rhs.value) return Verdict::Pass;
  return Verdict::Uncertified;
}

struct BoundCheckResult {
  std::string theorem;
  std::string inputs;
  ExtDegree lhs = ExtDegree::neg_inf();
  ExtDegree rhs = ExtDegree::neg_inf();
  Verdict verdict = Verdict::Uncertified;
  std::string detail;
  std::string payload;  // reproduction data, attached by the caller on FAIL

  std::string line() const {
    std::string s = std::string(verdict_name(verdict)) + " " + theorem + ": " +
                    lhs.str() + " <= " + rhs.str();
    if (!detail.empty()) s += "  [" + detail + "]";
    return s;
  }
};

// ---------------------------------------------------------------------------
// Individual invariants.

struct BasicDegrees {
  Cert deg;
  Cert low;
};

// deg and low over the window. A zero top level certifies deg for presented
// modules (vanishing cascades upward once past the generation degrees); a
// nonzero value found certifies low outright.
template <FieldContext F>
BasicDegrees basic_degrees(const TruncatedFIModule<F>& v) {
  BasicDegrees b;
  bool edge_zero = v.dim(v.N) == 0;
  ExtDegree deg = v.observed_degree();
  b.deg = cert_of(edge_zero ? deg : ExtDegree::pos_inf(), edge_zero);
  ExtDegree low = v.observed_low();
  b.low = cert_of(low, low.is_finite() || edge_zero);
  return b;
}

// td(V) = deg(KV). Certified when the kernel window covers the torsion bound
// min{k,d}+d-1.
template <FieldContext F>
Cert torsion_degree(const TruncatedFIModule<F>& v, const PresBounds& bounds) {
  if (v.N < 1) throw window_error("torsion degree needs window >= 1", 1);
  TruncatedFIModule<F> kv = derivative_kernel(v).KV;
  ExtDegree val = kv.observed_degree();
  ExtDegree bound = bounds.ce_bound();
  bool cert = bound.is_neg_inf() || ExtDegree::of(kv.N) >= bound;
  return cert_of(val, cert);
}

// Observed hd_1 with the direct certificate hd_1 <= d.
template <FieldContext F>
Cert hd1_observed(const TruncatedFIModule<F>& v, ExtDegree d_bound,
                  const RankPolicy& policy) {
  HomologyTable t = homology_table(v, 1, v.N, policy);
  bool cert = d_bound.is_neg_inf() || ExtDegree::of(v.N) >= d_bound;
  return cert_of(t.row_degree(1), cert);
}

// hd_a for 1 <= a <= a_max from a precomputed table. An entry is exact when
// the window reaches min{k,d}+d-1+a (nothing can live above); for a = 1 the
// sharper hd_1 <= d certificate applies as well.
inline std::vector<Cert> homological_degrees_from_table(
    const HomologyTable& t, int window, const PresBounds& bounds) {
  std::vector<Cert> out(static_cast<size_t>(t.a_max) + 1);
  ExtDegree ce = bounds.ce_bound();
  for (int a = 1; a <= t.a_max; ++a) {
    ExtDegree threshold = ce + a;
    if (a == 1) threshold = min(threshold, bounds.d);
    bool cert = threshold.is_neg_inf() || ExtDegree::of(window) >= threshold;
    out[static_cast<size_t>(a)] = cert_of(t.row_degree(a), cert);
  }
  return out;
}

template <FieldContext F>
std::vector<Cert> homological_degrees(const TruncatedFIModule<F>& v, int a_max,
                                      const PresBounds& bounds,
                                      const RankPolicy& policy) {
  HomologyTable t = homology_table(v, a_max, v.N, policy);
  return homological_degrees_from_table(t, v.N, bounds);
}

// hd_0 = deg(V/JV), read off row 0; certified once the window passes the
// generation bound k.
inline Cert hd0_from_table(const HomologyTable& t, int window,
                           const PresBounds& bounds) {
  bool cert = bounds.k.is_neg_inf() || ExtDegree::of(window) >= bounds.k;
  return cert_of(t.row_degree(0), cert);
}

// reg(V) as the maximum of hd_a - a over the certified entries (an exact
// entry gives a true lower bound; an uncertified one could not be trusted
// either way). Certified when every entry is certified, or when the gap
// sequence has visibly stabilized at the top of the window (the monotonicity
// corollary's plateau).
inline Cert regularity_from_hds(const std::vector<Cert>& hd) {
  int a_max = static_cast<int>(hd.size()) - 1;
  Cert reg = cert_exact(ExtDegree::neg_inf());
  bool all_cert = true;
  for (int a = 1; a <= a_max; ++a) {
    if (hd[static_cast<size_t>(a)].certified) {
      reg.value = max(reg.value, hd[static_cast<size_t>(a)].value - a);
    } else {
      all_cert = false;
    }
  }
  bool stabilized = false;
  if (a_max >= 2) {
    const Cert& top = hd[static_cast<size_t>(a_max)];
    const Cert& prev = hd[static_cast<size_t>(a_max) - 1];
    stabilized = top.certified && prev.certified &&
                 top.value - a_max == prev.value - (a_max - 1);
  }
  reg.certified = all_cert || stabilized;
  return reg;
}

template <FieldContext F>
Cert regularity(const TruncatedFIModule<F>& v, int a_max,
                const PresBounds& bounds, const RankPolicy& policy) {
  return regularity_from_hds(homological_degrees(v, a_max, bounds, policy));
}

// ---------------------------------------------------------------------------
// Bounds for derived and shifted modules (basic facts (v) and (x)).

inline PresBounds derivative_bounds(const PresBounds& b, int i) {
  PresBounds out;
  if (b.k.is_finite() && b.k.finite() - i >= 0)
    out.k = ExtDegree::of(b.k.finite() - i);
  if (b.d.is_finite() && b.d.finite() - i >= 0)
    out.d = ExtDegree::of(b.d.finite() - i);
  return out;
}

// ---------------------------------------------------------------------------
// N(V): the first shift after which H_1 vanishes, decided over the certified
// hd_1 window (hd_1 <= d for every shifted module).

struct ShiftIndex {
  int value = 0;
  bool certified = false;
};

template <FieldContext F>
ShiftIndex shift_acyclicity_index(const TruncatedFIModule<F>& v,
                                  const PresBounds& bounds,
                                  const RankPolicy& policy) {
  ExtDegree bound = bounds.acyclicity_bound();
  if (bounds.d.is_neg_inf()) return {0, true};  // free or zero: H_1 = 0
  int d_need = bounds.d.finite();
  int required =
      (bound.is_finite() ? bound.finite() : 0) + d_need;  // minimal sufficient N
  TruncatedFIModule<F> w = v;
  for (int i = 0;; ++i) {
    int scan = std::min(w.N, d_need);
    HomologyTable t = homology_table(w, 1, scan, policy);
    bool h1_zero = t.row_zero(1);
    if (h1_zero) return {i, w.N >= d_need};
    if (w.N < 1)
      throw window_error("window exhausted while locating the acyclic shift",
                         required);
    w = shift(w);
  }
}

// ---------------------------------------------------------------------------
// Tower statistics.

struct DerivativeTower {
  Cert hd1_D;
  Cert td_D;
};

template <FieldContext F>
DerivativeTower derivative_tower_stats(const TruncatedFIModule<F>& v,
                                       const PresBounds& bounds,
                                       const RankPolicy& policy) {
  DerivativeTower out;
  out.hd1_D = cert_exact(ExtDegree::neg_inf());
  out.td_D = cert_exact(ExtDegree::neg_inf());
  if (bounds.k.is_neg_inf()) return out;  // zero module
  int k = bounds.k.finite();
  if (v.N < k + 1)
    throw window_error("derivative tower loses one degree per step", k + 1);
  TruncatedFIModule<F> w = v;
  for (int i = 0; i <= k; ++i) {
    PresBounds bi = derivative_bounds(bounds, i);
    Cert h = hd1_observed(w, bi.d, policy);
    Cert t = torsion_degree(w, bi);
    out.hd1_D = cert_max(out.hd1_D, h + i);
    out.td_D = cert_max(out.td_D, t + i);
    if (i < k) w = derivative_kernel(w).DV;
  }
  return out;
}

template <FieldContext F>
Cert shift_tower_stats(const TruncatedFIModule<F>& v, const PresBounds& bounds,
                       const ShiftIndex& nv, const RankPolicy& policy) {
  Cert out = cert_exact(ExtDegree::neg_inf());
  TruncatedFIModule<F> w = v;
  for (int i = 0; i <= nv.value; ++i) {
    // shifted modules stay (k,d)-presented
    Cert h = hd1_observed(w, bounds.d, policy);
    out = cert_max(out, h + i);
    if (i < nv.value) w = shift(w);
  }
  out.certified = out.certified && nv.certified;
  return out;
}

// ---------------------------------------------------------------------------
// The assembled report.

struct InvariantReport {
  std::string field;
  int window = 0;
  Cert deg, low, td;
  std::vector<Cert> hd;  // index a, 1..a_max (slot 0 = hd_0)
  Cert reg;
  ShiftIndex n_of_v;
  bool n_of_v_available = false;
  Cert hd1_D, td_D;
  bool derivative_tower_available = false;
  Cert hd1_S;
  bool shift_tower_available = false;
  PresBounds bounds;
  int a_max = 0;
};

template <FieldContext F>
InvariantReport invariant_report(const PresentedModule<F>& pm, int a_max,
                                 const RankPolicy& policy) {
  const auto& v = pm.V;
  InvariantReport r;
  r.field = v.field.name();
  r.window = v.N;
  r.bounds = pm.bounds;
  r.a_max = a_max;
  auto bd = basic_degrees(v);
  r.deg = bd.deg;
  r.low = bd.low;
  HomologyTable t = homology_table(v, a_max, v.N, policy);
  r.hd = homological_degrees_from_table(t, v.N, pm.bounds);
  r.hd[0] = hd0_from_table(t, v.N, pm.bounds);
  r.reg = regularity_from_hds(r.hd);
  if (v.N >= 1) {
    r.td = torsion_degree(v, pm.bounds);
    try {
      r.n_of_v = shift_acyclicity_index(v, pm.bounds, policy);
      r.n_of_v_available = true;
      r.hd1_S = shift_tower_stats(v, pm.bounds, r.n_of_v, policy);
      r.shift_tower_available = true;
    } catch (const window_error&) {
      r.n_of_v_available = false;
    }
    try {
      auto dt = derivative_tower_stats(v, pm.bounds, policy);
      r.hd1_D = dt.hd1_D;
      r.td_D = dt.td_D;
      r.derivative_tower_available = true;
    } catch (const window_error&) {
      r.derivative_tower_available = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Theorem suite. One BoundCheckResult per theorem instance; UNCERTIFIED is a
// verdict, not an error, so undersized windows degrade gracefully.

namespace detail {

template <FieldContext F>
std::string inputs_summary(const PresentedModule<F>& pm) {
  std::ostringstream os;
  os << pm.V.field.name() << " N=" << pm.V.N << " dims=[";
  for (int n = 0; n <= pm.V.N; ++n) {
    if (n) os << ",";
    os << pm.V.dim(n);
  }
  os << "] k=" << pm.bounds.k.str() << " d=" << pm.bounds.d.str();
  return os.str();
}

// Synthesizes a surjection P -> V with P free on lifted H_0 bases (so P is
// generated in degree <= hd_0(V)), and returns W = ker alongside P's bounds.
template <FieldContext F>
std::optional<TruncatedFIModule<F>> presentation_kernel(
    const TruncatedFIModule<F>& v) {
  const F& f = v.field;
  // J V_n = act-closure of the image of V_{n-1}; lift the non-pivot slots.
  std::vector<int> gen_degrees;
  std::vector<std::vector<typename F::Elt>> gen_vectors;
  for (int n = 0; n <= v.N; ++n) {
    SpanBuilder<F> jv(f, v.dim(n));
    if (n >= 1) {
      std::vector<std::vector<typename F::Elt>> work;
      const Matrix<F>& in = v.inc_mat(n - 1);
      for (int j = 0; j < in.cols(); ++j) {
        auto w = in.col(j);
        if (jv.insert(w)) work.push_back(std::move(w));
      }
      while (!work.empty()) {
        auto cur = std::move(work.back());
        work.pop_back();
        for (int i = 1; i <= n - 1; ++i) {
          auto w = v.act_mat(n, i).apply(cur);
          if (jv.insert(w)) work.push_back(std::move(w));
        }
      }
    }
    for (int slot : jv.non_pivots()) {
      gen_degrees.push_back(n);
      std::vector<typename F::Elt> e(static_cast<size_t>(v.dim(n)), f.zero());
      e[static_cast<size_t>(slot)] = f.one();
      gen_vectors.push_back(std::move(e));
    }
  }
  if (gen_degrees.empty()) return zero_module(f, v.N);
  FreeSumModule<F> p = free_sum_module(f, gen_degrees, v.N);
  FIMorphism<F> onto;
  onto.source = p.mod;
  onto.target = v;
  for (int n = 0; n <= v.N; ++n) {
    Matrix<F> m(f, v.dim(n), p.mod.dim(n));
    for (size_t j = 0; j < gen_degrees.size(); ++j) {
      const auto& injs = p.basis[static_cast<size_t>(n)][j];
      for (size_t b = 0; b < injs.size(); ++b) {
        auto img = induced_map(v, injs[b]).apply(gen_vectors[j]);
        int col = p.block_offset[static_cast<size_t>(n)][j] + static_cast<int>(b);
        m.set_col(col, img);
      }
    }
    onto.mat.push_back(std::move(m));
  }
  // Surjectivity of the lift map is part of the construction; verify anyway.
  for (int n = 0; n <= v.N; ++n) {
    SpanBuilder<F> s(f, v.dim(n));
    int got = 0;
    for (int j = 0; j < onto.mat[static_cast<size_t>(n)].cols(); ++j)
      if (s.insert(onto.mat[static_cast<size_t>(n)].col(j))) ++got;
    if (got != v.dim(n)) return std::nullopt;
  }
  return ker_of(onto);
}

}  // namespace detail

template <FieldContext F>
std::vector<BoundCheckResult> theorem_suite(const PresentedModule<F>& pm,
                                            int a_max,
                                            const RankPolicy& policy) {
  const auto& v = pm.V;
  const PresBounds& bounds = pm.bounds;
  std::vector<BoundCheckResult> out;
  std::string inputs = detail::inputs_summary(pm);

  auto add = [&](const std::string& id, Verdict verdict, ExtDegree lhs,
                 ExtDegree rhs, const std::string& detail) {
    out.push_back({id, inputs, lhs, rhs, verdict, detail, ""});
  };
  auto add_le = [&](const std::string& id, const Cert& lhs, const Cert& rhs,
                    const std::string& detail = "") {
    add(id, check_le(lhs, rhs), lhs.value, rhs.value, detail);
  };

  // Shared computations.
  HomologyTable table = homology_table(v, a_max + 1, v.N, policy);
  std::vector<Cert> hd = homological_degrees_from_table(table, v.N, bounds);
  Cert hd0 = hd0_from_table(table, v.N, bounds);
  Cert reg = regularity_from_hds(
      std::vector<Cert>(hd.begin(), hd.begin() + a_max + 1));
  auto bd = basic_degrees(v);
  Cert ce = cert_exact(bounds.ce_bound());
  bool observed_nonacyclic = false;
  for (int a = 1; a <= a_max + 1; ++a)
    if (!table.row_zero(a)) observed_nonacyclic = true;

  // --- low-degree vanishing, cell by cell, plus hd_a >= low + a ---
  {
    bool ok = true;
    std::string where;
    if (bd.low.value.is_finite()) {
      int low = bd.low.value.finite();
      for (int a = 0; a <= a_max && ok; ++a)
        for (int n = 0; n <= v.N && ok; ++n)
          if (n < low + a && table.at(a, n) != 0) {
            ok = false;
            where = "h[" + std::to_string(a) + "][" + std::to_string(n) + "] != 0";
          }
      for (int a = 1; a <= a_max && ok; ++a) {
        if (!table.row_zero(a) &&
            table.row_degree(a) < ExtDegree::of(low + a)) {
          ok = false;
          where = "hd_" + std::to_string(a) + " below low+a";
        }
      }
    }
    add("lowest_degree", ok ? Verdict::Pass : Verdict::Fail, bd.low.value,
        bd.low.value, where);
  }

  if (v.N < 1) return out;  // everything below needs at least one shift

  Cert td = torsion_degree(v, bounds);

  // --- torsion degree bound ---
  add_le("td_bound", td, ce);

  // --- reg <= deg for modules of finite degree ---
  add_le("reg_le_deg", reg, bd.deg);

  // --- reg <= max{hd_1 - 1, td, reg(DV) + 1} ---
  {
    auto dv = derivative_kernel(v).DV;
    PresBounds dvb = derivative_bounds(bounds, 1);
    Cert reg_dv = regularity(dv, a_max, dvb, policy);
    Cert rhs = cert_max(cert_max(hd[1] + (-1), td), reg_dv + 1);
    add_le("reg_by_D_prop", reg, rhs,
           "rhs = max{hd1-1, td, reg(DV)+1}");
  }

  // --- derivative tower bounds ---
  try {
    auto dt = derivative_tower_stats(v, bounds, policy);
    Cert tower = cert_max(dt.hd1_D + (-1), dt.td_D);
    add_le("reg_by_D_tower", reg, tower, "rhs = max{hd1_D-1, td_D}");
    add_le("tower_le_ce", tower, ce);
  } catch (const window_error& e) {
    add("reg_by_D_tower", Verdict::Uncertified, reg.value,
        ExtDegree::neg_inf(), e.what());
    add("tower_le_ce", Verdict::Uncertified, ExtDegree::neg_inf(), ce.value,
        e.what());
  }

  // --- reg <= min{k,d}+d-1 (Church-Ellenberg bound) ---
  add_le("reg_ce_bound", reg, ce);

  // --- every observed homology cell respects the window bound ---
  {
    bool violated = false;
    std::string where;
    if (ce.value.is_finite() || ce.value.is_neg_inf()) {
      for (int a = 1; a <= a_max && !violated; ++a)
        for (int n = 0; n <= v.N && !violated; ++n)
          if (table.at(a, n) != 0 &&
              ExtDegree::of(n) > ce.value + a) {
            violated = true;
            where = "h[" + std::to_string(a) + "][" + std::to_string(n) +
                    "] nonzero above min{k,d}+d-1+a";
          }
    }
    add("hd_window_bound", violated ? Verdict::Fail : Verdict::Pass,
        reg.value, ce.value, where);
  }

  // --- acyclicity inheritance under shift ---
  {
    Cert h1v = cert_of(table.row_degree(1), hd[1].certified);
    if (!h1v.value.is_neg_inf()) {
      add("shift_acyclic_step", Verdict::Pass, h1v.value, h1v.value,
          "vacuous: V is not F-acyclic");
    } else if (!h1v.certified) {
      add("shift_acyclic_step", Verdict::Uncertified, h1v.value, h1v.value,
          "H_1(V) = 0 not certified in window");
    } else {
      auto sv = shift(v);
      Cert h1sv = hd1_observed(sv, bounds.d, policy);
      Verdict verdict = !h1sv.value.is_neg_inf() ? Verdict::Fail
                        : h1sv.certified         ? Verdict::Pass
                                                 : Verdict::Uncertified;
      add("shift_acyclic_step", verdict, h1sv.value, ExtDegree::neg_inf(),
          "H_1(SV) must vanish");
    }
  }

  // --- torsion-free V with F-acyclic DV is F-acyclic ---
  {
    bool tf = td.value.is_neg_inf() && td.certified;
    if (!td.value.is_neg_inf()) {
      add("derivative_acyclic_lift", Verdict::Pass, td.value, td.value,
          "vacuous: V has torsion");
    } else if (!tf) {
      add("derivative_acyclic_lift", Verdict::Uncertified, td.value, td.value,
          "torsion-freeness not certified");
    } else {
      auto dv = derivative_kernel(v).DV;
      PresBounds dvb = derivative_bounds(bounds, 1);
      Cert h1dv = hd1_observed(dv, dvb.d, policy);
      if (!h1dv.value.is_neg_inf()) {
        add("derivative_acyclic_lift", Verdict::Pass, h1dv.value, h1dv.value,
            "vacuous: DV is not F-acyclic");
      } else if (!h1dv.certified) {
        add("derivative_acyclic_lift", Verdict::Uncertified, h1dv.value,
            h1dv.value, "H_1(DV) = 0 not certified");
      } else {
        Cert h1v = cert_of(table.row_degree(1), hd[1].certified);
        Verdict verdict = !h1v.value.is_neg_inf() ? Verdict::Fail
                          : h1v.certified         ? Verdict::Pass
                                                  : Verdict::Uncertified;
        add("derivative_acyclic_lift", verdict, h1v.value,
            ExtDegree::neg_inf(), "H_1(V) must vanish");
      }
    }
  }

  // --- one vanishing higher homology forces acyclicity ---
  {
    int witness = 0;
    for (int a = 1; a <= a_max; ++a)
      if (table.row_zero(a) && hd[static_cast<size_t>(a)].certified) {
        witness = a;
        break;
      }
    if (witness == 0) {
      add("one_vanishing_acyclic", Verdict::Pass, ExtDegree::neg_inf(),
          ExtDegree::neg_inf(), "vacuous: no certified vanishing H_s");
    } else {
      bool fail = false;
      bool all_cert = true;
      for (int a = 1; a <= a_max; ++a) {
        if (!table.row_zero(a)) fail = true;
        all_cert = all_cert && hd[static_cast<size_t>(a)].certified;
      }
      add("one_vanishing_acyclic",
          fail        ? Verdict::Fail
          : all_cert  ? Verdict::Pass
                      : Verdict::Uncertified,
          ExtDegree::neg_inf(), ExtDegree::neg_inf(),
          "witness s=" + std::to_string(witness));
    }
  }

  // --- N(V) and its bound ---
  ShiftIndex nv;
  bool nv_ok = false;
  try {
    nv = shift_acyclicity_index(v, bounds, policy);
    nv_ok = true;
    Cert lhs = cert_of(ExtDegree::of(nv.value), nv.certified);
    add_le("NV_ce_bound", lhs, cert_exact(bounds.acyclicity_bound()),
           "N(V) <= min{k,d}+d");
  } catch (const window_error& e) {
    add("NV_ce_bound", Verdict::Uncertified, ExtDegree::pos_inf(),
        bounds.acyclicity_bound(), e.what());
  }

  // --- reg <= max{hd_1 - 1, reg(SV) + 1} ---
  {
    auto sv = shift(v);
    Cert reg_sv = regularity(sv, a_max, bounds, policy);
    Cert rhs = cert_max(hd[1] + (-1), reg_sv + 1);
    add_le("reg_by_S_prop", reg, rhs, "rhs = max{hd1-1, reg(SV)+1}");
  }

  // --- shift tower bound ---
  if (nv_ok) {
    Cert hd1s = shift_tower_stats(v, bounds, nv, policy);
    add_le("reg_by_S_tower", reg, hd1s + (-1), "rhs = hd1_S - 1");
  } else {
    add("reg_by_S_tower", Verdict::Uncertified, reg.value,
        ExtDegree::neg_inf(), "N(V) unavailable in window");
  }

  // --- presentation inequalities through a minimal-generation kernel ---
  {
    if (!hd0.certified) {
      add("presentation_chain", Verdict::Uncertified, hd[1].value, hd0.value,
          "hd_0(V) not certified");
    } else {
      auto w = detail::presentation_kernel(v);
      if (!w) {
        add("presentation_chain", Verdict::Fail, hd[1].value, hd0.value,
            "lifted generators fail to span V");
      } else {
        HomologyTable tw = homology_table(*w, 0, w->N, policy);
        Cert hd0w =
            cert_of(tw.row_degree(0),
                    ExtDegree::of(w->N) >= max(hd0.value, hd[1].value));
        Verdict lower = check_le(hd[1], hd0w);
        Verdict upper = check_le(hd0w, cert_max(hd0, hd[1]));
        Verdict verdict = lower == Verdict::Fail || upper == Verdict::Fail
                              ? Verdict::Fail
                          : lower == Verdict::Pass && upper == Verdict::Pass
                              ? Verdict::Pass
                              : Verdict::Uncertified;
        add("presentation_chain", verdict, hd[1].value, hd0w.value,
            "hd1(V) <= hd0(W) <= max{hd0(V), hd1(V)}, hd0(W)=" +
                hd0w.value.str());
      }
    }
  }

  // --- Li-Yu reduction ---
  {
    if (!observed_nonacyclic) {
      add("liyu_reduction", Verdict::Pass, ExtDegree::neg_inf(),
          ExtDegree::neg_inf(), "vacuous: no nonzero higher homology observed");
    } else if (!hd[1].certified || !hd[1].value.is_finite()) {
      add("liyu_reduction", Verdict::Uncertified, hd[1].value, hd[1].value,
          "hd_1(V) not certified");
    } else {
      int r = hd[1].value.finite();
      auto uw = sub_generated_below(v, r);
      HomologyTable tu = homology_table(uw.U, a_max, v.N, policy);
      HomologyTable tw = homology_table(uw.W, 1, v.N, policy);
      bool fail = false;
      std::string why;
      if (!tw.row_zero(1)) {
        fail = true;
        why = "H_1(V/U) != 0";
      }
      for (int a = 1; a <= a_max && !fail; ++a)
        for (int n = 0; n <= v.N && !fail; ++n)
          if (tu.at(a, n) != table.at(a, n)) {
            fail = true;
            why = "h-tables of U and V differ at a=" + std::to_string(a) +
                  ", n=" + std::to_string(n);
          }
      Cert hd0u = cert_exact(tu.row_degree(0));  // supported below r by design
      Cert hd1u = cert_of(tu.row_degree(1), hd[1].certified);
      if (!fail && !(hd0u.value < hd1u.value)) {
        fail = true;
        why = "hd_0(U) < hd_1(U) fails";
      }
      // certification of the acyclicity claim for W = V/U
      ExtDegree w_cert_need =
          max(bounds.d, ExtDegree::of(r > 0 ? r - 1 : 0));
      bool w_certified = ExtDegree::of(v.N) >= w_cert_need;
      add("liyu_reduction", fail ? Verdict::Fail
                            : w_certified ? Verdict::Pass
                                          : Verdict::Uncertified,
          hd0u.value, hd1u.value, why);
    }
  }

  // --- bounds from hd_0 and hd_1 alone ---
  {
    Cert mixed;
    if (hd[1].value.is_neg_inf()) {
      mixed = cert_of(ExtDegree::neg_inf(), hd[1].certified);
    } else {
      mixed = cert_of(min(hd0.value, hd[1].value) + hd[1].value.finite() - 1,
                      hd0.certified && hd[1].certified);
    }
    add_le("reg_by_h01", reg, mixed, "rhs = min{hd0,hd1}+hd1-1");
    if (observed_nonacyclic && nv_ok) {
      Cert lhs = cert_of(ExtDegree::of(nv.value), nv.certified);
      add_le("NV_by_h01", lhs, mixed + 1, "N(V) <= min{hd0,hd1}+hd1");
    } else if (observed_nonacyclic) {
      add("NV_by_h01", Verdict::Uncertified, ExtDegree::pos_inf(),
          mixed.value + 1, "N(V) unavailable");
    } else {
      add("NV_by_h01", Verdict::Pass, ExtDegree::neg_inf(), mixed.value + 1,
          "vacuous: V is F-acyclic as observed");
    }
  }

  // --- strictly increasing homological degrees ---
  {
    if (!observed_nonacyclic) {
      add("monotonicity", Verdict::Pass, ExtDegree::neg_inf(),
          ExtDegree::neg_inf(), "vacuous: V acyclic as observed");
    } else {
      bool fail = false;
      bool complete = true;
      std::string chain;
      for (int a = 1; a <= a_max; ++a) {
        chain += (a > 1 ? "<" : "") + hd[static_cast<size_t>(a)].value.str();
        if (a == a_max) break;
        const Cert& lo = hd[static_cast<size_t>(a)];
        const Cert& hi = hd[static_cast<size_t>(a) + 1];
        if (hi.certified && lo.value >= hi.value) fail = true;
        if (!lo.certified || !hi.certified) complete = false;
      }
      add("monotonicity", fail ? Verdict::Fail
                          : complete ? Verdict::Pass
                                     : Verdict::Uncertified,
          hd[1].value, hd[static_cast<size_t>(a_max)].value, chain);
    }
  }

  // --- gaps hd_a - a are non-decreasing and top out at reg ---
  {
    if (!observed_nonacyclic) {
      add("stabilization", Verdict::Pass, reg.value, reg.value,
          "vacuous: V acyclic as observed");
    } else {
      bool fail = false;
      bool complete = true;
      ExtDegree prev = ExtDegree::neg_inf();
      ExtDegree top_cert_gap = ExtDegree::neg_inf();
      for (int a = 1; a <= a_max; ++a) {
        const Cert& h = hd[static_cast<size_t>(a)];
        ExtDegree gap = h.value - a;
        if (h.certified) {
          if (gap < prev) fail = true;
          prev = gap;
          top_cert_gap = gap;
        } else {
          complete = false;
        }
      }
      if (complete && !(top_cert_gap == reg.value)) fail = true;
      add("stabilization", fail ? Verdict::Fail
                           : complete ? Verdict::Pass
                                      : Verdict::Uncertified,
          top_cert_gap, reg.value, "gap sequence vs reg");
    }
  }

  return out;
}

}  // namespace fihom
