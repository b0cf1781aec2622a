#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fihom/ext_degree.hpp"
#include "fihom/fincat.hpp"
#include "fihom/linalg.hpp"
#include "fihom/matrix.hpp"
#include "fihom/rng.hpp"
#include "fihom/sparse.hpp"

namespace fihom {

// Raised when a computation would need module data beyond the truncation
// window; carries the minimal sufficient truncation degree.
struct window_error : std::runtime_error {
  int required_n;
  window_error(const std::string& what, int required)
      : std::runtime_error(what + " (need truncation N >= " +
                           std::to_string(required) + ")"),
        required_n(required) {}
};

// A functor from finite sets and injections to vector spaces, truncated at
// degree N. The data is generator-based: on each V_n the adjacent
// transpositions (i,i+1), and one inclusion map V_n -> V_{n+1} per degree.
// Together with the relations checked by validate() this determines the map
// induced by every injection.
template <FieldContext F>
struct TruncatedFIModule {
  F field;
  int N = 0;
  std::vector<int> dims;                    // dims[n], 0 <= n <= N
  std::vector<std::vector<Matrix<F>>> act;  // act[n][i-1]: (i,i+1) on V_n
  std::vector<Matrix<F>> inc;               // inc[n]: V_n -> V_{n+1}, n < N

  int dim(int n) const {
    if (n < 0 || n > N) throw window_error("degree outside window", n);
    return dims[static_cast<size_t>(n)];
  }
  // 1 <= i <= n-1
  const Matrix<F>& act_mat(int n, int i) const {
    return act[static_cast<size_t>(n)][static_cast<size_t>(i - 1)];
  }
  const Matrix<F>& inc_mat(int n) const {
    if (n < 0 || n >= N) throw window_error("inclusion outside window", n + 1);
    return inc[static_cast<size_t>(n)];
  }
  bool is_zero() const {
    for (int d : dims)
      if (d != 0) return false;
    return true;
  }

  ExtDegree observed_degree() const {
    for (int n = N; n >= 0; --n)
      if (dims[static_cast<size_t>(n)] != 0) return ExtDegree::of(n);
    return ExtDegree::neg_inf();
  }
  ExtDegree observed_low() const {
    for (int n = 0; n <= N; ++n)
      if (dims[static_cast<size_t>(n)] != 0) return ExtDegree::of(n);
    return ExtDegree::pos_inf();
  }
};

template <FieldContext F>
TruncatedFIModule<F> zero_module(const F& field, int N) {
  TruncatedFIModule<F> v;
  v.field = field;
  v.N = N;
  v.dims.assign(static_cast<size_t>(N) + 1, 0);
  v.act.resize(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n)
    v.act[static_cast<size_t>(n)].assign(
        static_cast<size_t>(std::max(0, n - 1)), Matrix<F>(field, 0, 0));
  v.inc.assign(static_cast<size_t>(N), Matrix<F>(field, 0, 0));
  return v;
}

template <FieldContext F>
TruncatedFIModule<F> restrict_window(const TruncatedFIModule<F>& v, int M) {
  if (M > v.N) throw window_error("cannot enlarge window", M);
  TruncatedFIModule<F> r;
  r.field = v.field;
  r.N = M;
  r.dims.assign(v.dims.begin(), v.dims.begin() + M + 1);
  r.act.assign(v.act.begin(), v.act.begin() + M + 1);
  r.inc.assign(v.inc.begin(), v.inc.begin() + M);
  return r;
}

// A degreewise linear map between modules on the same window, commuting with
// the structure maps.
template <FieldContext F>
struct FIMorphism {
  TruncatedFIModule<F> source;
  TruncatedFIModule<F> target;
  std::vector<Matrix<F>> mat;  // mat[n]: source_n -> target_n
};

namespace detail {

template <FieldContext F>
Matrix<F> mul_sparse_dense(const SparseMatrix<F>& s, const Matrix<F>& d) {
  Matrix<F> out(d.field(), s.rows(), d.cols());
  for (int l = 0; l < s.cols(); ++l) {
    for (const auto& [i, v] : s.column(l)) {
      for (int j = 0; j < d.cols(); ++j) {
        if (d.at(l, j).is_zero()) continue;
        out.at(i, j) += v * d.at(l, j);
      }
    }
  }
  return out;
}

// left-multiply by a structure matrix, exploiting its sparsity
template <FieldContext F>
Matrix<F> lmul(const Matrix<F>& structure, const Matrix<F>& x) {
  return mul_sparse_dense(SparseMatrix<F>::from_dense(structure), x);
}

}  // namespace detail

// Matrix of V(f) for an injection f: [m] -> [n], computed through the
// canonical factorization f = sigma o (standard inclusion).
template <FieldContext F>
Matrix<F> induced_map_with_factorization(const TruncatedFIModule<F>& v,
                                         const Injection& f,
                                         const InjectionFactorization& fac) {
  if (f.n > v.N) throw window_error("injection target beyond window", f.n);
  Matrix<F> x = Matrix<F>::identity(v.field, v.dim(f.m));
  for (int t = f.m; t < f.n; ++t) x = detail::lmul(v.inc_mat(t), x);
  const auto& word = fac.sigma.word;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    x = detail::lmul(v.act_mat(f.n, *it), x);
  return x;
}

template <FieldContext F>
Matrix<F> induced_map(const TruncatedFIModule<F>& v, const Injection& f) {
  return induced_map_with_factorization(v, f, factor_injection(f));
}

// ---------------------------------------------------------------------------
// Free modules M(m): basis at degree n is Inj([m],[n]) in lexicographic
// order, acted on by post-composition.

template <FieldContext F>
struct FreeSumModule {
  TruncatedFIModule<F> mod;
  std::vector<int> gen_degree;                 // degree of each generator
  std::vector<std::vector<int>> block_offset;  // [n][j]: basis offset of block j
  std::vector<std::vector<std::vector<Injection>>> basis;  // [n][j] lex

  // position of (generator j, injection image) in the degree-n basis
  int index_at(int n, int j, const std::vector<int>& image) const {
    const auto& list = basis[static_cast<size_t>(n)][static_cast<size_t>(j)];
    int lo = 0, hi = static_cast<int>(list.size());
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (list[static_cast<size_t>(mid)].image < image) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo >= static_cast<int>(list.size()) ||
        !(list[static_cast<size_t>(lo)].image == image))
      throw std::logic_error("basis injection not found");
    return block_offset[static_cast<size_t>(n)][static_cast<size_t>(j)] + lo;
  }

  // structure maps as index permutations / index maps (entries are all 1)
  std::vector<std::vector<std::vector<int>>> act_index;  // [n][i-1][idx]
  std::vector<std::vector<int>> inc_index;               // [n][idx]
};

template <FieldContext F>
FreeSumModule<F> free_sum_module(const F& field, const std::vector<int>& degrees,
                                 int N) {
  for (int m : degrees)
    if (m < 0) throw std::invalid_argument("negative generator degree");
  if (N < 0) throw std::invalid_argument("negative truncation");
  FreeSumModule<F> fs;
  fs.gen_degree = degrees;
  auto& v = fs.mod;
  v.field = field;
  v.N = N;
  v.dims.assign(static_cast<size_t>(N) + 1, 0);
  fs.basis.resize(static_cast<size_t>(N) + 1);
  fs.block_offset.resize(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    int off = 0;
    for (size_t j = 0; j < degrees.size(); ++j) {
      fs.block_offset[static_cast<size_t>(n)].push_back(off);
      auto injs = enumerate_injections(degrees[j], n);
      off += static_cast<int>(injs.size());
      fs.basis[static_cast<size_t>(n)].push_back(std::move(injs));
    }
    v.dims[static_cast<size_t>(n)] = off;
  }
  fs.act_index.resize(static_cast<size_t>(N) + 1);
  fs.inc_index.resize(static_cast<size_t>(N));
  v.act.resize(static_cast<size_t>(N) + 1);
  v.inc.reserve(static_cast<size_t>(N));
  for (int n = 0; n <= N; ++n) {
    int d = v.dims[static_cast<size_t>(n)];
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<int> perm(static_cast<size_t>(d));
      for (size_t j = 0; j < degrees.size(); ++j) {
        const auto& list = fs.basis[static_cast<size_t>(n)][j];
        for (size_t b = 0; b < list.size(); ++b) {
          std::vector<int> img = list[b].image;
          for (auto& x : img) {
            if (x == i) x = i + 1;
            else if (x == i + 1) x = i;
          }
          int src = fs.block_offset[static_cast<size_t>(n)][j] + static_cast<int>(b);
          perm[static_cast<size_t>(src)] = fs.index_at(n, static_cast<int>(j), img);
        }
      }
      Matrix<F> m(field, d, d);
      for (int c = 0; c < d; ++c) m.at(perm[static_cast<size_t>(c)], c) = field.one();
      fs.act_index[static_cast<size_t>(n)].push_back(std::move(perm));
      v.act[static_cast<size_t>(n)].push_back(std::move(m));
    }
    if (n < N) {
      int dn = v.dims[static_cast<size_t>(n) + 1];
      std::vector<int> idx(static_cast<size_t>(d));
      Matrix<F> m(field, dn, d);
      for (size_t j = 0; j < degrees.size(); ++j) {
        const auto& list = fs.basis[static_cast<size_t>(n)][j];
        for (size_t b = 0; b < list.size(); ++b) {
          int src = fs.block_offset[static_cast<size_t>(n)][j] + static_cast<int>(b);
          int dst = fs.index_at(n + 1, static_cast<int>(j), list[b].image);
          idx[static_cast<size_t>(src)] = dst;
          m.at(dst, src) = field.one();
        }
      }
      fs.inc_index[static_cast<size_t>(n)] = std::move(idx);
      v.inc.push_back(std::move(m));
    }
  }
  return fs;
}

template <FieldContext F>
TruncatedFIModule<F> free_module(const F& field, int m, int N) {
  return free_sum_module(field, std::vector<int>{m}, N).mod;
}

// ---------------------------------------------------------------------------
// validate: exact checks of the defining relations, plus sampled functoriality
// of induced maps on composable pairs.

template <FieldContext F>
std::vector<std::string> validate(const TruncatedFIModule<F>& v,
                                  int functoriality_samples = 25,
                                  std::uint64_t seed = 12345) {
  std::vector<std::string> bad;
  auto note = [&](int n, const std::string& what) {
    bad.push_back("degree " + std::to_string(n) + ": " + what);
  };
  for (int n = 0; n <= v.N; ++n) {
    int d = v.dim(n);
    if (static_cast<int>(v.act[static_cast<size_t>(n)].size()) !=
        std::max(0, n - 1)) {
      note(n, "wrong number of transposition matrices");
      continue;
    }
    Matrix<F> id = Matrix<F>::identity(v.field, d);
    for (int i = 1; i <= n - 1; ++i) {
      const Matrix<F>& s = v.act_mat(n, i);
      if (s.rows() != d || s.cols() != d) {
        note(n, "act shape mismatch at i=" + std::to_string(i));
        continue;
      }
      if (!(s * s == id))
        note(n, "act[" + std::to_string(i) + "] is not an involution");
      if (i + 1 <= n - 1) {
        const Matrix<F>& t = v.act_mat(n, i + 1);
        if (!(s * t * s == t * s * t))
          note(n, "braid relation fails at i=" + std::to_string(i));
      }
      for (int j = i + 2; j <= n - 1; ++j) {
        const Matrix<F>& t = v.act_mat(n, j);
        if (!(s * t == t * s))
          note(n, "distant transpositions do not commute (i=" +
                      std::to_string(i) + ", j=" + std::to_string(j) + ")");
      }
    }
    if (n < v.N) {
      const Matrix<F>& in = v.inc_mat(n);
      if (in.rows() != v.dim(n + 1) || in.cols() != d)
        note(n, "inc shape mismatch");
      for (int i = 1; i <= n - 1; ++i) {
        if (!(in * v.act_mat(n, i) == v.act_mat(n + 1, i) * in))
          note(n, "inclusion not natural at i=" + std::to_string(i));
      }
    }
    // the transposition of the two freshly added points fixes
    // doubly-included vectors
    if (n >= 1 && n + 1 <= v.N) {
      Matrix<F> twice = v.inc_mat(n) * v.inc_mat(n - 1);
      if (!(v.act_mat(n + 1, n) * twice == twice))
        note(n, "double inclusion not fixed by the new transposition");
    }
  }
  if (!bad.empty()) return bad;
  // spot-check functoriality on sampled composable pairs
  Rng rng(seed);
  for (int s = 0; s < functoriality_samples; ++s) {
    int c = static_cast<int>(rng.range(0, v.N));
    int b = static_cast<int>(rng.range(0, c));
    int a = static_cast<int>(rng.range(0, b));
    auto rand_inj = [&](int m, int n) {
      std::vector<int> pool;
      for (int x = 1; x <= n; ++x) pool.push_back(x);
      std::vector<int> img;
      for (int t = 0; t < m; ++t) {
        size_t pick = static_cast<size_t>(rng.below(pool.size()));
        img.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<long>(pick));
      }
      return Injection(m, n, img);
    };
    Injection f = rand_inj(a, b), g = rand_inj(b, c);
    Matrix<F> lhs = induced_map(v, compose_injections(g, f));
    Matrix<F> rhs = induced_map(v, g) * induced_map(v, f);
    if (!(lhs == rhs))
      bad.push_back("functoriality fails for " + g.str() + " o " + f.str());
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Submodules and quotients along stable degreewise subspaces.

// bases[n]: columns spanning a subspace of V_n, assumed act-stable and mapped
// into bases[n+1]'s span by inc.
template <FieldContext F>
TruncatedFIModule<F> submodule_on_bases(const TruncatedFIModule<F>& v,
                                        const std::vector<Matrix<F>>& bases) {
  TruncatedFIModule<F> u;
  u.field = v.field;
  u.N = v.N;
  u.dims.resize(static_cast<size_t>(v.N) + 1);
  u.act.resize(static_cast<size_t>(v.N) + 1);
  for (int n = 0; n <= v.N; ++n) {
    const Matrix<F>& b = bases[static_cast<size_t>(n)];
    u.dims[static_cast<size_t>(n)] = b.cols();
    for (int i = 1; i <= n - 1; ++i)
      u.act[static_cast<size_t>(n)].push_back(
          solve_columns(b, v.act_mat(n, i) * b));
    if (n < v.N)
      u.inc.push_back(
          solve_columns(bases[static_cast<size_t>(n) + 1], v.inc_mat(n) * b));
  }
  return u;
}

// spans[n]: the subspace to kill at degree n (act- and inc-stable). The
// quotient basis is the set of non-pivot coordinates of the reduced span.
template <FieldContext F>
TruncatedFIModule<F> quotient_by_spans(const TruncatedFIModule<F>& v,
                                       const std::vector<SpanBuilder<F>>& spans) {
  TruncatedFIModule<F> q;
  q.field = v.field;
  q.N = v.N;
  q.dims.resize(static_cast<size_t>(v.N) + 1);
  q.act.resize(static_cast<size_t>(v.N) + 1);
  std::vector<std::vector<int>> lifts(static_cast<size_t>(v.N) + 1);
  for (int n = 0; n <= v.N; ++n) {
    lifts[static_cast<size_t>(n)] = spans[static_cast<size_t>(n)].non_pivots();
    q.dims[static_cast<size_t>(n)] =
        static_cast<int>(lifts[static_cast<size_t>(n)].size());
  }
  auto compress = [&](int n_src, int n_dst, const Matrix<F>& m) {
    // columns: images of the lifted quotient basis, in quotient coordinates
    Matrix<F> out(v.field, q.dims[static_cast<size_t>(n_dst)],
                  q.dims[static_cast<size_t>(n_src)]);
    for (size_t j = 0; j < lifts[static_cast<size_t>(n_src)].size(); ++j) {
      auto col = m.col(lifts[static_cast<size_t>(n_src)][j]);
      auto qc = spans[static_cast<size_t>(n_dst)].quotient_coords(col);
      for (size_t i = 0; i < qc.size(); ++i)
        out.at(static_cast<int>(i), static_cast<int>(j)) = qc[i];
    }
    return out;
  };
  for (int n = 0; n <= v.N; ++n) {
    for (int i = 1; i <= n - 1; ++i)
      q.act[static_cast<size_t>(n)].push_back(compress(n, n, v.act_mat(n, i)));
    if (n < v.N) q.inc.push_back(compress(n, n + 1, v.inc_mat(n)));
  }
  return q;
}

template <FieldContext F>
std::optional<std::string> morphism_violation(const FIMorphism<F>& m) {
  const auto& s = m.source;
  const auto& t = m.target;
  if (s.N != t.N) return "window mismatch";
  for (int n = 0; n <= s.N; ++n) {
    const Matrix<F>& mn = m.mat[static_cast<size_t>(n)];
    if (mn.rows() != t.dim(n) || mn.cols() != s.dim(n))
      return "mat shape mismatch at degree " + std::to_string(n);
    for (int i = 1; i <= n - 1; ++i)
      if (!(t.act_mat(n, i) * mn == mn * s.act_mat(n, i)))
        return "does not commute with transposition at degree " +
               std::to_string(n);
    if (n < s.N) {
      if (!(t.inc_mat(n) * mn == m.mat[static_cast<size_t>(n) + 1] * s.inc_mat(n)))
        return "does not commute with inclusion at degree " + std::to_string(n);
    }
  }
  return std::nullopt;
}

template <FieldContext F>
void require_morphism(const FIMorphism<F>& m) {
  if (auto bad = morphism_violation(m))
    throw std::invalid_argument("not an FI-morphism: " + *bad);
}

template <FieldContext F>
TruncatedFIModule<F> ker_of(const FIMorphism<F>& m) {
  require_morphism(m);
  std::vector<Matrix<F>> bases;
  for (int n = 0; n <= m.source.N; ++n)
    bases.push_back(kernel_basis(m.mat[static_cast<size_t>(n)]));
  return submodule_on_bases(m.source, bases);
}

template <FieldContext F>
TruncatedFIModule<F> coker_of(const FIMorphism<F>& m) {
  require_morphism(m);
  std::vector<SpanBuilder<F>> spans;
  for (int n = 0; n <= m.target.N; ++n) {
    SpanBuilder<F> s(m.target.field, m.target.dim(n));
    const Matrix<F>& mn = m.mat[static_cast<size_t>(n)];
    for (int j = 0; j < mn.cols(); ++j) s.insert(mn.col(j));
    spans.push_back(std::move(s));
  }
  return quotient_by_spans(m.target, spans);
}

template <FieldContext F>
TruncatedFIModule<F> direct_sum(const TruncatedFIModule<F>& a,
                                const TruncatedFIModule<F>& b) {
  if (!(a.field == b.field)) throw std::invalid_argument("field mismatch");
  if (a.N != b.N) throw std::invalid_argument("window mismatch");
  TruncatedFIModule<F> s;
  s.field = a.field;
  s.N = a.N;
  s.dims.resize(static_cast<size_t>(a.N) + 1);
  s.act.resize(static_cast<size_t>(a.N) + 1);
  auto blockdiag = [&](const Matrix<F>& x, const Matrix<F>& y) {
    Matrix<F> m(a.field, x.rows() + y.rows(), x.cols() + y.cols());
    m.set_block(0, 0, x);
    m.set_block(x.rows(), x.cols(), y);
    return m;
  };
  for (int n = 0; n <= a.N; ++n) {
    s.dims[static_cast<size_t>(n)] = a.dim(n) + b.dim(n);
    for (int i = 1; i <= n - 1; ++i)
      s.act[static_cast<size_t>(n)].push_back(
          blockdiag(a.act_mat(n, i), b.act_mat(n, i)));
    if (n < a.N) s.inc.push_back(blockdiag(a.inc_mat(n), b.inc_mat(n)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Shift and derivative.

// SV = V o (append a point); the appended point is always normalized to be
// the largest element, so (SV)_n = V_{n+1} with S_n acting through the first
// n-1 transpositions, and the SV-inclusion re-sorts the new point to the top.
template <FieldContext F>
TruncatedFIModule<F> shift(const TruncatedFIModule<F>& v) {
  if (v.N < 1) throw window_error("shift needs window >= 1", 1);
  TruncatedFIModule<F> s;
  s.field = v.field;
  s.N = v.N - 1;
  s.dims.resize(static_cast<size_t>(s.N) + 1);
  s.act.resize(static_cast<size_t>(s.N) + 1);
  for (int n = 0; n <= s.N; ++n) {
    s.dims[static_cast<size_t>(n)] = v.dim(n + 1);
    for (int i = 1; i <= n - 1; ++i)
      s.act[static_cast<size_t>(n)].push_back(v.act_mat(n + 1, i));
    if (n < s.N)
      s.inc.push_back(v.act_mat(n + 2, n + 1) * v.inc_mat(n + 1));
  }
  return s;
}

template <FieldContext F>
TruncatedFIModule<F> shift_iterated(TruncatedFIModule<F> v, int times) {
  for (int i = 0; i < times; ++i) v = shift(v);
  return v;
}

// iota: V -> SV, degreewise the inclusion maps. The source is V restricted
// to the shifted window.
template <FieldContext F>
FIMorphism<F> iota(const TruncatedFIModule<F>& v) {
  if (v.N < 1) throw window_error("iota needs window >= 1", 1);
  FIMorphism<F> m;
  m.source = restrict_window(v, v.N - 1);
  m.target = shift(v);
  for (int n = 0; n <= v.N - 1; ++n) m.mat.push_back(v.inc_mat(n));
  require_morphism(m);
  return m;
}

template <FieldContext F>
struct DerivativePair {
  TruncatedFIModule<F> DV;  // cokernel of iota
  TruncatedFIModule<F> KV;  // kernel of iota (the torsion detector)
};

template <FieldContext F>
DerivativePair<F> derivative_kernel(const TruncatedFIModule<F>& v) {
  FIMorphism<F> io = iota(v);
  return DerivativePair<F>{coker_of(io), ker_of(io)};
}

template <FieldContext F>
TruncatedFIModule<F> derivative_iterated(TruncatedFIModule<F> v, int times) {
  for (int i = 0; i < times; ++i) v = derivative_kernel(v).DV;
  return v;
}

// ---------------------------------------------------------------------------
// Submodule generated below a degree, and its quotient.

template <FieldContext F>
struct SubQuotientPair {
  TruncatedFIModule<F> U;  // generated by all V_n with n < r
  TruncatedFIModule<F> W;  // V / U
};

template <FieldContext F>
SubQuotientPair<F> sub_generated_below(const TruncatedFIModule<F>& v, int r) {
  if (r < 0) throw std::invalid_argument("bad cutoff degree");
  std::vector<SpanBuilder<F>> spans;
  // spanning vectors per degree, pushed up through inc at the next level
  std::vector<std::vector<std::vector<typename F::Elt>>> gens(
      static_cast<size_t>(v.N) + 1);
  for (int n = 0; n <= v.N; ++n) {
    SpanBuilder<F> s(v.field, v.dim(n));
    std::vector<std::vector<typename F::Elt>> work;
    if (n < r) {
      for (int j = 0; j < v.dim(n); ++j) {
        std::vector<typename F::Elt> e(static_cast<size_t>(v.dim(n)),
                                       v.field.zero());
        e[static_cast<size_t>(j)] = v.field.one();
        if (s.insert(e)) gens[static_cast<size_t>(n)].push_back(std::move(e));
      }
    } else if (n >= 1) {
      // smallest act-stable subspace containing the image of the previous
      // level, by closure iteration
      for (const auto& g : gens[static_cast<size_t>(n) - 1]) {
        auto w = v.inc_mat(n - 1).apply(g);
        if (s.insert(w)) work.push_back(std::move(w));
      }
      while (!work.empty()) {
        auto cur = std::move(work.back());
        work.pop_back();
        for (int i = 1; i <= n - 1; ++i) {
          auto w = v.act_mat(n, i).apply(cur);
          if (s.insert(w)) work.push_back(std::move(w));
        }
        gens[static_cast<size_t>(n)].push_back(std::move(cur));
      }
    }
    spans.push_back(std::move(s));
  }
  std::vector<Matrix<F>> bases;
  for (int n = 0; n <= v.N; ++n)
    bases.push_back(spans[static_cast<size_t>(n)].basis_matrix());
  SubQuotientPair<F> out;
  out.U = submodule_on_bases(v, bases);
  out.W = quotient_by_spans(v, spans);
  return out;
}

// ---------------------------------------------------------------------------
// Finitely presented modules.

struct PresTerm {
  int gen = 0;       // generator index
  Injection inj;     // [m_gen] -> [degree of the relation]
  std::string coeff; // exact scalar literal
};

struct PresRelation {
  int degree = 0;
  std::vector<PresTerm> terms;
};

struct Presentation {
  std::vector<int> generator_degrees;
  std::vector<std::string> generator_labels;  // optional; filled by IO
  std::vector<PresRelation> relations;

  void check() const {
    for (const auto& rel : relations) {
      for (const auto& t : rel.terms) {
        if (t.gen < 0 || t.gen >= static_cast<int>(generator_degrees.size()))
          throw std::invalid_argument("relation term references unknown generator");
        if (t.inj.m != generator_degrees[static_cast<size_t>(t.gen)] ||
            t.inj.n != rel.degree)
          throw std::invalid_argument("relation term injection is ill-typed");
      }
    }
  }

  ExtDegree max_generator_degree() const {
    ExtDegree k = ExtDegree::neg_inf();
    for (int m : generator_degrees) k = max(k, ExtDegree::of(m));
    return k;
  }
  ExtDegree max_relation_degree() const {
    ExtDegree d = ExtDegree::neg_inf();
    for (const auto& r : relations) d = max(d, ExtDegree::of(r.degree));
    return d;
  }
};

// Generation/relation degree bounds carried alongside a presented module.
// k and d record the honest maxima (-inf for no generators / no relations);
// the bound statements quantify over valid k, d in Z_+, so the bound formulas
// clamp at 0 (a free module is related in degree <= 0 vacuously).
struct PresBounds {
  ExtDegree k = ExtDegree::neg_inf();
  ExtDegree d = ExtDegree::neg_inf();

  int k_eff() const { return k.is_finite() ? std::max(k.finite(), 0) : 0; }
  int d_eff() const { return d.is_finite() ? std::max(d.finite(), 0) : 0; }

  // min{k,d} + d - 1, the recurring certification bound (>= -1)
  ExtDegree ce_bound() const {
    return ExtDegree::of(std::min(k_eff(), d_eff()) + d_eff() - 1);
  }
  // min{k,d} + d
  ExtDegree acyclicity_bound() const { return ce_bound() + 1; }
};

template <FieldContext F>
struct PresentedModule {
  TruncatedFIModule<F> V;
  PresBounds bounds;
};

// Build P0/R where P0 is the free sum on the generators and R is the
// FI-submodule generated by the relation vectors. R is accumulated degree by
// degree: new relations enter at their own degree, lower levels are pushed up
// through inc, and the span is closed under the transpositions.
template <FieldContext F>
PresentedModule<F> from_presentation(const Presentation& pres, const F& field,
                                     int N) {
  pres.check();
  PresentedModule<F> out;
  out.bounds.k = pres.max_generator_degree();
  out.bounds.d = pres.max_relation_degree();
  if (pres.generator_degrees.empty()) {
    out.V = zero_module(field, N);
    return out;
  }
  FreeSumModule<F> p0 = free_sum_module(field, pres.generator_degrees, N);
  std::vector<SpanBuilder<F>> spans;
  std::vector<std::vector<std::vector<typename F::Elt>>> added(
      static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    SpanBuilder<F> s(field, p0.mod.dim(n));
    // push the previous level up
    std::vector<std::vector<typename F::Elt>> work;
    if (n >= 1) {
      for (const auto& row : added[static_cast<size_t>(n) - 1]) {
        std::vector<typename F::Elt> w(
            static_cast<size_t>(p0.mod.dim(n)), field.zero());
        for (size_t c = 0; c < row.size(); ++c) {
          if (row[c].is_zero()) continue;
          w[static_cast<size_t>(
              p0.inc_index[static_cast<size_t>(n) - 1][c])] = row[c];
        }
        if (s.insert(w)) work.push_back(std::move(w));
      }
    }
    // relations entering at this degree
    for (const auto& rel : pres.relations) {
      if (rel.degree != n) continue;
      std::vector<typename F::Elt> w(static_cast<size_t>(p0.mod.dim(n)),
                                     field.zero());
      for (const auto& t : rel.terms)
        w[static_cast<size_t>(p0.index_at(n, t.gen, t.inj.image))] +=
            field.parse(t.coeff);
      if (s.insert(w)) work.push_back(std::move(w));
    }
    // close under the transpositions (index permutations on the free basis)
    while (!work.empty()) {
      auto cur = std::move(work.back());
      work.pop_back();
      for (int i = 1; i <= n - 1; ++i) {
        const auto& perm = p0.act_index[static_cast<size_t>(n)][static_cast<size_t>(i - 1)];
        std::vector<typename F::Elt> w(cur.size(), field.zero());
        for (size_t c = 0; c < cur.size(); ++c) {
          if (cur[c].is_zero()) continue;
          w[static_cast<size_t>(perm[c])] = cur[c];
        }
        if (s.insert(w)) work.push_back(std::move(w));
      }
      added[static_cast<size_t>(n)].push_back(std::move(cur));
    }
    spans.push_back(std::move(s));
  }
  out.V = quotient_by_spans(p0.mod, spans);
  return out;
}

}  // namespace fihom
