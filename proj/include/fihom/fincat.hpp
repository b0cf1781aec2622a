#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fihom {

// Combinatorics of the category of standard finite sets [n] = {1,...,n} with
// injective maps. Everything here is 1-based to match the usual notation;
// matrix code downstream is 0-based.

// An injective map f: [m] -> [n], stored as the image list (f(1),...,f(m)).
struct Injection {
  int m = 0;
  int n = 0;
  std::vector<int> image;

  Injection() = default;
  Injection(int m_, int n_, std::vector<int> image_)
      : m(m_), n(n_), image(std::move(image_)) {
    check();
  }

  static Injection identity(int n_) {
    std::vector<int> img(static_cast<size_t>(n_));
    std::iota(img.begin(), img.end(), 1);
    return Injection(n_, n_, std::move(img));
  }

  // The standard inclusion [m] -> [n], i |-> i.
  static Injection standard(int m_, int n_) {
    if (m_ > n_) throw std::invalid_argument("standard inclusion needs m <= n");
    std::vector<int> img(static_cast<size_t>(m_));
    std::iota(img.begin(), img.end(), 1);
    return Injection(m_, n_, std::move(img));
  }

  int operator()(int i) const { return image[static_cast<size_t>(i - 1)]; }

  bool is_identity() const {
    if (m != n) return false;
    for (int i = 1; i <= m; ++i)
      if ((*this)(i) != i) return false;
    return true;
  }

  friend bool operator==(const Injection& a, const Injection& b) {
    return a.m == b.m && a.n == b.n && a.image == b.image;
  }

  void check() const {
    if (m < 0 || n < 0 || m > n || static_cast<int>(image.size()) != m)
      throw std::invalid_argument("malformed injection");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : image) {
      if (v < 1 || v > n || seen[static_cast<size_t>(v)])
        throw std::invalid_argument("injection image not distinct/in range");
      seen[static_cast<size_t>(v)] = 1;
    }
  }

  std::string str() const {
    std::string s = "[";
    for (size_t i = 0; i < image.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(image[i]);
    }
    s += "]:" + std::to_string(m) + "->" + std::to_string(n);
    return s;
  }
};

// A permutation of [n], carried as a word of adjacent transpositions.
// word = (w_1,...,w_L) means sigma = s_{w_1} o s_{w_2} o ... o s_{w_L}
// (rightmost letter applied first), where s_i swaps i and i+1.
struct Permutation {
  int n = 0;
  std::vector<int> word;

  Permutation() = default;
  Permutation(int n_, std::vector<int> word_) : n(n_), word(std::move(word_)) {
    for (int w : word)
      if (w < 1 || w >= n) throw std::invalid_argument("bad transposition index");
  }

  static Permutation identity(int n_) { return Permutation(n_, {}); }

  // One-line notation (sigma(1),...,sigma(n)) obtained by evaluating the word.
  std::vector<int> one_line() const {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    // apply letters right to left: v <- s_w(v) pointwise on values
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      for (auto& x : v) {
        if (x == *it) {
          x = *it + 1;
        } else if (x == *it + 1) {
          x = *it;
        }
      }
    }
    return v;
  }

  int operator()(int i) const {
    int x = i;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (x == *it) x = *it + 1;
      else if (x == *it + 1) x = *it;
    }
    return x;
  }

  int sign() const { return word.size() % 2 == 0 ? 1 : -1; }

  // Factor a one-line permutation into adjacent transpositions by bubble
  // sorting the positions. The recorded swaps multiply on the right, so the
  // word is their reverse.
  static Permutation from_one_line(const std::vector<int>& line) {
    int n_ = static_cast<int>(line.size());
    std::vector<int> a = line;
    {
      std::vector<char> seen(static_cast<size_t>(n_) + 1, 0);
      for (int v : a) {
        if (v < 1 || v > n_ || seen[static_cast<size_t>(v)])
          throw std::invalid_argument("not a permutation");
        seen[static_cast<size_t>(v)] = 1;
      }
    }
    std::vector<int> swaps;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i + 1 < n_; ++i) {
        if (a[static_cast<size_t>(i)] > a[static_cast<size_t>(i) + 1]) {
          std::swap(a[static_cast<size_t>(i)], a[static_cast<size_t>(i) + 1]);
          swaps.push_back(i + 1);
          moved = true;
        }
      }
    }
    std::reverse(swaps.begin(), swaps.end());
    return Permutation(n_, std::move(swaps));
  }

  Injection as_injection() const {
    return Injection(n, n, one_line());
  }
};

// Canonical basis label of a wedge monomial: a strictly increasing subset of [n].
struct WedgeIndex {
  int n = 0;
  std::vector<int> subset;

  WedgeIndex() = default;
  WedgeIndex(int n_, std::vector<int> subset_)
      : n(n_), subset(std::move(subset_)) {
    int prev = 0;
    for (int v : subset) {
      if (v <= prev || v > n) throw std::invalid_argument("wedge index not increasing");
      prev = v;
    }
  }

  friend bool operator==(const WedgeIndex& a, const WedgeIndex& b) {
    return a.n == b.n && a.subset == b.subset;
  }
};

// g o f for f: [m] -> [k], g: [k] -> [n].
inline Injection compose_injections(const Injection& g, const Injection& f) {
  if (f.n != g.m)
    throw std::invalid_argument("compose_injections: size mismatch (f.n != g.m)");
  std::vector<int> img(static_cast<size_t>(f.m));
  for (int j = 1; j <= f.m; ++j) img[static_cast<size_t>(j - 1)] = g(f(j));
  return Injection(f.m, g.n, std::move(img));
}

// Every injection factors as sigma o (standard inclusion). Returns the
// canonical sigma in S_n mapping m+1..n increasingly onto the complement of
// the image, together with count = n - m.
struct InjectionFactorization {
  Permutation sigma;
  int count = 0;
};

inline std::vector<int> complement_of_image(const Injection& f) {
  std::vector<char> hit(static_cast<size_t>(f.n) + 1, 0);
  for (int v : f.image) hit[static_cast<size_t>(v)] = 1;
  std::vector<int> comp;
  for (int v = 1; v <= f.n; ++v)
    if (!hit[static_cast<size_t>(v)]) comp.push_back(v);
  return comp;
}

// Variant with an explicit ordering of the complement values assigned to the
// slots m+1..n; used to test that induced maps do not depend on the choice.
inline InjectionFactorization factor_injection_with_complement(
    const Injection& f, const std::vector<int>& complement_order) {
  std::vector<int> line(static_cast<size_t>(f.n));
  for (int j = 1; j <= f.m; ++j) line[static_cast<size_t>(j - 1)] = f(j);
  if (static_cast<int>(complement_order.size()) != f.n - f.m)
    throw std::invalid_argument("complement order has wrong length");
  for (int j = 0; j < f.n - f.m; ++j)
    line[static_cast<size_t>(f.m + j)] = complement_order[static_cast<size_t>(j)];
  return {Permutation::from_one_line(line), f.n - f.m};
}

inline InjectionFactorization factor_injection(const Injection& f) {
  return factor_injection_with_complement(f, complement_of_image(f));
}

// All injections [m] -> [n] in lexicographic order of their image tuples.
// Empty when m > n; the count is n!/(n-m)!.
inline std::vector<Injection> enumerate_injections(int m, int n) {
  std::vector<Injection> out;
  if (m > n || m < 0 || n < 0) return out;
  std::vector<int> cur(static_cast<size_t>(m));
  std::vector<char> used(static_cast<size_t>(n) + 1, 0);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      out.emplace_back(m, n, cur);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<size_t>(v)]) continue;
      used[static_cast<size_t>(v)] = 1;
      cur[static_cast<size_t>(depth)] = v;
      self(self, depth + 1);
      used[static_cast<size_t>(v)] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

inline std::int64_t falling_factorial(int n, int m) {
  std::int64_t r = 1;
  for (int i = 0; i < m; ++i) r *= (n - i);
  return m <= n ? r : 0;
}

// Sort a wedge monomial into the canonical increasing order, returning the
// parity of the sorting permutation. A repeated value means the monomial is
// zero and nullopt is returned.
struct SortedWedge {
  std::vector<int> values;
  int sign = 1;
};

inline std::optional<SortedWedge> sorted_wedge_sign(std::vector<int> values) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < values.size(); ++i) {
    int x = values[i];
    size_t j = i;
    while (j > 0 && values[j - 1] > x) {
      values[j] = values[j - 1];
      sign = -sign;
      --j;
    }
    values[j] = x;
  }
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) return std::nullopt;
  return SortedWedge{std::move(values), sign};
}

// Enumerate the size-a subsets of [n] as increasing lists, lexicographically.
inline std::vector<std::vector<int>> subsets_lex(int n, int a) {
  std::vector<std::vector<int>> out;
  if (a < 0 || a > n) return out;
  std::vector<int> cur(static_cast<size_t>(a));
  auto rec = [&](auto&& self, int depth, int start) -> void {
    if (depth == a) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n - (a - depth - 1); ++v) {
      cur[static_cast<size_t>(depth)] = v;
      self(self, depth + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  return out;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace fihom
