#include <catch2/catch_amalgamated.hpp>

#include "fihom/fincat.hpp"
#include "fihom/rng.hpp"

using namespace fihom;

TEST_CASE("compose_injections matches function composition") {
  Injection g(2, 3, {3, 1});
  Injection f(1, 2, {2});
  Injection gf = compose_injections(g, f);
  CHECK(gf.m == 1);
  CHECK(gf.n == 3);
  CHECK(gf.image == std::vector<int>{1});

  Injection id3 = Injection::identity(3);
  Injection any(3, 5, {2, 5, 1});
  CHECK(compose_injections(any, id3) == any);

  CHECK(compose_injections(Injection::standard(2, 3), Injection::standard(1, 2)) ==
        Injection::standard(1, 3));

  CHECK_THROWS(compose_injections(f, g));  // sizes do not match
}

TEST_CASE("factor_injection produces the canonical factorization") {
  SECTION("single transposition") {
    Injection f(1, 2, {2});
    auto fac = factor_injection(f);
    CHECK(fac.count == 1);
    CHECK(fac.sigma.one_line() == std::vector<int>{2, 1});
  }
  SECTION("standard inclusion factors through the identity") {
    Injection f = Injection::standard(2, 4);
    auto fac = factor_injection(f);
    CHECK(fac.count == 2);
    CHECK(fac.sigma.word.empty());
  }
  SECTION("canonical sigma on [3]") {
    Injection f(2, 3, {3, 1});
    auto fac = factor_injection(f);
    auto line = fac.sigma.one_line();
    CHECK(line == std::vector<int>{3, 1, 2});
    CHECK(fac.count == 1);
  }
}

TEST_CASE("factorization recomposes to the injection") {
  for (int m = 0; m <= 4; ++m) {
    for (int n = m; n <= 5; ++n) {
      for (const auto& f : enumerate_injections(m, n)) {
        auto fac = factor_injection(f);
        Injection recomposed = compose_injections(
            fac.sigma.as_injection(), Injection::standard(m, n));
        REQUIRE(recomposed == f);
      }
    }
  }
}

TEST_CASE("enumerate_injections counts and order") {
  CHECK(enumerate_injections(1, 3).size() == 3);
  CHECK(enumerate_injections(2, 3).size() == 6);
  CHECK(enumerate_injections(2, 1).empty());
  CHECK(enumerate_injections(0, 0).size() == 1);

  auto all = enumerate_injections(2, 3);
  // lexicographic and duplicate-free
  for (size_t i = 1; i < all.size(); ++i) REQUIRE(all[i - 1].image < all[i].image);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 5; ++n)
      REQUIRE(static_cast<std::int64_t>(enumerate_injections(m, n).size()) ==
              (m <= n ? falling_factorial(n, m) : 0));
}

TEST_CASE("permutation words evaluate consistently") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int n = static_cast<int>(rng.range(1, 6));
    std::vector<int> line;
    {
      std::vector<int> pool;
      for (int x = 1; x <= n; ++x) pool.push_back(x);
      while (!pool.empty()) {
        size_t p = static_cast<size_t>(rng.below(pool.size()));
        line.push_back(pool[p]);
        pool.erase(pool.begin() + static_cast<long>(p));
      }
    }
    Permutation s = Permutation::from_one_line(line);
    REQUIRE(s.one_line() == line);
    // parity agrees with inversion counting
    int inversions = 0;
    for (size_t i = 0; i < line.size(); ++i)
      for (size_t j = i + 1; j < line.size(); ++j)
        if (line[i] > line[j]) ++inversions;
    REQUIRE(s.sign() == (inversions % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("sorted_wedge_sign") {
  auto r = sorted_wedge_sign({2, 1});
  REQUIRE(r.has_value());
  CHECK(r->values == std::vector<int>{1, 2});
  CHECK(r->sign == -1);

  r = sorted_wedge_sign({1, 2, 3});
  REQUIRE(r.has_value());
  CHECK(r->sign == 1);

  r = sorted_wedge_sign({3, 1, 2});
  REQUIRE(r.has_value());
  CHECK(r->values == std::vector<int>{1, 2, 3});
  CHECK(r->sign == 1);

  CHECK_FALSE(sorted_wedge_sign({1, 1}).has_value());

  // parity equals the sign of the sorting permutation, independently
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = static_cast<int>(rng.range(1, 6));
    std::vector<int> vals;
    std::vector<int> pool;
    for (int x = 1; x <= 9; ++x) pool.push_back(x);
    for (int i = 0; i < n; ++i) {
      size_t p = static_cast<size_t>(rng.below(pool.size()));
      vals.push_back(pool[p]);
      pool.erase(pool.begin() + static_cast<long>(p));
    }
    int inversions = 0;
    for (size_t i = 0; i < vals.size(); ++i)
      for (size_t j = i + 1; j < vals.size(); ++j)
        if (vals[i] > vals[j]) ++inversions;
    auto sw = sorted_wedge_sign(vals);
    REQUIRE(sw.has_value());
    REQUIRE(sw->sign == (inversions % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("subsets_lex enumerates binomially many subsets in order") {
  auto s = subsets_lex(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s.front() == std::vector<int>{1, 2});
  CHECK(s.back() == std::vector<int>{3, 4});
  for (size_t i = 1; i < s.size(); ++i) REQUIRE(s[i - 1] < s[i]);
  CHECK(static_cast<std::int64_t>(subsets_lex(7, 3).size()) == binomial(7, 3));
  CHECK(subsets_lex(3, 5).empty());
}
