#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fihom {

// Exact scalars. Two fields are supported: Q with arbitrary-precision
// rationals (GMP), and F_p for a runtime prime p. No floating point enters
// the pipeline anywhere.

class Rational {
 public:
  Rational() : q_(0) {}
  explicit Rational(long v) : q_(v) {}
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    q_.canonicalize();
  }

  // Accepts "a" or "a/b" with integer a, b; everything else (in particular
  // decimal notation) is rejected.
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    size_t slash = s.find('/');
    auto check_int = [&](const std::string& t) {
      if (t.empty()) throw std::invalid_argument("bad rational literal: " + s);
      size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
      if (i == t.size()) throw std::invalid_argument("bad rational literal: " + s);
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9')
          throw std::invalid_argument("bad rational literal: " + s);
    };
    Rational r;
    if (slash == std::string::npos) {
      check_int(s);
      r.q_ = mpq_class(s);
    } else {
      check_int(s.substr(0, slash));
      check_int(s.substr(slash + 1));
      r.q_ = mpq_class(s);
      if (r.q_.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    }
    r.q_.canonicalize();
    return r;
  }

  bool is_zero() const { return sgn(q_) == 0; }
  std::string str() const { return q_.get_str(); }

  Rational operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
  }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Rational r;
    r.q_ = 1 / q_;
    return r;
  }

 private:
  mpq_class q_;
};

// Element of F_p. Each element carries its modulus; the default-constructed
// value is the neutral zero that combines with any modulus.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::int64_t v, std::uint32_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("modulus must be >= 2");
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  std::string str() const { return std::to_string(v_); }

  Fp operator-() const {
    if (v_ == 0) return *this;
    return raw(p_ - v_, p_);
  }
  Fp& operator+=(const Fp& o) {
    std::uint32_t p = merge(o);
    if (p == 0) return *this;  // both neutral zeros
    std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
    v_ = static_cast<std::uint32_t>(s >= p ? s - p : s);
    p_ = p;
    return *this;
  }
  Fp& operator-=(const Fp& o) { return *this += (-o); }
  Fp& operator*=(const Fp& o) {
    std::uint32_t p = merge(o);
    if (p == 0) return *this;
    v_ = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(v_) * o.v_) % p);
    p_ = p;
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw std::logic_error("mixing moduli");
    return a.v_ == b.v_;
  }

  Fp inv() const {
    if (v_ == 0) throw std::domain_error("inverse of zero");
    // extended Euclid on (v, p)
    std::int64_t a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (a != 1) throw std::domain_error("modulus not prime?");
    std::int64_t r = x0 % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return raw(static_cast<std::uint32_t>(r), p_);
  }

 private:
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp e;
    e.v_ = v;
    e.p_ = p;
    return e;
  }
  std::uint32_t merge(const Fp& o) {
    std::uint32_t p = p_ != 0 ? p_ : o.p_;
    if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
      throw std::logic_error("mixing moduli");
    return p;
  }
  std::uint32_t v_;
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Field contexts. Algorithms are templated on a small context object; the
// context mints constants and parses literals, while element arithmetic uses
// the operators above.

struct Rationals {
  using Elt = Rational;
  Elt zero() const { return Rational(); }
  Elt one() const { return Rational(1); }
  Elt from_long(long v) const { return Rational(v); }
  Elt parse(const std::string& s) const { return Rational::parse(s); }
  std::string name() const { return "Q"; }
  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

struct PrimeField {
  using Elt = Fp;
  std::uint32_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t p_) : p(p_) {
    if (!is_prime(p)) throw std::invalid_argument("modulus is not prime");
  }

  Elt zero() const { return Fp(0, p); }
  Elt one() const { return Fp(1, p); }
  Elt from_long(long v) const { return Fp(v, p); }
  Elt parse(const std::string& s) const {
    if (s.empty()) throw std::invalid_argument("empty F_p literal");
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad F_p literal: " + s);
    for (size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw std::invalid_argument("bad F_p literal (integers only): " + s);
    // reduce digit by digit so arbitrarily long literals are fine
    std::uint64_t acc = 0;
    for (size_t j = i; j < s.size(); ++j)
      acc = (acc * 10 + static_cast<std::uint64_t>(s[j] - '0')) % p;
    Fp e(static_cast<std::int64_t>(acc), p);
    return s[0] == '-' ? -e : e;
  }
  std::string name() const { return "F" + std::to_string(p); }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p == b.p;
  }
};

template <class F>
concept FieldContext = requires(const F f, const typename F::Elt a,
                                typename F::Elt b, long v, std::string s) {
  { f.zero() } -> std::same_as<typename F::Elt>;
  { f.one() } -> std::same_as<typename F::Elt>;
  { f.from_long(v) } -> std::same_as<typename F::Elt>;
  { f.parse(s) } -> std::same_as<typename F::Elt>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::same_as<std::string>;
  { a + a } -> std::same_as<typename F::Elt>;
  { a - a } -> std::same_as<typename F::Elt>;
  { a * a } -> std::same_as<typename F::Elt>;
  { a / a } -> std::same_as<typename F::Elt>;
  { -a } -> std::same_as<typename F::Elt>;
  { a == a } -> std::same_as<bool>;
};

// Runtime description of the base field, as it appears in module files.
struct FieldSpec {
  enum class Tag { Rationals, Prime };
  Tag tag = Tag::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {Tag::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p_) {
    if (!PrimeField::is_prime(p_))
      throw std::invalid_argument("field modulus " + std::to_string(p_) +
                                  " is not prime");
    return {Tag::Prime, p_};
  }
  bool is_rational() const { return tag == Tag::Rationals; }
  std::string str() const {
    return is_rational() ? "Q" : "F" + std::to_string(p);
  }
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.tag == b.tag && a.p == b.p;
  }
};

}  // namespace fihom
