#pragma once

#include <cassert>
#include <compare>
#include <stdexcept>
#include <string>

namespace fihom {

// Degree value extended by -inf and +inf, following the convention that the
// supremum of an empty set is -inf and the infimum is +inf.
class ExtDegree {
 public:
  constexpr ExtDegree() : kind_(Kind::NegInf), v_(0) {}

  static constexpr ExtDegree neg_inf() { return ExtDegree(Kind::NegInf, 0); }
  static constexpr ExtDegree pos_inf() { return ExtDegree(Kind::PosInf, 0); }
  static constexpr ExtDegree of(int n) { return ExtDegree(Kind::Finite, n); }

  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }

  constexpr int finite() const {
    assert(is_finite());
    return v_;
  }

  // Shifting an infinite value by a finite amount keeps it infinite.
  constexpr ExtDegree operator+(int k) const {
    return is_finite() ? of(v_ + k) : *this;
  }
  constexpr ExtDegree operator-(int k) const { return *this + (-k); }

  friend constexpr bool operator==(const ExtDegree& a, const ExtDegree& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtDegree& a,
                                                    const ExtDegree& b) {
    if (a.kind_ != b.kind_) {
      return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    }
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    return a.v_ <=> b.v_;
  }

  friend constexpr ExtDegree max(const ExtDegree& a, const ExtDegree& b) {
    return a < b ? b : a;
  }
  friend constexpr ExtDegree min(const ExtDegree& a, const ExtDegree& b) {
    return a < b ? a : b;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return std::to_string(v_);
    }
  }

  static ExtDegree parse(const std::string& s) {
    if (s == "-inf") return neg_inf();
    if (s == "+inf" || s == "inf") return pos_inf();
    return of(std::stoi(s));
  }

 private:
  enum class Kind { NegInf = -1, Finite = 0, PosInf = 1 };
  constexpr ExtDegree(Kind k, int v) : kind_(k), v_(v) {}
  Kind kind_;
  int v_;
};

}  // namespace fihom
