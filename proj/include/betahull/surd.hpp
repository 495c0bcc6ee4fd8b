#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "betahull/rational.hpp"

namespace betahull {

/// Exact element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
///
/// D must be a positive non-square integer; ordering is exact, so the
/// templated exact kernels (congruence diagonalisation, polytope
/// maximisation) run unchanged on configurations with coordinates such as
/// sqrt(3)/2.
template <unsigned long D>
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(int value) : rational_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(Rational rational, Rational irrational = 0)  // NOLINT
      : rational_(std::move(rational)), irrational_(std::move(irrational)) {}

  static QuadraticSurd root() { return QuadraticSurd(Rational(0), Rational(1)); }

  const Rational& rational_part() const { return rational_; }
  const Rational& irrational_part() const { return irrational_; }

  int sign() const {
    const int sa = sgn(rational_);
    const int sb = sgn(irrational_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    // Opposite signs: compare a^2 with b^2 * D.
    Rational lhs = rational_ * rational_;
    Rational rhs = irrational_ * irrational_ * static_cast<unsigned long>(D);
    const int c = cmp(lhs, rhs);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
  }

  QuadraticSurd operator-() const { return {Rational(-rational_), Rational(-irrational_)}; }

  QuadraticSurd& operator+=(const QuadraticSurd& o) {
    rational_ += o.rational_;
    irrational_ += o.irrational_;
    return *this;
  }
  QuadraticSurd& operator-=(const QuadraticSurd& o) {
    rational_ -= o.rational_;
    irrational_ -= o.irrational_;
    return *this;
  }
  QuadraticSurd& operator*=(const QuadraticSurd& o) {
    Rational a = rational_ * o.rational_ + irrational_ * o.irrational_ * static_cast<unsigned long>(D);
    Rational b = rational_ * o.irrational_ + irrational_ * o.rational_;
    rational_ = std::move(a);
    irrational_ = std::move(b);
    return *this;
  }
  QuadraticSurd& operator/=(const QuadraticSurd& o) {
    Rational norm = o.rational_ * o.rational_ - o.irrational_ * o.irrational_ * static_cast<unsigned long>(D);
    QuadraticSurd conj(Rational(o.rational_ / norm), Rational(-o.irrational_ / norm));
    return *this *= conj;
  }

  friend QuadraticSurd operator+(QuadraticSurd a, const QuadraticSurd& b) { return a += b; }
  friend QuadraticSurd operator-(QuadraticSurd a, const QuadraticSurd& b) { return a -= b; }
  friend QuadraticSurd operator*(QuadraticSurd a, const QuadraticSurd& b) { return a *= b; }
  friend QuadraticSurd operator/(QuadraticSurd a, const QuadraticSurd& b) { return a /= b; }

  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.rational_ == b.rational_ && a.irrational_ == b.irrational_;
  }
  friend bool operator<(const QuadraticSurd& a, const QuadraticSurd& b) { return (a - b).sign() < 0; }
  friend bool operator>(const QuadraticSurd& a, const QuadraticSurd& b) { return b < a; }

  double to_double() const {
    return rational_.get_d() + irrational_.get_d() * std::sqrt(static_cast<double>(D));
  }

  std::string to_string() const {
    return betahull::to_string(rational_) + " + " + betahull::to_string(irrational_) + "*sqrt(" +
           std::to_string(D) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s) { return os << s.to_string(); }

 private:
  Rational rational_{0};
  Rational irrational_{0};
};

template <unsigned long D>
int sign_of(const QuadraticSurd<D>& value) {
  return value.sign();
}

template <unsigned long D>
bool is_zero(const QuadraticSurd<D>& value) {
  return value.sign() == 0;
}

template <unsigned long D>
double to_double(const QuadraticSurd<D>& value) {
  return value.to_double();
}

}  // namespace betahull
