#ifndef POLYRANK_GAUSSIAN_RATIONAL_HPP
#define POLYRANK_GAUSSIAN_RATIONAL_HPP

// Exact arithmetic in Q(i): complex numbers with arbitrary-precision rational
// real and imaginary parts.  All comparisons against moduli are done through
// the rational surrogates lower_abs/upper_abs; nothing here ever rounds.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace polyrank {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat_abs(const Rational& q) { return Rational(abs(q)); }

class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}
  GaussianRational(Rational re, Rational im)
      : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long re) : re_(re), im_(0) {}
  GaussianRational(long re, long im) : re_(re), im_(im) {}

  static GaussianRational i() { return GaussianRational(0, 1); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, Rational(-im_)}; }

  // |z|^2, exact.
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  // max(|Re|,|Im|) <= |z|: rational lower bound on the modulus.
  Rational lower_abs() const {
    Rational a = rat_abs(re_), b = rat_abs(im_);
    return a >= b ? a : b;
  }

  // |Re|+|Im| >= |z|: rational upper bound on the modulus.
  Rational upper_abs() const { return Rational(rat_abs(re_) + rat_abs(im_)); }

  GaussianRational operator-() const {
    return {Rational(-re_), Rational(-im_)};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r(re_ * o.re_ - im_ * o.im_);
    Rational i(re_ * o.im_ + im_ * o.re_);
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    Rational n = o.norm();
    Rational r((re_ * o.re_ + im_ * o.im_) / n);
    Rational i((im_ * o.re_ - re_ * o.im_) / n);
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a,
                                    const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a,
                                    const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a,
                                    const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a,
                                    const GaussianRational& b) {
    return a /= b;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  GaussianRational inverse() const {
    GaussianRational one(1);
    return one /= *this;
  }

  // Integer power by repeated squaring; e >= 0.
  GaussianRational pow(unsigned long e) const {
    GaussianRational acc(1), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

 private:
  Rational re_, im_;
};

// Total order used only for canonical container placement (not a magnitude
// order): lexicographic on (re, im).
inline bool value_less(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re(), b.re());
  if (c != 0) return c < 0;
  return cmp(a.im(), b.im()) < 0;
}

}  // namespace polyrank

#endif
