// Copyright 2026 The subsetlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file exact.hpp
/// \brief Exact scalars: arbitrary-precision integers, rationals in lowest
/// terms, and rational multiples of square roots of square-free integers.

#ifndef SUBSETLAB_EXACT_HPP
#define SUBSETLAB_EXACT_HPP

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace subsetlab {

using BigInt = mpz_class;

/// Rational number with arbitrary-precision numerator and denominator.
///
/// Always canonical: lowest terms, positive denominator. Operators return
/// BigRational rather than GMP expression templates so the type composes
/// with Eigen and generic code.
class BigRational {
 public:
  BigRational() = default;
  BigRational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  BigRational(unsigned long v) : q_(v) {}  // NOLINT
  BigRational(unsigned long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  BigRational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p", "p/q", or a finite decimal such as "-0.25" exactly.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }

  /// "p/q", or "p" when the denominator is one.
  std::string str() const;

  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

BigRational abs(const BigRational& x);
BigRational pow(const BigRational& base, unsigned exponent);
std::ostream& operator<<(std::ostream& os, const BigRational& x);

/// Exact value coefficient * sqrt(radicand) with radicand square-free.
///
/// Zero is stored with radicand 1. Sums are defined only between values
/// sharing a radicand (or with a zero operand); that is all the type-basis
/// density matrices require, since every entry (theta, phi) carries the same
/// normalisation across all subsets.
class Surd {
 public:
  Surd() = default;
  Surd(const BigRational& c) : coeff_(c) {}  // NOLINT(google-explicit-constructor)
  Surd(int c) : coeff_(c) {}  // NOLINT(google-explicit-constructor)
  Surd(const BigRational& coefficient, const BigInt& radicand);

  /// 1 / sqrt(n) for n >= 1.
  static Surd inverse_sqrt(const BigInt& n);

  const BigRational& coefficient() const { return coeff_; }
  const BigInt& radicand() const { return radicand_; }
  bool is_zero() const { return coeff_.is_zero(); }
  bool is_rational() const { return radicand_ == 1; }
  double to_double() const;
  std::string str() const;

  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o) { return *this += -o; }
  Surd& operator*=(const Surd& o);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator-(const Surd& a) {
    Surd r = a;
    r.coeff_ = -r.coeff_;
    return r;
  }
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
  }

 private:
  BigRational coeff_{0};
  BigInt radicand_{1};
};

std::ostream& operator<<(std::ostream& os, const Surd& x);

/// Splits n >= 1 into square * square_free; returns {root of square, square_free}.
std::pair<BigInt, BigInt> split_square_free(const BigInt& n);

/// Integer factorial n! for n >= 0.
BigInt factorial(unsigned long n);

}  // namespace subsetlab

namespace Eigen {

template <>
struct NumTraits<subsetlab::BigRational> : GenericNumTraits<subsetlab::BigRational> {
  using Real = subsetlab::BigRational;
  using NonInteger = subsetlab::BigRational;
  using Nested = subsetlab::BigRational;
  using Literal = subsetlab::BigRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 100
  };
};

template <>
struct NumTraits<subsetlab::Surd> : GenericNumTraits<subsetlab::Surd> {
  using Real = subsetlab::Surd;
  using NonInteger = subsetlab::Surd;
  using Nested = subsetlab::Surd;
  using Literal = subsetlab::Surd;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen

#endif  // SUBSETLAB_EXACT_HPP
