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

#include "subsetlab/exact.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace subsetlab {

BigRational::BigRational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto parse_int = [&](const std::string& part) {
    BigInt v;
    if (part.empty() || v.set_str(part, 10) != 0) {
      throw std::invalid_argument("malformed rational literal: " + s);
    }
    return v;
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return {parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1))};
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
      negative = whole[0] == '-';
      whole = whole.substr(1);
    }
    if (whole.empty()) whole = "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt value = parse_int(whole) * scale + (frac.empty() ? BigInt(0) : parse_int(frac));
    if (frac.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed rational literal: " + s);
    }
    return {negative ? BigInt(-value) : value, scale};
  }
  return BigRational(parse_int(s));
}

std::string BigRational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational abs(const BigRational& x) { return x.sign() < 0 ? -x : x; }

BigRational pow(const BigRational& base, unsigned exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
  return {num, den};
}

std::ostream& operator<<(std::ostream& os, const BigRational& x) { return os << x.str(); }

std::pair<BigInt, BigInt> split_square_free(const BigInt& n) {
  if (n < 1) throw std::domain_error("split_square_free: argument must be positive");
  BigInt rest = n;
  BigInt root = 1;
  BigInt free = 1;
  for (BigInt p = 2; p * p <= rest; ++p) {
    int power = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) {
      rest /= p;
      ++power;
    }
    for (int i = 0; i < power / 2; ++i) root *= p;
    if (power % 2 == 1) free *= p;
  }
  free *= rest;
  return {root, free};
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Surd::Surd(const BigRational& coefficient, const BigInt& radicand) : coeff_(coefficient) {
  if (radicand < 1) throw std::domain_error("Surd: radicand must be positive");
  if (coeff_.is_zero()) return;
  auto [root, free] = split_square_free(radicand);
  coeff_ *= BigRational(root);
  radicand_ = free;
}

Surd Surd::inverse_sqrt(const BigInt& n) {
  // 1/sqrt(n) = sqrt(n)/n
  return {BigRational(BigInt(1), n), n};
}

double Surd::to_double() const { return coeff_.to_double() * std::sqrt(radicand_.get_d()); }

std::string Surd::str() const {
  if (radicand_ == 1) return coeff_.str();
  return coeff_.str() + "*sqrt(" + radicand_.get_str() + ")";
}

Surd& Surd::operator+=(const Surd& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (radicand_ != o.radicand_) {
    throw std::domain_error("Surd: cannot add " + str() + " and " + o.str() + " exactly");
  }
  coeff_ += o.coeff_;
  if (coeff_.is_zero()) radicand_ = 1;
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  *this = Surd(coeff_ * o.coeff_, radicand_ * o.radicand_);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Surd& x) { return os << x.str(); }

}  // namespace subsetlab
