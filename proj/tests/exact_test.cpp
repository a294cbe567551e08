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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace subsetlab {
namespace {

TEST(BigRational, CanonicalForm) {
  const BigRational q(BigInt(6), BigInt(-8));
  EXPECT_EQ(q.numerator(), BigInt(-3));
  EXPECT_EQ(q.denominator(), BigInt(4));
  EXPECT_EQ(q.str(), "-3/4");
  EXPECT_THROW(BigRational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(BigRational, Parse) {
  EXPECT_EQ(BigRational::parse("1/2"), BigRational(1, 2));
  EXPECT_EQ(BigRational::parse("0.25"), BigRational(1, 4));
  EXPECT_EQ(BigRational::parse("3"), BigRational(3));
  EXPECT_EQ(BigRational::parse("-0.5"), BigRational(-1, 2));
  EXPECT_THROW(BigRational::parse("x"), std::invalid_argument);
  EXPECT_THROW(BigRational::parse("1/0"), std::domain_error);
}

TEST(BigRational, ArithmeticAndOrder) {
  const BigRational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, BigRational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, BigRational(1, 18));
  EXPECT_EQ(a / b, BigRational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(abs(BigRational(-2, 5)), BigRational(2, 5));
  EXPECT_EQ(pow(BigRational(-1, 2), 3), BigRational(-1, 8));
  EXPECT_EQ(pow(BigRational(7, 3), 0), BigRational(1));
  EXPECT_DOUBLE_EQ(BigRational(1, 3).to_double(), 1.0 / 3.0);
}

TEST(Factorial, SmallValues) {
  EXPECT_EQ(factorial(0), BigInt(1));
  EXPECT_EQ(factorial(5), BigInt(120));
  EXPECT_EQ(factorial(20), BigInt("2432902008176640000"));
}

TEST(Surd, SquareFreeCanonicalisation) {
  const Surd s(BigRational(1), BigInt(12));  // sqrt 12 = 2 sqrt 3
  EXPECT_EQ(s.coefficient(), BigRational(2));
  EXPECT_EQ(s.radicand(), BigInt(3));
  EXPECT_EQ(Surd(BigRational(3), BigInt(49)), Surd(BigRational(21)));
  EXPECT_THROW(Surd(BigRational(1), BigInt(0)), std::domain_error);
}

TEST(Surd, InverseSqrt) {
  const Surd s = Surd::inverse_sqrt(BigInt(8));  // 1/(2 sqrt 2) = sqrt2 / 4
  EXPECT_EQ(s.coefficient(), BigRational(1, 4));
  EXPECT_EQ(s.radicand(), BigInt(2));
  EXPECT_NEAR(s.to_double(), 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(Surd, ArithmeticOnMatchingRadicands) {
  const Surd a(BigRational(1, 2), BigInt(2));
  EXPECT_EQ(a + a, Surd(BigRational(1), BigInt(2)));
  EXPECT_EQ(a * a, Surd(BigRational(1, 2)));
  EXPECT_EQ(a + Surd(0), a);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_THROW(a + Surd(BigRational(1), BigInt(3)), std::domain_error);
}

TEST(Surd, SplitSquareFree) {
  const auto [root, free] = split_square_free(BigInt(72));
  EXPECT_EQ(root, BigInt(6));
  EXPECT_EQ(free, BigInt(2));
}

}  // namespace
}  // namespace subsetlab
