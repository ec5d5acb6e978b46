// Copyright 2026 The epsmult Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace epsmult {

using Natural = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical "p/q" form: gcd(p, q) = 1, q > 0. Integers keep the "/1".
std::string to_string(const Rational& r);
std::string to_string(const Natural& n);

// Accepts "p/q", "p" and optional leading '-'.
Rational parse_rational(std::string_view text);
Natural parse_natural(std::string_view text);

// Floor of the square root of a nonnegative integer.
Natural isqrt(const Natural& n);
bool is_perfect_square(const Natural& n);

Natural factorial(std::size_t n);
Natural binomial(std::size_t n, std::size_t k);

// Narrowing with an explicit overflow check.
std::optional<std::int64_t> to_int64(const Natural& n);
double to_double(const Rational& r);

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

// Exact Gaussian elimination over Q.
std::size_t rank(RationalMatrix m);
Rational determinant(RationalMatrix m);

// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<RationalVector> null_space(RationalMatrix m, std::size_t cols);

// Unique solution of a square nonsingular system, nullopt when singular.
std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b);

}  // namespace epsmult
