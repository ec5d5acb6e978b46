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

#include "epsmult/numeric.hpp"

#include <cctype>
#include <limits>
#include <utility>

#include "epsmult/error.hpp"

namespace epsmult {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& r) {
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

std::string to_string(const Natural& n) { return n.str(); }

Natural parse_natural(std::string_view text) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) throw ParseError("empty integer literal");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("invalid integer literal '" + std::string(text) + "'");
    }
  }
  Natural value{std::string(digits)};
  return negative ? Natural(-value) : value;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_natural(text));
  Natural num = parse_natural(text.substr(0, slash));
  Natural den = parse_natural(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Natural isqrt(const Natural& n) {
  if (n < 0) throw PreconditionError("isqrt of a negative integer");
  if (n < 2) return n;
  return mp::sqrt(n);
}

bool is_perfect_square(const Natural& n) {
  if (n < 0) return false;
  Natural s = isqrt(n);
  return s * s == n;
}

Natural factorial(std::size_t n) {
  Natural f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Natural binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Natural b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    b *= n - i;
    b /= i + 1;
  }
  return b;
}

std::optional<std::int64_t> to_int64(const Natural& n) {
  static const Natural lo = std::numeric_limits<std::int64_t>::min();
  static const Natural hi = std::numeric_limits<std::int64_t>::max();
  if (n < lo || n > hi) return std::nullopt;
  return n.convert_to<std::int64_t>();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

// Reduced row echelon form in place, pivoting only in the first `cols`
// columns; any trailing columns are carried along. Returns pivot columns.
std::vector<std::size_t> echelonize(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const std::size_t width = m[row].size();
    Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < width; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j < width; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  std::size_t cols = m.front().size();
  return echelonize(m, cols).size();
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i][col] == 0) continue;
      Rational f = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  return det;
}

std::vector<RationalVector> null_space(RationalMatrix m, std::size_t cols) {
  std::vector<std::size_t> pivots = echelonize(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  std::vector<std::size_t> pivots = echelonize(a, n);
  if (pivots.size() < n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace epsmult
