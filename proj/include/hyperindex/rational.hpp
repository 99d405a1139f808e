// Copyright 2026 The hyperindex Authors
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

#ifndef HYPERINDEX_RATIONAL_HPP_
#define HYPERINDEX_RATIONAL_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperindex {

// GMP keeps every mpq_class result canonical (lowest terms, positive
// denominator) as long as values are built through make_rational or
// parse_rational.
using Rational = mpq_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

Rational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q". Returns nullopt on malformed text or q == 0.
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& r);
std::string to_string(const Vec& v);

inline int sign(const Rational& r) { return sgn(r); }

Vec zeros(std::size_t n);
Mat zeros(std::size_t rows, std::size_t cols);
Vec unit(std::size_t n, std::size_t i);
Rational sum(const Vec& v);
Rational dot(const Vec& a, const Vec& b);
Mat transpose(const Mat& m);

// Exact Gaussian elimination helpers.
Rational determinant(Mat m);
int rank(Mat m);
// Solves m x = rhs for square nonsingular m.
std::optional<Vec> solve(Mat m, Vec rhs);

}  // namespace hyperindex

#endif  // HYPERINDEX_RATIONAL_HPP_
