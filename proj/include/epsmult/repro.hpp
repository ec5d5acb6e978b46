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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "epsmult/asymptotics.hpp"
#include "epsmult/ideal.hpp"
#include "epsmult/serialize.hpp"

namespace epsmult {

// sum_{a=1}^n ceil(n^2 / a)
Natural hyperbola_ceil_sum(std::uint64_t n);
// Closed form for l(R/(J_n + J'_n)).
Natural hyperbola_sum_closed_form(std::uint64_t n);
// Closed form printed for l(R/(Y^(n-1) J_n + X^(n-1) J'_n)); it does not
// match direct counts and is kept only to report the discrepancy.
Natural sandwich_lower_closed_form(std::uint64_t n);

// Epsilon of I from an exact fit of l(R/I^n) over 1 <= n <= max_n. Starts
// at d + 1 and moves the window start up until a fit exists.
struct EpsilonFit {
  QuasiPolynomial fit;
  EpsilonReport report;
  // Whether refitting from start + 1 gives the same top form; nullopt when
  // the shorter window has too little data.
  std::optional<bool> stable;
};

EpsilonFit fit_epsilon(const MonomialIdeal& ideal, std::uint64_t max_n = 12, unsigned threads = 1);

// A nonzero ideal with between 1 and max_gens generators, exponents <= max_exp.
MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t d, unsigned max_exp, std::size_t max_gens);

struct ReproOptions {
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

struct ReproResult {
  std::string name;
  bool pass = false;
  Json report;
};

const std::vector<std::string>& repro_cases();
// Throws PreconditionError for an unknown case.
ReproResult run_repro(std::string_view name, const ReproOptions& options = {});

}  // namespace epsmult
