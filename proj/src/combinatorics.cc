// Copyright 2026 The fecburst Authors
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

#include "fecburst/combinatorics.h"

#include <algorithm>
#include <string>

#include "fecburst/errors.h"

namespace fecburst {

Count binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) {
    throw DomainError("binomial: n must be non-negative, got " +
                      std::to_string(n));
  }
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Each prefix product of i consecutive integers is divisible by i!.
  Count result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Count multichoose(std::int64_t r, std::int64_t m) {
  if (r < 0 || m < 0) {
    throw DomainError("multichoose: arguments must be non-negative");
  }
  if (r == 0) return m == 0 ? 1 : 0;
  return binomial(r + m - 1, m);
}

std::vector<std::vector<Count>> partition_table(std::int64_t max_n,
                                                std::int64_t max_j) {
  if (max_n < 0 || max_j < 0) {
    throw DomainError("partition_table: bounds must be non-negative");
  }
  std::vector<std::vector<Count>> table(
      max_n + 1, std::vector<Count>(max_j + 1, Count(0)));
  table[0][0] = 1;
  // p(n, j) = p(n - 1, j - 1) + p(n - j, j): either some part is 1, or every
  // part can be decreased by one.
  for (std::int64_t n = 1; n <= max_n; ++n) {
    for (std::int64_t j = 1; j <= std::min(n, max_j); ++j) {
      table[n][j] = table[n - 1][j - 1] + table[n - j][j];
    }
  }
  return table;
}

Count partition_count(std::int64_t n, std::int64_t j) {
  if (n < 1 || j < 1) {
    throw DomainError("partition_count: n and j must be positive");
  }
  if (j > n) return 0;
  return partition_table(n, j)[n][j];
}

Count composition_count(std::int64_t m, std::int64_t j) {
  if (m < 1 || j < 1) {
    throw DomainError("composition_count: m and j must be positive");
  }
  return binomial(m - 1, j - 1);
}

std::vector<GroupedTerm> enumerate_grouped_terms(int n) {
  if (n < 1) throw DomainError("enumerate_grouped_terms: n must be positive");
  std::vector<GroupedTerm> terms;
  const int max_rows = (n + 1) / 2;
  for (int s = 0; s <= 1; ++s) {
    for (int j = 1; j <= max_rows; ++j) {
      for (int m = j; m <= n; ++m) {
        for (int e = 0; e <= 1; ++e) {
          if (s + m + e + (j - 1) > n) continue;
          terms.push_back({s, j, m, e, composition_count(m, j)});
        }
      }
    }
  }
  return terms;
}

std::int64_t free_blanks(const GroupedTerm& term, int n) {
  return static_cast<std::int64_t>(n) - term.m - (term.j - 1) - term.s -
         term.e;
}

std::int64_t open_gaps(const GroupedTerm& term) {
  return term.j + 1 - (1 - term.s) - (1 - term.e);
}

Count pattern_count(const GroupedTerm& term, int n) {
  const std::int64_t blanks = free_blanks(term, n);
  if (blanks < 0) return 0;
  return term.multiplicity * multichoose(open_gaps(term), blanks);
}

double to_double(const Count& c) { return c.convert_to<double>(); }

}  // namespace fecburst
