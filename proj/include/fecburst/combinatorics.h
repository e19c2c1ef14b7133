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

#ifndef FECBURST_COMBINATORICS_H_
#define FECBURST_COMBINATORICS_H_

// Exact integer counting primitives. All functions are pure.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fecburst {

using Count = boost::multiprecision::cpp_int;

// n choose k. Zero when k < 0 or k > n. Throws DomainError for n < 0.
Count binomial(std::int64_t n, std::int64_t k);

// Ways to distribute m indistinguishable items into r boxes, i.e.
// binomial(r + m - 1, m), with multichoose(0, 0) = 1 and
// multichoose(0, m) = 0 for m > 0.
Count multichoose(std::int64_t r, std::int64_t m);

// Number of partitions of n into exactly j positive parts (order ignored).
Count partition_count(std::int64_t n, std::int64_t j);

// table[n][j] = partition_count(n, j) for 0 <= n <= max_n, 0 <= j <= max_j,
// with table[0][0] = 1.
std::vector<std::vector<Count>> partition_table(std::int64_t max_n,
                                                std::int64_t max_j);

// Number of ordered sequences of j positive integers summing to m.
Count composition_count(std::int64_t m, std::int64_t j);

// A class of loss vectors in a block that share the boundary flags (s, e),
// the row count j and the total loss count m. `multiplicity` counts the
// ordered run-length sequences in the class.
struct GroupedTerm {
  int s = 0;
  int j = 0;
  int m = 0;
  int e = 0;
  Count multiplicity;

  friend bool operator==(const GroupedTerm&, const GroupedTerm&) = default;
};

// Every (s, j, m, e) with s, e in {0, 1}, 1 <= j <= (n + 1) / 2, j <= m <= n
// and s + m + e + (j - 1) <= n, in lexicographic (s, j, m, e) order.
std::vector<GroupedTerm> enumerate_grouped_terms(int n);

// Number of blank positions a term leaves free to distribute among its gaps,
// and the number of gaps that may receive them. multichoose of the pair is
// the number of block patterns per ordered run sequence.
std::int64_t free_blanks(const GroupedTerm& term, int n);
std::int64_t open_gaps(const GroupedTerm& term);

// Number of block patterns of length n realizing a term:
// multiplicity * multichoose(open_gaps, free_blanks).
Count pattern_count(const GroupedTerm& term, int n);

double to_double(const Count& c);

}  // namespace fecburst

#endif  // FECBURST_COMBINATORICS_H_
