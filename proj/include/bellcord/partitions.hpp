#pragma once

#include "bellcord/exact_polynomial.hpp"
#include "bellcord/stirling_table.hpp"

namespace bellcord {

// Filters applied by the enumeration oracle.
enum class BlockFilter {
  all,          // every set partition
  min_block_2,  // no singleton blocks
  even_blocks,  // every block of even size
};

const char* block_filter_name(BlockFilter f) noexcept;

// Largest k the explicit enumeration oracle accepts (Bell(13) ~ 2.7e7
// partitions; growth beyond that is unreasonable for a test oracle).
inline constexpr unsigned kOracleCap = 13;

// sum_r S(k,r) x^r over all partitions of a k-set; value at 1 is the
// k-th Bell number, and the polynomial is the k-th raw moment of a
// Poisson(x) variable.
ExactPolynomial bell_polynomial(unsigned k);

// Same sum over partitions with every block of size >= 2; the k-th
// central moment of Poisson(x).
ExactPolynomial restricted_bell_polynomial(unsigned k);

// Sum over partitions of a k2-set into blocks of even size.  With
// doubled_exponent=false the weight is x^{#blocks}; with true it is
// x^{2*#blocks}.  k2 must be even (odd k2 admits no such partition
// besides being rejected outright as a domain error).
ExactPolynomial even_block_bell_polynomial(unsigned k2,
                                           bool doubled_exponent = false);

// Brute-force oracle: iterate every set partition of {1..k} as a
// restricted-growth string, filter, and weight by x^{#blocks}.  Shares
// no code with the recurrence-built tables above.
ExactPolynomial enumerate_partitions_oracle(unsigned k, BlockFilter filter);

}  // namespace bellcord
