#include "bellcord/partitions.hpp"

#include <string>
#include <vector>

#include "bellcord/errors.hpp"

namespace bellcord {

const char* block_filter_name(BlockFilter f) noexcept {
  switch (f) {
    case BlockFilter::all: return "all";
    case BlockFilter::min_block_2: return "min_block_2";
    case BlockFilter::even_blocks: return "even_blocks";
  }
  return "all";
}

ExactPolynomial bell_polynomial(unsigned k) {
  auto table = StirlingTable::build(TableKind::classical, k);
  return ExactPolynomial(table.row_polynomial(k));
}

ExactPolynomial restricted_bell_polynomial(unsigned k) {
  auto table = StirlingTable::build(TableKind::restricted, k);
  return ExactPolynomial(table.row_polynomial(k));
}

ExactPolynomial even_block_bell_polynomial(unsigned k2, bool doubled_exponent) {
  if (k2 == 0) return ExactPolynomial::constant(1);  // the empty partition
  require(k2 % 2 == 0, ErrorCode::domain,
          "k2 = " + std::to_string(k2) + " is odd; even-block partitions "
          "need an even ground-set size");
  auto table = StirlingTable::build(TableKind::even_block, k2);
  std::vector<mpz_class> row = table.row_polynomial(k2);
  if (!doubled_exponent) return ExactPolynomial(std::move(row));
  std::vector<mpz_class> spread(2 * row.size() - 1, mpz_class(0));
  for (size_t r = 0; r < row.size(); ++r) spread[2 * r] = row[r];
  return ExactPolynomial(std::move(spread));
}

ExactPolynomial enumerate_partitions_oracle(unsigned k, BlockFilter filter) {
  require(k <= kOracleCap, ErrorCode::size,
          "enumeration oracle limited to k <= " + std::to_string(kOracleCap));
  std::vector<mpz_class> counts(k + 1, mpz_class(0));
  if (k == 0) {
    // The empty partition has zero blocks and passes every filter.
    counts[0] = 1;
    return ExactPolynomial(std::move(counts));
  }
  // Restricted-growth strings: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).
  // m[i] caches that running max so increments are O(1) to validate.
  std::vector<unsigned> a(k, 0), m(k, 0);
  std::vector<unsigned> block_size(k + 1);
  for (;;) {
    unsigned blocks = m[k - 1] + 1;
    std::fill(block_size.begin(), block_size.begin() + blocks, 0u);
    for (unsigned i = 0; i < k; ++i) ++block_size[a[i]];
    bool keep = true;
    if (filter == BlockFilter::min_block_2) {
      for (unsigned b = 0; b < blocks && keep; ++b)
        keep = block_size[b] >= 2;
    } else if (filter == BlockFilter::even_blocks) {
      for (unsigned b = 0; b < blocks && keep; ++b)
        keep = block_size[b] % 2 == 0;
    }
    if (keep) counts[blocks] += 1;

    // Advance to the next string: find the rightmost position that can
    // still grow, bump it, reset everything to its right to 0.
    unsigned i = k;
    while (i-- > 1) {
      if (a[i] <= m[i - 1]) {
        ++a[i];
        m[i] = std::max(m[i - 1], a[i]);
        for (unsigned j = i + 1; j < k; ++j) {
          a[j] = 0;
          m[j] = m[i];
        }
        break;
      }
    }
    if (i == 0) break;  // a[1..] were all maxed out
  }
  return ExactPolynomial(std::move(counts));
}

}  // namespace bellcord
