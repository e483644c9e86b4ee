#include "bellcord/stirling_table.hpp"

#include <cstring>

#include "bellcord/errors.hpp"

namespace bellcord {

const char* table_kind_name(TableKind k) noexcept {
  switch (k) {
    case TableKind::classical: return "classical";
    case TableKind::restricted: return "restricted";
    case TableKind::even_block: return "even_block";
  }
  return "classical";
}

TableKind table_kind_from_name(const char* name) {
  require(name != nullptr, ErrorCode::invalid, "table kind name is null");
  if (std::strcmp(name, "classical") == 0) return TableKind::classical;
  if (std::strcmp(name, "restricted") == 0) return TableKind::restricted;
  if (std::strcmp(name, "even_block") == 0) return TableKind::even_block;
  fail(ErrorCode::invalid,
       std::string("unknown table kind '") + name +
           "' (expected classical, restricted or even_block)");
}

namespace {

// rows[k][r], k = 0..max_k.  Count of partitions of [k] into r blocks.
// Classical recurrence: element k+1 joins one of r blocks or founds a
// new one.
std::vector<std::vector<mpz_class>> build_classical(unsigned max_k) {
  std::vector<std::vector<mpz_class>> rows(max_k + 1);
  rows[0] = {mpz_class(1)};
  for (unsigned k = 0; k < max_k; ++k) {
    rows[k + 1].assign(k + 2, mpz_class(0));
    for (unsigned r = 0; r <= k; ++r) {
      if (rows[k][r] == 0) continue;
      rows[k + 1][r] += rows[k][r] * r;
      rows[k + 1][r + 1] += rows[k][r];
    }
  }
  return rows;
}

// No-singleton recurrence: element k+1 joins one of the r existing
// blocks, or pairs with one of the k earlier elements pulled out of a
// partition of the remaining k-1 elements.  The k = 0 step multiplies the
// (nonexistent) row -1 by zero, so seeding row 0 alone suffices.
std::vector<std::vector<mpz_class>> build_restricted(unsigned max_k) {
  std::vector<std::vector<mpz_class>> rows(max_k + 1);
  rows[0] = {mpz_class(1)};
  for (unsigned k = 0; k < max_k; ++k) {
    rows[k + 1].assign(k + 2, mpz_class(0));
    for (unsigned r = 0; r <= k; ++r) {
      if (rows[k][r] == 0) continue;
      rows[k + 1][r] += rows[k][r] * r;
    }
    if (k >= 1) {
      for (unsigned r = 0; r + 1 <= k; ++r) {
        if (rows[k - 1][r] == 0) continue;
        rows[k + 1][r + 1] += rows[k - 1][r] * k;
      }
    }
  }
  return rows;
}

// All-blocks-even counts via the block-containing-the-last-element
// decomposition: the block holding element k has even size j and its
// other j-1 members are chosen from the remaining k-1 elements.
std::vector<std::vector<mpz_class>> build_even_block(unsigned max_k) {
  std::vector<std::vector<mpz_class>> binom(max_k + 1);
  for (unsigned i = 0; i <= max_k; ++i) {
    binom[i].assign(i + 1, mpz_class(1));
    for (unsigned j = 1; j < i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }
  std::vector<std::vector<mpz_class>> rows(max_k + 1);
  rows[0] = {mpz_class(1)};
  for (unsigned k = 1; k <= max_k; ++k) {
    rows[k].assign(k + 1, mpz_class(0));
    for (unsigned j = 2; j <= k; j += 2) {
      const auto& prev = rows[k - j];
      for (unsigned r = 0; r + 1 < rows[k].size() && r < prev.size(); ++r) {
        if (prev[r] == 0) continue;
        rows[k][r + 1] += binom[k - 1][j - 1] * prev[r];
      }
    }
  }
  return rows;
}

}  // namespace

StirlingTable StirlingTable::build(TableKind kind, unsigned max_k) {
  require(max_k <= kExactTableCap, ErrorCode::size,
          "table max_k " + std::to_string(max_k) + " exceeds cap " +
              std::to_string(kExactTableCap));
  StirlingTable t(kind, max_k);
  switch (kind) {
    case TableKind::classical: t.rows_ = build_classical(max_k); break;
    case TableKind::restricted: t.rows_ = build_restricted(max_k); break;
    case TableKind::even_block: t.rows_ = build_even_block(max_k); break;
  }
  return t;
}

const mpz_class& StirlingTable::at(unsigned k, unsigned r) const {
  require(k <= max_k_, ErrorCode::size, "row index beyond table");
  require(r <= k, ErrorCode::invalid, "block count r must satisfy r <= k");
  return rows_[k][r];
}

const std::vector<mpz_class>& StirlingTable::row(unsigned k) const {
  require(k <= max_k_, ErrorCode::size, "row index beyond table");
  return rows_[k];
}

std::vector<mpz_class> StirlingTable::row_polynomial(unsigned k) const {
  return row(k);
}

}  // namespace bellcord
