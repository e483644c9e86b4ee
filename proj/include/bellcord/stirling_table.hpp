#pragma once

#include <gmpxx.h>

#include <vector>

namespace bellcord {

// Which block-size restriction a partition-count table carries.
enum class TableKind {
  classical,   // all set partitions
  restricted,  // every block has size >= 2
  even_block,  // every block has even size
};

const char* table_kind_name(TableKind k) noexcept;
TableKind table_kind_from_name(const char* name);

// Largest k for which exact integer tables are built eagerly.
inline constexpr unsigned kExactTableCap = 512;

// Triangle of exact block counts: at(k, r) = number of partitions of a
// k-element set into exactly r blocks obeying the kind's restriction.
// Rows 0..max_k are stored; row k has entries r = 0..k.
class StirlingTable {
 public:
  static StirlingTable build(TableKind kind, unsigned max_k);

  TableKind kind() const { return kind_; }
  unsigned max_k() const { return max_k_; }
  const mpz_class& at(unsigned k, unsigned r) const;
  const std::vector<mpz_class>& row(unsigned k) const;

  // Row k as the coefficient vector of a polynomial in the block-count
  // marker x: sum_r at(k, r) x^r.
  std::vector<mpz_class> row_polynomial(unsigned k) const;

 private:
  StirlingTable(TableKind kind, unsigned max_k)
      : kind_(kind), max_k_(max_k) {}
  TableKind kind_;
  unsigned max_k_;
  std::vector<std::vector<mpz_class>> rows_;
};

}  // namespace bellcord
