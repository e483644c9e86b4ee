#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <vector>

#include "bellcord/errors.hpp"
#include "bellcord/exact_polynomial.hpp"
#include "bellcord/partitions.hpp"
#include "bellcord/stirling_table.hpp"

using namespace bellcord;

namespace {
ExactPolynomial poly(std::vector<long> cs) {
  std::vector<mpz_class> z(cs.begin(), cs.end());
  return ExactPolynomial(std::move(z));
}
}  // namespace

TEST_CASE("polynomial plumbing") {
  ExactPolynomial zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK(zero.pretty() == "0");
  CHECK(zero.eval_z(7) == 0);

  ExactPolynomial p = poly({0, 1, 3, 1});  // x + 3x^2 + x^3
  CHECK(p.degree() == 3);
  CHECK(p.coeff(2) == 3);
  CHECK(p.coeff(9) == 0);
  CHECK(p.eval_z(1) == 5);
  CHECK(p.eval_z(2) == 22);
  CHECK(p.eval_q(mpq_class(1, 2)) == mpq_class(11, 8));
  CHECK(p.pretty() == "x + 3*x^2 + x^3");
  CHECK(p.derivative() == poly({1, 6, 3}));
  CHECK(p.times_x() == poly({0, 0, 1, 3, 1}));
  CHECK((p + poly({0, -1, -3, -1})).is_zero());
  // Trailing zeros are normalized away.
  CHECK(poly({1, 0, 0}) == poly({1}));
}

TEST_CASE("classical table matches the frozen small rows") {
  auto t = StirlingTable::build(TableKind::classical, 6);
  CHECK(t.row(0) == std::vector<mpz_class>{1});
  CHECK(t.row(1) == std::vector<mpz_class>{0, 1});
  CHECK(t.row(4) == std::vector<mpz_class>{0, 1, 7, 6, 1});
  CHECK(t.row(6) == std::vector<mpz_class>{0, 1, 31, 90, 65, 15, 1});
  // Row sums are Bell numbers 1,1,2,5,15,52,203.
  const long bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (unsigned k = 0; k <= 6; ++k) {
    mpz_class s = 0;
    for (auto& e : t.row(k)) s += e;
    CHECK(s == bell[k]);
  }
}

TEST_CASE("restricted table matches the frozen rows") {
  auto t = StirlingTable::build(TableKind::restricted, 6);
  CHECK(t.row(5) == std::vector<mpz_class>{0, 1, 10, 0, 0, 0});
  CHECK(t.row(6) == std::vector<mpz_class>{0, 1, 25, 15, 0, 0, 0});
  CHECK(t.at(1, 1) == 0);
  // No-singleton partitions leave no room for more than k/2 blocks.
  for (unsigned k = 2; k <= 6; ++k)
    for (unsigned r = k / 2 + 1; r <= k; ++r) CHECK(t.at(k, r) == 0);
}

TEST_CASE("recurrence tables equal the enumeration oracle, k <= 12") {
  auto tc = StirlingTable::build(TableKind::classical, 12);
  auto tr = StirlingTable::build(TableKind::restricted, 12);
  auto te = StirlingTable::build(TableKind::even_block, 12);
  for (unsigned k = 0; k <= 12; ++k) {
    CHECK(ExactPolynomial(tc.row_polynomial(k)) ==
          enumerate_partitions_oracle(k, BlockFilter::all));
    CHECK(ExactPolynomial(tr.row_polynomial(k)) ==
          enumerate_partitions_oracle(k, BlockFilter::min_block_2));
    CHECK(ExactPolynomial(te.row_polynomial(k)) ==
          enumerate_partitions_oracle(k, BlockFilter::even_blocks));
  }
}

TEST_CASE("frozen polynomial examples") {
  CHECK(bell_polynomial(0) == poly({1}));
  CHECK(bell_polynomial(3) == poly({0, 1, 3, 1}));
  CHECK(bell_polynomial(4).eval_z(1) == 15);
  CHECK(bell_polynomial(12).eval_z(1) == 4213597);

  CHECK(restricted_bell_polynomial(1).is_zero());
  CHECK(restricted_bell_polynomial(4) == poly({0, 1, 3}));
  CHECK(restricted_bell_polynomial(6).eval_z(1) == 41);

  CHECK(even_block_bell_polynomial(2) == poly({0, 1}));
  CHECK(even_block_bell_polynomial(4) == poly({0, 1, 3}));
  CHECK(even_block_bell_polynomial(6).eval_z(1) == 31);
  // Doubled-exponent variant substitutes x^2 for x.
  CHECK(even_block_bell_polynomial(4, true) == poly({0, 0, 1, 0, 3}));
  CHECK(even_block_bell_polynomial(6, true).eval_z(1) == 31);
}

TEST_CASE("oracle examples and caps") {
  CHECK(enumerate_partitions_oracle(5, BlockFilter::min_block_2) ==
        poly({0, 1, 10}));
  CHECK(enumerate_partitions_oracle(5, BlockFilter::min_block_2).eval_z(1) ==
        11);
  CHECK(enumerate_partitions_oracle(2, BlockFilter::all) == poly({0, 1, 1}));
  CHECK(enumerate_partitions_oracle(3, BlockFilter::even_blocks).is_zero());
  CHECK(enumerate_partitions_oracle(0, BlockFilter::all) == poly({1}));
  CHECK_THROWS_AS(enumerate_partitions_oracle(14, BlockFilter::all), Error);
}

TEST_CASE("structure of the Bell family polynomials") {
  for (unsigned k = 1; k <= 40; ++k) {
    auto b = bell_polynomial(k);
    CHECK(b.degree() == static_cast<int>(k));
    CHECK(b.coeff(k) == 1);
    CHECK(b.coeff(1) == 1);
    CHECK(b.coeff(0) == 0);
    if (k >= 2) {
      auto rb = restricted_bell_polynomial(k);
      CHECK(rb.degree() == static_cast<int>(k / 2));
      CHECK(rb.coeff(0) == 0);
    }
  }
}

TEST_CASE("moment recurrence holds exactly up to the table cap") {
  // B_{k+1}(x) = x (B_k'(x) + B_k(x)), checked coefficient-exact.
  auto t = StirlingTable::build(TableKind::classical, kExactTableCap);
  ExactPolynomial prev(t.row_polynomial(0));
  for (unsigned k = 0; k < kExactTableCap; ++k) {
    ExactPolynomial next(t.row_polynomial(k + 1));
    ExactPolynomial derived = (prev.derivative() + prev).times_x();
    CHECK(derived == next);
    prev = next;
  }
}

TEST_CASE("error taxonomy") {
  CHECK_THROWS_AS(StirlingTable::build(TableKind::classical, 513), Error);
  CHECK_THROWS_AS(even_block_bell_polynomial(5), Error);
  CHECK(even_block_bell_polynomial(0) == ExactPolynomial::constant(1));
  try {
    StirlingTable::build(TableKind::classical, 99999);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::size);
  }
  try {
    even_block_bell_polynomial(7);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
  CHECK_THROWS_AS(table_kind_from_name("bogus"), Error);
  CHECK(table_kind_from_name("even_block") == TableKind::even_block);
}

TEST_CASE("table accessors bound-check") {
  auto t = StirlingTable::build(TableKind::classical, 5);
  CHECK_THROWS_AS((void)t.at(6, 0), Error);
  CHECK_THROWS_AS((void)t.at(3, 4), Error);
  CHECK(t.at(5, 2) == 15);
}
