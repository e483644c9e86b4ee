#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bellcord {

// Dense univariate polynomial with arbitrary-precision integer
// coefficients, coeffs[j] multiplying x^j.  The zero polynomial is the
// empty vector; otherwise the top coefficient is nonzero.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<mpz_class> coeffs);

  static ExactPolynomial constant(long c);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  // Safe for any j: coefficients beyond the degree are zero.
  const mpz_class& coeff(size_t j) const;
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  bool operator==(const ExactPolynomial& o) const = default;

  ExactPolynomial derivative() const;
  ExactPolynomial times_x() const;
  friend ExactPolynomial operator+(const ExactPolynomial& a,
                                   const ExactPolynomial& b);

  // Exact evaluation at an integer point (Horner).
  mpz_class eval_z(const mpz_class& x) const;
  mpq_class eval_q(const mpq_class& x) const;

  // "c0 + c1*x + c2*x^2" with zero terms skipped; "0" for zero.
  std::string pretty() const;

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

}  // namespace bellcord
