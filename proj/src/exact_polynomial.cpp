#include "bellcord/exact_polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace bellcord {

namespace {
const mpz_class kZero = 0;
}

ExactPolynomial::ExactPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  normalize();
}

ExactPolynomial ExactPolynomial::constant(long c) {
  if (c == 0) return ExactPolynomial();
  return ExactPolynomial({mpz_class(c)});
}

void ExactPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& ExactPolynomial::coeff(size_t j) const {
  return j < coeffs_.size() ? coeffs_[j] : kZero;
}

ExactPolynomial ExactPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return ExactPolynomial();
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (size_t j = 1; j < coeffs_.size(); ++j)
    d[j - 1] = coeffs_[j] * static_cast<unsigned long>(j);
  return ExactPolynomial(std::move(d));
}

ExactPolynomial ExactPolynomial::times_x() const {
  if (is_zero()) return ExactPolynomial();
  std::vector<mpz_class> s(coeffs_.size() + 1);
  for (size_t j = 0; j < coeffs_.size(); ++j) s[j + 1] = coeffs_[j];
  return ExactPolynomial(std::move(s));
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<mpz_class> s(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t j = 0; j < s.size(); ++j) s[j] = a.coeff(j) + b.coeff(j);
  return ExactPolynomial(std::move(s));
}

mpz_class ExactPolynomial::eval_z(const mpz_class& x) const {
  mpz_class acc = 0;
  for (size_t j = coeffs_.size(); j-- > 0;) acc = acc * x + coeffs_[j];
  return acc;
}

mpq_class ExactPolynomial::eval_q(const mpq_class& x) const {
  mpq_class acc = 0;
  for (size_t j = coeffs_.size(); j-- > 0;) acc = acc * x + coeffs_[j];
  return acc;
}

std::string ExactPolynomial::pretty() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    mpz_class c = coeffs_[j];
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    mpz_class a = abs(c);
    if (j == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str() << "*";
      out << "x";
      if (j > 1) out << "^" << j;
    }
  }
  return out.str();
}

}  // namespace bellcord
