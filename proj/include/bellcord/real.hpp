#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

#include "bellcord/log_value.hpp"

namespace bellcord {

// Thin RAII wrapper over one mpfr_t with value semantics.  Precision is
// fixed per object at construction; binary operators round to the wider
// operand's precision with round-to-nearest.  Only the operations the
// library needs are exposed.
class Real {
 public:
  explicit Real(mpfr_prec_t prec_bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  void set(double d) { mpfr_set_d(v_, d, MPFR_RNDN); }
  void set(long i) { mpfr_set_si(v_, i, MPFR_RNDN); }
  void set(unsigned long u) { mpfr_set_ui(v_, u, MPFR_RNDN); }
  void set(const Real& o) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  void set(const mpz_class& z) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  void set(const mpq_class& q) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(double d);
  Real& operator/=(unsigned long u);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  void negate() { mpfr_neg(v_, v_, MPFR_RNDN); }

  static Real exp(const Real& a);
  static Real expm1(const Real& a);
  static Real log(const Real& a);
  static Real log1p(const Real& a);
  static Real sqrt(const Real& a);
  static Real lngamma(const Real& a);
  static Real pow_ui(const Real& base, unsigned long e);
  static Real abs(const Real& a);

  int sgn() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(double d) const { return mpfr_cmp_d(v_, d); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Exponent of the leading bit; log2|x| to within 1.  Requires nonzero.
  long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)); }
  // sign + ln|x| rounded to double; exact zero maps to LogValue::zero().
  LogValue to_logvalue() const;
  std::string str(size_t digits = 20) const;

 private:
  mpfr_t v_;
};

}  // namespace bellcord
