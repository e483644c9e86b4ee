#include "bellcord/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "bellcord/errors.hpp"

namespace bellcord {

namespace {
mpfr_prec_t join_prec(const Real& a, const Real& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

Real::Real(mpfr_prec_t prec_bits) {
  require(prec_bits >= MPFR_PREC_MIN && prec_bits <= 1 << 24,
          ErrorCode::precision, "unsupported mpfr precision");
  mpfr_init2(v_, prec_bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, other.prec());
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(double d) {
  mpfr_mul_d(v_, v_, d, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(unsigned long u) {
  mpfr_div_ui(v_, v_, u, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real Real::exp(const Real& a) {
  Real r(a.prec());
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real Real::expm1(const Real& a) {
  Real r(a.prec());
  mpfr_expm1(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real Real::log(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real Real::log1p(const Real& a) {
  Real r(a.prec());
  mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real Real::sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real Real::lngamma(const Real& a) {
  Real r(a.prec());
  mpfr_lngamma(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real Real::pow_ui(const Real& base, unsigned long e) {
  Real r(base.prec());
  mpfr_pow_ui(r.v_, base.v_, e, MPFR_RNDN);
  return r;
}
Real Real::abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

LogValue Real::to_logvalue() const {
  if (mpfr_zero_p(v_)) return LogValue::zero();
  require(mpfr_number_p(v_) != 0, ErrorCode::internal,
          "non-finite value cannot convert to LogValue");
  Real t(std::max<mpfr_prec_t>(prec(), 64));
  mpfr_abs(t.v_, v_, MPFR_RNDN);
  mpfr_log(t.v_, t.v_, MPFR_RNDN);
  return LogValue{mpfr_sgn(v_) > 0 ? 1 : -1, mpfr_get_d(t.v_, MPFR_RNDN)};
}

std::string Real::str(size_t digits) const {
  std::vector<char> buf(digits + 32);
  std::snprintf(buf.data(), buf.size(), "%.*Rg", static_cast<int>(digits), v_);
  return std::string(buf.data());
}

}  // namespace bellcord
