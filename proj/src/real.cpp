#include "ccf/real.hpp"

#include <algorithm>
#include <memory>

namespace ccf {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const mpz_class& v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, other.precision());
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

mpz_class Real::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

std::string Real::str(int digits) const {
  std::unique_ptr<char[]> buf(new char[static_cast<std::size_t>(digits) + 64]);
  mpfr_snprintf(buf.get(), static_cast<std::size_t>(digits) + 64, "%.*Rg", digits, v_);
  return buf.get();
}

namespace {

template <typename Op>
Real binary(const Real& a, const Real& b, Op op) {
  Real r(std::max(a.precision(), b.precision()));
  op(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

namespace {

template <typename Op>
Real unary(const Real& x, Op op) {
  Real r(x.precision());
  op(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real ulp_bound(mpfr_prec_t bits, long scale_exp) {
  Real r(1.0, 64);
  mpfr_mul_2si(r.get(), r.get(), scale_exp - static_cast<long>(bits), MPFR_RNDU);
  return r;
}

}  // namespace ccf
