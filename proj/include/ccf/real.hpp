#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace ccf {

/// Owning MPFR value. Binary operations produce a result at the larger of
/// the operand precisions.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128);
  Real(double v, mpfr_prec_t bits);
  Real(const mpz_class& v, mpfr_prec_t bits);
  Real(const mpq_class& v, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer.
  mpz_class round() const;
  std::string str(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real sin(const Real& x);
Real pi(mpfr_prec_t bits);
/// 2^-bits as a Real, used for error bounds.
Real ulp_bound(mpfr_prec_t bits, long scale_exp = 0);

/// Decimal digits to binary precision with guard bits.
inline mpfr_prec_t digits_to_bits(int digits) { return static_cast<mpfr_prec_t>(digits * 3.33) + 32; }

}  // namespace ccf
