#include "cdlab/kernel/real.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include "cdlab/kernel/error.hpp"

namespace cdlab {

namespace {
thread_local long t_working_bits = 128;
}

long working_bits() noexcept { return t_working_bits; }
void set_working_bits(long bits) noexcept { t_working_bits = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits; }

Real::Real(std::string_view decimal) {
  init(working_bits());
  const std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse real number '" + s + "'");
  }
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30103)) + 1;
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
  return buf.data();
}

long Real::exponent() const noexcept {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  if (!mpfr_number_p(v_)) return 1L << 40;
  return static_cast<long>(mpfr_get_exp(v_));
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  const auto prec = os.precision();
  return os << x.to_string(prec > 0 ? static_cast<int>(prec) : 17);
}

Real pi() {
  Real r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

#define CDLAB_UNARY(name, fn)            \
  Real name(const Real& x) {             \
    Real r;                              \
    fn(r.raw(), x.raw(), MPFR_RNDN);     \
    return r;                            \
  }

CDLAB_UNARY(abs, mpfr_abs)
CDLAB_UNARY(sqrt, mpfr_sqrt)
CDLAB_UNARY(exp, mpfr_exp)
CDLAB_UNARY(log, mpfr_log)
CDLAB_UNARY(sin, mpfr_sin)
CDLAB_UNARY(cos, mpfr_cos)
CDLAB_UNARY(sinh, mpfr_sinh)
CDLAB_UNARY(cosh, mpfr_cosh)

#undef CDLAB_UNARY

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

Real round(const Real& x) {
  Real r;
  mpfr_round(r.raw(), x.raw());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

Real pow2(long e) {
  Real r(1);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real();
  c = Real();
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

void sinh_cosh(const Real& x, Real& s, Real& c) {
  s = Real();
  c = Real();
  mpfr_sinh_cosh(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

}  // namespace cdlab
