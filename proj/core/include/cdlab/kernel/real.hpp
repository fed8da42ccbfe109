#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cdlab {

/// Binary precision used for newly created Real values on the calling thread.
long working_bits() noexcept;
void set_working_bits(long bits) noexcept;

/// Sets the thread's working precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits) noexcept : saved_(working_bits()) { set_working_bits(bits); }
  ~PrecisionScope() { set_working_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

/// Arbitrary precision real number (RAII wrapper over an mpfr_t).
///
/// Arithmetic results are rounded to the thread's working precision. Copies
/// keep the precision of their source.
class Real {
 public:
  Real() { init(working_bits()); mpfr_set_zero(v_, 1); }
  Real(double d) { init(working_bits()); mpfr_set_d(v_, d, MPFR_RNDN); }     // NOLINT
  Real(int i) { init(working_bits()); mpfr_set_si(v_, i, MPFR_RNDN); }       // NOLINT
  Real(long i) { init(working_bits()); mpfr_set_si(v_, i, MPFR_RNDN); }      // NOLINT
  Real(long long i) { init(working_bits()); mpfr_set_si(v_, static_cast<long>(i), MPFR_RNDN); }  // NOLINT
  Real(unsigned long i) { init(working_bits()); mpfr_set_ui(v_, i, MPFR_RNDN); }  // NOLINT
  explicit Real(std::string_view decimal);

  Real(const Real& o) {
    init(mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (v_[0]._mpfr_d == nullptr) init(mpfr_get_prec(o.v_));
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  Real& operator=(double d) {
    if (v_[0]._mpfr_d == nullptr) init(working_bits());
    mpfr_set_d(v_, d, MPFR_RNDN);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  mpfr_ptr raw() noexcept { return v_; }
  mpfr_srcptr raw() const noexcept { return v_; }
  long bits() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }

  /// Changes precision in place, keeping the value (rounded).
  void round_to(long bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Decimal string with the given number of significant digits (0 = enough for the precision).
  std::string to_string(int digits = 0) const;

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent() const noexcept;

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend Real operator-(const Real& a) { Real r; mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b) {
    const int c = mpfr_cmp_d(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  void init(long bits) { mpfr_init2(v_, bits); }
  mpfr_t v_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real pi();
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real round(const Real& x);
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// 2^e as a Real (exact).
Real pow2(long e);
void sin_cos(const Real& x, Real& s, Real& c);
void sinh_cosh(const Real& x, Real& s, Real& c);

}  // namespace cdlab
