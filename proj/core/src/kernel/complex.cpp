#include "cdlab/kernel/complex.hpp"

namespace cdlab {

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  Complex r;
  Real t;
  mpfr_mul(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_sub(r.re.raw(), r.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_mul(r.im.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
  mpfr_mul(t.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
  mpfr_add(r.im.raw(), r.im.raw(), t.raw(), MPFR_RNDN);
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  // MPFR's exponent range makes the unscaled formula safe.
  Real d = b.re * b.re + b.im * b.im;
  Complex r{(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  return r;
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& b, const Complex& a) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex I() { return {Real(0), Real(1)}; }
Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex polar(const Real& r, const Real& theta) {
  Real s, c;
  sin_cos(theta, s, c);
  return {r * c, r * s};
}

Complex exp(const Complex& z) { return polar(exp(z.re), z.im); }

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex();
  const Real r = abs(z);
  Real a = sqrt((r + abs(z.re)) / Real(2));
  if (z.re.sign() >= 0) return {a, z.im / (a * Real(2))};
  Real b = z.im.sign() >= 0 ? a : -a;
  return {abs(z.im) / (a * Real(2)), b};
}

void sin_cos(const Complex& z, Complex& s, Complex& c) {
  Real sa, ca, shb, chb;
  sin_cos(z.re, sa, ca);
  sinh_cosh(z.im, shb, chb);
  s = Complex{sa * chb, ca * shb};
  c = Complex{ca * chb, -(sa * shb)};
}

Complex sin(const Complex& z) {
  Complex s, c;
  sin_cos(z, s, c);
  return s;
}

Complex cos(const Complex& z) {
  Complex s, c;
  sin_cos(z, s, c);
  return c;
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex result(1);
  Complex base = z;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

namespace {

// Taylor series are used below this modulus; the direct quotient loses at
// most a few bits above it.
constexpr double kSeriesRadius = 0.5;

}  // namespace

Complex sinc(const Complex& z) {
  if (abs(z) > kSeriesRadius) return sin(z) / z;
  const Complex z2 = z * z;
  const Real eps = pow2(-working_bits() - 4);
  Complex term(1);
  Complex sum(1);
  for (long k = 1; k < 10000; ++k) {
    term = term * z2 / Real((2 * k) * (2 * k + 1));
    term = -term;
    sum += term;
    if (abs(term) < eps) break;
  }
  return sum;
}

Complex sinc_prime(const Complex& z) {
  if (abs(z) > kSeriesRadius) {
    Complex s, c;
    sin_cos(z, s, c);
    return (z * c - s) / (z * z);
  }
  // sum_{k>=1} (-1)^k 2k z^{2k-1} / (2k+1)!
  const Complex z2 = z * z;
  const Real eps = pow2(-working_bits() - 4);
  Complex power = z;          // z^{2k-1}
  Real fact(6);               // (2k+1)!
  Complex sum;
  for (long k = 1; k < 10000; ++k) {
    Complex term = power * Real(2 * k) / fact;
    if (k % 2 == 1) term = -term;
    sum += term;
    if (abs(term) < eps * (abs(sum) + Real(1e-300))) break;
    power = power * z2;
    fact = fact * Real((2 * k + 2) * (2 * k + 3));
  }
  return sum;
}

std::string to_string(const Complex& z, int digits) {
  return "(" + z.re.to_string(digits) + ", " + z.im.to_string(digits) + ")";
}

}  // namespace cdlab
