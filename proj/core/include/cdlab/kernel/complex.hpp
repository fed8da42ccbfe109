#pragma once

#include <complex>
#include <string>

#include "cdlab/kernel/real.hpp"

namespace cdlab {

/// Complex number over Real.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT
  Complex(double r) : re(r), im(0) {}       // NOLINT
  Complex(int r) : re(r), im(0) {}          // NOLINT
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r, double i) : re(r), im(i) {}
  explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  void round_to(long bits) {
    re.round_to(bits);
    im.round_to(bits);
  }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& o) { re *= o; im *= o; return *this; }
  Complex& operator/=(const Real& o) { re /= o; im /= o; return *this; }
};

Complex operator-(const Complex& a);
Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& b, const Complex& a);
Complex operator/(const Complex& a, const Real& b);
bool operator==(const Complex& a, const Complex& b);

/// The imaginary unit.
Complex I();
Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex polar(const Real& r, const Real& theta);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
void sin_cos(const Complex& z, Complex& s, Complex& c);
Complex pow(const Complex& z, long n);
/// sin(z)/z, analytic at 0.
Complex sinc(const Complex& z);
/// d/dz [sin(z)/z], analytic at 0.
Complex sinc_prime(const Complex& z);

std::string to_string(const Complex& z, int digits = 0);

}  // namespace cdlab
