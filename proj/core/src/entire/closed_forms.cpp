#include <cmath>
#include <mutex>

#include "cdlab/entire/entire.hpp"
#include "cdlab/kernel/error.hpp"
#include "detail.hpp"

namespace cdlab {

namespace {

long nearest_int(const Real& x) { return std::lround(x.to_double()); }

Complex from_int(long re, long im) { return Complex(Real(re), Real(im)); }

// ---------------------------------------------------------------------------
// sin(pi w) sin(pi i w) / w^p, w = e^{-i theta} z.

class SinCross final : public EntireFunction::Impl {
 public:
  SinCross(const Real& rotation, bool drop_origin)
      : theta_(rotation), p_(drop_origin ? 2 : 1), rotated_(!rotation.is_zero()) {
    if (rotated_) rot_ = polar(Real(1), -theta_);
  }

  Jet jet(const Complex& z) const override {
    const Complex w = to_w(z);
    const Zero0 zr = nearest_w(w);
    const Complex h = w - zr.w0;
    if (abs(h) >= Real(0.5)) {
      Jet g = g_jet(w);
      return {g.value, from_w_deriv(g.deriv)};
    }
    const Jet q = quotient_w(w, zr);
    return {h * q.value, from_w_deriv(q.value + h * q.deriv)};
  }

  Jet quotient_jet(const Complex& z, const Complex& zero) const override {
    const Complex w = to_w(z);
    const Complex w0 = to_w(zero);
    Zero0 zr;
    if (abs(w0.im) < Real(0.5)) {
      zr = {nearest_int(w0.re), false, {}};
    } else {
      zr = {nearest_int(w0.im), true, {}};
    }
    zr.w0 = zr.imag ? from_int(0, zr.k) : from_int(zr.k, 0);
    if (!detail::near(zr.w0, w0, detail::zero_match_tol()) || (zr.k == 0 && p_ == 2))
      throw Error(ErrorKind::InvalidArgument, "not a declared zero: " + to_string(zero, 12));
    Jet q = quotient_w(w, zr);
    // q(z) = e^{-i theta} Q(w), q'(z) = e^{-2 i theta} Q'(w)
    if (rotated_) {
      const Complex r = rot();
      q.value = r * q.value;
      q.deriv = r * r * q.deriv;
    }
    return q;
  }

  std::optional<Complex> nearest_zero(const Complex& z) const override {
    const Zero0 zr = nearest_w(to_w(z));
    return rotated_ ? conj(rot()) * zr.w0 : zr.w0;
  }

  double order_estimate() const override { return 1.0; }
  std::string form() const override { return "sin_cross"; }

 private:
  struct Zero0 {
    long k;
    bool imag;
    Complex w0;
  };

  Complex rot() const {
    if (rot_.re.bits() >= working_bits()) return rot_;
    return polar(Real(1), -theta_);
  }
  Complex to_w(const Complex& z) const { return rotated_ ? rot() * z : z; }
  Complex from_w_deriv(const Complex& d) const { return rotated_ ? rot() * d : d; }

  Zero0 nearest_w(const Complex& w) const {
    long kr = nearest_int(w.re);
    long ki = nearest_int(w.im);
    if (p_ == 2) {
      if (kr == 0) kr = w.re.sign() >= 0 ? 1 : -1;
      if (ki == 0) ki = w.im.sign() >= 0 ? 1 : -1;
    }
    const Complex a = from_int(kr, 0);
    const Complex b = from_int(0, ki);
    if (norm(w - a) <= norm(w - b)) return {kr, false, a};
    return {ki, true, b};
  }

  // G and G' at w.
  Jet g_jet(const Complex& w) const {
    const Real pi_ = pi();
    const Complex i = I();
    if (abs(w) < Real(0.5)) {
      const Complex a = w * pi_;
      const Complex b = i * a;
      const Complex sa = sinc(a), sb = sinc(b), da = sinc_prime(a), db = sinc_prime(b);
      const Complex c = i * pi_ * pi_;
      const Complex inner = pi_ * da * sb + i * pi_ * sa * db;
      if (p_ == 1) return {c * w * sa * sb, c * (sa * sb + w * inner)};
      return {c * sa * sb, c * inner};
    }
    Complex s1, c1, s2, c2;
    sin_cos(w * pi_, s1, c1);
    sin_cos(i * w * pi_, s2, c2);
    const Complex wp = pow(w, p_);
    const Complex g = s1 * s2 / wp;
    const Complex dg = (pi_ * c1 * s2 + i * pi_ * s1 * c2) / wp - Real(p_) * g / w;
    return {g, dg};
  }

  // Q(w) = G(w)/(w - w0) and Q'(w).
  Jet quotient_w(const Complex& w, const Zero0& zr) const {
    const Complex h = w - zr.w0;
    if (abs(h) >= Real(0.5)) {
      const Jet g = g_jet(w);
      const Complex q = g.value / h;
      return {q, (g.deriv - q) / h};
    }
    const Real pi_ = pi();
    const Complex i = I();
    const Real sgn(detail::is_odd(zr.k) ? -1 : 1);
    if (!zr.imag) {
      Complex R, dR;
      if (zr.k != 0) {
        Complex s2, c2;
        sin_cos(i * w * pi_, s2, c2);
        const Complex wp = pow(w, p_);
        R = s2 / wp;
        dR = i * pi_ * c2 / wp - Real(p_) * R / w;
      } else {
        const Complex b = i * pi_ * w;
        R = i * pi_ * sinc(b);
        dR = -(pi_ * pi_) * sinc_prime(b);
      }
      const Complex s = sinc(h * pi_);
      const Complex ds = sinc_prime(h * pi_);
      return {sgn * pi_ * s * R, sgn * (pi_ * pi_ * ds * R + pi_ * s * dR)};
    }
    Complex s1, c1;
    sin_cos(w * pi_, s1, c1);
    const Complex wp = pow(w, p_);
    const Complex P = s1 / wp;
    const Complex dP = pi_ * c1 / wp - Real(p_) * P / w;
    const Complex b = i * pi_ * h;
    const Complex s = sinc(b);
    const Complex ds = sinc_prime(b);
    const Complex c = sgn * i * pi_;
    return {c * s * P, c * (i * pi_ * ds * P + s * dP)};
  }

  Real theta_;
  int p_;
  bool rotated_;
  Complex rot_;
};

// ---------------------------------------------------------------------------
// Weierstrass sigma of Z + iZ via the odd theta function, q = e^{-pi}.

struct ThetaTable {
  long bits = 0;
  std::vector<Real> c;  // (-1)^n q^{(n+1/2)^2} (2n+1)
  Real K;               // 1 / sum c_n
};

const ThetaTable& theta_table() {
  thread_local ThetaTable table;
  const long bits = working_bits();
  if (table.bits == bits) return table;
  table.bits = bits;
  table.c.clear();
  const long terms = static_cast<long>(std::sqrt((bits + 16) * std::log(2.0) / M_PI)) + 4;
  Real sum(0);
  for (long n = 0; n < terms; ++n) {
    const Real e = Real(n) + Real(0.5);
    Real cn = exp(-pi() * e * e) * Real(2 * n + 1);
    if (n % 2 == 1) cn = -cn;
    sum += cn;
    table.c.push_back(cn);
  }
  table.K = Real(1) / sum;
  return table;
}

class Sigma final : public EntireFunction::Impl {
 public:
  explicit Sigma(Complex shift) : shift_(std::move(shift)) {}

  Jet jet(const Complex& z) const override {
    const Complex u = z - shift_;
    const Complex om = round_lattice(u);
    const Complex v = u - om;
    const Jet g = g_jet(v);
    const Complex E = factor(om, v);
    const Complex pc = pi() * conj(om);
    return {E * v * g.value, E * (pc * v * g.value + g.value + v * g.deriv)};
  }

  Jet quotient_jet(const Complex& z, const Complex& zero) const override {
    const Complex om0 = round_lattice(zero - shift_);
    if (!detail::near(om0 + shift_, zero, detail::zero_match_tol()))
      throw Error(ErrorKind::InvalidArgument, "not a declared zero: " + to_string(zero, 12));
    const Complex u = z - shift_;
    const Complex v = u - om0;
    if (abs(v) < Real(0.5)) {
      const Jet g = g_jet(v);
      const Complex E = factor(om0, v);
      return {E * g.value, E * (pi() * conj(om0) * g.value + g.deriv)};
    }
    const Jet s = jet(z);
    const Complex q = s.value / v;
    return {q, (s.deriv - q) / v};
  }

  std::optional<Complex> nearest_zero(const Complex& z) const override {
    return round_lattice(z - shift_) + shift_;
  }

  double order_estimate() const override { return 2.0; }
  std::string form() const override { return "weierstrass_sigma"; }

 private:
  static Complex round_lattice(const Complex& u) { return from_int(nearest_int(u.re), nearest_int(u.im)); }

  // sigma(om + v) = eps * exp(pi conj(om) (v + om/2)) * sigma(v)
  static Complex factor(const Complex& om, const Complex& v) {
    const long m = nearest_int(om.re);
    const long n = nearest_int(om.im);
    Complex e = exp(pi() * conj(om) * (v + om / Real(2)));
    if (detail::is_odd(m + n + m * n)) e = -e;
    return e;
  }

  // g(v) = sigma(v)/v and g'(v).
  static Jet g_jet(const Complex& v) {
    const ThetaTable& tt = theta_table();
    const Real pi_ = pi();
    Complex S(0), dS(0);
    for (std::size_t n = 0; n < tt.c.size(); ++n) {
      const Real f = Real(static_cast<long>(2 * n + 1)) * pi_;
      const Complex x = v * f;
      S += tt.c[n] * sinc(x);
      dS += tt.c[n] * f * sinc_prime(x);
    }
    const Complex e = exp(pi_ * v * v / Real(2)) * tt.K;
    return {e * S, e * (pi_ * v * S + dS)};
  }

  Complex shift_;
};

}  // namespace

EntireFunction EntireFunction::sin_cross(const Real& rotation, bool drop_origin) {
  return EntireFunction(std::make_shared<SinCross>(rotation, drop_origin));
}

EntireFunction EntireFunction::weierstrass_sigma(const Complex& shift) {
  return EntireFunction(std::make_shared<Sigma>(shift));
}

}  // namespace cdlab
