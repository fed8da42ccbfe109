#include <cmath>
#include <limits>
#include <random>

#include "cdlab/kernel/error.hpp"
#include "cdlab/space/space.hpp"

namespace cdlab {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// S = sum w_j/(z - t_j), dS = -sum w_j/(z - t_j)^2 over j != skip, in place.
void cauchy_sum(const std::vector<Complex>& t, const std::vector<Complex>& w, const Complex& z, std::size_t skip,
                Complex& S, Complex& dS) {
  Real dr, di, den, ir, ii, tr, ti, u;
  mpfr_ptr sr = S.re.raw(), si = S.im.raw(), pr = dS.re.raw(), pi_ = dS.im.raw();
  mpfr_set_zero(sr, 1);
  mpfr_set_zero(si, 1);
  mpfr_set_zero(pr, 1);
  mpfr_set_zero(pi_, 1);
  const mpfr_rnd_t rn = MPFR_RNDN;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (j == skip) continue;
    mpfr_sub(dr.raw(), z.re.raw(), t[j].re.raw(), rn);
    mpfr_sub(di.raw(), z.im.raw(), t[j].im.raw(), rn);
    mpfr_sqr(den.raw(), dr.raw(), rn);
    mpfr_sqr(u.raw(), di.raw(), rn);
    mpfr_add(den.raw(), den.raw(), u.raw(), rn);
    // 1/d = conj(d)/|d|^2
    mpfr_div(ir.raw(), dr.raw(), den.raw(), rn);
    mpfr_div(ii.raw(), di.raw(), den.raw(), rn);
    mpfr_neg(ii.raw(), ii.raw(), rn);
    // term = w/d
    mpfr_mul(tr.raw(), w[j].re.raw(), ir.raw(), rn);
    mpfr_mul(u.raw(), w[j].im.raw(), ii.raw(), rn);
    mpfr_sub(tr.raw(), tr.raw(), u.raw(), rn);
    mpfr_mul(ti.raw(), w[j].re.raw(), ii.raw(), rn);
    mpfr_mul(u.raw(), w[j].im.raw(), ir.raw(), rn);
    mpfr_add(ti.raw(), ti.raw(), u.raw(), rn);
    mpfr_add(sr, sr, tr.raw(), rn);
    mpfr_add(si, si, ti.raw(), rn);
    // dS -= term/d
    mpfr_mul(u.raw(), tr.raw(), ir.raw(), rn);
    mpfr_sub(pr, pr, u.raw(), rn);
    mpfr_mul(u.raw(), ti.raw(), ii.raw(), rn);
    mpfr_add(pr, pr, u.raw(), rn);
    mpfr_mul(u.raw(), tr.raw(), ii.raw(), rn);
    mpfr_sub(pi_, pi_, u.raw(), rn);
    mpfr_mul(u.raw(), ti.raw(), ir.raw(), rn);
    mpfr_sub(pi_, pi_, u.raw(), rn);
  }
}

}  // namespace

std::optional<std::size_t> Space::nearest_anchor(const std::complex<double>& z) const {
  std::optional<std::size_t> best;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < approx.size(); ++i) {
    if (!anchor[i]) continue;
    const double d = std::norm(approx[i] - z);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

std::shared_ptr<const Space> make_space(NodeSet ns, Measure mu, EntireFunction A) {
  if (mu.size() != ns.size()) throw Error(ErrorKind::InvalidArgument, "measure length does not match the node count");
  if (!A.valid()) throw Error(ErrorKind::InvalidArgument, "space needs an entire function");
  auto s = std::make_shared<Space>();
  s->ns = std::move(ns);
  s->mu = std::move(mu);
  s->A = std::move(A);
  s->anchor.reserve(s->ns.size());
  s->approx.reserve(s->ns.size());
  for (const auto& t : s->ns.nodes) {
    s->anchor.push_back(s->A.has_zero(t) ? 1 : 0);
    s->approx.push_back(t.to_std());
  }
  return s;
}

SpaceElement make_element(std::vector<Complex> coeffs, std::shared_ptr<const Space> space) {
  if (!space) throw Error(ErrorKind::InvalidArgument, "element needs a space");
  if (coeffs.size() != space->ns.size())
    throw Error(ErrorKind::InvalidArgument, "length mismatch: " + std::to_string(coeffs.size()) + " coefficients for " +
                                                std::to_string(space->ns.size()) + " nodes");
  SpaceElement el;
  el.coeffs = std::move(coeffs);
  el.space = std::move(space);
  Real n2(0);
  el.slot_.assign(el.coeffs.size(), npos);
  for (std::size_t i = 0; i < el.coeffs.size(); ++i) {
    if (!el.coeffs[i].is_finite()) throw Error(ErrorKind::InvalidArgument, "coefficient is not finite");
    n2 += norm(el.coeffs[i]);
    if (el.coeffs[i].is_zero()) continue;
    el.slot_[i] = el.support_.size();
    el.support_.push_back(i);
    el.w_.push_back(el.coeffs[i] * el.space->mu.sqrt_values[i]);
    el.t_.push_back(el.space->ns.nodes[i]);
  }
  el.norm = sqrt(n2);
  return el;
}

SpaceElement make_element(std::vector<Complex> coeffs, const NodeSet& ns, const Measure& mu, const EntireFunction& A) {
  return make_element(std::move(coeffs), make_space(ns, mu, A));
}

Jet SpaceElement::jet_F(const Complex& z) const {
  if (support_.empty()) return {Complex(0), Complex(0)};
  Complex S, dS;
  const auto k = space->nearest_anchor(z.to_std());
  if (!k) {
    const Jet a = A().jet(z);
    cauchy_sum(t_, w_, z, npos, S, dS);
    return {a.value * S, a.deriv * S + a.value * dS};
  }
  const Jet q = A().quotient_jet(z, ns().nodes[*k]);
  const Complex h = z - ns().nodes[*k];
  const Complex Av = h * q.value;
  const Complex Ad = q.value + h * q.deriv;
  const std::size_t skip = slot_[*k];
  cauchy_sum(t_, w_, z, skip, S, dS);
  Jet out{Av * S, Ad * S + Av * dS};
  if (skip != npos) {
    out.value += w_[skip] * q.value;
    out.deriv += w_[skip] * q.deriv;
  }
  return out;
}

Jet SpaceElement::jet_f(const Complex& z) const {
  Complex S, dS;
  cauchy_sum(t_, w_, z, npos, S, dS);
  return {S, dS};
}

double SpaceElement::abs_sum(const Complex& z) const {
  const auto zz = z.to_std();
  double s = 0;
  for (std::size_t j = 0; j < t_.size(); ++j) {
    const double d = std::abs(zz - t_[j].to_std());
    s += abs(w_[j]).to_double() / d;
  }
  return s;
}

BoundedValue evaluate_f(const SpaceElement& el, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  const Real eps = pow2(-ctx.bits / 2);
  for (const auto& t : el.ns().nodes)
    if (abs(z - t) < eps) throw Error(ErrorKind::TooCloseToNode, "too close to node " + to_string(t, 12));
  BoundedValue out;
  out.value = el.jet_f(z).value;
  const double n = static_cast<double>(el.support().size()) + 8;
  out.abs_error = Real(el.abs_sum(z) * n) * pow2(-ctx.bits);
  out.rigorous = true;
  out.converged = out.abs_error.to_double() <= ctx.target_tol;
  return out;
}

BoundedValue evaluate_F(const SpaceElement& el, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  BoundedValue out;
  out.value = el.jet_F(z).value;
  const double n = static_cast<double>(el.support().size()) + 8;
  Real mag = abs(out.value);
  if (!el.is_zero()) {
    // Magnitude of the summands; the node term uses the finite quotient.
    const auto k = el.space->nearest_anchor(z.to_std());
    double s = 0;
    const auto zz = z.to_std();
    for (std::size_t j : el.support()) {
      if (k && j == *k) continue;
      s += (abs(el.coeffs[j]) * el.mu().sqrt_values[j]).to_double() / std::abs(zz - el.space->approx[j]);
    }
    const Jet a = k ? Jet{el.A().quotient_jet(z, el.ns().nodes[*k]).value, Complex(0)} : el.A().jet(z);
    const Real aq = abs(a.value);
    Real m = aq * Real(s);
    if (k) {
      m = m * Real(std::abs(zz - el.space->approx[*k]));
      m += aq * abs(el.coeffs[*k]) * el.mu().sqrt_values[*k];
    }
    mag = max(mag, m);
  }
  out.abs_error = mag * Real(n) * pow2(-ctx.bits) + abs(out.value) * el.A().relative_tail(z);
  out.rigorous = el.A().truncation_radius().has_value();
  out.converged = out.abs_error.to_double() <= ctx.target_tol;
  return out;
}

std::vector<Complex> basis_coeffs(std::size_t n, std::size_t k) {
  if (k >= n) throw Error(ErrorKind::InvalidArgument, "basis index out of range");
  std::vector<Complex> c(n, Complex(0));
  c[k] = Complex(1);
  return c;
}

std::vector<Complex> random_gaussian_coeffs(std::size_t n, std::uint64_t seed) {
  // Box-Muller on raw 53-bit draws: the engine is fully specified, the
  // standard distributions are not.
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<Complex> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::sqrt(-std::log(unit()));
    const double th = 2.0 * M_PI * unit();
    c.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return c;
}

std::vector<Complex> element_coeffs(const std::vector<Complex>& c, const Measure& mu) {
  if (c.size() != mu.size()) throw Error(ErrorKind::InvalidArgument, "length mismatch");
  std::vector<Complex> a;
  a.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a.push_back(c[i] * mu.sqrt_values[i]);
  return a;
}

}  // namespace cdlab
