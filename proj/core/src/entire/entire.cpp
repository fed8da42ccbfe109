#include "cdlab/entire/entire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdlab/kernel/error.hpp"
#include "detail.hpp"

namespace cdlab {

Jet EntireFunction::Impl::jet(const Complex& z) const {
  auto t = nearest_zero(z);
  if (!t) throw Error(ErrorKind::InvalidArgument, form() + ": no zero to anchor evaluation");
  const Jet q = quotient_jet(z, *t);
  const Complex h = z - *t;
  return {h * q.value, q.value + h * q.deriv};
}

Real EntireFunction::Impl::relative_tail(const Complex&) const { return Real(0); }

bool EntireFunction::Impl::has_zero(const Complex& t) const {
  auto n = nearest_zero(t);
  return n && detail::near(*n, t, detail::zero_match_tol());
}

BoundedValue evaluate(const EntireFunction& A, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  if (auto R = A.truncation_radius()) {
    if (*R < Real(4) * abs(z)) {
      throw Error(ErrorKind::TailDominates,
                  "tail dominates: truncation radius " + R->to_string(6) + " < 4|z|; enlarge the node set");
    }
  }
  BoundedValue out;
  out.value = A.jet(z).value;
  const Real mag = abs(out.value);
  out.abs_error = mag * A.relative_tail(z) + rounding_bound(mag, ctx.bits);
  out.rigorous = A.truncation_radius().has_value();
  out.converged = out.abs_error.to_double() <= ctx.target_tol;
  return out;
}

BoundedValue derivative_at_node(const EntireFunction& A, const Complex& t, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  if (!A.has_zero(t)) throw Error(ErrorKind::InvalidArgument, "not a declared zero: " + to_string(t, 12));
  BoundedValue out;
  out.value = A.quotient_jet(t, t).value;
  const Real mag = abs(out.value);
  if (mag.is_zero() || mag < pow2(-ctx.max_bits)) {
    throw Error(ErrorKind::DerivativeUnderflow, "derivative underflow at max precision near " + to_string(t, 12));
  }
  out.abs_error = mag * A.relative_tail(t) + rounding_bound(mag, ctx.bits);
  out.rigorous = A.truncation_radius().has_value();
  out.converged = out.abs_error.to_double() <= ctx.target_tol;
  return out;
}

BoundedValue log_derivative(const EntireFunction& A, const Complex& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  const Real guard = pow2(-ctx.bits / 2);
  if (auto t = A.nearest_zero(z)) {
    if (abs(z - *t) < guard) throw Error(ErrorKind::TooCloseToZero, "too close to zero " + to_string(*t, 12));
  }
  const Jet j = A.jet(z);
  if (j.value.is_zero()) throw Error(ErrorKind::TooCloseToZero, "too close to zero");
  BoundedValue out;
  out.value = j.deriv / j.value;
  out.abs_error = rounding_bound(abs(out.value), ctx.bits, 16);
  out.converged = out.abs_error.to_double() <= ctx.target_tol;
  return out;
}

bool eventually_decreasing(const std::vector<double>& moduli, const std::vector<double>& values) {
  std::vector<double> shells;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool same = i > 0 && std::abs(moduli[i] - moduli[i - 1]) <= 1e-9 * std::max(1.0, moduli[i]);
    if (same) shells.back() = std::max(shells.back(), values[i]);
    else shells.push_back(values[i]);
  }
  if (shells.size() < 2) return false;
  // Start of the final non-increasing run; it must cover at least half of the shells.
  std::size_t start = 0;
  for (std::size_t j = 1; j < shells.size(); ++j) {
    const double slack = 1e-9 * std::max(1.0, std::abs(shells[j - 1]));
    if (shells[j] > shells[j - 1] + slack) start = j;
  }
  if (shells.size() - start < 2 || start > shells.size() / 2) return false;
  return shells.back() < shells.front();
}

HKReport hamburger_krein_check(const EntireFunction& A, const NodeSet& ns, const std::vector<Complex>& samples,
                               int M_max, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  HKReport rep;
  const std::size_t n = ns.size();
  for (const auto& z : samples) {
    const auto zd = z.to_std();
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::pow(ns.modulus(i) + 1.0, -2.0);
      if (std::abs(zd - ns.nodes[i].to_std()) <= r)
        throw Error(ErrorKind::InvalidArgument, "sample inside a node disk: " + to_string(z, 8));
    }
  }
  std::vector<Complex> inv_deriv(n);
  std::vector<double> log_abs_deriv(n), mods(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BoundedValue d = derivative_at_node(A, ns.nodes[i], ctx);
    inv_deriv[i] = Complex(1) / d.value;
    log_abs_deriv[i] = log(abs(d.value)).to_double() / std::log(10.0);
    mods[i] = ns.modulus(i);
  }
  const double outer = n ? mods.back() : 0.0;
  double residual = 0, tail = 0;
  double min_a = std::numeric_limits<double>::infinity();
  for (const auto& z : samples) {
    std::vector<Complex> terms;
    terms.reserve(n + 1);
    Real shell(0);
    for (std::size_t i = 0; i < n; ++i) {
      Complex term = inv_deriv[i] / (z - ns.nodes[i]);
      if (std::abs(mods[i] - outer) <= 1e-9 * std::max(1.0, outer)) shell += abs(term);
      terms.push_back(-term);
    }
    const Complex a = A(z);
    terms.push_back(Complex(1) / a);
    const BoundedValue s = compensated_sum(terms, Real(0), ctx);
    residual = std::max(residual, abs(s.value).to_double());
    tail = std::max(tail, shell.to_double());
    min_a = std::min(min_a, abs(a).to_double());
  }
  rep.residual = residual;
  rep.tail_estimate = tail;
  rep.min_abs_A = samples.empty() ? 0.0 : min_a;
  rep.decreasing_tail = true;
  for (int M = 0; M <= M_max; ++M) {
    DecayRow row;
    row.M = M;
    row.log10_values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      row.log10_values[i] = -log_abs_deriv[i] + M * std::log10(std::max(mods[i], 1.0));
    row.decreasing = eventually_decreasing(mods, row.log10_values);
    rep.decreasing_tail = rep.decreasing_tail && row.decreasing;
    rep.decay.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cdlab
