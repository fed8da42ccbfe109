#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdlab/kernel/precision.hpp"
#include "cdlab/nodes/nodes.hpp"

namespace cdlab {

/// Value and first derivative.
struct Jet {
  Complex value;
  Complex deriv;
};

/// An entire function with known simple zeros.
///
/// Every form can evaluate the quotient A(z)/(z - t) for one of its zeros t,
/// which stays accurate as z approaches t; jet() is built from it.
class EntireFunction {
 public:
  class Impl {
   public:
    virtual ~Impl() = default;
    virtual Jet jet(const Complex& z) const;
    /// A(z)/(z - zero) and its derivative; zero must be a declared zero.
    virtual Jet quotient_jet(const Complex& z, const Complex& zero) const = 0;
    /// Nearest declared zero, if the form knows its zeros.
    virtual std::optional<Complex> nearest_zero(const Complex& z) const = 0;
    virtual bool has_zero(const Complex& t) const;
    /// Relative truncation error bound at z (0 for closed forms).
    virtual Real relative_tail(const Complex& z) const;
    virtual std::optional<Real> truncation_radius() const { return std::nullopt; }
    virtual double order_estimate() const = 0;
    virtual std::string form() const = 0;
  };

  EntireFunction() = default;
  explicit EntireFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  /// prod (1 - z/t) over the nodes (times z when 0 is a node).
  static EntireFunction canonical_genus0(NodeSet nodes);
  /// Same product; requires inf |t_{k+1}|/|t_k| > 1.
  static EntireFunction lacunary(NodeSet nodes);
  /// sin(pi w) sin(pi i w) / w^p with w = e^{-i rotation} z; p = 2 removes the zero at 0.
  static EntireFunction sin_cross(const Real& rotation = Real(0), bool drop_origin = false);
  /// Weierstrass sigma of Z + iZ, translated so its zeros are Z + iZ + shift.
  static EntireFunction weierstrass_sigma(const Complex& shift = Complex(0));
  /// Coefficients in increasing degree.
  static EntireFunction polynomial(std::vector<Complex> coeffs);
  static EntireFunction product(std::vector<EntireFunction> factors);

  bool valid() const { return impl_ != nullptr; }
  Jet jet(const Complex& z) const { return impl_->jet(z); }
  Complex operator()(const Complex& z) const { return impl_->jet(z).value; }
  Jet quotient_jet(const Complex& z, const Complex& zero) const { return impl_->quotient_jet(z, zero); }
  std::optional<Complex> nearest_zero(const Complex& z) const { return impl_->nearest_zero(z); }
  Real relative_tail(const Complex& z) const { return impl_->relative_tail(z); }
  std::optional<Real> truncation_radius() const { return impl_->truncation_radius(); }
  double order_estimate() const { return impl_->order_estimate(); }
  std::string form() const { return impl_->form(); }
  /// True when t is (numerically) one of the declared zeros.
  bool has_zero(const Complex& t) const { return impl_->has_zero(t); }
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

BoundedValue evaluate(const EntireFunction& A, const Complex& z, const PrecisionContext& ctx);
BoundedValue derivative_at_node(const EntireFunction& A, const Complex& t, const PrecisionContext& ctx);
BoundedValue log_derivative(const EntireFunction& A, const Complex& z, const PrecisionContext& ctx);

/// Replaces zeros t_k of base by s_k: base(z) * prod (z - s_k)/(z - t_k).
EntireFunction build_rational_modification(const EntireFunction& base,
                                           const std::vector<std::pair<Complex, Complex>>& pairs);

struct DecayRow {
  int M;
  std::vector<double> log10_values;  // log10(|A'(t_n)|^{-1} max(|t_n|,1)^M) per node
  bool decreasing;
};

struct HKReport {
  double residual = 0;          // max |1/A - sum 1/(A'(t)(z-t))| over samples
  double tail_estimate = 0;     // outermost shell contribution
  std::vector<DecayRow> decay;  // M = 0..M_max
  bool decreasing_tail = false;
  double min_abs_A = 0;
};

HKReport hamburger_krein_check(const EntireFunction& A, const NodeSet& ns, const std::vector<Complex>& samples,
                               int M_max, const PrecisionContext& ctx);

/// Eventually decreasing: nodes are grouped into shells of equal modulus (moduli
/// ascending) and each shell keeps its largest value. The final non-increasing
/// run must cover at least half of the shells, and the last is below the first.
/// Values may be given on a log scale.
bool eventually_decreasing(const std::vector<double>& moduli, const std::vector<double>& values);

}  // namespace cdlab
