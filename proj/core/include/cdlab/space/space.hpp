#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/entire/entire.hpp"
#include "cdlab/nodes/measure.hpp"

namespace cdlab {

/// Nodes, weights and generating function of a space H(T, A, mu).
struct Space {
  NodeSet ns;
  Measure mu;
  EntireFunction A;
  /// anchor[n]: t_n is a declared zero of A.
  std::vector<char> anchor;
  std::vector<std::complex<double>> approx;  // nodes in double, for searches

  /// Index of the nearest node that is a zero of A, if any.
  std::optional<std::size_t> nearest_anchor(const std::complex<double>& z) const;
};

std::shared_ptr<const Space> make_space(NodeSet ns, Measure mu, EntireFunction A);

/// f = sum a_n mu_n^{1/2} / (z - t_n) and F = A f.
class SpaceElement {
 public:
  std::vector<Complex> coeffs;
  std::shared_ptr<const Space> space;
  Real norm{0};

  const NodeSet& ns() const { return space->ns; }
  const Measure& mu() const { return space->mu; }
  const EntireFunction& A() const { return space->A; }
  bool is_zero() const { return support_.empty(); }
  const std::vector<std::size_t>& support() const { return support_; }

  /// F and F' at the working precision. Near a node the singular term is
  /// replaced by w_k A(z)/(z - t_k), so F(t_k) = a_k mu_k^{1/2} A'(t_k).
  Jet jet_F(const Complex& z) const;
  /// f and f'; z must not be a node.
  Jet jet_f(const Complex& z) const;
  /// sum over the support of |a_n mu_n^{1/2} / (z - t_n)| (double).
  double abs_sum(const Complex& z) const;

 private:
  friend SpaceElement make_element(std::vector<Complex> coeffs, std::shared_ptr<const Space> space);
  std::vector<std::size_t> support_;
  std::vector<Complex> w_;  // a_n mu_n^{1/2}, parallel to support_
  std::vector<Complex> t_;  // nodes on the support
  std::vector<std::size_t> slot_;  // node index -> position in support_, or npos
};

SpaceElement make_element(std::vector<Complex> coeffs, std::shared_ptr<const Space> space);
SpaceElement make_element(std::vector<Complex> coeffs, const NodeSet& ns, const Measure& mu, const EntireFunction& A);

BoundedValue evaluate_f(const SpaceElement& el, const Complex& z, const PrecisionContext& ctx);
BoundedValue evaluate_F(const SpaceElement& el, const Complex& z, const PrecisionContext& ctx);

// Coefficient generators.
std::vector<Complex> basis_coeffs(std::size_t n, std::size_t k);
/// Independent standard complex Gaussians (E|a|^2 = 1), reproducible per seed.
std::vector<Complex> random_gaussian_coeffs(std::size_t n, std::uint64_t seed);
/// a_n = c_n mu_n^{1/2}: element coefficients of an L^2(mu) sequence.
std::vector<Complex> element_coeffs(const std::vector<Complex>& c, const Measure& mu);

struct MomentReport {
  int k = 0;
  BoundedValue value;
  Real tail_bound{0};
};

/// sum c_n mu_n t_n^k over the truncation; tail_bound bounds the excluded terms.
MomentReport moment(const std::vector<Complex>& c, const NodeSet& ns, const Measure& mu, int k,
                    const PrecisionContext& ctx, const Real& tail_bound = Real(0));

struct OrthogonalCoefficients {
  std::vector<Complex> c;  // 1 / (A'(t_n) mu_n)
  Real norm_sq;            // sum |c_n|^2 mu_n
  std::vector<Real> partial_norm_sq;
};

OrthogonalCoefficients orthogonal_coefficients(const NodeSet& ns, const Measure& mu, const EntireFunction& A,
                                               const PrecisionContext& ctx);

/// sum |t|^k / |A_H'(t)| over nodes of `outer` with |t| > R. For the
/// orthogonal sequence c_n mu_n = 1/A'(t_n) this bounds the moment tail
/// between R and the horizon of `outer`.
Real orthogonal_moment_tail(const NodeSet& outer, const EntireFunction& A_H, const Real& R, int k,
                            const PrecisionContext& ctx);

enum class Tri { Pass, Fail, Inconclusive };
const char* to_string(Tri t) noexcept;

struct MembershipOptions {
  double grid_radius = 0;       // 0: node radius (a quarter of it for truncated A)
  int circles = 8;
  int points_per_circle = 24;
  int max_power = 16;
  int grid = 64;
  double small_factor = 0.1;    // |F| < small_factor |A|
  double density_threshold = 0.2;
  int decay_power = 10;
};

struct MembershipReport {
  Tri node_sum = Tri::Inconclusive;  // (i)
  double node_sum_total = 0;
  double node_sum_last_decade = 0;
  Tri growth = Tri::Inconclusive;     // (ii)
  int growth_power = -1;              // least N' that passes
  std::vector<double> circle_radii;
  std::vector<double> circle_max;     // max |F/A| per circle (N' = 0)
  int excluded_probes = 0;
  Tri smallness = Tri::Inconclusive;  // (iii)
  double small_fraction = 0;
  double decay_fraction = 0;          // fraction with |F/A| |z|^{decay_power} < 1
  int grid_points = 0;
};

/// Finite-scale checks of the three membership conditions for a candidate F.
MembershipReport membership_check(const std::function<Complex(const Complex&)>& F, const NodeSet& ns,
                                  const Measure& mu, const EntireFunction& A, const PrecisionContext& ctx,
                                  const MembershipOptions& opt = {});
/// For an element, (i) is the finite sum and must reproduce ||a||^2.
MembershipReport membership_check(const SpaceElement& el, const PrecisionContext& ctx,
                                  const MembershipOptions& opt = {});

/// H = A2 f1 - sum A2(t_n) c_n mu_n^{1/2}/(z - t_n) for f1 = sum c_n mu_n^{1/2}/(z - t_n)
/// over a node set disjoint from the zeros of A2. Evaluated termwise as
/// sum c_n mu_n^{1/2} (A2(z) - A2(t_n))/(z - t_n).
class EntirePart {
 public:
  EntirePart(std::vector<Complex> c, NodeSet ns, Measure mu, EntireFunction A2);
  BoundedValue evaluate(const Complex& z, const PrecisionContext& ctx) const;

 private:
  Complex at_bits(const Complex& z, long bits, double& lost_bits) const;
  std::vector<Complex> c_;
  NodeSet ns_;
  Measure mu_;
  EntireFunction A2_;
};

EntirePart split_entire_part(const std::vector<Complex>& c, const NodeSet& ns, const Measure& mu,
                             const EntireFunction& A2);

}  // namespace cdlab
