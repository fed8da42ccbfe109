#include <algorithm>
#include <cmath>
#include <limits>

#include "cdlab/kernel/error.hpp"
#include "cdlab/kernel/parallel.hpp"
#include "cdlab/space/space.hpp"

namespace cdlab {

const char* to_string(Tri t) noexcept {
  switch (t) {
    case Tri::Pass: return "pass";
    case Tri::Fail: return "fail";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log |F(z)/A(z)|; -inf when F vanishes, +inf when only A does.
double log_ratio(const Complex& F, const Complex& A) {
  const Real f = abs(F), a = abs(A);
  if (f.is_zero()) return kNegInf;
  if (a.is_zero()) return std::numeric_limits<double>::infinity();
  return log(f / a).to_double();
}

double probe_radius(const NodeSet& ns, const EntireFunction& A, const MembershipOptions& opt) {
  if (opt.grid_radius > 0) return opt.grid_radius;
  const double r = ns.radius.to_double();
  return A.truncation_radius() ? r / 4 : r;
}

void node_sum(const std::function<Complex(const Complex&)>& F, const NodeSet& ns, const Measure& mu,
              const EntireFunction& A, const PrecisionContext& ctx, MembershipReport& rep) {
  const double cut = ns.radius.to_double() / 10;
  auto terms = parallel_map<double>(ns.size(), [&](std::size_t n) {
    const Real d = abs(derivative_at_node(A, ns.nodes[n], ctx).value);
    return (norm(F(ns.nodes[n])) / (d * d * mu.values[n])).to_double();
  });
  for (std::size_t n = 0; n < ns.size(); ++n) {
    rep.node_sum_total += terms[n];
    if (ns.modulus(n) > cut) rep.node_sum_last_decade += terms[n];
  }
  if (!std::isfinite(rep.node_sum_total)) rep.node_sum = Tri::Fail;
  else rep.node_sum = rep.node_sum_last_decade <= 0.01 * rep.node_sum_total ? Tri::Pass : Tri::Fail;
}

void growth(const std::function<Complex(const Complex&)>& F, const NodeSet& ns, const EntireFunction& A,
            const MembershipOptions& opt, MembershipReport& rep) {
  const double rmax = probe_radius(ns, A, opt);
  const int nc = std::max(opt.circles, 2);
  const int np = std::max(opt.points_per_circle, 1);
  std::vector<std::complex<double>> pts;
  std::vector<int> circle;
  for (int j = 0; j < nc; ++j) {
    const double r = rmax * std::pow(16.0, static_cast<double>(j - (nc - 1)) / (nc - 1));
    rep.circle_radii.push_back(r);
    for (int m = 0; m < np; ++m) {
      const std::complex<double> z = std::polar(r, 2 * M_PI * (m + 0.5) / np);
      const std::size_t k = ns.nearest(z);
      if (ns.size() > 0) {
        const double tk = std::max(ns.modulus(k), 1.0);
        const double excl = ns.sep_C * std::pow(tk, -ns.sep_N) / 2;
        if (std::abs(z - ns.nodes[k].to_std()) < excl) {
          ++rep.excluded_probes;
          continue;
        }
      }
      pts.push_back(z);
      circle.push_back(j);
    }
  }
  auto lr = parallel_map<double>(pts.size(), [&](std::size_t i) {
    const Complex z(pts[i]);
    return log_ratio(F(z), A(z));
  });
  rep.circle_max.assign(static_cast<std::size_t>(nc), kNegInf);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto& m = rep.circle_max[static_cast<std::size_t>(circle[i])];
    m = std::max(m, lr[i]);
  }
  bool any = false;
  for (double v : rep.circle_max) any = any || v != kNegInf;
  for (auto& v : rep.circle_max) v = std::exp(v);
  if (pts.empty()) return;
  if (!any) {
    rep.growth = Tri::Pass;
    rep.growth_power = 0;
    return;
  }
  for (int p = 0; p <= opt.max_power; ++p) {
    double inner = kNegInf, outer = kNegInf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = lr[i] - p * std::log(std::abs(pts[i]) + 1);
      double& slot = circle[i] < nc / 2 ? inner : outer;
      slot = std::max(slot, v);
    }
    if (outer <= inner + 1e-9) {
      rep.growth = Tri::Pass;
      rep.growth_power = p;
      return;
    }
  }
  rep.growth = Tri::Fail;
}

void smallness(const std::function<Complex(const Complex&)>& F, const NodeSet& ns, const EntireFunction& A,
               const MembershipOptions& opt, MembershipReport& rep) {
  const double R = probe_radius(ns, A, opt);
  const int g = std::max(opt.grid, 2);
  std::vector<std::complex<double>> pts;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const std::complex<double> z(-R + (i + 0.5) * 2 * R / g, -R + (j + 0.5) * 2 * R / g);
      if (std::abs(z) <= R) pts.push_back(z);
    }
  auto lr = parallel_map<double>(pts.size(), [&](std::size_t i) {
    const Complex z(pts[i]);
    return log_ratio(F(z), A(z));
  });
  const double small = std::log(opt.small_factor);
  int n_small = 0, n_decay = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (lr[i] < small) ++n_small;
    if (lr[i] + opt.decay_power * std::log(std::abs(pts[i])) < 0) ++n_decay;
  }
  rep.grid_points = static_cast<int>(pts.size());
  if (pts.empty()) return;
  rep.small_fraction = static_cast<double>(n_small) / pts.size();
  rep.decay_fraction = static_cast<double>(n_decay) / pts.size();
  rep.smallness = rep.small_fraction >= opt.density_threshold ? Tri::Pass : Tri::Fail;
}

}  // namespace

MembershipReport membership_check(const std::function<Complex(const Complex&)>& F, const NodeSet& ns,
                                  const Measure& mu, const EntireFunction& A, const PrecisionContext& ctx,
                                  const MembershipOptions& opt) {
  PrecisionScope scope(ctx.bits);
  MembershipReport rep;
  node_sum(F, ns, mu, A, ctx, rep);
  growth(F, ns, A, opt, rep);
  smallness(F, ns, A, opt, rep);
  return rep;
}

MembershipReport membership_check(const SpaceElement& el, const PrecisionContext& ctx,
                                  const MembershipOptions& opt) {
  PrecisionScope scope(ctx.bits);
  auto F = [&el](const Complex& z) { return el.jet_F(z).value; };
  MembershipReport rep = membership_check(F, el.ns(), el.mu(), el.A(), ctx, opt);
  // Finite coefficients: the node sum is ||a||^2 exactly.
  const double n2 = (el.norm * el.norm).to_double();
  const double tol = std::ldexp(1.0, static_cast<int>(-ctx.bits / 2)) * std::max(1.0, n2);
  rep.node_sum = std::abs(rep.node_sum_total - n2) <= tol + 1e-12 * n2 ? Tri::Pass : Tri::Fail;
  return rep;
}

}  // namespace cdlab
