#include "cdlab/kernel/error.hpp"
#include "cdlab/space/space.hpp"

namespace cdlab {

MomentReport moment(const std::vector<Complex>& c, const NodeSet& ns, const Measure& mu, int k,
                    const PrecisionContext& ctx, const Real& tail_bound) {
  if (k < 0 || k > 64) throw Error(ErrorKind::InvalidArgument, "moment order must lie in [0, 64]");
  if (c.size() != ns.size() || mu.size() != ns.size()) throw Error(ErrorKind::InvalidArgument, "length mismatch");
  PrecisionScope scope(ctx.bits);
  std::vector<Complex> terms;
  terms.reserve(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n].is_zero()) continue;
    terms.push_back(c[n] * mu.values[n] * pow(ns.nodes[n], k));
  }
  MomentReport r;
  r.k = k;
  r.tail_bound = tail_bound;
  r.value = compensated_sum(terms, tail_bound, ctx);
  return r;
}

OrthogonalCoefficients orthogonal_coefficients(const NodeSet& ns, const Measure& mu, const EntireFunction& A,
                                               const PrecisionContext& ctx) {
  if (!mu.spec.derivative_based())
    throw Error(ErrorKind::InvalidArgument, "orthogonal coefficients need a derivative-based measure");
  PrecisionScope scope(ctx.bits);
  OrthogonalCoefficients out;
  out.norm_sq = Real(0);
  out.c.reserve(ns.size());
  for (std::size_t n = 0; n < ns.size(); ++n) {
    const Complex d = derivative_at_node(A, ns.nodes[n], ctx).value;
    Complex cn = Complex(1) / (d * mu.values[n]);
    out.norm_sq += norm(cn) * mu.values[n];
    out.partial_norm_sq.push_back(out.norm_sq);
    out.c.push_back(std::move(cn));
  }
  return out;
}

Real orthogonal_moment_tail(const NodeSet& outer, const EntireFunction& A_H, const Real& R, int k,
                            const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  Real sum(0);
  for (const auto& t : outer.nodes) {
    const Real r = abs(t);
    if (!(r > R)) continue;
    sum += pow(r, static_cast<long>(k)) / abs(derivative_at_node(A_H, t, ctx).value);
  }
  return sum;
}

}  // namespace cdlab
