#include <algorithm>
#include <cmath>

#include "cdlab/kernel/error.hpp"
#include "cdlab/space/space.hpp"

namespace cdlab {

EntirePart::EntirePart(std::vector<Complex> c, NodeSet ns, Measure mu, EntireFunction A2)
    : c_(std::move(c)), ns_(std::move(ns)), mu_(std::move(mu)), A2_(std::move(A2)) {
  if (c_.size() != ns_.size() || mu_.size() != ns_.size()) throw Error(ErrorKind::InvalidArgument, "length mismatch");
  for (const auto& t : ns_.nodes)
    if (A2_.has_zero(t)) throw Error(ErrorKind::InvalidArgument, "node is a zero of A2: " + to_string(t, 12));
}

Complex EntirePart::at_bits(const Complex& z, long bits, double& lost_bits) const {
  PrecisionScope scope(bits);
  Complex zz = z;
  zz.round_to(bits);
  const Complex az = A2_(zz);
  const Real maz = abs(az);
  Complex sum;
  lost_bits = 0;
  for (std::size_t n = 0; n < ns_.size(); ++n) {
    if (c_[n].is_zero()) continue;
    const Complex w = c_[n] * sqrt(mu_.values[n]);
    const Complex& t = ns_.nodes[n];
    const Complex h = zz - t;
    if (h.is_zero()) {
      sum += w * A2_.jet(t).deriv;
      continue;
    }
    const Complex at = A2_(t);
    const Complex diff = az - at;
    const Real big = max(maz, abs(at));
    if (!big.is_zero()) {
      const Real ad = abs(diff);
      const double lost = ad.is_zero() ? static_cast<double>(bits) : log(big / ad).to_double() / std::log(2.0);
      lost_bits = std::max(lost_bits, lost);
    }
    sum += w * diff / h;
  }
  return sum;
}

BoundedValue EntirePart::evaluate(const Complex& z, const PrecisionContext& ctx) const {
  long bits = ctx.bits;
  for (;;) {
    double lost = 0;
    Complex v = at_bits(z, bits, lost);
    if (static_cast<double>(bits) - lost >= static_cast<double>(ctx.bits) / 2) {
      PrecisionScope scope(ctx.bits);
      BoundedValue out;
      out.value = v;
      out.value.round_to(ctx.bits);
      out.abs_error = abs(v) * Real(static_cast<double>(ns_.size()) + 8) * pow2(-(bits - static_cast<long>(lost)));
      out.rigorous = false;
      out.converged = out.abs_error.to_double() <= ctx.target_tol;
      return out;
    }
    if (bits >= ctx.max_bits)
      throw Error(ErrorKind::PrecisionExhausted, "cancellation in the entire part exceeds max_bits");
    bits = std::min(bits * 2, ctx.max_bits);
  }
}

EntirePart split_entire_part(const std::vector<Complex>& c, const NodeSet& ns, const Measure& mu,
                             const EntireFunction& A2) {
  return EntirePart(c, ns, mu, A2);
}

}  // namespace cdlab
