#include "cdlab/kernel/precision.hpp"

#include <algorithm>
#include <string>

#include "cdlab/kernel/error.hpp"

namespace cdlab {

PrecisionContext PrecisionContext::escalated() const {
  PrecisionContext c = *this;
  c.bits = std::min(bits * 2, max_bits);
  return c;
}

PrecisionContext make_context(long bits, double target_tol) {
  if (bits < 64) {
    throw Error(ErrorKind::InsufficientPrecision,
                "insufficient precision: " + std::to_string(bits) + " bits (need >= 64)");
  }
  if (!(target_tol > 0)) throw Error(ErrorKind::InvalidArgument, "target_tol must be positive");
  PrecisionContext c;
  c.bits = bits;
  c.target_tol = target_tol;
  c.max_bits = std::min(16 * bits, 16384L);
  if (c.max_bits < bits) c.max_bits = bits;
  return c;
}

PrecisionContext default_context() { return make_context(512, 1e-40); }

Real rounding_bound(const Real& magnitude, long bits, long guard) {
  return abs(magnitude) * pow2(-bits + guard);
}

namespace {

// mpfr_sum is correctly rounded; returns false on overflow.
bool exact_sum(const std::vector<mpfr_ptr>& ptrs, Real& out) {
  mpfr_sum(out.raw(), ptrs.data(), ptrs.size(), MPFR_RNDN);
  return out.is_finite();
}

}  // namespace

BoundedValue compensated_sum(const std::vector<Complex>& terms, const Real& tail_bound,
                             const PrecisionContext& ctx) {
  long bits = ctx.bits;
  BoundedValue out;
  std::vector<mpfr_ptr> re, im;
  re.reserve(terms.size());
  im.reserve(terms.size());
  for (const auto& t : terms) {
    re.push_back(const_cast<mpfr_ptr>(t.re.raw()));
    im.push_back(const_cast<mpfr_ptr>(t.im.raw()));
  }
  for (;;) {
    PrecisionScope scope(bits);
    Real sr, si;
    const bool ok = exact_sum(re, sr) && exact_sum(im, si);
    if (ok || bits >= ctx.max_bits) {
      out.value = Complex{sr, si};
      // Correct rounding: half an ulp per component.
      out.abs_error = (abs(sr) + abs(si)) * pow2(-bits) + tail_bound;
      out.rigorous = true;
      out.converged = ok && out.abs_error.to_double() <= ctx.target_tol;
      if (!out.abs_error.is_finite()) out.abs_error = tail_bound;
      return out;
    }
    bits = std::min(bits * 2, ctx.max_bits);
  }
}

}  // namespace cdlab
