#pragma once

#include <vector>

#include "cdlab/kernel/complex.hpp"

namespace cdlab {

/// Working precision plus the escalation policy used by all evaluators.
struct PrecisionContext {
  long bits = 512;
  double target_tol = 1e-40;
  long max_bits = 8192;

  /// Same tolerance, doubled bits (capped at max_bits).
  PrecisionContext escalated() const;
  bool can_escalate() const { return bits < max_bits; }
};

/// Builds a context; max_bits = min(16 * bits, 16384). Throws for bits < 64.
PrecisionContext make_context(long bits, double target_tol);

/// Default context: 512 bits, tolerance 1e-40.
PrecisionContext default_context();

/// A value with a scalar error bound.
struct BoundedValue {
  Complex value;
  Real abs_error;
  bool rigorous = false;  // bound from an explicit tail formula
  bool converged = true;  // abs_error <= target_tol
};

/// Correctly rounded sum of the terms at ctx.bits; abs_error adds the rounding
/// bound and tail_bound.
BoundedValue compensated_sum(const std::vector<Complex>& terms, const Real& tail_bound,
                             const PrecisionContext& ctx);

/// Relative rounding allowance used for closed-form evaluations at `bits`.
Real rounding_bound(const Real& magnitude, long bits, long guard = 8);

}  // namespace cdlab
