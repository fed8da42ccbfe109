#pragma once

#include <string>
#include <vector>

#include "cdlab/kernel/precision.hpp"
#include "cdlab/nodes/nodes.hpp"

namespace cdlab {

class EntireFunction;

enum class MeasureRule {
  DerivativePower,         // max(|t|,1)^{2N} |A'(t)|^{-2}
  DerivativeInversePower,  // max(|t|,1)^{-N} |A'(t)|^{-2}
  StretchedExp,            // exp(-|t|^gamma)
  PolyExp,                 // max(|t|,1)^M exp(-c|t|)
  Piecewise,               // parts[group of t]
  Explicit,                // values[n]
};

const char* to_string(MeasureRule r) noexcept;
MeasureRule measure_rule_from_string(const std::string& name);

struct MeasureSpec {
  MeasureRule rule = MeasureRule::StretchedExp;
  Real N{0};
  Real gamma{1};
  Real M{0};
  Real c{0};
  std::vector<MeasureSpec> parts;
  std::vector<Real> values;

  /// True if any part needs A'(t).
  bool derivative_based() const;
};

/// Weights mu_n attached to a node set.
struct Measure {
  MeasureSpec spec;
  std::vector<Real> values;
  std::vector<Real> sqrt_values;

  std::size_t size() const { return values.size(); }
};

/// Evaluates the rule at every node. Derivative rules use A, or for piecewise
/// rules the function of the node's group when group_functions is given.
Measure attach_measure(const NodeSet& ns, const MeasureSpec& spec, const EntireFunction* A,
                       const PrecisionContext& ctx, const std::vector<EntireFunction>* group_functions = nullptr);

/// One weight; `deriv_abs` is |A'(t)| (ignored by rules that do not need it).
Real measure_value(const MeasureSpec& spec, const Complex& t, const Real& deriv_abs);

}  // namespace cdlab
