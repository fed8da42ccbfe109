#include "cdlab/nodes/measure.hpp"

#include <algorithm>

#include "cdlab/entire/entire.hpp"
#include "cdlab/kernel/error.hpp"

namespace cdlab {

const char* to_string(MeasureRule r) noexcept {
  switch (r) {
    case MeasureRule::DerivativePower: return "derivative_power";
    case MeasureRule::DerivativeInversePower: return "derivative_inverse_power";
    case MeasureRule::StretchedExp: return "stretched_exp";
    case MeasureRule::PolyExp: return "poly_exp";
    case MeasureRule::Piecewise: return "piecewise";
    case MeasureRule::Explicit: return "explicit";
  }
  return "?";
}

MeasureRule measure_rule_from_string(const std::string& name) {
  for (MeasureRule r : {MeasureRule::DerivativePower, MeasureRule::DerivativeInversePower, MeasureRule::StretchedExp,
                        MeasureRule::PolyExp, MeasureRule::Piecewise, MeasureRule::Explicit})
    if (name == to_string(r)) return r;
  throw Error(ErrorKind::Config, "unknown measure rule '" + name + "'");
}

bool MeasureSpec::derivative_based() const {
  if (rule == MeasureRule::DerivativePower || rule == MeasureRule::DerivativeInversePower) return true;
  return std::any_of(parts.begin(), parts.end(), [](const MeasureSpec& p) { return p.derivative_based(); });
}

Real measure_value(const MeasureSpec& spec, const Complex& t, const Real& deriv_abs) {
  const Real r = abs(t);
  const Real base = max(r, Real(1));
  switch (spec.rule) {
    case MeasureRule::DerivativePower:
      return pow(base, Real(2) * spec.N) / (deriv_abs * deriv_abs);
    case MeasureRule::DerivativeInversePower:
      return pow(base, -spec.N) / (deriv_abs * deriv_abs);
    case MeasureRule::StretchedExp:
      return exp(-pow(r, spec.gamma));
    case MeasureRule::PolyExp:
      return pow(base, spec.M) * exp(-spec.c * r);
    default:
      throw Error(ErrorKind::InvalidArgument, "measure_value needs a simple rule");
  }
}

namespace {

const MeasureSpec& rule_for(const MeasureSpec& spec, int group) {
  if (spec.rule != MeasureRule::Piecewise) return spec;
  if (group < 0 || static_cast<std::size_t>(group) >= spec.parts.size())
    throw Error(ErrorKind::Config, "piecewise measure has no part for group " + std::to_string(group));
  return rule_for(spec.parts[static_cast<std::size_t>(group)], group);
}

}  // namespace

Measure attach_measure(const NodeSet& ns, const MeasureSpec& spec, const EntireFunction* A,
                       const PrecisionContext& ctx, const std::vector<EntireFunction>* group_functions) {
  PrecisionScope scope(ctx.bits);
  Measure mu;
  mu.spec = spec;
  mu.values.reserve(ns.size());
  if (spec.rule == MeasureRule::Explicit && spec.values.size() != ns.size())
    throw Error(ErrorKind::Config, "explicit measure length does not match the node count");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    Real v;
    if (spec.rule == MeasureRule::Explicit) {
      v = spec.values[i];
    } else {
      const MeasureSpec& r = rule_for(spec, ns.group[i]);
      Real d(1);
      if (r.derivative_based()) {
        const EntireFunction* f = A;
        if (group_functions && static_cast<std::size_t>(ns.group[i]) < group_functions->size() &&
            (*group_functions)[static_cast<std::size_t>(ns.group[i])].valid())
          f = &(*group_functions)[static_cast<std::size_t>(ns.group[i])];
        if (!f) throw Error(ErrorKind::InvalidArgument, "derivative-based measure needs an entire function");
        d = abs(derivative_at_node(*f, ns.nodes[i], ctx).value);
      }
      v = measure_value(r, ns.nodes[i], d);
    }
    if (!(v > 0) || !v.is_finite())
      throw Error(ErrorKind::DerivativeUnderflow, "measure is not positive and finite at node " + std::to_string(i));
    mu.values.push_back(v);
  }
  mu.sqrt_values.reserve(mu.values.size());
  for (const auto& v : mu.values) mu.sqrt_values.push_back(sqrt(v));
  return mu;
}

}  // namespace cdlab
