#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cdlab/experiments/config.hpp"
#include "cdlab/kernel/error.hpp"

namespace cdlab {

const char* to_string(ExperimentKind k) noexcept {
  switch (k) {
    case ExperimentKind::StrongLocalization: return "strong_localization";
    case ExperimentKind::Type2: return "type2";
    case ExperimentKind::Ordering: return "ordering";
    case ExperimentKind::HamburgerKrein: return "hamburger_krein";
    case ExperimentKind::Legendre: return "legendre";
    case ExperimentKind::WeightDecay: return "weight_decay";
    case ExperimentKind::MomentOrthogonality: return "moment_orthogonality";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
  for (auto k : {ExperimentKind::StrongLocalization, ExperimentKind::Type2, ExperimentKind::Ordering,
                 ExperimentKind::HamburgerKrein, ExperimentKind::Legendre, ExperimentKind::WeightDecay,
                 ExperimentKind::MomentOrthogonality})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::Config, "unknown experiment kind '" + s + "'");
}

std::string WeightSpec::describe() const {
  char b[32];
  std::snprintf(b, sizeof b, "%g", beta);
  switch (kind) {
    case WeightKind::Exp: return std::string("exp(") + b + "t)";
    case WeightKind::Quadratic: return "t^2/2";
    case WeightKind::Power: return std::string("t^") + b + "/" + b;
    case WeightKind::Sampled: return "sampled(" + std::to_string(t.size()) + ")";
  }
  return "?";
}

std::uint64_t ExperimentConfig::seed_for(int trial) const {
  const auto i = static_cast<std::size_t>(trial);
  if (i < seeds.size()) return seeds[i];
  if (seeds.empty()) return 1 + i;
  return seeds.back() + (i - seeds.size() + 1);
}

EntireFunction build_entire(const EntireSpec& spec, const FamilySpec& default_nodes, const Real& default_radius) {
  const std::string& f = spec.form;
  if (f == "canonical_genus0" || f == "lacunary") {
    const FamilySpec fam = spec.nodes.value_or(default_nodes);
    const Real R = spec.product_radius > 0 ? Real(spec.product_radius) : default_radius;
    NodeSet ns = generate_nodes(fam, R);
    return f == "lacunary" ? EntireFunction::lacunary(std::move(ns)) : EntireFunction::canonical_genus0(std::move(ns));
  }
  if (f == "sin_cross") return EntireFunction::sin_cross(spec.rotation, spec.drop_origin);
  if (f == "weierstrass_sigma") return EntireFunction::weierstrass_sigma(spec.shift);
  if (f == "polynomial") {
    if (spec.coeffs.empty()) throw Error(ErrorKind::Config, "polynomial needs coefficients");
    return EntireFunction::polynomial(spec.coeffs);
  }
  if (f == "product") {
    std::vector<EntireFunction> parts;
    for (const auto& p : spec.factors) parts.push_back(build_entire(p, default_nodes, default_radius));
    return EntireFunction::product(std::move(parts));
  }
  if (f.empty()) throw Error(ErrorKind::Config, "entire function form is missing");
  throw Error(ErrorKind::Config, "unknown entire function form '" + f + "'");
}

namespace {

const FamilySpec& group_family(const FamilySpec& nodes, int g) {
  if (nodes.kind != Family::Union) return nodes;
  if (g < 0 || static_cast<std::size_t>(g) >= nodes.operands.size())
    throw Error(ErrorKind::Config, "partition group " + std::to_string(g) + " is not a union operand");
  return nodes.operands[static_cast<std::size_t>(g)];
}

}  // namespace

BuiltSpace build_space(const ExperimentConfig& cfg, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  const SpaceSpec& s = cfg.space;
  NodeSet ns = generate_nodes(s.nodes, s.radius);
  BuiltSpace out;
  EntireFunction A;
  if (cfg.partition) {
    const auto& p = *cfg.partition;
    const int groups = std::max({p.t1_group, p.t2_group, ns.group_count() - 1}) + 1;
    out.group_functions.resize(static_cast<std::size_t>(groups));
    out.group_functions[static_cast<std::size_t>(p.t1_group)] =
        build_entire(p.A1, group_family(s.nodes, p.t1_group), s.radius);
    out.group_functions[static_cast<std::size_t>(p.t2_group)] =
        build_entire(p.A2, group_family(s.nodes, p.t2_group), s.radius);
    A = s.A.form.empty() ? EntireFunction::product({out.group_functions[static_cast<std::size_t>(p.t1_group)],
                                                   out.group_functions[static_cast<std::size_t>(p.t2_group)]})
                         : build_entire(s.A, s.nodes, s.radius);
  } else {
    A = build_entire(s.A, s.nodes, s.radius);
  }
  Measure mu = attach_measure(ns, s.measure, &A, ctx, out.group_functions.empty() ? nullptr : &out.group_functions);
  out.space = make_space(std::move(ns), std::move(mu), std::move(A));
  return out;
}

std::vector<Complex> build_coefficients(const CoefficientSpec& spec, const Space& space, std::uint64_t seed,
                                        const PrecisionContext& ctx) {
  const std::size_t n = space.ns.size();
  if (spec.kind == "basis") return basis_coeffs(n, spec.index);
  if (spec.kind == "random_gaussian") return random_gaussian_coeffs(n, seed);
  if (spec.kind == "orthogonal")
    return element_coeffs(orthogonal_coefficients(space.ns, space.mu, space.A, ctx).c, space.mu);
  if (spec.kind == "explicit") {
    if (spec.values.size() != n)
      throw Error(ErrorKind::Config, "explicit coefficients: " + std::to_string(spec.values.size()) + " values for " +
                                         std::to_string(n) + " nodes");
    return spec.values;
  }
  if (spec.kind == "supported_on") {
    if (!spec.inner) throw Error(ErrorKind::Config, "supported_on needs an inner generator");
    auto c = build_coefficients(*spec.inner, space, seed, ctx);
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(spec.groups.begin(), spec.groups.end(), space.ns.group[i]) == spec.groups.end()) c[i] = Complex(0);
    return c;
  }
  throw Error(ErrorKind::Config, "unknown coefficient generator '" + spec.kind + "'");
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.schema != 1) throw Error(ErrorKind::Config, "unsupported schema " + std::to_string(cfg.schema));
  if (cfg.trials < 1) throw Error(ErrorKind::Config, "trials must be at least 1");
  if (cfg.precision.bits < 64) throw Error(ErrorKind::Config, "precision below 64 bits");
  if (cfg.escalate_to_bits < cfg.precision.bits) throw Error(ErrorKind::Config, "escalate_to_bits below bits");
  if (cfg.kind == ExperimentKind::Legendre) {
    if (cfg.weights.empty()) throw Error(ErrorKind::Config, "legendre needs at least one weight");
    for (const auto& w : cfg.weights) {
      if (w.kind == WeightKind::Sampled && (w.t.size() < 3 || w.t.size() != w.w.size()))
        throw Error(ErrorKind::Config, "sampled weight needs matching t and w arrays of length >= 3");
      if ((w.kind == WeightKind::Exp || w.kind == WeightKind::Power) && !(w.beta > 0))
        throw Error(ErrorKind::Config, "weight beta must be positive");
    }
    return;
  }
  PrecisionScope scope(64);
  NodeSet ns = generate_nodes(cfg.space.nodes, cfg.space.radius);
  if (ns.size() == 0) throw Error(ErrorKind::Config, "no nodes inside the radius");
  if (cfg.partition) {
    const auto& p = *cfg.partition;
    if (p.t1_group == p.t2_group) throw Error(ErrorKind::Config, "partition groups must differ");
  } else if (cfg.space.A.form.empty()) {
    throw Error(ErrorKind::Config, "space.A is required without a partition");
  }
  const bool localizes = cfg.kind == ExperimentKind::StrongLocalization || cfg.kind == ExperimentKind::Type2 ||
                         cfg.kind == ExperimentKind::Ordering;
  if (localizes) {
    if (!cfg.region_set) throw Error(ErrorKind::Config, "region is required");
    const Rect& r = cfg.region.rect;
    const double reach = cfg.region.disk ? std::abs(cfg.region.center) + cfg.region.radius
                                         : std::max(std::hypot(r.x0, r.y0), std::max(std::hypot(r.x1, r.y0),
                                                    std::max(std::hypot(r.x0, r.y1), std::hypot(r.x1, r.y1))));
    if (reach > cfg.space.radius.to_double() / 4 * (1 + 1e-12))
      throw Error(ErrorKind::Config, "region must lie in D(0, radius/4)");
    if (cfg.kind == ExperimentKind::Type2 && !cfg.partition) throw Error(ErrorKind::Config, "type2 needs a partition");
  }
  if (cfg.M < 0) throw Error(ErrorKind::Config, "M must be positive");
}

}  // namespace cdlab
