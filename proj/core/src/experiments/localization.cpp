#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "cdlab/experiments/experiments.hpp"
#include "cdlab/kernel/error.hpp"

namespace cdlab {

double default_budget(std::size_t scanned) { return 0.1 * std::sqrt(static_cast<double>(scanned)) + 5; }

namespace {

using ElementMaker = std::function<SpaceElement(const BuiltSpace&, const PrecisionContext&)>;

struct TrialRun {
  TrialOutcome out;
  bool ok = false;
  bool zero_element = false;
  std::string error;
  std::size_t cells = 0, evaluations = 0;
  int total_winding = 0, pruned = 0;
};

bool escalates(ErrorKind k) {
  switch (k) {
    case ErrorKind::ContourTooClose:
    case ErrorKind::NonIntegerWinding:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::DerivativeUnderflow:
    case ErrorKind::TooCloseToZero:
    case ErrorKind::InsufficientPrecision:
      return true;
    default:
      return false;
  }
}

double disk_exponent(const ExperimentConfig& cfg, const NodeSet& ns) { return cfg.M > 0 ? cfg.M : ns.sep_N + 2; }

// Finds and classifies the zeros of one element, escalating precision on numeric failures.
TrialRun run_trial(const ExperimentConfig& cfg, const std::string& label, std::uint64_t seed,
                   const ElementMaker& make) {
  TrialRun run;
  run.out.label = label;
  run.out.seed = seed;
  PrecisionContext ctx = cfg.precision;
  for (;;) {
    run.out.bits = ctx.bits;
    try {
      PrecisionScope scope(ctx.bits);
      const BuiltSpace built = build_space(cfg, ctx);
      const SpaceElement el = make(built, ctx);
      if (el.is_zero()) {
        run.zero_element = true;
        run.error = "zero element";
        return run;
      }
      Evaluable F = [&el](const Complex& z) { return el.jet_F(z); };
      FindOptions fo;
      fo.max_cells = cfg.max_cells;
      if (cfg.region.disk) {
        fo.clip = true;
        fo.clip_center = cfg.region.center;
        fo.clip_radius = cfg.region.radius;
      }
      const FindResult fr = find_zeros_ex(F, cfg.region.rect, ctx, fo);
      const NodeSet& ns = built.space->ns;
      run.out.report = classify_zeros(fr.zeros, ns, disk_exponent(cfg, ns), cfg.region);
      run.out.attraction_set = run.out.report.attraction_set;
      run.cells = fr.cells;
      run.evaluations = fr.evaluations;
      run.total_winding = fr.total_winding;
      run.pruned = fr.pruned_winding;
      run.ok = true;
      return run;
    } catch (const Error& e) {
      run.error = e.what();
      if (!escalates(e.kind()) || ctx.bits >= cfg.escalate_to_bits) return run;
      ctx.bits = std::min(ctx.bits * 2, cfg.escalate_to_bits);
      ctx.max_bits = std::max(ctx.max_bits, ctx.bits);
    }
  }
}

std::vector<std::size_t> scanned_nodes(const LocalizationReport& rep, std::optional<int> group, const NodeSet& ns) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rep.node_status.size(); ++i) {
    if (rep.node_status[i] == NodeStatus::Unscanned) continue;
    if (group && ns.group[i] != *group) continue;
    out.push_back(i);
  }
  return out;
}

// Smallest index from which every scanned node holds exactly one zero.
std::size_t onset_index(const LocalizationReport& rep) {
  std::size_t onset = 0;
  bool first = true;
  for (std::size_t i = 0; i < rep.node_status.size(); ++i) {
    const NodeStatus s = rep.node_status[i];
    if (s == NodeStatus::Unscanned) continue;
    if (first) {
      onset = i;
      first = false;
    }
    if (s != NodeStatus::OneZero) onset = i + 1;
  }
  return onset;
}

void trial_ledger(Ledger& L, const std::string& p, const TrialRun& r) {
  L.set(p + "seed", static_cast<std::int64_t>(r.out.seed));
  L.set(p + "bits", static_cast<std::int64_t>(r.out.bits));
  if (!r.ok) {
    L.set(p + "error", r.error);
    return;
  }
  const auto& rep = r.out.report;
  L.set(p + "zeros", rep.zeros.size());
  L.set(p + "total_winding", r.total_winding);
  L.set(p + "pruned_winding", r.pruned);
  L.set(p + "strays", rep.strays.size());
  L.set(p + "multi_nodes", rep.multi_nodes);
  L.set(p + "exceptional_count", rep.exceptional_count);
  L.set(p + "attraction_size", rep.attraction_set.size());
  L.set(p + "cells", r.cells);
}

SpaceElement generic_element(const ExperimentConfig& cfg, std::uint64_t seed, const BuiltSpace& b,
                             const PrecisionContext& ctx) {
  return make_element(build_coefficients(cfg.coefficients, *b.space, seed, ctx), b.space);
}

// F = A1 (sum d_n mu~_n^{1/2}/(z - t_n)) over T1 with mu~ = mu |A2|^2.
SpaceElement structured_element(const ExperimentConfig& cfg, std::uint64_t seed, const BuiltSpace& b) {
  const auto& p = *cfg.partition;
  const Space& s = *b.space;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.ns.size(); ++i)
    if (s.ns.group[i] == p.t1_group) idx.push_back(i);
  NodeSet ns1 = s.ns.subset(idx);
  const EntireFunction& A1 = b.group_functions[static_cast<std::size_t>(p.t1_group)];
  const EntireFunction& A2 = b.group_functions[static_cast<std::size_t>(p.t2_group)];
  Measure mt;
  mt.spec.rule = MeasureRule::Explicit;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const Real a2 = abs(A2(ns1.nodes[j]));
    mt.values.push_back(s.mu.values[idx[j]] * a2 * a2);
    mt.sqrt_values.push_back(s.mu.sqrt_values[idx[j]] * a2);
  }
  mt.spec.values = mt.values;
  auto sp = make_space(std::move(ns1), std::move(mt), A1);
  return make_element(random_gaussian_coeffs(sp->ns.size(), seed), sp);
}

struct Scan {
  std::vector<TrialRun> generic, structured, basis;
};

std::string format_set_diff(std::size_t missing, std::size_t extra) {
  return std::to_string(missing) + " missing, " + std::to_string(extra) + " extra";
}

std::size_t count_not_in(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t k = 0;
  for (auto x : a)
    if (!std::binary_search(b.begin(), b.end(), x)) ++k;
  return k;
}

}  // namespace

ExperimentResult run_strong_localization(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentResult res;
  Verdict v;
  v.name = "strong_localization";
  std::vector<TrialRun> runs;
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = cfg.seed_for(i);
    runs.push_back(run_trial(cfg, "trial" + std::to_string(i), seed, [&](const BuiltSpace& b, const PrecisionContext& c) {
      return generic_element(cfg, seed, b, c);
    }));
  }
  {
    PrecisionScope scope(64);
    res.nodes = generate_nodes(cfg.space.nodes, cfg.space.radius);
  }
  std::size_t scanned = 0;
  for (const auto& r : runs)
    if (r.ok) scanned = std::max(scanned, r.out.report.scanned_nodes);
  const double budget = cfg.budget >= 0 ? cfg.budget : default_budget(scanned);
  const double onset_max = cfg.onset_max >= 0 ? cfg.onset_max : std::floor(budget);
  v.ledger.set("budget", budget);
  v.ledger.set("onset_max", onset_max);
  v.ledger.set("M", disk_exponent(cfg, res.nodes));
  v.ledger.set("scanned_nodes", scanned);
  v.ledger.set("coefficient_tail", 0.0);
  bool fail = false, inconclusive = false;
  std::ostringstream why;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    const std::string p = "trial" + std::to_string(i) + ".";
    trial_ledger(v.ledger, p, r);
    if (!r.ok) {
      inconclusive = true;
      why << r.out.label << ": " << r.error << "; ";
      continue;
    }
    const std::size_t onset = onset_index(r.out.report);
    v.ledger.set(p + "onset", onset);
    const bool ok = static_cast<double>(r.out.report.exceptional_count) <= budget &&
                    static_cast<double>(onset) <= onset_max;
    v.ledger.set(p + "status", ok ? "pass" : "fail");
    if (!ok) {
      fail = true;
      why << r.out.label << ": exceptional " << r.out.report.exceptional_count << ", onset " << onset << "; ";
    }
    res.trials.push_back(r.out);
  }
  v.status = fail ? Status::Fail : (inconclusive ? Status::Inconclusive : Status::Pass);
  v.reason = why.str();
  if (v.status == Status::Pass) {
    std::ostringstream m;
    m << "all " << runs.size() << " trials within budget " << budget << " with onset <= " << onset_max;
    v.reason = m.str();
  }
  res.verdicts.push_back(std::move(v));
  return res;
}

namespace {

Scan scan_type2(const ExperimentConfig& cfg, bool with_basis) {
  Scan s;
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = cfg.seed_for(i);
    s.generic.push_back(run_trial(cfg, "generic" + std::to_string(i), seed,
                                  [&](const BuiltSpace& b, const PrecisionContext& c) { return generic_element(cfg, seed, b, c); }));
  }
  if (cfg.partition) {
    for (int i = 0; i < cfg.trials; ++i) {
      const std::uint64_t seed = cfg.seed_for(cfg.trials + i);
      s.structured.push_back(run_trial(cfg, "structured" + std::to_string(i), seed,
                                       [&](const BuiltSpace& b, const PrecisionContext&) {
                                         return structured_element(cfg, seed, b);
                                       }));
    }
  }
  if (with_basis) {
    for (std::size_t k : cfg.basis_nodes) {
      s.basis.push_back(run_trial(cfg, "basis" + std::to_string(k), 0, [k](const BuiltSpace& b, const PrecisionContext&) {
        return make_element(basis_coeffs(b.space->ns.size(), k), b.space);
      }));
    }
  }
  return s;
}

}  // namespace

ExperimentResult run_type2(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (!cfg.partition) throw Error(ErrorKind::Config, "type2 needs a partition");
  const auto& part = *cfg.partition;
  {
    PrecisionScope scope(64);
    NodeSet probe = generate_nodes(cfg.space.nodes, cfg.space.radius);
    bool has_t2 = false;
    for (int g : probe.group) has_t2 = has_t2 || g == part.t2_group;
    if (!has_t2) {
      // Empty T2: only strong localization is left to test.
      ExperimentConfig c = cfg;
      c.partition.reset();
      c.kind = ExperimentKind::StrongLocalization;
      if (c.space.A.form.empty()) c.space.A = part.A1;
      ExperimentResult r = run_strong_localization(c);
      r.verdicts.front().ledger.set("delegated", "strong_localization");
      return r;
    }
  }
  ExperimentResult res;
  {
    PrecisionScope scope(64);
    res.nodes = generate_nodes(cfg.space.nodes, cfg.space.radius);
  }
  const NodeSet& ns = res.nodes;
  Scan s = scan_type2(cfg, false);

  std::size_t scanned = 0;
  for (const auto* group : {&s.generic, &s.structured})
    for (const auto& r : *group)
      if (r.ok) scanned = std::max(scanned, r.out.report.scanned_nodes);
  const double budget = cfg.budget >= 0 ? cfg.budget : default_budget(scanned);

  auto judge = [&](const std::vector<TrialRun>& runs, std::optional<int> target, const std::string& name) {
    Verdict v;
    v.name = name;
    v.ledger.set("budget", budget);
    v.ledger.set("scanned_nodes", scanned);
    bool fail = false, inconclusive = runs.empty();
    std::ostringstream why;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& r = runs[i];
      const std::string p = r.out.label + ".";
      trial_ledger(v.ledger, p, r);
      if (!r.ok) {
        inconclusive = true;
        why << r.out.label << ": " << r.error << "; ";
        continue;
      }
      auto want = scanned_nodes(r.out.report, target, ns);
      auto have = r.out.attraction_set;
      std::sort(have.begin(), have.end());
      const std::size_t missing = count_not_in(want, have), extra = count_not_in(have, want);
      v.ledger.set(p + "missing", missing);
      v.ledger.set(p + "extra", extra);
      const bool ok = static_cast<double>(missing) <= budget && static_cast<double>(extra) <= budget &&
                      static_cast<double>(r.out.report.exceptional_count) <= budget;
      v.ledger.set(p + "status", ok ? "pass" : "fail");
      if (!ok) {
        fail = true;
        why << r.out.label << ": " << format_set_diff(missing, extra) << ", exceptional "
            << r.out.report.exceptional_count << "; ";
      }
      res.trials.push_back(r.out);
    }
    v.status = fail ? Status::Fail : (inconclusive ? Status::Inconclusive : Status::Pass);
    v.reason = v.status == Status::Pass ? "attraction sets match the target up to budget " + std::to_string(budget)
                                        : why.str();
    return v;
  };

  res.verdicts.push_back(judge(s.generic, std::nullopt, "type2.generic"));
  res.verdicts.push_back(judge(s.structured, part.t1_group, "type2.structured"));

  // (c) A2 satisfies the interpolation identity.
  Verdict vh;
  vh.name = "type2.hamburger_krein";
  try {
    PrecisionScope scope(cfg.precision.bits);
    const BuiltSpace b = build_space(cfg, cfg.precision);
    const NodeSet ns2 = b.space->ns.subset(part.t2_group);
    std::vector<Complex> samples;
    for (int k = 0; k < cfg.hk_samples; ++k)
      samples.push_back(polar(Real(cfg.hk_sample_radius), Real(2) * pi() * Real(k + 0.5) / Real(cfg.hk_samples)));
    const HKReport hk = hamburger_krein_check(b.group_functions[static_cast<std::size_t>(part.t2_group)], ns2, samples,
                                              cfg.hk_M_max, cfg.precision);
    vh.ledger.set("residual", hk.residual);
    vh.ledger.set("tail_estimate", hk.tail_estimate);
    vh.ledger.set("decreasing_tail", hk.decreasing_tail);
    vh.ledger.set("tolerance", cfg.hk_tolerance);
    const bool ok = hk.residual <= cfg.hk_tolerance && hk.decreasing_tail;
    vh.status = ok ? Status::Pass : Status::Fail;
    std::ostringstream m;
    m << "residual " << hk.residual << (hk.decreasing_tail ? ", decay rows decreasing" : ", decay rows not decreasing");
    vh.reason = m.str();
  } catch (const Error& e) {
    vh.status = Status::Inconclusive;
    vh.reason = e.what();
  }
  res.verdicts.push_back(std::move(vh));
  return res;
}

OrderingReport ordering_from_sets(const std::vector<std::vector<std::size_t>>& sets,
                                  const std::vector<std::string>& labels, double budget) {
  OrderingReport rep;
  rep.verdict.name = "ordering";
  rep.verdict.ledger.set("budget", budget);
  rep.verdict.ledger.set("sets", sets.size());
  std::size_t incomparable = 0;
  std::ostringstream why;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const auto c = compare_attraction_sets(sets[i], sets[j], budget);
      if (c.relation == Inclusion::Incomparable) {
        ++incomparable;
        why << labels[i] << " vs " << labels[j] << ": " << c.describe() << "; ";
      }
    }
  // Group equal sets; a chain needs its classes totally ordered.
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool placed = false;
    for (auto& cls : rep.classes) {
      if (compare_attraction_sets(sets[cls.front()], sets[i], budget).equivalent()) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) rep.classes.push_back({i});
  }
  std::sort(rep.classes.begin(), rep.classes.end(), [&](const auto& a, const auto& b) {
    return sets[a.front()].size() < sets[b.front()].size();
  });
  rep.chain_length = rep.classes.size();
  std::vector<std::int64_t> sizes;
  for (const auto& c : rep.classes) sizes.push_back(static_cast<std::int64_t>(sets[c.front()].size()));
  rep.verdict.ledger.set("incomparable_pairs", incomparable);
  rep.verdict.ledger.set("chain_length", rep.chain_length);
  rep.verdict.ledger.set("class_set_sizes", sizes);
  for (std::size_t c = 0; c < rep.classes.size(); ++c) {
    std::string members;
    for (auto i : rep.classes[c]) members += (members.empty() ? "" : ",") + labels[i];
    rep.verdict.ledger.set("class" + std::to_string(c), members);
  }
  if (sets.empty()) {
    rep.verdict.status = Status::Inconclusive;
    rep.verdict.reason = "no attraction sets";
  } else if (incomparable == 0) {
    rep.verdict.status = Status::Pass;
    rep.verdict.reason = "all sets comparable; chain of " + std::to_string(rep.chain_length);
  } else {
    rep.verdict.status = Status::Fail;
    rep.verdict.reason = why.str();
  }
  return rep;
}

ExperimentResult run_ordering(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentResult res;
  {
    PrecisionScope scope(64);
    res.nodes = generate_nodes(cfg.space.nodes, cfg.space.radius);
  }
  Scan s = scan_type2(cfg, true);
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::string> labels;
  std::size_t scanned = 0;
  bool failed_trial = false;
  std::string errors;
  for (const auto* group : {&s.generic, &s.structured, &s.basis})
    for (const auto& r : *group) {
      if (!r.ok) {
        failed_trial = true;
        errors += r.out.label + ": " + r.error + "; ";
        continue;
      }
      scanned = std::max(scanned, r.out.report.scanned_nodes);
      sets.push_back(r.out.attraction_set);
      labels.push_back(r.out.label);
      res.trials.push_back(r.out);
    }
  const double budget = cfg.budget >= 0 ? cfg.budget : default_budget(scanned);
  OrderingReport rep = ordering_from_sets(sets, labels, budget);
  if (failed_trial && rep.verdict.status == Status::Pass) {
    rep.verdict.status = Status::Inconclusive;
    rep.verdict.reason = errors;
  }
  res.verdicts.push_back(std::move(rep.verdict));
  return res;
}

}  // namespace cdlab
