#pragma once

#include <string>
#include <vector>

#include "cdlab/experiments/config.hpp"
#include "cdlab/experiments/verdict.hpp"

namespace cdlab {

/// Default exceptional budget for a scan covering `scanned` nodes.
double default_budget(std::size_t scanned);

ExperimentResult run_strong_localization(const ExperimentConfig& cfg);
ExperimentResult run_type2(const ExperimentConfig& cfg);
ExperimentResult run_ordering(const ExperimentConfig& cfg);
ExperimentResult run_weight_decay(const ExperimentConfig& cfg);
ExperimentResult run_moment_orthogonality(const ExperimentConfig& cfg);
ExperimentResult run_hamburger_krein(const ExperimentConfig& cfg);
ExperimentResult run_legendre(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Ordering verdict over already computed attraction sets (node indices of one node set).
struct OrderingReport {
  Verdict verdict;
  std::vector<std::vector<std::size_t>> classes;  // indices of sets, one class per chain element
  std::size_t chain_length = 0;
};
OrderingReport ordering_from_sets(const std::vector<std::vector<std::size_t>>& sets,
                                  const std::vector<std::string>& labels, double budget);

// Legendre transform w#(x) = sup_{t >= 0} (x t - w(t)).
double legendre_closed_form(const WeightSpec& w, double x);
bool legendre_has_closed_form(const WeightSpec& w);
/// Numeric transform by golden-section search; throws NotConvex when the
/// objective is not unimodal on the probe grid.
double legendre_numeric(const WeightSpec& w, double x);
double legendre_transform(const WeightSpec& w, double x);
double weight_value(const WeightSpec& w, double t);
/// log w(x), finite even when w(x) overflows a double.
double log_weight(const WeightSpec& w, double x);

struct TechReport {
  Verdict verdict;
  double best_c = 0;
  std::vector<double> x;
  std::vector<double> c;  // best constant per x
};
/// w#(x + t) - w#(x) <= c x^{-1} w(x) over a log grid x in [1, 1e6], t in {0, 1/2, 1}.
TechReport check_tech_condition(const WeightSpec& w);

}  // namespace cdlab
