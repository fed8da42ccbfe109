#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/entire/entire.hpp"
#include "cdlab/nodes/measure.hpp"
#include "cdlab/space/space.hpp"
#include "cdlab/zerofind/zerofind.hpp"

namespace cdlab {

enum class ExperimentKind {
  StrongLocalization,
  Type2,
  Ordering,
  HamburgerKrein,
  Legendre,
  WeightDecay,
  MomentOrthogonality,
};

const char* to_string(ExperimentKind k) noexcept;
ExperimentKind experiment_kind_from_string(const std::string& s);

struct EntireSpec {
  std::string form;  // empty: derived from context
  Real rotation{0};
  bool drop_origin = false;
  Complex shift{0};
  std::vector<Complex> coeffs;
  /// Zeros of a genus-0 product; defaults to the space's nodes (or the node group).
  std::optional<FamilySpec> nodes;
  /// Truncation radius of a genus-0 product; 0 means the space radius.
  double product_radius = 0;
  std::vector<EntireSpec> factors;
};

struct SpaceSpec {
  FamilySpec nodes;
  Real radius{0};
  MeasureSpec measure;
  EntireSpec A;
};

struct CoefficientSpec {
  std::string kind = "random_gaussian";  // basis, random_gaussian, orthogonal, explicit, supported_on
  std::size_t index = 0;
  std::vector<Complex> values;
  std::vector<int> groups;  // supported_on: node groups kept
  std::shared_ptr<CoefficientSpec> inner;
};

struct PartitionSpec {
  int t1_group = 1;
  int t2_group = 0;
  EntireSpec A1;
  EntireSpec A2;
};

enum class WeightKind { Exp, Quadratic, Power, Sampled };

/// w on R_+, increasing; used by the Legendre experiments.
struct WeightSpec {
  WeightKind kind = WeightKind::Exp;
  double beta = 1;   // exp: e^{beta t}; power: t^beta / beta
  std::vector<double> t, w;  // sampled: piecewise linear
  std::string describe() const;
};

struct ExperimentConfig {
  int schema = 1;
  std::string name;
  ExperimentKind kind = ExperimentKind::StrongLocalization;
  SpaceSpec space;
  std::optional<PartitionSpec> partition;
  Region region = Region::make_disk({0, 0}, 1);
  bool region_set = false;
  int trials = 1;
  std::vector<std::uint64_t> seeds;
  double M = 0;          // 0: sep_N + 2
  double budget = -1;    // < 0: 0.1 sqrt(scanned nodes) + 5
  double onset_max = -1; // < 0: floor(budget)
  CoefficientSpec coefficients;
  PrecisionContext precision = default_context();
  long escalate_to_bits = 2048;
  std::size_t max_cells = 200000;
  int digits = 0;        // CSV digits; 0 = full working precision

  // moment_orthogonality
  int k_max = 10;
  // hamburger_krein (and type-2 sub-check c)
  int hk_samples = 20;
  double hk_sample_radius = 5.3;
  std::vector<double> hk_radii{12, 24};
  double hk_tolerance = 1e-4;
  double hk_shrink = 1e3;
  int hk_M_max = 8;
  // weight_decay
  std::vector<int> decay_powers{4, 8, 12, 16, 20};
  // legendre
  std::vector<WeightSpec> weights;
  std::vector<double> legendre_x;  // empty: 100-point log grid on [1, 1e6]
  // ordering: canonical basis elements added to the trials
  std::vector<std::size_t> basis_nodes;

  std::uint64_t seed_for(int trial) const;
};

/// Everything an experiment evaluates, built at one precision.
struct BuiltSpace {
  std::shared_ptr<const Space> space;
  std::vector<EntireFunction> group_functions;  // per node group, may be invalid
};

EntireFunction build_entire(const EntireSpec& spec, const FamilySpec& default_nodes, const Real& default_radius);
BuiltSpace build_space(const ExperimentConfig& cfg, const PrecisionContext& ctx);
std::vector<Complex> build_coefficients(const CoefficientSpec& spec, const Space& space, std::uint64_t seed,
                                        const PrecisionContext& ctx);

/// Checks the configuration without running it; throws Error(Config) on problems.
void validate_config(const ExperimentConfig& cfg);

}  // namespace cdlab
