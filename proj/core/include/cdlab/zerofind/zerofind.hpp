#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cdlab/entire/entire.hpp"

namespace cdlab {

/// F and F' at the caller's working precision. Must be safe to call concurrently.
using Evaluable = std::function<Jet(const Complex&)>;

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  std::complex<double> center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  bool contains(std::complex<double> z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  static Rect square(std::complex<double> c, double half) {
    return {c.real() - half, c.real() + half, c.imag() - half, c.imag() + half};
  }
};

struct Circle {
  std::complex<double> center;
  double radius = 0;
};

/// A scanned region: a rectangle, optionally intersected with a disk.
struct Region {
  Rect rect;
  bool disk = false;
  std::complex<double> center{0, 0};
  double radius = 0;

  static Region make_disk(std::complex<double> c, double r);
  static Region make_rect(const Rect& r);
  bool contains(std::complex<double> z) const;
  std::string describe() const;
};

struct ZeroRecord {
  Complex location;
  int multiplicity = 1;
  Real residual{0};             // |F| at the location
  double isolation_radius = 0;  // disk known to hold exactly this zero
  bool polished = true;         // Newton step below target_tol
};

/// Integer nearest to (1/2 pi i) contour integral of F'/F.
int winding_number(const Evaluable& F, const Rect& contour, const PrecisionContext& ctx);
int winding_number(const Evaluable& F, const Circle& contour, const PrecisionContext& ctx);

struct FindOptions {
  std::size_t max_cells = 200000;
  /// Cells farther than this disk are skipped; their winding is kept in `pruned`.
  bool clip = false;
  std::complex<double> clip_center{0, 0};
  double clip_radius = 0;
  /// Cells below min_cell_fraction * diam(region) with winding >= 2 become multiple-zero records.
  double min_cell_fraction = 0x1.0p-40;
  int newton_iterations = 100;
};

struct FindResult {
  std::vector<ZeroRecord> zeros;  // sorted by (re, im)
  Rect region;                    // the rectangle actually used (boundary may be nudged)
  int total_winding = 0;
  int pruned_winding = 0;
  std::size_t cells = 0;
  std::size_t evaluations = 0;
};

/// All zeros of F in the rectangle by argument-principle subdivision.
FindResult find_zeros_ex(const Evaluable& F, const Rect& region, const PrecisionContext& ctx,
                         const FindOptions& opt = {});
std::vector<ZeroRecord> find_zeros(const Evaluable& F, const Rect& region, const PrecisionContext& ctx,
                                   const FindOptions& opt = {});

enum class NodeStatus { Unscanned, Empty, OneZero, MultipleZeros };
const char* to_string(NodeStatus s) noexcept;

struct ClassifyOptions {
  /// Shrink disk radii to half the nearest-node gap; without it overlaps are an error.
  bool cap_at_gap = true;
};

struct LocalizationReport {
  std::vector<ZeroRecord> zeros;
  std::vector<NodeStatus> node_status;
  std::vector<std::vector<std::size_t>> node_zeros;  // zero indices per node
  std::vector<long> assigned;                        // node per zero, -1 for strays and ignored zeros
  std::vector<std::size_t> strays;
  std::vector<std::size_t> ignored;                  // outside the region and every disk
  std::vector<double> disk_radius;                   // radius used per node
  std::vector<double> nominal_radius;                // (|t|+1)^{-M}
  double M = 0;
  Region region;
  std::vector<std::size_t> attraction_set;
  std::size_t multi_nodes = 0;
  std::size_t exceptional_count = 0;
  std::size_t scanned_nodes = 0;
};

/// Assigns zeros to the disks D(t_n, (|t_n|+1)^{-M}). Nodes whose disk lies in
/// the region are scanned; zeros outside the region and all disks are ignored.
LocalizationReport classify_zeros(const std::vector<ZeroRecord>& zeros, const NodeSet& ns, double M,
                                  const Region& region, const ClassifyOptions& opt = {});

enum class Inclusion { Equal, FirstInSecond, SecondInFirst, Incomparable };
const char* to_string(Inclusion i) noexcept;

struct AttractionComparison {
  Inclusion relation = Inclusion::Incomparable;
  std::size_t k12 = 0;  // |S1 \ S2|
  std::size_t k21 = 0;  // |S2 \ S1|
  double budget = 0;
  /// Both inclusions hold within the budget.
  bool equivalent() const { return k12 <= budget && k21 <= budget; }
  std::string describe() const;
};

AttractionComparison compare_attraction_sets(const std::vector<std::size_t>& S1, const std::vector<std::size_t>& S2,
                                             double budget);

struct AnnulusMin {
  double r_inner = 0, r_outer = 0;
  double log10_min = 0;  // log10 of min |F/A| (|z|+1)^M
  int probes = 0;
};

/// Minimum of |F/A| (|z|+1)^M per annulus of the disk |z| <= radius, probing
/// points outside the disks D(t_k, (|t_k|+1)^{-K}).
std::vector<AnnulusMin> min_modulus_profile(const std::function<Complex(const Complex&)>& F,
                                            const EntireFunction& A, const NodeSet& ns, double K, double M,
                                            double radius, const PrecisionContext& ctx, int annuli = 8,
                                            int points_per_circle = 48);

}  // namespace cdlab
