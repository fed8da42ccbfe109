#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cdlab/kernel/complex.hpp"

namespace cdlab {

enum class Family {
  Geometric,             // ratio^n, n >= 1
  Power,                 // n^alpha, n >= 1
  SignedPower,           // +-n^alpha, n >= 1
  CrossLattice,          // Z u iZ
  SquareLattice,         // Z + iZ
  ShiftedSquareLattice,  // Z + iZ + shift
  RotatedCrossLattice,   // e^{i angle}(Z u iZ)
  Explicit,
  Union,
};

const char* to_string(Family f) noexcept;
Family family_from_string(const std::string& name);

/// Description of an (infinite) node family.
struct FamilySpec {
  Family kind = Family::Geometric;
  Real ratio{2};
  Real alpha{1};
  /// Rotation applied to every generated node (the angle of rotated_cross_lattice).
  Real rotation{0};
  Complex shift{0.5, 0.5};
  /// Lattices only. Defaults: true for cross/square lattices, false for the rotated one.
  int include_origin = -1;
  std::vector<Complex> points;
  std::vector<FamilySpec> operands;

  bool keeps_origin() const;
};

/// Finite truncation of a node family, sorted by (|t|, arg).
struct NodeSet {
  FamilySpec family;
  std::vector<Complex> nodes;
  /// Operand index of each node for unions, 0 otherwise.
  std::vector<int> group;
  Real radius{0};
  double sep_C = 0;
  double sep_N = 0;

  std::size_t size() const { return nodes.size(); }
  double modulus(std::size_t i) const;
  /// Index of the node nearest to z (double precision search).
  std::size_t nearest(const std::complex<double>& z) const;
  /// Nodes belonging to one union operand (group ids are kept).
  NodeSet subset(int group_id) const;
  NodeSet subset(const std::vector<std::size_t>& indices) const;
  int group_count() const;

  /// Nearest-neighbour distance per node (double precision).
  std::vector<double> gaps;
};

/// Every node of the family with modulus <= radius.
NodeSet generate_nodes(const FamilySpec& spec, const Real& radius);

/// Least N in {0..8} and largest C on a 1/8 grid with
/// dist(t_n, others) >= C * max(|t_n|, 1)^{-N} for every node.
std::pair<double, double> check_power_separation(const NodeSet& ns);

/// Sum of 1/|t| over family members beyond the radius, and the modulus of the
/// first excluded member. Infinite when the sum diverges.
struct ReciprocalTail {
  Real sum;
  Real next_modulus;
};
ReciprocalTail reciprocal_tail(const FamilySpec& spec, const Real& radius);

}  // namespace cdlab
