#include "cdlab/nodes/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cdlab/kernel/error.hpp"

namespace cdlab {

namespace {

constexpr std::size_t kMaxNodes = 2000000;

struct Keyed {
  double mod;
  double arg;
  Complex t;
  int group;
};

void sort_nodes(std::vector<Keyed>& v) {
  std::stable_sort(v.begin(), v.end(), [](const Keyed& a, const Keyed& b) {
    const double tol = 1e-12 * std::max(1.0, std::max(a.mod, b.mod));
    if (std::abs(a.mod - b.mod) > tol) return a.mod < b.mod;
    return a.arg < b.arg;
  });
}

Keyed keyed(const Complex& t, int group) {
  const auto d = t.to_std();
  return {std::abs(d), std::arg(d), t, group};
}

Complex rotate(const Complex& t, const Real& angle) {
  if (angle.is_zero()) return t;
  return t * polar(Real(1), angle);
}

void check_count(std::size_t n) {
  if (n > kMaxNodes) throw Error(ErrorKind::InvalidArgument, "node count exceeds limit");
}

std::vector<Keyed> generate_flat(const FamilySpec& spec, const Real& radius, int group) {
  std::vector<Keyed> out;
  switch (spec.kind) {
    case Family::Geometric: {
      if (!(spec.ratio > 1)) throw Error(ErrorKind::InvalidArgument, "ratio must exceed 1");
      Real t = spec.ratio;
      while (t <= radius) {
        out.push_back(keyed(rotate(Complex(t), spec.rotation), group));
        t = t * spec.ratio;
        check_count(out.size());
      }
      break;
    }
    case Family::Power:
    case Family::SignedPower: {
      if (!(spec.alpha > 0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
      for (long n = 1;; ++n) {
        Real t = pow(Real(n), spec.alpha);
        if (t > radius) break;
        out.push_back(keyed(rotate(Complex(t), spec.rotation), group));
        if (spec.kind == Family::SignedPower) out.push_back(keyed(rotate(Complex(-t), spec.rotation), group));
        check_count(out.size());
      }
      break;
    }
    case Family::CrossLattice:
    case Family::RotatedCrossLattice: {
      const long k = static_cast<long>(std::floor(radius.to_double()));
      if (spec.keeps_origin()) out.push_back(keyed(Complex(0), group));
      for (long j = 1; j <= k; ++j) {
        if (Real(j) > radius) break;
        for (const Complex& base : {Complex(Real(j), Real(0)), Complex(Real(-j), Real(0)), Complex(Real(0), Real(j)),
                                    Complex(Real(0), Real(-j))})
          out.push_back(keyed(rotate(base, spec.rotation), group));
      }
      break;
    }
    case Family::SquareLattice:
    case Family::ShiftedSquareLattice: {
      const bool shifted = spec.kind == Family::ShiftedSquareLattice;
      const Complex s = shifted ? spec.shift : Complex(0);
      const long k = static_cast<long>(std::floor(radius.to_double())) + 1;
      const Real r2 = radius * radius;
      for (long a = -k; a <= k; ++a) {
        for (long b = -k; b <= k; ++b) {
          Complex t{Real(a) + s.re, Real(b) + s.im};
          if (norm(t) > r2) continue;
          if (!shifted && a == 0 && b == 0 && !spec.keeps_origin()) continue;
          out.push_back(keyed(rotate(t, spec.rotation), group));
        }
        check_count(out.size());
      }
      break;
    }
    case Family::Explicit: {
      for (const auto& p : spec.points)
        if (abs(p) <= radius) out.push_back(keyed(rotate(p, spec.rotation), group));
      break;
    }
    case Family::Union:
      throw Error(ErrorKind::InvalidArgument, "nested union must be flattened");
  }
  return out;
}

std::vector<double> nearest_gaps(const std::vector<Complex>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::complex<double>> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = nodes[i].to_std();
  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = std::abs(d[i] - d[j]);
      g[i] = std::min(g[i], dist);
      g[j] = std::min(g[j], dist);
    }
  return g;
}

NodeSet assemble(const FamilySpec& spec, const Real& radius, std::vector<Keyed> items) {
  sort_nodes(items);
  NodeSet ns;
  ns.family = spec;
  ns.radius = radius;
  ns.nodes.reserve(items.size());
  ns.group.reserve(items.size());
  for (auto& it : items) {
    ns.nodes.push_back(std::move(it.t));
    ns.group.push_back(it.group);
  }
  ns.gaps = nearest_gaps(ns.nodes);
  for (double g : ns.gaps)
    if (g == 0) throw Error(ErrorKind::InvalidArgument, "coincident nodes");
  if (ns.size() >= 2) {
    auto [c, n] = check_power_separation(ns);
    ns.sep_C = c;
    ns.sep_N = n;
  }
  return ns;
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::Geometric: return "geometric";
    case Family::Power: return "power";
    case Family::SignedPower: return "signed_power";
    case Family::CrossLattice: return "cross_lattice";
    case Family::SquareLattice: return "square_lattice";
    case Family::ShiftedSquareLattice: return "shifted_square_lattice";
    case Family::RotatedCrossLattice: return "rotated_cross_lattice";
    case Family::Explicit: return "explicit";
    case Family::Union: return "union";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::Geometric, Family::Power, Family::SignedPower, Family::CrossLattice,
                   Family::SquareLattice, Family::ShiftedSquareLattice, Family::RotatedCrossLattice,
                   Family::Explicit, Family::Union})
    if (name == to_string(f)) return f;
  throw Error(ErrorKind::Config, "unknown node family '" + name + "'");
}

bool FamilySpec::keeps_origin() const {
  if (include_origin >= 0) return include_origin != 0;
  return kind == Family::CrossLattice || kind == Family::SquareLattice;
}

double NodeSet::modulus(std::size_t i) const { return std::abs(nodes[i].to_std()); }

std::size_t NodeSet::nearest(const std::complex<double>& z) const {
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d = std::norm(nodes[i].to_std() - z);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

NodeSet NodeSet::subset(int group_id) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < size(); ++i)
    if (group[i] == group_id) idx.push_back(i);
  NodeSet out = subset(idx);
  if (family.kind == Family::Union && group_id >= 0 &&
      static_cast<std::size_t>(group_id) < family.operands.size())
    out.family = family.operands[static_cast<std::size_t>(group_id)];
  return out;
}

NodeSet NodeSet::subset(const std::vector<std::size_t>& indices) const {
  NodeSet out;
  out.family = family;
  out.radius = radius;
  for (std::size_t i : indices) {
    out.nodes.push_back(nodes[i]);
    out.group.push_back(group[i]);
  }
  out.gaps = nearest_gaps(out.nodes);
  if (out.size() >= 2) {
    auto [c, n] = check_power_separation(out);
    out.sep_C = c;
    out.sep_N = n;
  }
  return out;
}

int NodeSet::group_count() const {
  int g = 0;
  for (int x : group) g = std::max(g, x + 1);
  return g;
}

NodeSet generate_nodes(const FamilySpec& spec, const Real& radius) {
  if (!(radius > 0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  std::vector<Keyed> items;
  if (spec.kind == Family::Union) {
    if (spec.operands.empty()) throw Error(ErrorKind::InvalidArgument, "union needs operands");
    for (std::size_t i = 0; i < spec.operands.size(); ++i) {
      const FamilySpec& op = spec.operands[i];
      if (op.kind == Family::Union) {
        NodeSet inner = generate_nodes(op, radius);
        for (auto& t : inner.nodes) items.push_back(keyed(t, static_cast<int>(i)));
      } else {
        auto part = generate_flat(op, radius, static_cast<int>(i));
        items.insert(items.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
      }
    }
  } else {
    items = generate_flat(spec, radius, 0);
  }
  return assemble(spec, radius, std::move(items));
}

std::pair<double, double> check_power_separation(const NodeSet& ns) {
  if (ns.size() < 2) throw Error(ErrorKind::InvalidArgument, "separation needs at least two nodes");
  const std::vector<double> g = ns.gaps.size() == ns.size() ? ns.gaps : nearest_gaps(ns.nodes);
  double cmax = 0;
  for (int n = 0; n <= 8; ++n) {
    cmax = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ns.size(); ++i)
      cmax = std::min(cmax, g[i] * std::pow(std::max(ns.modulus(i), 1.0), n));
    const double c = std::floor(cmax * 8.0) / 8.0;
    if (c >= 0.125) return {c, static_cast<double>(n)};
  }
  return {cmax, 8.0};
}

ReciprocalTail reciprocal_tail(const FamilySpec& spec, const Real& radius) {
  const Real inf = Real(1) / Real(0);
  switch (spec.kind) {
    case Family::Geometric: {
      Real t = spec.ratio;
      while (t <= radius) t = t * spec.ratio;
      return {(Real(1) / t) * spec.ratio / (spec.ratio - Real(1)), t};
    }
    case Family::Power:
    case Family::SignedPower: {
      long n0 = 1;
      while (pow(Real(n0), spec.alpha) <= radius) ++n0;
      const Real next = pow(Real(n0), spec.alpha);
      if (!(spec.alpha > 1)) return {inf, next};
      // n0^{-a} + integral_{n0}^inf x^{-a} dx
      Real s = Real(1) / next + pow(Real(n0), Real(1) - spec.alpha) / (spec.alpha - Real(1));
      if (spec.kind == Family::SignedPower) s = s * Real(2);
      return {s, next};
    }
    case Family::Explicit: {
      Real next = inf;
      Real s(0);
      for (const auto& p : spec.points) {
        Real m = abs(p);
        if (m > radius) {
          s += Real(1) / m;
          next = min(next, m);
        }
      }
      return {s, next};
    }
    case Family::Union: {
      ReciprocalTail total{Real(0), inf};
      for (const auto& op : spec.operands) {
        auto part = reciprocal_tail(op, radius);
        total.sum += part.sum;
        total.next_modulus = min(total.next_modulus, part.next_modulus);
      }
      return total;
    }
    default: {
      // Lattices: sum of 1/|t| diverges.
      const Real next = floor(radius) + Real(1);
      return {inf, next};
    }
  }
}

}  // namespace cdlab
