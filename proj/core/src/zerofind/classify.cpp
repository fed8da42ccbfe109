#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cdlab/kernel/error.hpp"
#include "cdlab/kernel/parallel.hpp"
#include "cdlab/zerofind/zerofind.hpp"

namespace cdlab {

Region Region::make_disk(std::complex<double> c, double r) {
  Region g;
  g.disk = true;
  g.center = c;
  g.radius = r;
  g.rect = Rect::square(c, r);
  return g;
}

Region Region::make_rect(const Rect& r) {
  Region g;
  g.rect = r;
  return g;
}

bool Region::contains(std::complex<double> z) const {
  if (disk) return std::abs(z - center) <= radius;
  return rect.contains(z);
}

std::string Region::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (disk) os << "disk(" << center.real() << ", " << center.imag() << "; " << radius << ")";
  else os << "rect[" << rect.x0 << ", " << rect.x1 << "] x [" << rect.y0 << ", " << rect.y1 << "]";
  return os.str();
}

const char* to_string(NodeStatus s) noexcept {
  switch (s) {
    case NodeStatus::Unscanned: return "unscanned";
    case NodeStatus::Empty: return "empty";
    case NodeStatus::OneZero: return "one_zero";
    case NodeStatus::MultipleZeros: return "multiple_zeros";
  }
  return "?";
}

namespace {

// Disk of radius r around z lies inside the region.
bool disk_inside(const Region& g, std::complex<double> z, double r) {
  if (g.disk) return std::abs(z - g.center) + r <= g.radius;
  const Rect& q = g.rect;
  return z.real() - r >= q.x0 && z.real() + r <= q.x1 && z.imag() - r >= q.y0 && z.imag() + r <= q.y1;
}

}  // namespace

LocalizationReport classify_zeros(const std::vector<ZeroRecord>& zeros, const NodeSet& ns, double M,
                                  const Region& region, const ClassifyOptions& opt) {
  if (!(M > 0)) throw Error(ErrorKind::InvalidArgument, "disk exponent M must be positive");
  const std::size_t n = ns.size();
  LocalizationReport rep;
  rep.zeros = zeros;
  rep.M = M;
  rep.region = region;
  std::vector<std::complex<double>> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = ns.nodes[i].to_std();
  rep.nominal_radius.resize(n);
  rep.disk_radius.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep.nominal_radius[i] = std::pow(std::abs(t[i]) + 1, -M);
    const double gap = i < ns.gaps.size() ? ns.gaps[i] : std::numeric_limits<double>::infinity();
    rep.disk_radius[i] = opt.cap_at_gap ? std::min(rep.nominal_radius[i], gap / 2) : rep.nominal_radius[i];
  }
  if (!opt.cap_at_gap) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(t[i] - t[j]) <= rep.disk_radius[i] + rep.disk_radius[j])
          throw Error(ErrorKind::DisksOverlap, "disks overlap at this M: nodes " + std::to_string(i) + " and " +
                                                   std::to_string(j));
  }
  rep.node_status.assign(n, NodeStatus::Unscanned);
  rep.node_zeros.assign(n, {});
  std::vector<int> mult(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (disk_inside(region, t[i], rep.disk_radius[i])) {
      rep.node_status[i] = NodeStatus::Empty;
      ++rep.scanned_nodes;
    }
  }
  rep.assigned.assign(zeros.size(), -1);
  for (std::size_t z = 0; z < zeros.size(); ++z) {
    const auto p = zeros[z].location.to_std();
    long hit = -1;
    if (n > 0) {
      const std::size_t k = ns.nearest(p);
      if (std::abs(p - t[k]) <= rep.disk_radius[k]) hit = static_cast<long>(k);
    }
    if (hit >= 0) {
      rep.assigned[z] = hit;
      rep.node_zeros[static_cast<std::size_t>(hit)].push_back(z);
      mult[static_cast<std::size_t>(hit)] += zeros[z].multiplicity;
    } else if (region.contains(p)) {
      rep.strays.push_back(z);
    } else {
      rep.ignored.push_back(z);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (mult[i] == 0) continue;
    if (rep.node_status[i] == NodeStatus::Unscanned) continue;
    rep.node_status[i] = mult[i] == 1 ? NodeStatus::OneZero : NodeStatus::MultipleZeros;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rep.node_status[i] == NodeStatus::OneZero || rep.node_status[i] == NodeStatus::MultipleZeros)
      rep.attraction_set.push_back(i);
    if (rep.node_status[i] == NodeStatus::MultipleZeros) ++rep.multi_nodes;
  }
  rep.exceptional_count = rep.strays.size() + rep.multi_nodes;
  return rep;
}

const char* to_string(Inclusion i) noexcept {
  switch (i) {
    case Inclusion::Equal: return "equal";
    case Inclusion::FirstInSecond: return "first_in_second";
    case Inclusion::SecondInFirst: return "second_in_first";
    case Inclusion::Incomparable: return "incomparable";
  }
  return "?";
}

std::string AttractionComparison::describe() const {
  switch (relation) {
    case Inclusion::Equal:
      return "S1 = S2 up to " + std::to_string(k12) + "+" + std::to_string(k21) + " exceptions";
    case Inclusion::FirstInSecond: return "S1 ⊆ S2 up to " + std::to_string(k12) + " exceptions";
    case Inclusion::SecondInFirst: return "S2 ⊆ S1 up to " + std::to_string(k21) + " exceptions";
    case Inclusion::Incomparable:
      return "incomparable(" + std::to_string(k12) + ", " + std::to_string(k21) + ")";
  }
  return "?";
}

AttractionComparison compare_attraction_sets(const std::vector<std::size_t>& S1, const std::vector<std::size_t>& S2,
                                             double budget) {
  std::vector<std::size_t> a(S1), b(S2), d;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  AttractionComparison out;
  out.budget = budget;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
  out.k12 = d.size();
  d.clear();
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d));
  out.k21 = d.size();
  const bool in12 = static_cast<double>(out.k12) <= budget;
  const bool in21 = static_cast<double>(out.k21) <= budget;
  // Both inclusions fit: report the one with fewer exceptions.
  if (in12 && in21 && out.k12 == out.k21) out.relation = Inclusion::Equal;
  else if (in12 && (!in21 || out.k12 < out.k21)) out.relation = Inclusion::FirstInSecond;
  else if (in21) out.relation = Inclusion::SecondInFirst;
  else out.relation = Inclusion::Incomparable;
  return out;
}

std::vector<AnnulusMin> min_modulus_profile(const std::function<Complex(const Complex&)>& F,
                                            const EntireFunction& A, const NodeSet& ns, double K, double M,
                                            double radius, const PrecisionContext& ctx, int annuli,
                                            int points_per_circle) {
  PrecisionScope scope(ctx.bits);
  annuli = std::max(annuli, 1);
  const int rings = 3;
  struct Probe {
    std::complex<double> z;
    int annulus;
  };
  std::vector<Probe> probes;
  for (int a = 0; a < annuli; ++a) {
    const double r0 = radius * a / annuli, r1 = radius * (a + 1) / annuli;
    for (int q = 0; q < rings; ++q) {
      const double r = r0 + (r1 - r0) * (q + 0.5) / rings;
      for (int m = 0; m < points_per_circle; ++m) {
        const std::complex<double> z = std::polar(r, 2 * M_PI * (m + 0.5 * (q + 1) / rings) / points_per_circle);
        if (ns.size() > 0) {
          const std::size_t k = ns.nearest(z);
          if (std::abs(z - ns.nodes[k].to_std()) < std::pow(ns.modulus(k) + 1, -K)) continue;
        }
        probes.push_back({z, a});
      }
    }
  }
  auto vals = parallel_map<double>(probes.size(), [&](std::size_t i) {
    const Complex z(probes[i].z);
    const Real f = abs(F(z)), a = abs(A(z));
    if (f.is_zero()) return -std::numeric_limits<double>::infinity();
    if (a.is_zero()) return std::numeric_limits<double>::infinity();
    return log(f / a).to_double() / std::log(10.0) + M * std::log10(std::abs(probes[i].z) + 1);
  });
  std::vector<AnnulusMin> out(static_cast<std::size_t>(annuli));
  for (int a = 0; a < annuli; ++a) {
    out[static_cast<std::size_t>(a)].r_inner = radius * a / annuli;
    out[static_cast<std::size_t>(a)].r_outer = radius * (a + 1) / annuli;
    out[static_cast<std::size_t>(a)].log10_min = std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    auto& o = out[static_cast<std::size_t>(probes[i].annulus)];
    o.log10_min = std::min(o.log10_min, vals[i]);
    ++o.probes;
  }
  return out;
}

}  // namespace cdlab
