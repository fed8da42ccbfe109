#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "cdlab/kernel/error.hpp"
#include "cdlab/kernel/parallel.hpp"
#include "engine.hpp"

namespace cdlab {

namespace {

constexpr double kTwoPi = 2 * M_PI;
using Pt = std::complex<double>;

int to_winding(double total_arg) {
  const double w = total_arg / kTwoPi;
  const double r = std::nearbyint(w);
  if (std::abs(w - r) > 0.25) throw Error(ErrorKind::NonIntegerWinding, "non-integer winding");
  return static_cast<int>(r);
}

// Arg changes along the four sides, counter-clockwise from the bottom.
struct Cell {
  Rect r;
  std::array<double, 4> side{};
  int w = 0;
};

Cell boundary_cell(detail::ArgEngine& eng, const Rect& r) {
  const Pt c00(r.x0, r.y0), c10(r.x1, r.y0), c11(r.x1, r.y1), c01(r.x0, r.y1);
  Cell c;
  c.r = r;
  c.side = {eng.segment(c00, c10), eng.segment(c10, c11), eng.segment(c11, c01), eng.segment(c01, c00)};
  c.w = to_winding(c.side[0] + c.side[1] + c.side[2] + c.side[3]);
  return c;
}

std::array<Cell, 4> split_at(detail::ArgEngine& eng, const Cell& p, double xm, double ym) {
  const Rect& r = p.r;
  const Pt c00(r.x0, r.y0), c10(r.x1, r.y0), c11(r.x1, r.y1), c01(r.x0, r.y1);
  const Pt mb(xm, r.y0), mr(r.x1, ym), mt(xm, r.y1), ml(r.x0, ym), m(xm, ym);
  const double b1 = eng.segment(c00, mb), b2 = p.side[0] - b1;
  const double r1 = eng.segment(c10, mr), r2 = p.side[1] - r1;
  const double t1 = eng.segment(c11, mt), t2 = p.side[2] - t1;
  const double l1 = eng.segment(c01, ml), l2 = p.side[3] - l1;
  const double aB = eng.segment(m, mb), aR = eng.segment(m, mr), aT = eng.segment(m, mt), aL = eng.segment(m, ml);
  std::array<Cell, 4> k;
  k[0].r = {r.x0, xm, r.y0, ym};
  k[0].side = {b1, -aB, aL, l2};
  k[1].r = {xm, r.x1, r.y0, ym};
  k[1].side = {b2, r1, -aR, aB};
  k[2].r = {xm, r.x1, ym, r.y1};
  k[2].side = {aR, r2, t1, -aT};
  k[3].r = {r.x0, xm, ym, r.y1};
  k[3].side = {-aL, aT, t2, l1};
  int sum = 0;
  for (auto& c : k) {
    c.w = to_winding(c.side[0] + c.side[1] + c.side[2] + c.side[3]);
    sum += c.w;
  }
  if (sum != p.w) throw Error(ErrorKind::NonIntegerWinding, "children windings do not add up to the parent");
  return k;
}

std::array<Cell, 4> split(detail::ArgEngine& eng, const Cell& p) {
  static constexpr double nudges[] = {0.0, 1.0 / 7, -1.0 / 7, 2.0 / 7, -2.0 / 7};
  const Pt c = p.r.center();
  for (std::size_t i = 0;; ++i) {
    const double xm = c.real() + nudges[i] * p.r.width();
    const double ym = c.imag() + nudges[i] * p.r.height();
    try {
      return split_at(eng, p, xm, ym);
    } catch (const Error& e) {
      const bool retry = e.kind() == ErrorKind::ContourTooClose || e.kind() == ErrorKind::NonIntegerWinding;
      if (!retry || i + 1 == std::size(nudges)) throw;
    }
  }
}

double dist_to_edge(const Rect& r, Pt z) {
  return std::min({z.real() - r.x0, r.x1 - z.real(), z.imag() - r.y0, r.y1 - z.imag()});
}

std::optional<ZeroRecord> newton(const Evaluable& F, const Rect& cell, const PrecisionContext& ctx, int iterations) {
  PrecisionScope scope(ctx.bits);
  const Pt c0 = cell.center();
  Complex z(c0.real(), c0.imag());
  const Real tol(ctx.target_tol);
  const Real floor_step = pow2(-ctx.bits + 16);
  Real last(1e300);
  int growth = 0;
  bool converged = false;
  for (int it = 0; it < iterations; ++it) {
    const Jet j = F(z);
    if (j.value.is_zero()) {
      converged = true;
      last = Real(0);
      break;
    }
    if (j.deriv.is_zero()) return std::nullopt;
    const Complex step = j.value / j.deriv;
    z -= step;
    if (!cell.contains(z.to_std())) return std::nullopt;
    const Real s = abs(step);
    if (s > last) {
      if (++growth > 8) return std::nullopt;
    }
    const bool small = s <= tol;
    if (s <= tol * pow2(-24) || s <= floor_step * max(Real(1), abs(z)) || (small && last <= tol)) {
      last = s;
      converged = true;
      break;
    }
    last = s;
  }
  if (!converged && !(last <= tol)) return std::nullopt;
  const double iso = dist_to_edge(cell, z.to_std());
  if (!(iso > 0)) return std::nullopt;
  ZeroRecord rec;
  rec.residual = abs(F(z).value);
  rec.location = z;
  rec.multiplicity = 1;
  rec.isolation_radius = iso;
  rec.polished = last <= tol;
  return rec;
}

double rect_dist(const Rect& r, Pt c) {
  const double dx = std::max({r.x0 - c.real(), 0.0, c.real() - r.x1});
  const double dy = std::max({r.y0 - c.imag(), 0.0, c.imag() - r.y1});
  return std::hypot(dx, dy);
}

ZeroRecord cell_record(const Evaluable& F, const Cell& c, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx.bits);
  const Pt m = c.r.center();
  ZeroRecord rec;
  rec.location = Complex(m.real(), m.imag());
  rec.multiplicity = c.w;
  rec.residual = abs(F(rec.location).value);
  rec.isolation_radius = std::min(c.r.width(), c.r.height()) / 2;
  rec.polished = false;
  return rec;
}

}  // namespace

FindResult find_zeros_ex(const Evaluable& F, const Rect& region, const PrecisionContext& ctx, const FindOptions& opt) {
  if (!(region.width() >= 0x1.0p-20 && region.height() >= 0x1.0p-20))
    throw Error(ErrorKind::InvalidArgument, "region sides must be at least 2^-20");
  detail::ArgEngine eng(F, ctx);
  FindResult res;

  // The outer boundary may be pushed outwards when it passes too close to a zero.
  static constexpr double grow[] = {0.0, 0.01, 0.02, 0.035, 0.05, 0.1};
  std::optional<Cell> root;
  for (std::size_t i = 0; i < std::size(grow) && !root; ++i) {
    const double gx = grow[i] * region.width(), gy = grow[i] * region.height();
    const Rect r{region.x0 - gx, region.x1 + gx, region.y0 - gy, region.y1 + gy};
    try {
      root = boundary_cell(eng, r);
    } catch (const Error& e) {
      const bool retry = e.kind() == ErrorKind::ContourTooClose || e.kind() == ErrorKind::NonIntegerWinding;
      if (!retry || i + 1 == std::size(grow)) throw;
    }
  }
  res.region = root->r;
  res.total_winding = root->w;
  if (root->w < 0) throw Error(ErrorKind::NonIntegerWinding, "negative winding: F is not analytic in the region");

  const double diam = std::hypot(root->r.width(), root->r.height());
  const double min_side = opt.min_cell_fraction * diam;
  std::vector<Cell> level{*root};
  res.cells = 1;
  while (!level.empty()) {
    std::vector<Cell> polish, divide;
    for (auto& c : level) {
      if (c.w == 0) continue;
      if (c.w < 0) throw Error(ErrorKind::NonIntegerWinding, "negative winding in a cell");
      if (opt.clip && rect_dist(c.r, opt.clip_center) > opt.clip_radius) {
        res.pruned_winding += c.w;
        continue;
      }
      if (std::max(c.r.width(), c.r.height()) < min_side) {
        if (c.w == 1) polish.push_back(c);
        else res.zeros.push_back(cell_record(F, c, ctx));
        continue;
      }
      (c.w == 1 ? polish : divide).push_back(c);
    }
    auto polished = parallel_map<std::optional<ZeroRecord>>(
        polish.size(), [&](std::size_t i) { return newton(F, polish[i].r, ctx, opt.newton_iterations); });
    for (std::size_t i = 0; i < polish.size(); ++i) {
      if (polished[i]) {
        res.zeros.push_back(*polished[i]);
      } else if (std::max(polish[i].r.width(), polish[i].r.height()) < min_side) {
        res.zeros.push_back(cell_record(F, polish[i], ctx));
      } else {
        divide.push_back(polish[i]);
      }
    }
    if (res.cells + 4 * divide.size() > opt.max_cells)
      throw Error(ErrorKind::BudgetExceeded, "budget exceeded: more than " + std::to_string(opt.max_cells) + " cells");
    auto children = parallel_map<std::array<Cell, 4>>(divide.size(), [&](std::size_t i) { return split(eng, divide[i]); });
    level.clear();
    for (const auto& ch : children)
      for (const auto& c : ch) level.push_back(c);
    res.cells += level.size();
  }
  std::sort(res.zeros.begin(), res.zeros.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.location.re != b.location.re) return a.location.re < b.location.re;
    return a.location.im < b.location.im;
  });
  res.evaluations = eng.evaluations();
  return res;
}

std::vector<ZeroRecord> find_zeros(const Evaluable& F, const Rect& region, const PrecisionContext& ctx,
                                   const FindOptions& opt) {
  return find_zeros_ex(F, region, ctx, opt).zeros;
}

int winding_number(const Evaluable& F, const Rect& contour, const PrecisionContext& ctx) {
  detail::ArgEngine eng(F, ctx);
  return boundary_cell(eng, contour).w;
}

int winding_number(const Evaluable& F, const Circle& contour, const PrecisionContext& ctx) {
  detail::ArgEngine eng(F, ctx);
  constexpr int pieces = 8;
  double total = 0;
  for (int i = 0; i < pieces; ++i)
    total += eng.arc(contour.center, contour.radius, kTwoPi * i / pieces, kTwoPi * (i + 1) / pieces);
  return to_winding(total);
}

}  // namespace cdlab
