#include "engine.hpp"

#include <cmath>
#include <vector>

#include "cdlab/kernel/error.hpp"

namespace cdlab::detail {

namespace {

constexpr int kMaxDepth = 12;
constexpr double kTwoPi = 2 * M_PI;

struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = z;
      w[static_cast<std::size_t>(i)] = 2 / ((1 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre& rule(int n) {
  static const GaussLegendre g32(32), g64(64);
  return n == 32 ? g32 : g64;
}

}  // namespace

ArgEngine::Sample ArgEngine::sample(Pt z) {
  PrecisionScope scope(ctx_.bits);
  const Jet j = F_(Complex(z.real(), z.imag()));
  ++evals_;
  if (j.value.is_zero())
    throw Error(ErrorKind::ContourTooClose, "contour too close to zero: F vanishes on the contour");
  Sample s;
  s.logderiv = (j.deriv / j.value).to_std();
  s.arg = atan2(j.value.im, j.value.re).to_double();
  s.expo = std::max(j.value.re.is_zero() ? LONG_MIN / 2 : j.value.re.exponent(),
                    j.value.im.is_zero() ? LONG_MIN / 2 : j.value.im.exponent());
  if (!std::isfinite(s.logderiv.real()) || !std::isfinite(s.logderiv.imag()))
    throw Error(ErrorKind::ContourTooClose, "contour too close to zero: F'/F overflows");
  return s;
}

ArgEngine::Sample ArgEngine::vertex(Pt z) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = verts_.find(key(z));
    if (it != verts_.end()) return it->second;
  }
  Sample s = sample(z);
  std::lock_guard<std::mutex> lock(mu_);
  verts_.emplace(key(z), s);
  return s;
}

double ArgEngine::quadrature(const Path& path, double s0, double s1, int order, long& emin, long& emax) {
  const auto& g = rule(order);
  const double half = (s1 - s0) / 2, mid = (s0 + s1) / 2;
  double acc = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const auto [z, dz] = path(mid + half * g.x[i]);
    const Sample s = sample(z);
    emin = std::min(emin, s.expo);
    emax = std::max(emax, s.expo);
    acc += g.w[i] * (s.logderiv * dz).imag();
  }
  return acc * half;
}

double ArgEngine::adaptive(const Path& path, double s0, double s1, int depth) {
  long emin = LONG_MAX, emax = LONG_MIN;
  const double i32 = quadrature(path, s0, s1, 32, emin, emax);
  const double i64 = quadrature(path, s0, s1, 64, emin, emax);
  if (emax - emin > ctx_.bits / 2)
    throw Error(ErrorKind::ContourTooClose, "contour too close to zero: min |F| below 2^{-bits/2} of the segment max");
  const Sample a = vertex(path(s0).first);
  const Sample b = vertex(path(s1).first);
  const double base = std::remainder(b.arg - a.arg, kTwoPi);
  const double snapped = base + kTwoPi * std::nearbyint((i64 - base) / kTwoPi);
  if (std::abs(i32 - i64) <= 0.1 * kTwoPi && std::abs(i64 - snapped) <= 0.25 * kTwoPi) return snapped;
  if (depth >= kMaxDepth)
    throw Error(ErrorKind::NonIntegerWinding, "non-integer winding: quadrature did not settle on a contour piece");
  const double m = (s0 + s1) / 2;
  return adaptive(path, s0, m, depth + 1) + adaptive(path, m, s1, depth + 1);
}

double ArgEngine::segment(Pt a, Pt b) {
  const auto k = std::make_pair(key(a), key(b));
  const auto rk = std::make_pair(key(b), key(a));
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = segs_.find(k); it != segs_.end()) return it->second;
    if (auto it = segs_.find(rk); it != segs_.end()) return -it->second;
  }
  const Pt d = b - a;
  Path path = [a, d](double s) { return std::make_pair(a + s * d, d); };
  const double v = adaptive(path, 0, 1, 0);
  std::lock_guard<std::mutex> lock(mu_);
  segs_.emplace(k, v);
  return v;
}

double ArgEngine::arc(Pt c, double r, double t0, double t1) {
  Path path = [c, r](double t) {
    const Pt e = std::polar(1.0, t);
    return std::make_pair(c + r * e, Pt(0, 1) * r * e);
  };
  return adaptive(path, t0, t1, 0);
}

}  // namespace cdlab::detail
