#pragma once

#include <atomic>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <utility>

#include "cdlab/zerofind/zerofind.hpp"

namespace cdlab::detail {

/// Argument changes of F along contour pieces, snapped to arg(F(b)/F(a)) + 2 pi k.
/// Straight segments are cached by their endpoints. Thread safe.
class ArgEngine {
 public:
  using Pt = std::complex<double>;
  ArgEngine(const Evaluable& F, const PrecisionContext& ctx) : F_(F), ctx_(ctx) {}

  /// Change of arg F along the segment a -> b.
  double segment(Pt a, Pt b);
  /// Change of arg F along the arc c + r e^{i theta}, theta in [t0, t1].
  double arc(Pt c, double r, double t0, double t1);

  std::size_t evaluations() const { return evals_.load(); }

 private:
  struct Sample {
    std::complex<double> logderiv;  // F'/F
    double arg = 0;
    long expo = 0;                  // binary exponent of |F|
  };
  using Path = std::function<std::pair<Pt, Pt>(double)>;  // point and tangent

  Sample sample(Pt z);
  Sample vertex(Pt z);
  double adaptive(const Path& path, double s0, double s1, int depth);
  double quadrature(const Path& path, double s0, double s1, int order, long& emin, long& emax);

  static std::pair<double, double> key(Pt z) { return {z.real(), z.imag()}; }

  const Evaluable& F_;
  PrecisionContext ctx_;
  std::mutex mu_;
  std::map<std::pair<std::pair<double, double>, std::pair<double, double>>, double> segs_;
  std::map<std::pair<double, double>, Sample> verts_;
  std::atomic<std::size_t> evals_{0};
};

}  // namespace cdlab::detail
