#include <cmath>
#include <limits>
#include <sstream>

#include "cdlab/experiments/experiments.hpp"
#include "cdlab/kernel/error.hpp"

namespace cdlab {

namespace {

constexpr long kBits = 192;

Real weight_real(const WeightSpec& w, const Real& t) {
  switch (w.kind) {
    case WeightKind::Exp: return exp(Real(w.beta) * t);
    case WeightKind::Quadratic: return t * t / Real(2);
    case WeightKind::Power: return pow(t, Real(w.beta)) / Real(w.beta);
    case WeightKind::Sampled: {
      const double td = t.to_double();
      std::size_t i = 1;
      while (i + 1 < w.t.size() && w.t[i] < td) ++i;
      const Real t0(w.t[i - 1]), t1(w.t[i]), w0(w.w[i - 1]), w1(w.w[i]);
      return w0 + (w1 - w0) * (t - t0) / (t1 - t0);
    }
  }
  return Real(0);
}

}  // namespace

double weight_value(const WeightSpec& w, double t) {
  PrecisionScope scope(kBits);
  return weight_real(w, Real(t)).to_double();
}

double log_weight(const WeightSpec& w, double x) {
  switch (w.kind) {
    case WeightKind::Exp: return w.beta * x;
    case WeightKind::Quadratic: return 2 * std::log(x) - std::log(2.0);
    case WeightKind::Power: return w.beta * std::log(x) - std::log(w.beta);
    case WeightKind::Sampled: return std::log(weight_value(w, x));
  }
  return 0;
}

bool legendre_has_closed_form(const WeightSpec& w) { return w.kind != WeightKind::Sampled; }

double legendre_closed_form(const WeightSpec& w, double x) {
  switch (w.kind) {
    case WeightKind::Exp: {
      // Stationary point t = log(x/beta)/beta, or t = 0 when x < beta.
      if (x < w.beta) return -1.0;
      const double r = x / w.beta;
      return r * (std::log(r) - 1);
    }
    case WeightKind::Quadratic: return x > 0 ? x * x / 2 : 0.0;
    case WeightKind::Power: {
      if (!(w.beta > 1)) throw Error(ErrorKind::NotConvex, "not convex: t^beta/beta needs beta > 1");
      const double q = w.beta / (w.beta - 1);
      return x > 0 ? std::pow(x, q) / q : 0.0;
    }
    case WeightKind::Sampled: break;
  }
  throw Error(ErrorKind::InvalidArgument, "sampled weight has no closed form");
}

double legendre_numeric(const WeightSpec& w, double x) {
  PrecisionScope scope(kBits);
  const Real X(x);
  auto phi = [&](const Real& t) { return X * t - weight_real(w, t); };
  // Bracket: grow T until the objective falls.
  Real T(1);
  for (int i = 0; i < 80 && phi(T * Real(2)) > phi(T); ++i) T = T * Real(2);
  const Real hi = T * Real(2);
  if (phi(hi) > phi(T)) throw Error(ErrorKind::NotConvex, "not convex: objective unbounded on the probe range");
  // Unimodality on the probe grid.
  constexpr int probes = 64;
  Real prev = phi(Real(0));
  bool falling = false;
  const Real slack = pow2(-kBits / 2) * (abs(prev) + Real(1));
  for (int i = 1; i <= probes; ++i) {
    const Real cur = phi(hi * Real(i) / Real(probes));
    if (cur < prev - slack) falling = true;
    else if (falling && cur > prev + slack)
      throw Error(ErrorKind::NotConvex, "not convex: objective is not unimodal on the probe grid");
    prev = cur;
  }
  // Golden-section search for the maximum.
  const Real g = (sqrt(Real(5)) - Real(1)) / Real(2);
  Real a(0), b = hi;
  Real c = b - g * (b - a), d = a + g * (b - a);
  Real fc = phi(c), fd = phi(d);
  const Real eps = pow2(-kBits / 2 + 8) * (hi + Real(1));
  while (b - a > eps) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = phi(d);
    }
  }
  const Real best = max(max(fc, fd), phi(Real(0)));
  return best.to_double();
}

double legendre_transform(const WeightSpec& w, double x) {
  return legendre_has_closed_form(w) ? legendre_closed_form(w, x) : legendre_numeric(w, x);
}

TechReport check_tech_condition(const WeightSpec& w) {
  TechReport rep;
  rep.verdict.name = "tech_condition." + w.describe();
  constexpr int points = 61;
  double prev_decade = 0, last_decade = 0;
  for (int i = 0; i < points; ++i) {
    const double x = std::pow(10.0, 6.0 * i / (points - 1));
    const double base = legendre_transform(w, x);
    double c = 0;
    for (double t : {0.0, 0.5, 1.0}) {
      const double diff = legendre_transform(w, x + t) - base;
      if (diff <= 0) continue;
      c = std::max(c, std::exp(std::log(diff) + std::log(x) - log_weight(w, x)));
    }
    rep.x.push_back(x);
    rep.c.push_back(c);
    rep.best_c = std::max(rep.best_c, c);
    if (x >= 1e5) last_decade = std::max(last_decade, c);
    else if (x >= 1e4) prev_decade = std::max(prev_decade, c);
  }
  rep.verdict.ledger.set("best_c", rep.best_c);
  rep.verdict.ledger.set("c_last_decade", last_decade);
  rep.verdict.ledger.set("c_previous_decade", prev_decade);
  const bool ok = std::isfinite(rep.best_c) && last_decade <= 2 * prev_decade + 1e-300;
  rep.verdict.status = ok ? Status::Pass : Status::Fail;
  std::ostringstream m;
  m << "best constant " << rep.best_c << (ok ? " (bounded)" : " (grows on the last decade)");
  rep.verdict.reason = m.str();
  return rep;
}

ExperimentResult run_legendre(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentResult res;
  std::vector<double> xs = cfg.legendre_x;
  if (xs.empty())
    for (int i = 0; i < 100; ++i) xs.push_back(std::pow(10.0, 6.0 * i / 99));
  for (const auto& w : cfg.weights) {
    if (legendre_has_closed_form(w)) {
      Verdict v;
      v.name = "legendre." + w.describe();
      try {
        double worst = 0;
        for (double x : xs) {
          const double cf = legendre_closed_form(w, x);
          const double nu = legendre_numeric(w, x);
          worst = std::max(worst, std::abs(nu - cf) / std::max(1.0, std::abs(cf)));
        }
        v.ledger.set("points", xs.size());
        v.ledger.set("max_relative_error", worst);
        v.status = worst <= 1e-12 ? Status::Pass : Status::Fail;
        std::ostringstream m;
        m << "numeric vs closed form: max relative error " << worst;
        v.reason = m.str();
      } catch (const Error& e) {
        v.status = e.kind() == ErrorKind::NotConvex ? Status::Fail : Status::Inconclusive;
        v.reason = e.what();
      }
      res.verdicts.push_back(std::move(v));
    }
    try {
      res.verdicts.push_back(check_tech_condition(w).verdict);
    } catch (const Error& e) {
      Verdict v;
      v.name = "tech_condition." + w.describe();
      v.status = e.kind() == ErrorKind::NotConvex ? Status::Fail : Status::Inconclusive;
      v.reason = e.what();
      res.verdicts.push_back(std::move(v));
    }
  }
  return res;
}

}  // namespace cdlab
