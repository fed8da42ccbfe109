#include <algorithm>
#include <cmath>
#include <limits>

#include "cdlab/entire/entire.hpp"
#include "cdlab/kernel/error.hpp"
#include "detail.hpp"

namespace cdlab {

namespace {

class Genus0 final : public EntireFunction::Impl {
 public:
  Genus0(NodeSet ns, bool lacunary) : ns_(std::move(ns)), lacunary_(lacunary) {
    recip_.reserve(ns_.size());
    for (const auto& t : ns_.nodes) recip_.push_back(t.is_zero() ? Complex(0) : Complex(1) / t);
    tail_ = reciprocal_tail(ns_.family, ns_.radius);
  }

  Jet quotient_jet(const Complex& z, const Complex& zero) const override {
    const std::size_t k = index_of(zero);
    Complex p(1), dp(0);
    Complex f, t1, t2;
    for (std::size_t m = 0; m < ns_.size(); ++m) {
      if (m == k) continue;
      if (ns_.nodes[m].is_zero()) {
        // factor z
        dp = dp * z + p;
        p = p * z;
        continue;
      }
      f = Complex(1) - z * recip_[m];
      dp = dp * f - p * recip_[m];
      p = p * f;
    }
    if (ns_.nodes[k].is_zero()) return {p, dp};
    const Complex s = -recip_[k];
    return {s * p, s * dp};
  }

  std::optional<Complex> nearest_zero(const Complex& z) const override {
    if (ns_.size() == 0) return std::nullopt;
    return ns_.nodes[ns_.nearest(z.to_std())];
  }

  Real relative_tail(const Complex& z) const override {
    if (!tail_.sum.is_finite()) return tail_.sum;
    const Real r = abs(z);
    if (r >= tail_.next_modulus) return Real(1) / Real(0);
    return exp(tail_.sum * r / (Real(1) - r / tail_.next_modulus)) - Real(1);
  }

  std::optional<Real> truncation_radius() const override { return ns_.radius; }
  double order_estimate() const override { return 0.0; }
  std::string form() const override { return lacunary_ ? "lacunary" : "canonical_genus0"; }

 private:
  std::size_t index_of(const Complex& zero) const {
    if (ns_.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty product has no zeros");
    const std::size_t k = ns_.nearest(zero.to_std());
    if (!detail::near(ns_.nodes[k], zero, detail::zero_match_tol()))
      throw Error(ErrorKind::InvalidArgument, "not a declared zero: " + to_string(zero, 12));
    return k;
  }

  NodeSet ns_;
  bool lacunary_;
  std::vector<Complex> recip_;
  ReciprocalTail tail_;
};

class Polynomial final : public EntireFunction::Impl {
 public:
  explicit Polynomial(std::vector<Complex> c) : c_(std::move(c)) {
    while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) c_.push_back(Complex(0));
  }

  Jet jet(const Complex& z) const override { return horner(c_, z); }

  Jet quotient_jet(const Complex& z, const Complex& zero) const override {
    const std::size_t d = c_.size() - 1;
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "constant polynomial has no zeros");
    std::vector<Complex> b(d);
    b[d - 1] = c_[d];
    for (std::size_t j = d - 1; j >= 1; --j) b[j - 1] = c_[j] + zero * b[j];
    return horner(b, z);
  }

  std::optional<Complex> nearest_zero(const Complex&) const override { return std::nullopt; }

  bool has_zero(const Complex& t) const override {
    Real scale(0), tp(1);
    const Real at = abs(t);
    for (const auto& c : c_) {
      scale += abs(c) * tp;
      tp = tp * at;
    }
    return abs(horner(c_, t).value) <= scale * pow2(-working_bits() / 2);
  }

  double order_estimate() const override { return 0.0; }
  std::string form() const override { return "polynomial"; }

 private:
  static Jet horner(const std::vector<Complex>& c, const Complex& z) {
    Complex p = c.back();
    Complex dp(0);
    for (std::size_t j = c.size() - 1; j-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[j];
    }
    return {p, dp};
  }

  std::vector<Complex> c_;
};

class Product final : public EntireFunction::Impl {
 public:
  explicit Product(std::vector<EntireFunction> f) : f_(std::move(f)) {
    if (f_.empty()) throw Error(ErrorKind::InvalidArgument, "product needs at least one factor");
  }

  Jet jet(const Complex& z) const override {
    Jet acc = f_[0].jet(z);
    for (std::size_t i = 1; i < f_.size(); ++i) acc = detail::mul(acc, f_[i].jet(z));
    return acc;
  }

  Jet quotient_jet(const Complex& z, const Complex& zero) const override {
    std::size_t owner = f_.size();
    for (std::size_t i = 0; i < f_.size() && owner == f_.size(); ++i)
      if (f_[i].has_zero(zero)) owner = i;
    if (owner == f_.size()) throw Error(ErrorKind::InvalidArgument, "not a declared zero: " + to_string(zero, 12));
    Jet acc = f_[owner].quotient_jet(z, zero);
    for (std::size_t i = 0; i < f_.size(); ++i)
      if (i != owner) acc = detail::mul(acc, f_[i].jet(z));
    return acc;
  }

  std::optional<Complex> nearest_zero(const Complex& z) const override {
    std::optional<Complex> best;
    double bd = std::numeric_limits<double>::infinity();
    for (const auto& f : f_) {
      auto t = f.nearest_zero(z);
      if (!t) continue;
      const double d = std::abs(t->to_std() - z.to_std());
      if (d < bd) {
        bd = d;
        best = t;
      }
    }
    return best;
  }

  bool has_zero(const Complex& t) const override {
    return std::any_of(f_.begin(), f_.end(), [&](const EntireFunction& f) { return f.has_zero(t); });
  }

  Real relative_tail(const Complex& z) const override {
    Real acc(1);
    for (const auto& f : f_) acc = acc * (Real(1) + f.relative_tail(z));
    return acc - Real(1);
  }

  std::optional<Real> truncation_radius() const override {
    std::optional<Real> r;
    for (const auto& f : f_)
      if (auto x = f.truncation_radius()) r = r ? min(*r, *x) : *x;
    return r;
  }

  double order_estimate() const override {
    double o = 0;
    for (const auto& f : f_) o = std::max(o, f.order_estimate());
    return o;
  }

  std::string form() const override { return "product"; }

 private:
  std::vector<EntireFunction> f_;
};

class RationalMod final : public EntireFunction::Impl {
 public:
  RationalMod(EntireFunction base, std::vector<std::pair<Complex, Complex>> pairs)
      : base_(std::move(base)), pairs_(std::move(pairs)) {}

  Jet jet(const Complex& z) const override {
    const auto k = removed_anchor(z);
    if (!k) {
      Jet acc = base_.jet(z);
      for (std::size_t j = 0; j < pairs_.size(); ++j) acc = detail::mul(acc, mobius(z, j));
      return acc;
    }
    Jet acc = base_.quotient_jet(z, pairs_[*k].second);
    acc = detail::mul(acc, Jet{z - pairs_[*k].first, Complex(1)});
    for (std::size_t j = 0; j < pairs_.size(); ++j)
      if (j != *k) acc = detail::mul(acc, mobius(z, j));
    return acc;
  }

  Jet quotient_jet(const Complex& z, const Complex& zero) const override {
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      if (!detail::near(pairs_[k].first, zero, detail::zero_match_tol())) continue;
      Jet acc = base_.quotient_jet(z, pairs_[k].second);
      for (std::size_t j = 0; j < pairs_.size(); ++j)
        if (j != k) acc = detail::mul(acc, mobius(z, j));
      return acc;
    }
    for (const auto& p : pairs_)
      if (detail::near(p.second, zero, detail::zero_match_tol()))
        throw Error(ErrorKind::InvalidArgument, "zero was removed by the modification");
    Jet acc = base_.quotient_jet(z, zero);
    for (std::size_t j = 0; j < pairs_.size(); ++j) acc = detail::mul(acc, mobius(z, j));
    return acc;
  }

  std::optional<Complex> nearest_zero(const Complex& z) const override {
    std::optional<Complex> best;
    double bd = std::numeric_limits<double>::infinity();
    if (auto b = base_.nearest_zero(z)) {
      bool removed = false;
      for (const auto& p : pairs_) removed = removed || detail::near(p.second, *b, detail::zero_match_tol());
      if (!removed) {
        best = b;
        bd = std::abs(b->to_std() - z.to_std());
      }
    }
    for (const auto& p : pairs_) {
      const double d = std::abs(p.first.to_std() - z.to_std());
      if (d < bd) {
        bd = d;
        best = p.first;
      }
    }
    return best;
  }

  bool has_zero(const Complex& t) const override {
    for (const auto& p : pairs_) {
      if (detail::near(p.first, t, detail::zero_match_tol())) return true;
      if (detail::near(p.second, t, detail::zero_match_tol())) return false;
    }
    return base_.has_zero(t);
  }

  Real relative_tail(const Complex& z) const override { return base_.relative_tail(z); }
  std::optional<Real> truncation_radius() const override { return base_.truncation_radius(); }
  double order_estimate() const override { return base_.order_estimate(); }
  std::string form() const override { return "rational_mod"; }

 private:
  // (z - s_j)/(z - t_j) and its derivative (s_j - t_j)/(z - t_j)^2.
  Jet mobius(const Complex& z, std::size_t j) const {
    const Complex d = z - pairs_[j].second;
    const Complex v = (z - pairs_[j].first) / d;
    return {v, (pairs_[j].first - pairs_[j].second) / (d * d)};
  }

  // Index of the removed zero nearest to z when it is also the base zero nearest to z.
  std::optional<std::size_t> removed_anchor(const Complex& z) const {
    auto b = base_.nearest_zero(z);
    if (b) {
      for (std::size_t k = 0; k < pairs_.size(); ++k)
        if (detail::near(pairs_[k].second, *b, detail::zero_match_tol())) return k;
      return std::nullopt;
    }
    // Base without known zeros: anchor on the closest removed zero when close.
    std::optional<std::size_t> best;
    double bd = 0.25;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
      const double d = std::abs(pairs_[k].second.to_std() - z.to_std());
      if (d < bd) {
        bd = d;
        best = k;
      }
    }
    return best;
  }

  EntireFunction base_;
  std::vector<std::pair<Complex, Complex>> pairs_;
};

}  // namespace

EntireFunction EntireFunction::canonical_genus0(NodeSet nodes) {
  return EntireFunction(std::make_shared<Genus0>(std::move(nodes), false));
}

EntireFunction EntireFunction::lacunary(NodeSet nodes) {
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes.modulus(i) > nodes.modulus(i - 1) * (1.0 + 1e-9)))
      throw Error(ErrorKind::InvalidArgument, "lacunary product needs strictly growing moduli");
  }
  return EntireFunction(std::make_shared<Genus0>(std::move(nodes), true));
}

EntireFunction EntireFunction::polynomial(std::vector<Complex> coeffs) {
  return EntireFunction(std::make_shared<Polynomial>(std::move(coeffs)));
}

EntireFunction EntireFunction::product(std::vector<EntireFunction> factors) {
  return EntireFunction(std::make_shared<Product>(std::move(factors)));
}

EntireFunction build_rational_modification(const EntireFunction& base,
                                           const std::vector<std::pair<Complex, Complex>>& pairs) {
  if (pairs.empty()) return base;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [s, t] = pairs[k];
    if (!base.has_zero(t)) throw Error(ErrorKind::InvalidArgument, "old zero is not a zero of the base: " + to_string(t, 12));
    if (base.has_zero(s)) throw Error(ErrorKind::InvalidArgument, "new zero coincides with an existing zero: " + to_string(s, 12));
    for (std::size_t j = 0; j < k; ++j)
      if (detail::near(pairs[j].first, s, detail::zero_match_tol()))
        throw Error(ErrorKind::InvalidArgument, "duplicate new zero");
  }
  return EntireFunction(std::make_shared<RationalMod>(base, pairs));
}

}  // namespace cdlab
