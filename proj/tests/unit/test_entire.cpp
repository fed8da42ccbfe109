#include <cmath>
#include <random>

#include "cdlab/entire/entire.hpp"
#include "cdlab/kernel/error.hpp"
#include "cdlab/zerofind/zerofind.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cdlab;

namespace {

NodeSet geometric(long top_exponent) {
  FamilySpec f;
  f.kind = Family::Geometric;
  f.ratio = Real(2);
  return generate_nodes(f, pow2(top_exponent));
}

NodeSet cross(double radius) {
  FamilySpec f;
  f.kind = Family::CrossLattice;
  return generate_nodes(f, Real(radius));
}

double rel(const Complex& a, const Complex& b) { return (abs(a - b) / max(abs(b), pow2(-2000))).to_double(); }

}  // namespace

TEST_CASE("sin_cross values") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto A = EntireFunction::sin_cross();
  CHECK(evaluate(A, Complex(1), ctx).value.is_zero());
  const auto v = evaluate(A, Complex(Real("1e-30")), ctx).value;
  const Complex want = I() * pi() * pi() * Real("1e-30");
  CHECK(rel(v, want) < 1e-50);
}

TEST_CASE("canonical genus-0 product over powers of two") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto A = EntireFunction::canonical_genus0(geometric(80));
  const auto v = evaluate(A, Complex(1), ctx);
  const long double want = oracle::dyadic_product(1.0L, 1, 80);
  CHECK(v.value.re.to_double() == doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
  CHECK(v.value.re.to_double() == doctest::Approx(0.288788095086602421).epsilon(1e-15));
  CHECK(v.abs_error.to_double() < 1e-20);

  // Evaluation needs the truncation radius to be at least 4|z|.
  const auto B = EntireFunction::canonical_genus0(geometric(10));
  CHECK_THROWS_AS(evaluate(B, Complex(300), ctx), Error);
  try {
    evaluate(B, Complex(300), ctx);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TailDominates);
  }
}

TEST_CASE("derivatives at nodes") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto S = EntireFunction::sin_cross();
  const auto d1 = derivative_at_node(S, Complex(1), ctx).value;
  CHECK(rel(d1, Complex(Real(0), -pi() * sinh(pi()))) < 1e-100);
  CHECK(d1.im.to_double() == doctest::Approx(-36.2817).epsilon(1e-5));
  const auto d0 = derivative_at_node(S, Complex(0), ctx).value;
  CHECK(rel(d0, Complex(Real(0), pi() * pi())) < 1e-100);

  const auto G = EntireFunction::canonical_genus0(geometric(80));
  const auto d2 = derivative_at_node(G, Complex(2), ctx).value;
  const long double want = -0.5L * oracle::dyadic_product(2.0L, 2, 80);
  CHECK(d2.re.to_double() == doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
  CHECK(abs(d2.im).to_double() < 1e-100);

  CHECK_THROWS_AS(derivative_at_node(S, Complex(0.5), ctx), Error);
}

TEST_CASE("log-derivatives") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto P = EntireFunction::polynomial({Complex(0), Complex(0), Complex(1)});
  CHECK(rel(log_derivative(P, Complex(3), ctx).value, Complex(Real(2) / Real(3))) < 1e-100);

  const auto G = EntireFunction::canonical_genus0(geometric(60));
  const auto g = log_derivative(G, Complex(0), ctx).value;
  CHECK(rel(g, Complex(-(Real(1) - pow2(-60)))) < 1e-100);

  const auto S = EntireFunction::sin_cross();
  const Real half(0.5);
  const Real coth = cosh(pi() / Real(2)) / sinh(pi() / Real(2));
  // pi cot(pi/2) = 0; i pi cot(i pi/2) = pi coth(pi/2); then -1/z.
  CHECK(rel(log_derivative(S, Complex(half), ctx).value, Complex(pi() * coth - Real(2))) < 1e-100);

  try {
    log_derivative(S, Complex(Real(1) + pow2(-400)), ctx);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooCloseToZero);
  }
}

TEST_CASE("rational modification") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto S = EntireFunction::sin_cross();
  const auto same = build_rational_modification(S, {});
  for (const auto& z : {Complex(0.3, 0.7), Complex(-2.2, 1.1)})
    CHECK(abs(same(z) - S(z)).to_double() == 0);

  const Real eps("1e-6");
  const auto M = build_rational_modification(S, {{Complex(Real(1) + eps), Complex(1)}});
  CHECK(abs(M(Complex(Real(1) + eps))).to_double() < 1e-100);
  const Complex at1 = M(Complex(1));
  const Complex want = -derivative_at_node(S, Complex(1), ctx).value * eps;
  CHECK(rel(at1, want) < 1e-5);
  CHECK(M.has_zero(Complex(Real(1) + eps)));

  // The new zero may not land on an existing one.
  CHECK_THROWS_AS(build_rational_modification(S, {{Complex(2), Complex(1)}}), Error);

  // Winding: base zeros inside |z - 1| = 1/2 are {1}; after the swap it is still one zero.
  const Evaluable F = [&](const Complex& z) { return M.jet(z); };
  CHECK(winding_number(F, Circle{{1, 0}, 0.5}, ctx) == 1);
  // Moving the zero outside the contour drops the count.
  const auto Out = build_rational_modification(S, {{Complex(1.7, 0.2), Complex(1)}});
  const Evaluable H = [&](const Complex& z) { return Out.jet(z); };
  CHECK(winding_number(H, Circle{{1, 0}, 0.5}, ctx) == 0);
}

TEST_CASE("property: rational modification keeps |A_f / A| bounded off the nodes") {
  PrecisionScope s(256);
  const auto S = EntireFunction::sin_cross();
  std::vector<std::pair<Complex, Complex>> pairs;
  for (int k = 1; k <= 6; ++k) {
    const double d = 0.5 * std::pow(k + 1.0, -2.0);
    pairs.push_back({Complex(k + d, 0.3 * d), Complex(k)});
  }
  const auto M = build_rational_modification(S, pairs);
  const NodeSet ns = cross(12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-8, 8);
  int checked = 0;
  while (checked < 100) {
    const std::complex<double> z(u(rng), u(rng));
    const auto t = ns.nodes[ns.nearest(z)].to_std();
    if (std::abs(z - t) < 0.5) continue;
    const double r = (abs(M(Complex(z))) / abs(S(Complex(z)))).to_double();
    CHECK(r >= 0.5);
    CHECK(r <= 2.0);
    ++checked;
  }
}

TEST_CASE("Hamburger-Krein check") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  std::vector<Complex> samples;
  for (int j = 0; j < 20; ++j) samples.push_back(polar(Real(5.3), Real(2) * pi() * Real(j + 0.5) / Real(20)));

  const auto S = EntireFunction::sin_cross();
  const auto r12 = hamburger_krein_check(S, cross(12), samples, 8, ctx);
  const auto r24 = hamburger_krein_check(S, cross(24), samples, 8, ctx);
  CHECK(r12.residual < 1e-6);
  CHECK(r24.residual < r12.residual);
  CHECK(r12.decreasing_tail);

  FamilySpec one;
  one.kind = Family::Explicit;
  one.points = {Complex(1)};
  const auto P = EntireFunction::polynomial({Complex(-1), Complex(1)});
  const auto rp = hamburger_krein_check(P, generate_nodes(one, Real(2)), samples, 8, ctx);
  CHECK_FALSE(rp.decreasing_tail);
  CHECK(rp.residual < 1e-100);  // 1/(z-1) is its own interpolation series

  FamilySpec sq;
  sq.kind = Family::SquareLattice;
  const auto sigma = EntireFunction::weierstrass_sigma();
  std::vector<Complex> off;
  for (int j = 0; j < 20; ++j) off.push_back(polar(Real(5.3), Real(2) * pi() * Real(j + 0.37) / Real(20)));
  const auto rs = hamburger_krein_check(sigma, generate_nodes(sq, Real(8)), off, 10, ctx);
  REQUIRE(rs.decay.size() == 11);
  for (const auto& row : rs.decay) {
    CAPTURE(row.M);
    CHECK(row.decreasing);
  }
  CHECK(rs.decreasing_tail);

  std::vector<Complex> bad{Complex(1.01)};
  CHECK_THROWS_AS(hamburger_krein_check(S, cross(12), bad, 2, ctx), Error);
}

TEST_CASE("eventually_decreasing") {
  CHECK(eventually_decreasing({1, 2, 3, 4}, {4, 3, 2, 1}));
  CHECK(eventually_decreasing({1, 2, 3, 4, 5}, {1, 3, 2, 1, 0.5}));
  CHECK_FALSE(eventually_decreasing({1, 2, 3, 4}, {1, 2, 3, 4}));
  CHECK_FALSE(eventually_decreasing({1}, {1}));
  // Equal moduli form one shell that keeps its largest value.
  CHECK(eventually_decreasing({1, 1, 2, 2, 3, 3}, {5, 1, 4, 0, 3, 2}));
  // A late rise breaks the run.
  CHECK_FALSE(eventually_decreasing({1, 2, 3, 4, 5, 6}, {6, 5, 4, 3, 2, 7}));
}

TEST_CASE("property: sin_cross is odd") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto S = EntireFunction::sin_cross();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int j = 0; j < 50; ++j) {
    const Complex z(u(rng), u(rng));
    const auto a = evaluate(S, z, ctx);
    const auto b = evaluate(S, -z, ctx);
    CHECK(abs(a.value + b.value) <= a.abs_error + b.abs_error);
  }
}

TEST_CASE("property: sigma quasi-periodicity") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto sigma = EntireFunction::weierstrass_sigma();
  const Real eta2 = pi();  // 2 zeta(1/2) on the square lattice
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int j = 0; j < 20; ++j) {
    const Complex z(u(rng), u(rng));
    const auto a = evaluate(sigma, z + Complex(1), ctx);
    const auto b = evaluate(sigma, z, ctx);
    const Complex factor = exp(Complex(eta2) * (z + Complex(0.5)));
    const Complex rhs = -b.value * factor;
    CHECK(abs(a.value - rhs) <= a.abs_error + b.abs_error * abs(factor) + pow2(-400) * abs(rhs));
  }
}

TEST_CASE("property: log-derivative agrees with a central difference") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  const Real h = pow2(-256 / 4);
  std::vector<EntireFunction> fs{EntireFunction::sin_cross(), EntireFunction::weierstrass_sigma(),
                                 EntireFunction::canonical_genus0(geometric(40)),
                                 EntireFunction::sin_cross(pi() / Real(4), true)};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const auto& A : fs) {
    CAPTURE(A.form());
    for (int j = 0; j < 10; ++j) {
      const Complex z(u(rng) + 0.25, u(rng) + 0.25);
      if (auto t = A.nearest_zero(z); t && abs(z - *t) < Real(0.1)) continue;
      const Complex fd =
          (evaluate(A, z + Complex(h), ctx).value - evaluate(A, z - Complex(h), ctx).value) /
          (Real(2) * h * evaluate(A, z, ctx).value);
      const Complex ld = log_derivative(A, z, ctx).value;
      CHECK(rel(fd, ld) < 1e-30);
    }
  }
}

TEST_CASE("property: evaluation vanishes at declared zeros") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const NodeSet g = geometric(40);
  std::vector<std::pair<EntireFunction, NodeSet>> cases{
      {EntireFunction::sin_cross(), cross(6)},
      {EntireFunction::canonical_genus0(g), g.subset(std::vector<std::size_t>{0, 1, 2, 3, 4, 5})},
  };
  FamilySpec sq;
  sq.kind = Family::SquareLattice;
  cases.push_back({EntireFunction::weierstrass_sigma(), generate_nodes(sq, Real(4))});
  for (const auto& [A, ns] : cases) {
    CAPTURE(A.form());
    for (const auto& t : ns.nodes) {
      const auto v = evaluate(A, t, ctx);
      CHECK(abs(v.value) <= v.abs_error);
    }
  }
}
