#include <algorithm>
#include <cmath>
#include <random>

#include "cdlab/kernel/error.hpp"
#include "cdlab/space/space.hpp"
#include "cdlab/zerofind/zerofind.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cdlab;

namespace {

Evaluable of(const EntireFunction& A) {
  return [A](const Complex& z) { return A.jet(z); };
}

Evaluable polynomial(std::vector<Complex> c) { return of(EntireFunction::polynomial(std::move(c))); }

std::vector<std::complex<double>> locations(const std::vector<ZeroRecord>& zs) {
  std::vector<std::complex<double>> v;
  for (const auto& z : zs) v.push_back(z.location.to_std());
  return v;
}

NodeSet dyadic(long top) {
  FamilySpec f;
  f.kind = Family::Geometric;
  f.ratio = Real(2);
  return generate_nodes(f, pow2(top));
}

// mu^{1/2} A(z)/(z - 2) over the nodes 2^n.
SpaceElement single_node_element() {
  NodeSet ns = dyadic(40);
  EntireFunction A = EntireFunction::canonical_genus0(ns);
  MeasureSpec m;
  m.rule = MeasureRule::DerivativePower;
  m.N = Real(1);
  Measure mu = attach_measure(ns, m, &A, default_context());
  const std::size_t n = ns.size();
  return make_element(basis_coeffs(n, 0), make_space(std::move(ns), std::move(mu), std::move(A)));
}

Evaluable of(const SpaceElement& el) {
  return [el](const Complex& z) { return el.jet_F(z); };
}

}  // namespace

TEST_CASE("winding numbers") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  CHECK(winding_number(polynomial({Complex(0), Complex(1)}), Circle{{0, 0}, 1}, ctx) == 1);
  CHECK(winding_number(polynomial({Complex(1), Complex(-2), Complex(1)}), Circle{{0, 0}, 2}, ctx) == 2);
  CHECK(winding_number(of(EntireFunction::sin_cross()), Rect{-2.5, 2.5, -2.5, 2.5}, ctx) == 9);
  CHECK(winding_number(polynomial({Complex(1), Complex(0), Complex(1)}), Rect{-0.5, 0.5, -0.5, 0.5}, ctx) == 0);
}

TEST_CASE("winding fails on a contour through a zero") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  try {
    winding_number(polynomial({Complex(-1), Complex(1)}), Circle{{0, 0}, 1}, ctx);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::ContourTooClose || e.kind() == ErrorKind::NonIntegerWinding));
  }
}

TEST_CASE("zeros of z^2 - 1") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  const auto zs = find_zeros(polynomial({Complex(-1), Complex(0), Complex(1)}), Rect{-2, 2, -2, 2}, ctx);
  REQUIRE(zs.size() == 2);
  CHECK(abs(zs[0].location + Complex(1)).to_double() < 1e-60);
  CHECK(abs(zs[1].location - Complex(1)).to_double() < 1e-60);
  for (const auto& z : zs) {
    CHECK(z.multiplicity == 1);
    CHECK(z.polished);
    CHECK(z.isolation_radius > 0);
  }
}

TEST_CASE("double zero is reported with multiplicity 2") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  // (z - 0.3)^2 (z + 1)
  const auto c = oracle::poly_from_roots({Complex(0.3), Complex(0.3), Complex(-1)});
  const auto r = find_zeros_ex(polynomial(c), Rect{-2, 2, -2, 2}, ctx);
  int total = 0;
  for (const auto& z : r.zeros) total += z.multiplicity;
  CHECK(total == 3);
  CHECK(r.total_winding == 3);
  const auto it = std::find_if(r.zeros.begin(), r.zeros.end(), [](const ZeroRecord& z) { return z.multiplicity == 2; });
  REQUIRE(it != r.zeros.end());
  CHECK(std::abs(it->location.to_std() - std::complex<double>(0.3, 0)) < 1e-6);
}

TEST_CASE("single-node element over powers of two") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  const auto el = single_node_element();
  const auto zs = find_zeros(of(el), Rect{0, 40, -1, 1}, ctx);
  REQUIRE(zs.size() == 4);
  const double want[] = {4, 8, 16, 32};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(abs(zs[i].location - Complex(want[i])).to_double() < 1e-60);
    CHECK(zs[i].multiplicity == 1);
  }

  const auto rep = classify_zeros(zs, el.ns(), 2, Region::make_rect(Rect{0, 40, -1, 1}));
  CHECK(rep.strays.empty());
  CHECK(rep.attraction_set == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(rep.node_status[0] == NodeStatus::Empty);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(rep.node_status[n] == NodeStatus::OneZero);
  CHECK(rep.scanned_nodes == 5);
  CHECK(rep.exceptional_count == 0);
}

TEST_CASE("classification of exact and empty zero lists") {
  PrecisionScope s(256);
  FamilySpec f;
  f.kind = Family::CrossLattice;
  const NodeSet ns = generate_nodes(f, Real(8));
  const Region region = Region::make_disk({0, 0}, 4);
  std::vector<ZeroRecord> at_nodes;
  for (std::size_t n = 0; n < ns.size(); ++n)
    if (ns.modulus(n) < 3.5) at_nodes.push_back(ZeroRecord{ns.nodes[n]});
  const auto rep = classify_zeros(at_nodes, ns, 2, region);
  CHECK(rep.strays.empty());
  CHECK(rep.attraction_set.size() == at_nodes.size());
  CHECK(rep.exceptional_count == 0);
  for (std::size_t n : rep.attraction_set) CHECK(rep.node_status[n] == NodeStatus::OneZero);

  const auto empty = classify_zeros({}, ns, 2, region);
  CHECK(empty.attraction_set.empty());
  for (std::size_t n = 0; n < ns.size(); ++n)
    CHECK((empty.node_status[n] == NodeStatus::Empty || empty.node_status[n] == NodeStatus::Unscanned));

  // A stray, a double disk and an ignored zero.
  std::vector<ZeroRecord> mixed{ZeroRecord{Complex(0.5, 0.5)}, ZeroRecord{Complex(1)},
                                ZeroRecord{Complex(Real(1) + Real(1e-3))}, ZeroRecord{Complex(7, 7)}};
  const auto m = classify_zeros(mixed, ns, 2, region);
  CHECK(m.strays == std::vector<std::size_t>{0});
  CHECK(m.ignored == std::vector<std::size_t>{3});
  CHECK(m.multi_nodes == 1);
  CHECK(m.exceptional_count == 2);
}

TEST_CASE("overlapping disks are rejected without the gap cap") {
  PrecisionScope s(256);
  FamilySpec f;
  f.kind = Family::Explicit;
  f.points = {Complex(2), Complex(2.05)};
  const NodeSet ns = generate_nodes(f, Real(4));
  ClassifyOptions opt;
  opt.cap_at_gap = false;
  try {
    classify_zeros({}, ns, 0.5, Region::make_disk({0, 0}, 3.5), opt);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DisksOverlap);
  }
  CHECK_NOTHROW(classify_zeros({}, ns, 0.5, Region::make_disk({0, 0}, 3.5)));
}

TEST_CASE("attraction set comparison") {
  auto c = compare_attraction_sets({1, 2}, {1, 2, 3}, 5);
  CHECK(c.relation == Inclusion::FirstInSecond);
  CHECK(c.k12 == 0);
  CHECK(c.equivalent());
  CHECK(compare_attraction_sets({1, 2}, {1, 2, 3}, 0).relation == Inclusion::FirstInSecond);
  CHECK(compare_attraction_sets({1, 2, 3}, {1, 2}, 0).relation == Inclusion::SecondInFirst);
  c = compare_attraction_sets({1, 2, 3}, {1, 2, 3}, 5);
  CHECK(c.relation == Inclusion::Equal);
  CHECK(c.k12 == 0);
  CHECK(c.k21 == 0);
  std::vector<std::size_t> evens, odds;
  for (std::size_t i = 0; i < 20; ++i) (i % 2 ? odds : evens).push_back(i);
  c = compare_attraction_sets(evens, odds, 5);
  CHECK(c.relation == Inclusion::Incomparable);
  CHECK(c.k12 == 10);
  CHECK(c.k21 == 10);
  // Exceptions within the budget still give an inclusion.
  c = compare_attraction_sets({1, 2, 3, 9}, {1, 2, 3, 4, 5, 6}, 2);
  CHECK(c.relation == Inclusion::FirstInSecond);
  CHECK(c.k12 == 1);
}

TEST_CASE("minimum modulus profiles") {
  PrecisionScope s(512);
  const auto ctx = default_context();
  FamilySpec f;
  f.kind = Family::CrossLattice;
  const NodeSet ns = generate_nodes(f, Real(24));
  const auto A = EntireFunction::sin_cross();
  const auto same = min_modulus_profile([&](const Complex& z) { return A(z); }, A, ns, 2, 1, 6, ctx);
  REQUIRE(!same.empty());
  for (const auto& a : same) {
    CHECK(a.probes > 0);
    CHECK(a.log10_min >= std::log10(a.r_inner + 1) - 1e-9);
  }

  const Complex t1(1);
  const auto quot = min_modulus_profile([&](const Complex& z) { return A(z) / (z - t1); }, A, ns, 2, 1, 6, ctx);
  for (const auto& a : quot) CHECK(a.log10_min > std::log10(0.25));

  // Orthogonal sequence on powers of two: F = A * sum 1/(A'(t)(z - t)) = 1 for a finite product.
  const NodeSet g = dyadic(40);
  const auto G = EntireFunction::canonical_genus0(g);
  const auto decay = min_modulus_profile([](const Complex&) { return Complex(1); }, G, g, 2, 1, std::ldexp(1.0, 30),
                                         ctx);
  CHECK(decay.back().log10_min < -8);
}

TEST_CASE("cell budget") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  FindOptions opt;
  opt.max_cells = 8;
  try {
    find_zeros(of(EntireFunction::sin_cross()), Rect{-10.3, 10.2, -10.1, 10.4}, ctx, opt);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("property: polynomial zeros match the oracle and conserve the winding") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const int degree = 1 + trial % 8;
    const auto roots = oracle::separated_roots(rng, degree, 0.1);
    std::vector<std::complex<double>> ref;
    std::vector<Complex> c;
    {
      PrecisionScope wide(1024);
      std::vector<Complex> rs;
      for (auto r : roots) rs.push_back(Complex(r));
      c = oracle::poly_from_roots(rs);
      for (const auto& z : oracle::durand_kerner(c)) ref.push_back(z.to_std());
    }
    PrecisionScope s(256);
    const auto ctx = make_context(256, 1e-30);
    const Rect box{-6.01, 6.03, -6.02, 6.04};
    const auto r = find_zeros_ex(polynomial(c), box, ctx);
    int total = 0;
    for (const auto& z : r.zeros) total += z.multiplicity;
    CAPTURE(trial);
    CHECK(total == r.total_winding);
    CHECK(total == winding_number(polynomial(c), box, ctx));
    CHECK(oracle::match_distance(locations(r.zeros), ref) < 1e-10);
  }
}

TEST_CASE("property: classification partitions the zeros") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  FamilySpec f;
  f.kind = Family::CrossLattice;
  NodeSet ns = generate_nodes(f, Real(24));
  EntireFunction A = EntireFunction::sin_cross();
  MeasureSpec m;
  m.rule = MeasureRule::PolyExp;
  m.M = Real(1);
  m.c = Real(2) * pi();
  Measure mu = attach_measure(ns, m, &A, ctx);
  const auto sp = make_space(ns, mu, A);
  for (std::uint64_t seed : {1u, 2u}) {
    const auto el = make_element(random_gaussian_coeffs(ns.size(), seed), sp);
    const auto zs = find_zeros(of(el), Rect{-4.3, 4.2, -4.1, 4.4}, ctx);
    const auto rep = classify_zeros(zs, ns, 2, Region::make_disk({0, 0}, 4));
    std::size_t assigned = 0;
    for (const auto& v : rep.node_zeros) assigned += v.size();
    CHECK(assigned + rep.strays.size() + rep.ignored.size() == zs.size());
    std::vector<int> seen(zs.size(), 0);
    for (const auto& v : rep.node_zeros)
      for (auto i : v) ++seen[i];
    for (auto i : rep.strays) ++seen[i];
    for (auto i : rep.ignored) ++seen[i];
    for (int x : seen) CHECK(x == 1);
  }
}

TEST_CASE("property: determinism and stability under a 1% boundary shift") {
  PrecisionScope s(256);
  const auto ctx = make_context(256, 1e-30);
  const auto c = oracle::poly_from_roots({Complex(0.5, 0.25), Complex(-1.25, 0.75), Complex(2, -1.5), Complex(-0.3, -2.1)});
  const Rect box{-3, 3, -3, 3};
  const auto a = find_zeros(polynomial(c), box, ctx);
  const auto b = find_zeros(polynomial(c), box, ctx);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].location == b[i].location);
    CHECK(a[i].residual == b[i].residual);
  }
  const auto shifted = find_zeros(polynomial(c), Rect{-2.94, 3.06, -2.97, 3.03}, ctx);
  CHECK(oracle::match_distance(locations(a), locations(shifted)) < 1e-25);
}
