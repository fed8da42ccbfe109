#include <algorithm>
#include <cmath>

#include "cdlab/experiments/experiments.hpp"
#include "cdlab/io/io.hpp"
#include "cdlab/kernel/error.hpp"
#include "doctest.h"

using namespace cdlab;

namespace {

WeightSpec exp_weight(double beta) {
  WeightSpec w;
  w.kind = WeightKind::Exp;
  w.beta = beta;
  return w;
}

WeightSpec quadratic() {
  WeightSpec w;
  w.kind = WeightKind::Quadratic;
  return w;
}

// Cross lattice with sin_cross and weights |t| e^{-2 pi |t|}; region |z| <= 4.
std::string lattice_config(const std::string& kind, const std::string& coefficients, const std::string& extra = "",
                           int region = 4) {
  return R"({"schema": 1, "kind": ")" + kind + R"(",
    "space": {"nodes": {"family": "cross_lattice"}, "radius": 24,
              "measure": {"rule": "poly_exp", "M": 1, "c": "2*pi"}, "A": {"form": "sin_cross"}},
    "region": {"shape": "disk", "radius": )" + std::to_string(region) + R"(}, "precision": {"bits": 256},
    "coefficients": )" + coefficients + extra + "}";
}

std::string weight_config(const std::string& nodes, const std::string& measure, const std::string& A = "") {
  return R"({"schema": 1, "kind": "weight_decay", "space": {"nodes": )" + nodes + R"(, "radius": 4096, "measure": )" +
         measure + R"(, "A": {"form": ")" + (A.empty() ? "canonical_genus0" : A) + R"("}}})";
}

Status weight_status(const std::string& nodes, const std::string& measure, const std::string& A = "") {
  return run_weight_decay(parse_config(weight_config(nodes, measure, A))).verdicts.at(0).status;
}

}  // namespace

TEST_CASE("Legendre transforms") {
  CHECK(std::abs(legendre_transform(exp_weight(1), std::exp(1.0))) < 1e-15);
  CHECK(legendre_numeric(exp_weight(1), std::exp(1.0)) == doctest::Approx(0).epsilon(1e-12));
  CHECK(legendre_transform(quadratic(), 3) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(legendre_numeric(quadratic(), 3) == doctest::Approx(4.5).epsilon(1e-12));
  const double e2 = std::exp(2.0);
  CHECK(legendre_closed_form(exp_weight(2), 2 * e2) == doctest::Approx(e2).epsilon(1e-15));
  CHECK(legendre_numeric(exp_weight(2), 2 * e2) == doctest::Approx(e2).epsilon(1e-12));
  // Below beta the supremum sits at t = 0.
  CHECK(legendre_transform(exp_weight(2), 1) == doctest::Approx(-1).epsilon(1e-15));
}

TEST_CASE("Legendre numeric transform rejects a non-convex sampled weight") {
  WeightSpec w;
  w.kind = WeightKind::Sampled;
  w.t = {0, 1, 2, 3, 4};
  w.w = {0, 5, 5.1, 5.2, 40};
  try {
    legendre_numeric(w, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConvex);
  }
}

TEST_CASE("technical condition") {
  for (const auto& w : {exp_weight(1), exp_weight(2), quadratic()}) {
    CAPTURE(w.describe());
    const auto r = check_tech_condition(w);
    CHECK(r.verdict.status == Status::Pass);
    CHECK(std::isfinite(r.best_c));
    CHECK(r.x.size() == r.c.size());
  }
}

TEST_CASE("Legendre experiment") {
  const auto res = run_experiment(parse_config(read_file(CDLAB_FIXTURES "/legendre_exp.json")));
  CHECK(res.overall() == Status::Pass);
  CHECK(res.verdicts.size() == 6);
}

TEST_CASE("weight decay") {
  const auto res = run_weight_decay(parse_config(read_file(CDLAB_FIXTURES "/weight_decay_minimal.json")));
  CHECK(res.verdicts.at(0).status == Status::Pass);
  CHECK(weight_status(R"({"family": "geometric", "ratio": 2})", R"({"rule": "poly_exp", "M": -3, "c": 0})") ==
        Status::Fail);
  CHECK(weight_status(R"({"family": "power", "alpha": 3})", R"({"rule": "derivative_inverse_power", "N": 12})") ==
        Status::Pass);
  CHECK(weight_status(R"({"family": "cross_lattice"})", R"({"rule": "derivative_power", "N": 1})", "sin_cross") ==
        Status::Pass);
}

TEST_CASE("weight decay for both parts of the two-lattice example") {
  const auto cfg = parse_config(read_file(CDLAB_FIXTURES "/type2_cross_lattices.json"));
  const auto res = run_weight_decay(cfg);
  const auto& v = res.verdicts.at(0);
  CHECK(v.status == Status::Pass);
  CHECK(v.ledger.get("group0.M20") != nullptr);
  CHECK(v.ledger.get("group1.M20") != nullptr);
}

TEST_CASE("strong localization of a basis element") {
  const auto cfg = parse_config(lattice_config("strong_localization", R"({"kind": "basis", "index": 1})"));
  const auto res = run_strong_localization(cfg);
  REQUIRE(res.verdicts.size() == 1);
  CHECK(res.verdicts[0].status == Status::Pass);
  REQUIRE(res.trials.size() == 1);
  const auto& rep = res.trials[0].report;
  // F = mu^{1/2} A/(z - t_1) vanishes on every other node and nowhere else.
  CHECK(rep.strays.empty());
  CHECK(rep.node_status[1] == NodeStatus::Empty);
  const auto& S = res.trials[0].attraction_set;
  CHECK(std::find(S.begin(), S.end(), 1) == S.end());
  CHECK(S.size() + 1 == rep.scanned_nodes);
  CHECK(rep.exceptional_count == 0);
}

TEST_CASE("zero element is inconclusive") {
  const auto cfg = parse_config(
      lattice_config("strong_localization", R"({"kind": "supported_on", "groups": [7], "inner": {"kind": "random_gaussian"}})"));
  CHECK(run_strong_localization(cfg).verdicts.at(0).status == Status::Inconclusive);
}

TEST_CASE("type2 with an empty T2 delegates to strong localization") {
  const std::string text = R"({"schema": 1, "kind": "type2",
    "space": {"nodes": {"family": "cross_lattice"}, "radius": 24,
              "measure": {"rule": "poly_exp", "M": 1, "c": "2*pi"}},
    "partition": {"t1_group": 0, "t2_group": 1, "A1": {"form": "sin_cross"}, "A2": {"form": "sin_cross"}},
    "region": {"shape": "disk", "radius": 3}, "precision": {"bits": 256}})";
  const auto res = run_type2(parse_config(text));
  REQUIRE(res.verdicts.size() == 1);
  CHECK(res.verdicts[0].name == "strong_localization");
  CHECK(res.verdicts[0].status == Status::Pass);
  const auto* d = res.verdicts[0].ledger.get("delegated");
  REQUIRE(d != nullptr);
  CHECK(std::get<std::string>(*d) == "strong_localization");
}

TEST_CASE("ordering over given sets") {
  auto r = ordering_from_sets({{1, 2, 3}}, {"a"}, 5);
  CHECK(r.verdict.status == Status::Pass);
  CHECK(r.chain_length == 1);

  std::vector<std::size_t> evens, odds, all;
  for (std::size_t i = 0; i < 40; ++i) {
    (i % 2 ? odds : evens).push_back(i);
    all.push_back(i);
  }
  r = ordering_from_sets({evens, odds}, {"evens", "odds"}, 5);
  CHECK(r.verdict.status == Status::Fail);
  CHECK(r.verdict.reason.find("incomparable") != std::string::npos);

  // Two T-like sets and two T1-like sets form a chain of two classes.
  std::vector<std::size_t> all_but_one(all.begin() + 1, all.end());
  std::vector<std::size_t> odds_plus{0, 1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39};
  r = ordering_from_sets({all, odds, all_but_one, odds_plus}, {"g0", "s0", "g1", "s1"}, 5);
  CHECK(r.verdict.status == Status::Pass);
  REQUIRE(r.chain_length == 2);
  CHECK(r.classes[0] == std::vector<std::size_t>{1, 3});
  CHECK(r.classes[1] == std::vector<std::size_t>{0, 2});
}

TEST_CASE("moment orthogonality") {
  const std::string base = R"({"schema": 1, "kind": "moment_orthogonality",
    "space": {"nodes": {"family": "cross_lattice"}, "radius": 16,
              "measure": {"rule": "derivative_power", "N": 0}, "A": {"form": "sin_cross"}}, "k_max": 0,
    "coefficients": {"kind": ")";
  auto res = run_moment_orthogonality(parse_config(base + R"(orthogonal"}})"));
  const auto& v = res.verdicts.at(0);
  CHECK(v.status == Status::Pass);
  const auto& m = std::get<std::vector<double>>(*v.ledger.get("abs_moment"));
  REQUIRE(m.size() == 1);
  CHECK(m[0] < 1e-12);

  res = run_moment_orthogonality(parse_config(base + R"(ones"}})"));
  CHECK(res.verdicts.at(0).status == Status::Fail);

  res = run_moment_orthogonality(parse_config(read_file(CDLAB_FIXTURES "/moment_dyadic.json")));
  CHECK(res.verdicts.at(0).status == Status::Pass);
}

TEST_CASE("Hamburger-Krein experiment") {
  const auto res = run_hamburger_krein(parse_config(read_file(CDLAB_FIXTURES "/hamburger_krein_cross.json")));
  const auto& v = res.verdicts.at(0);
  CHECK(v.status == Status::Pass);
  const auto& r = std::get<std::vector<double>>(*v.ledger.get("residuals"));
  REQUIRE(r.size() == 2);
  CHECK(r[0] < 1e-4);
  CHECK(r[1] * 1e3 <= r[0]);
}

TEST_CASE("configuration validation") {
  // Region must lie inside D(0, radius/4).
  CHECK_THROWS_AS(parse_config(lattice_config("strong_localization", R"({"kind": "random_gaussian"})", "", 7)), Error);
  CHECK_NOTHROW(parse_config(lattice_config("strong_localization", R"({"kind": "random_gaussian"})", "", 6)));
  auto cfg = parse_config(lattice_config("strong_localization", R"({"kind": "random_gaussian"})"));
  cfg.trials = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = parse_config(lattice_config("strong_localization", R"({"kind": "random_gaussian"})"));
  cfg.region_set = false;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  CHECK(default_budget(100) == doctest::Approx(6));
}

TEST_CASE("property: experiments are deterministic") {
  const auto cfg = parse_config(lattice_config("strong_localization", R"({"kind": "random_gaussian"})",
                                               R"(, "seeds": [5])"));
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  CHECK(a.verdicts == b.verdicts);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].attraction_set == b.trials[i].attraction_set);
    REQUIRE(a.trials[i].report.zeros.size() == b.trials[i].report.zeros.size());
    for (std::size_t j = 0; j < a.trials[i].report.zeros.size(); ++j)
      CHECK(a.trials[i].report.zeros[j].location == b.trials[i].report.zeros[j].location);
  }
}
