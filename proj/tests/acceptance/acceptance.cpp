// Runs the acceptance suite and prints one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria. Criterion numbers given as
// arguments restrict the run to those criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cdlab/experiments/experiments.hpp"
#include "cdlab/io/io.hpp"
#include "cdlab/kernel/error.hpp"
#include "cdlab/space/space.hpp"
#include "cdlab/zerofind/zerofind.hpp"
#include "oracles.hpp"

using namespace cdlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(CDLAB_FIXTURES) + "/" + name; }

ExperimentConfig load(const std::string& name, long bits = 0) {
  Overrides ov;
  if (bits > 0) ov.bits = bits;
  return parse_config(canonical_config(read_file(fixture(name)), ov));
}

double number(const Verdict& v, const std::string& key) { return v.ledger.number(key); }

// Results shared between criteria.
ExperimentResult cubes_result, type2_result;
bool cubes_ok = false, type2_ok = false;

Outcome zero_finder_oracle() {
  std::mt19937_64 rng(20240611);
  double worst = 0;
  int bad_winding = 0;
  for (int trial = 0; trial < 50; ++trial) {
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
    const EntireFunction p = EntireFunction::polynomial(c);
    const Evaluable f = [p](const Complex& z) { return p.jet(z); };
    const Rect box{-6.01, 6.03, -6.02, 6.04};
    const auto r = find_zeros_ex(f, box, ctx);
    std::vector<std::complex<double>> got;
    int total = 0;
    for (const auto& z : r.zeros) {
      got.push_back(z.location.to_std());
      total += z.multiplicity;
    }
    if (total != winding_number(f, box, ctx) || total != degree) ++bad_winding;
    worst = std::max(worst, oracle::match_distance(got, ref));
  }
  std::ostringstream d;
  d << "max root distance " << worst << ", winding mismatches " << bad_winding;
  return {worst < 1e-10 && bad_winding == 0, d.str()};
}

Outcome hamburger_krein() {
  const auto res = run_experiment(load("hamburger_krein_cross.json"));
  const auto& v = res.verdicts.at(0);
  const auto& r = std::get<std::vector<double>>(*v.ledger.get("residuals"));
  std::ostringstream d;
  d << "residual R=12 " << r.at(0) << ", R=24 " << r.at(1);
  return {r.at(0) < 1e-4 && r.at(1) * 1e3 <= r.at(0), d.str()};
}

Outcome moments() {
  const auto res = run_experiment(load("moment_dyadic.json"));
  const auto& v = res.verdicts.at(0);
  const auto& m = std::get<std::vector<double>>(*v.ledger.get("abs_moment"));
  const bool within = std::get<bool>(*v.ledger.get("within_tail"));
  const bool agree = std::get<bool>(*v.ledger.get("tails_agree"));
  std::ostringstream d;
  d << m.size() << " moments, within tail " << within << ", tails agree " << agree;
  return {v.status == Status::Pass && m.size() == 11 && within && agree, d.str()};
}

Outcome strong_localization() {
  cubes_result = run_experiment(load("strong_cubes.json", 512));
  const auto& v = cubes_result.verdicts.at(0);
  const double budget = number(v, "budget");
  double onset = 0;
  for (std::size_t i = 0; i < cubes_result.trials.size(); ++i)
    onset = std::max(onset, number(v, "trial" + std::to_string(i) + ".onset"));
  cubes_ok = v.status == Status::Pass && cubes_result.trials.size() == 5;
  std::ostringstream d;
  d << to_string(v.status) << ", " << cubes_result.trials.size() << " trials, budget " << budget << ", max onset "
    << onset;
  return {cubes_ok && budget <= 6 && onset <= 3, d.str()};
}

Outcome type2() {
  long bits = 512;
  type2_result = run_experiment(load("type2_cross_lattices.json", bits));
  if (type2_result.overall() == Status::Inconclusive) {
    bits = 2048;
    type2_result = run_experiment(load("type2_cross_lattices.json", bits));
  }
  type2_ok = type2_result.overall() == Status::Pass;
  std::ostringstream d;
  for (const auto& v : type2_result.verdicts) d << v.name << " " << to_string(v.status) << "; ";
  d << "at " << bits << " bits";
  return {type2_ok, d.str()};
}

OrderingReport ordering_of(const ExperimentResult& res) {
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::string> labels;
  for (const auto& t : res.trials) {
    sets.push_back(t.attraction_set);
    labels.push_back(t.label);
  }
  return ordering_from_sets(sets, labels, number(res.verdicts.at(0), "budget"));
}

Outcome ordering() {
  if (!cubes_ok || !type2_ok) return {false, "needs passing runs from criteria 4 and 5"};
  const auto a = ordering_of(cubes_result);
  const auto b = ordering_of(type2_result);
  std::ostringstream d;
  d << "cubic nodes: " << to_string(a.verdict.status) << ", chain " << a.chain_length << "; two lattices: "
    << to_string(b.verdict.status) << ", chain " << b.chain_length;
  return {a.verdict.status == Status::Pass && b.verdict.status == Status::Pass && b.chain_length == 2, d.str()};
}

Outcome legendre() {
  double worst = 0;
  for (double beta : {1.0, 2.0}) {
    WeightSpec w;
    w.kind = WeightKind::Exp;
    w.beta = beta;
    for (int i = 0; i < 100; ++i) {
      const double x = beta * std::pow(10.0, 6.0 * i / 99);
      const double exact = legendre_closed_form(w, x);
      worst = std::max(worst, std::abs(legendre_numeric(w, x) - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  bool tech = true;
  for (const auto kind : {WeightKind::Exp, WeightKind::Quadratic}) {
    WeightSpec w;
    w.kind = kind;
    tech = tech && check_tech_condition(w).verdict.status == Status::Pass;
  }
  std::ostringstream d;
  d << "max relative error " << worst << ", technical condition " << (tech ? "holds" : "fails");
  return {worst <= 1e-12 && tech, d.str()};
}

std::string decay_config(const std::string& nodes, double radius, const std::string& measure, const std::string& A) {
  std::ostringstream o;
  o.precision(17);
  o << R"({"schema": 1, "kind": "weight_decay", "space": {"nodes": )" << nodes << R"(, "radius": )" << radius
    << R"(, "measure": )" << measure << R"(, "A": )" << A << "}}";
  return o.str();
}

Outcome weight_decay() {
  const std::string genus0 = R"({"form": "canonical_genus0"})";
  struct Case {
    std::string name, config;
    Status want;
  };
  const std::vector<Case> cases{
      {"dyadic, derivative N=1",
       decay_config(R"({"family": "geometric", "ratio": 2})", std::ldexp(1.0, 40), R"({"rule": "derivative_power", "N": 1})",
                    genus0),
       Status::Pass},
      {"cubes, |t|^-12 |A'|^-2",
       decay_config(R"({"family": "power", "alpha": 3})", 4096, R"({"rule": "derivative_inverse_power", "N": 12})",
                    genus0),
       Status::Pass},
      {"signed squares, derivative N=1",
       decay_config(R"({"family": "signed_power", "alpha": 2})", 1024, R"({"rule": "derivative_power", "N": 1})",
                    genus0),
       Status::Pass},
      {"cross lattice, sin_cross derivative N=1",
       decay_config(R"({"family": "cross_lattice"})", 24, R"({"rule": "derivative_power", "N": 1})",
                    R"({"form": "sin_cross"})"),
       Status::Pass},
      {"signed squares and i k^3, stretched exp",
       decay_config(R"({"family": "union", "operands": [{"family": "signed_power", "alpha": 2},
                      {"family": "power", "alpha": 3, "rotation": "pi/2"}]})",
                    1024, R"({"rule": "stretched_exp", "gamma": 1})", genus0),
       Status::Pass},
      {"signed squares and i k^(1/2), exp(-|t|^2)",
       decay_config(R"({"family": "union", "operands": [{"family": "signed_power", "alpha": 2},
                      {"family": "power", "alpha": 0.5, "rotation": "pi/2"}]})",
                    16, R"({"rule": "stretched_exp", "gamma": 2})", genus0),
       Status::Pass},
      {"two cross lattices", read_file(fixture("type2_cross_lattices.json")), Status::Pass},
      {"square lattice, sigma derivative N=1",
       decay_config(R"({"family": "square_lattice"})", 16, R"({"rule": "derivative_power", "N": 1})",
                    R"({"form": "weierstrass_sigma"})"),
       Status::Pass},
      {"shifted square lattice, exp(-|t|^3)",
       decay_config(R"({"family": "shifted_square_lattice", "shift": [0.5, 0]})", 16,
                    R"({"rule": "stretched_exp", "gamma": 3})", genus0),
       Status::Pass},
      {"dyadic, |t|^-3",
       decay_config(R"({"family": "geometric", "ratio": 2})", 4096, R"({"rule": "poly_exp", "M": -3, "c": 0})",
                    genus0),
       Status::Fail},
  };
  std::ostringstream d;
  bool ok = true;
  for (const auto& c : cases) {
    Status got = Status::Inconclusive;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      got = run_weight_decay(parse_config(c.config)).verdicts.at(0).status;
    } catch (const Error& e) {
      d << c.name << ": " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > 2) d << c.name << " took " << secs << " s; ";
    if (got != c.want) {
      ok = false;
      d << c.name << ": " << to_string(got) << "; ";
    }
  }
  if (ok) d << cases.size() << " weight rules as expected";
  return {ok, d.str()};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "cdlab_acceptance";
  fs::remove_all(root);
  std::size_t compared = 0, differing = 0;
  for (const char* name : {"legendre_exp.json", "weight_decay_minimal.json", "moment_dyadic.json",
                           "hamburger_krein_cross.json", "strong_cubes.json", "type2_cross_lattices.json"}) {
    const auto a = run_config_file(fixture(name), (root / "a").string());
    const auto b = run_config_file(fixture(name), (root / "b").string());
    for (const auto& art : a.record.artifacts) {
      if (art != "verdict.json" && art.rfind("zeros", 0) != 0) continue;
      ++compared;
      if (read_file(a.run_dir + "/" + art) != read_file(b.run_dir + "/" + art)) ++differing;
    }
  }
  fs::remove_all(root);
  std::ostringstream d;
  d << compared << " files compared, " << differing << " differ";
  return {compared > 0 && differing == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<bool> selected(9, argc == 1);
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k >= 1 && k <= 9) selected[static_cast<std::size_t>(k - 1)] = true;
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"zero finder matches the polynomial oracle", zero_finder_oracle},
      {"interpolation identity for sin_cross", hamburger_krein},
      {"moment orthogonality on dyadic nodes", moments},
      {"strong localization on cubic nodes", strong_localization},
      {"type-2 localization on two cross lattices", type2},
      {"attraction sets form a chain", ordering},
      {"Legendre transform and technical condition", legendre},
      {"superpolynomial weight decay", weight_decay},
      {"repeated runs are byte identical", determinism},
  };
  int failed = 0, ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %zu. %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed;
}
