#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cdlab/io/io.hpp"
#include "cdlab/kernel/error.hpp"

namespace {

constexpr int kExitError = 3;

int report_error(const std::string& kind, const std::string& message) {
  std::cout << cdlab::error_json(kind, message) << "\n";
  return kExitError;
}

// Runs a verb and maps every failure to exit code 3 with an error document.
template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const cdlab::Error& e) {
    return report_error(cdlab::to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
}

int do_run(const std::string& config, const std::string& out, const cdlab::Overrides& ov) {
  const cdlab::RunOutcome r = cdlab::run_config_file(config, out, ov);
  std::cout << "run " << r.record.run_id << " -> " << r.run_dir << "\n";
  for (const auto& v : r.record.verdicts)
    std::cout << "  " << v.name << ": " << cdlab::to_string(v.status) << "  " << v.reason << "\n";
  std::cout << "status " << cdlab::to_string(r.status) << "\n";
  return r.exit_code;
}

int do_validate(const std::string& config, const cdlab::Overrides& ov) {
  const std::string canonical = cdlab::canonical_config(cdlab::read_file(config), ov);
  const cdlab::ExperimentConfig cfg = cdlab::parse_config(canonical);
  std::cout << "{\"valid\":true,\"run_id\":\"" << cdlab::config_hash(canonical) << "\",\"kind\":\""
            << cdlab::to_string(cfg.kind) << "\"}\n";
  return 0;
}

int do_list(const std::string& out) {
  for (const auto& s : cdlab::list_runs(out))
    std::cout << s.run_id << "  " << s.status << "  " << s.kind << "  " << (s.name.empty() ? "-" : s.name) << "  "
              << s.finished << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero localization experiments for Cauchy-de Branges spaces"};
  app.set_version_flag("--version", std::string(cdlab::tool_version()));
  app.require_subcommand(1);

  std::string config, out_dir = "runs", run_dir;
  long bits = 0;
  double budget = -1;
  double exaggeration = 0;

  auto* run = app.add_subcommand("run", "run an experiment config into <out>/<run_id>/");
  run->add_option("config", config, "JSON config")->required();
  run->add_option("--out,-o", out_dir, "output directory")->capture_default_str();
  run->add_option("--bits", bits, "override precision.bits");
  run->add_option("--budget", budget, "override the exceptional-count budget");

  auto* plot = app.add_subcommand("plot", "re-render plot.svg of a run directory");
  plot->add_option("run_dir", run_dir, "run directory")->required();
  plot->add_option("--exaggeration", exaggeration, "disk radius factor (0 = automatic)");

  auto* list = app.add_subcommand("list", "list runs under an output directory");
  list->add_option("out_dir", out_dir, "output directory")->required();

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config, "JSON config")->required();
  validate->add_option("--bits", bits, "override precision.bits");
  validate->add_option("--budget", budget, "override the exceptional-count budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitError;
  }

  cdlab::Overrides ov;
  if (bits > 0) ov.bits = bits;
  if (budget >= 0) ov.budget = budget;

  if (*run) return guarded([&] { return do_run(config, out_dir, ov); });
  if (*validate) return guarded([&] { return do_validate(config, ov); });
  if (*list) return guarded([&] { return do_list(out_dir); });
  if (*plot)
    return guarded([&] {
      cdlab::SvgStyle st;
      st.exaggeration = exaggeration;
      cdlab::replot(run_dir, st);
      std::cout << run_dir << "/plot.svg\n";
      return 0;
    });
  return kExitError;
}
