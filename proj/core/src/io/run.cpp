#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdlab/io/io.hpp"
#include "cdlab/kernel/error.hpp"

#ifndef CDLAB_VERSION
#define CDLAB_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace cdlab {

const char* tool_version() noexcept { return "cdlab " CDLAB_VERSION; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path);
  out << bytes;
  if (!out) throw Error(ErrorKind::Config, "write failed: " + path);
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool localizes(ExperimentKind k) {
  return k == ExperimentKind::StrongLocalization || k == ExperimentKind::Type2 || k == ExperimentKind::Ordering;
}

double disk_exponent(const ExperimentConfig& cfg, const NodeSet& ns) { return cfg.M > 0 ? cfg.M : ns.sep_N + 2; }

std::string zeros_name(std::size_t k) { return k == 0 ? "zeros.csv" : "zeros_trial" + std::to_string(k) + ".csv"; }

// The title carries only what replot can recover from the manifest.
SvgStyle style_for(const ExperimentConfig& cfg) {
  SvgStyle st;
  st.title = cfg.name.empty() ? std::string(to_string(cfg.kind)) : cfg.name;
  return st;
}

}  // namespace

RunOutcome run_config_file(const std::string& config_path, const std::string& out_dir, const Overrides& ov) {
  const std::string canonical = canonical_config(read_file(config_path), ov);
  const ExperimentConfig cfg = parse_config(canonical);
  RunOutcome out;
  RunRecord& rec = out.record;
  rec.run_id = config_hash(canonical);
  rec.config = canonical;
  rec.tool_version = tool_version();
  rec.started = utc_now();

  ExperimentResult res = run_experiment(cfg);
  for (auto& v : res.verdicts) v.config_hash = rec.run_id;
  rec.verdicts = res.verdicts;

  const fs::path dir = fs::path(out_dir) / rec.run_id;
  fs::create_directories(dir);
  out.run_dir = dir.string();

  write_file((dir / "verdict.json").string(), verdict_document(rec.run_id, res));
  rec.artifacts.push_back("verdict.json");

  const NodeSet& ns = res.nodes;
  if (res.trials.empty()) {
    LocalizationReport empty;
    write_file((dir / "zeros.csv").string(), zeros_csv(empty, ns, cfg.digits));
    rec.artifacts.push_back("zeros.csv");
    write_file((dir / "plot.svg").string(), render_svg(empty, NodeSet{}, style_for(cfg)));
  } else {
    for (std::size_t k = 0; k < res.trials.size(); ++k) {
      write_file((dir / zeros_name(k)).string(), zeros_csv(res.trials[k].report, ns, cfg.digits));
      rec.artifacts.push_back(zeros_name(k));
    }
    write_file((dir / "plot.svg").string(),
               render_svg(res.trials.front().report, ns, style_for(cfg)));
  }
  rec.artifacts.push_back("plot.svg");
  rec.artifacts.push_back("manifest.json");
  rec.finished = utc_now();
  write_file((dir / "manifest.json").string(), to_json(rec));
  out.status = res.overall();
  out.exit_code = exit_code(out.status);
  return out;
}

void replot(const std::string& run_dir, const SvgStyle& style) {
  const fs::path dir(run_dir);
  const RunRecord rec = run_record_from_json(read_file((dir / "manifest.json").string()));
  const ExperimentConfig cfg = parse_config(rec.config);
  SvgStyle st = style;
  if (st.title.empty()) st.title = style_for(cfg).title;
  if (!localizes(cfg.kind) || !fs::exists(dir / "zeros.csv")) {
    write_file((dir / "plot.svg").string(), render_svg(LocalizationReport{}, NodeSet{}, st));
    return;
  }
  PrecisionScope scope(cfg.precision.bits);
  const NodeSet ns = generate_nodes(cfg.space.nodes, cfg.space.radius);
  const auto zeros = read_zeros_csv(read_file((dir / "zeros.csv").string()));
  const LocalizationReport rep = classify_zeros(zeros, ns, disk_exponent(cfg, ns), cfg.region);
  write_file((dir / "plot.svg").string(), render_svg(rep, ns, st));
}

std::vector<RunSummary> list_runs(const std::string& out_dir) {
  std::vector<RunSummary> out;
  if (!fs::is_directory(out_dir)) throw Error(ErrorKind::Config, "not a directory: " + out_dir);
  for (const auto& e : fs::directory_iterator(out_dir)) {
    const fs::path m = e.path() / "manifest.json";
    if (!e.is_directory() || !fs::exists(m)) continue;
    RunSummary s;
    try {
      const RunRecord rec = run_record_from_json(read_file(m.string()));
      s.run_id = rec.run_id;
      s.finished = rec.finished;
      const ExperimentConfig cfg = parse_config(rec.config);
      s.name = cfg.name;
      s.kind = to_string(cfg.kind);
      Status st = Status::Pass;
      for (const auto& v : rec.verdicts) {
        if (v.status == Status::Fail) st = Status::Fail;
        else if (v.status == Status::Inconclusive && st == Status::Pass) st = Status::Inconclusive;
      }
      s.status = to_string(st);
    } catch (const Error& err) {
      s.run_id = e.path().filename().string();
      s.status = std::string("unreadable: ") + err.what();
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const RunSummary& a, const RunSummary& b) { return a.run_id < b.run_id; });
  return out;
}

}  // namespace cdlab
