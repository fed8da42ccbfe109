#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/experiments/experiments.hpp"

namespace cdlab {

/// Values given on the command line that replace config fields.
struct Overrides {
  std::optional<long> bits;
  std::optional<double> budget;
};

/// Parses a JSON config (schema 1). Real-valued fields accept numbers or
/// expression strings such as "pi/4". Throws Error(Config) on schema problems.
ExperimentConfig parse_config(const std::string& json_text);

/// Config text with overrides applied, re-serialized with sorted keys and no
/// whitespace. Equal configs give equal bytes.
std::string canonical_config(const std::string& json_text, const Overrides& ov = {});

/// FNV-1a 64 of the canonical bytes, as 16 hex digits.
std::string config_hash(const std::string& canonical);

struct RunRecord {
  std::string run_id;
  std::string config;  // canonical JSON text
  std::vector<Verdict> verdicts;
  std::vector<std::string> artifacts;
  std::string started, finished;
  std::string tool_version;
  bool operator==(const RunRecord& o) const = default;
};

std::string to_json(const RunRecord& r);
RunRecord run_record_from_json(const std::string& text);

std::string verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const std::string& text);

/// verdict.json: run id, overall status and every verdict. Carries no timestamps.
std::string verdict_document(const std::string& run_id, const ExperimentResult& res);

/// Zero list of one trial. Columns: re, im, multiplicity, residual,
/// nearest_node, dist_to_node, assigned (node index or "stray").
/// digits <= 0 prints the full working precision of each value.
std::string zeros_csv(const LocalizationReport& rep, const NodeSet& ns, int digits);

/// Zeros read back from a CSV written by zeros_csv.
std::vector<ZeroRecord> read_zeros_csv(const std::string& text);

struct SvgStyle {
  int size = 720;        // canvas side in pixels
  double exaggeration = 0;  // disk radius factor; 0 picks one so the largest disk spans ~12 px
  bool annotate_strays = true;
  std::string title;
};

/// Zero scatter: nodes as crosses, disks as circles, zeros coloured by assignment.
/// The same inputs always produce the same bytes.
std::string render_svg(const LocalizationReport& rep, const NodeSet& ns, const SvgStyle& style = {});

/// Exit code of a set of verdicts: 0 pass, 1 any fail, 2 inconclusive.
int exit_code(Status overall);

/// Machine-readable error document, printed on exit code 3.
std::string error_json(const std::string& kind, const std::string& message);

struct RunOutcome {
  int exit_code = 3;
  std::string run_dir;
  RunRecord record;
  Status status = Status::Inconclusive;
};

/// Runs a config file into out_dir/run_id/ and writes manifest.json,
/// verdict.json, zeros.csv (zeros_trial<k>.csv for later trials) and plot.svg.
RunOutcome run_config_file(const std::string& config_path, const std::string& out_dir, const Overrides& ov = {});

/// Re-renders plot.svg of a run directory from its manifest and zeros.csv.
void replot(const std::string& run_dir, const SvgStyle& style = {});

struct RunSummary {
  std::string run_id, name, kind, status, finished;
};

/// Runs under out_dir that have a manifest, sorted by run id.
std::vector<RunSummary> list_runs(const std::string& out_dir);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

const char* tool_version() noexcept;

}  // namespace cdlab
