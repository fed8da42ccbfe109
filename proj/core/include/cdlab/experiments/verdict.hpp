#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cdlab/nodes/nodes.hpp"
#include "cdlab/zerofind/zerofind.hpp"

namespace cdlab {

enum class Status { Pass, Fail, Inconclusive };
const char* to_string(Status s) noexcept;
Status status_from_string(const std::string& s);

using LedgerValue = std::variant<bool, std::int64_t, double, std::string, std::vector<double>, std::vector<std::int64_t>>;

/// Named numeric evidence, kept in insertion order.
class Ledger {
 public:
  void put(const std::string& key, LedgerValue v);
  void set(const std::string& key, bool v) { put(key, v); }
  void set(const std::string& key, double v) { put(key, v); }
  void set(const std::string& key, int v) { put(key, static_cast<std::int64_t>(v)); }
  void set(const std::string& key, long v) { put(key, static_cast<std::int64_t>(v)); }
  void set(const std::string& key, long long v) { put(key, static_cast<std::int64_t>(v)); }
  void set(const std::string& key, unsigned long v) { put(key, static_cast<std::int64_t>(v)); }
  void set(const std::string& key, unsigned long long v) { put(key, static_cast<std::int64_t>(v)); }
  void set(const std::string& key, const char* v) { put(key, std::string(v)); }
  void set(const std::string& key, std::string v) { put(key, std::move(v)); }
  void set(const std::string& key, std::vector<double> v) { put(key, std::move(v)); }
  void set(const std::string& key, std::vector<std::int64_t> v) { put(key, std::move(v)); }
  const LedgerValue* get(const std::string& key) const;
  double number(const std::string& key) const;  // NaN when absent or not numeric
  const std::vector<std::pair<std::string, LedgerValue>>& entries() const { return entries_; }
  /// Copies every entry of `other` under `prefix`.
  void merge(const std::string& prefix, const Ledger& other);
  bool operator==(const Ledger& o) const { return entries_ == o.entries_; }

 private:
  std::vector<std::pair<std::string, LedgerValue>> entries_;
};

struct Verdict {
  std::string name;  // check name, e.g. "strong_localization" or "type2.generic"
  Status status = Status::Inconclusive;
  std::string reason;
  Ledger ledger;
  std::string config_hash;
  bool operator==(const Verdict& o) const {
    return name == o.name && status == o.status && reason == o.reason && ledger == o.ledger &&
           config_hash == o.config_hash;
  }
};

/// Zeros of one trial with their classification.
struct TrialOutcome {
  std::string label;
  std::uint64_t seed = 0;
  long bits = 0;
  LocalizationReport report;
  std::vector<std::size_t> attraction_set;  // indices into the experiment's node set
};

struct ExperimentResult {
  std::vector<Verdict> verdicts;
  std::vector<TrialOutcome> trials;
  NodeSet nodes;  // node set the trial reports refer to
  Status overall() const;
};

}  // namespace cdlab
