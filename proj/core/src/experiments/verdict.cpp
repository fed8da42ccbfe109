#include "cdlab/experiments/verdict.hpp"

#include <cmath>
#include <limits>

#include "cdlab/kernel/error.hpp"

namespace cdlab {

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "inconclusive") return Status::Inconclusive;
  throw Error(ErrorKind::Config, "unknown status '" + s + "'");
}

void Ledger::put(const std::string& key, LedgerValue v) {
  for (auto& e : entries_) {
    if (e.first == key) {
      e.second = std::move(v);
      return;
    }
  }
  entries_.emplace_back(key, std::move(v));
}

const LedgerValue* Ledger::get(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.first == key) return &e.second;
  return nullptr;
}

double Ledger::number(const std::string& key) const {
  const LedgerValue* v = get(key);
  if (!v) return std::numeric_limits<double>::quiet_NaN();
  if (auto d = std::get_if<double>(v)) return *d;
  if (auto i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  if (auto b = std::get_if<bool>(v)) return *b ? 1 : 0;
  return std::numeric_limits<double>::quiet_NaN();
}

void Ledger::merge(const std::string& prefix, const Ledger& other) {
  for (const auto& e : other.entries_) put(prefix + e.first, e.second);
}

Status ExperimentResult::overall() const {
  bool inconclusive = false;
  for (const auto& v : verdicts) {
    if (v.status == Status::Fail) return Status::Fail;
    if (v.status == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive || verdicts.empty() ? Status::Inconclusive : Status::Pass;
}

}  // namespace cdlab
