#include <cmath>
#include <sstream>

#include "cdlab/io/io.hpp"
#include "cdlab/kernel/error.hpp"
#include "json.hpp"

namespace cdlab {

namespace {

using nlohmann::json;

// JSON has no NaN or infinity; those travel as tagged strings.
json number_json(double x) {
  if (std::isfinite(x)) return x;
  return json{{"nonfinite", std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")}};
}

double number_from(const json& v) {
  if (v.is_object()) {
    const std::string s = v.at("nonfinite").get<std::string>();
    if (s == "nan") return std::nan("");
    return s == "inf" ? HUGE_VAL : -HUGE_VAL;
  }
  return v.get<double>();
}

bool is_tagged(const json& v) { return v.is_object() && v.contains("nonfinite"); }

json ledger_json(const Ledger& L) {
  json out = json::array();
  for (const auto& [k, v] : L.entries()) {
    json val = std::visit(
        [](const auto& x) -> json {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, double>) {
            return number_json(x);
          } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            json a = json::array();
            for (double d : x) a.push_back(number_json(d));
            return a;
          } else {
            return x;
          }
        },
        v);
    // Keep the variant alternative explicit so reloads are exact.
    const char* type = std::visit(
        [](const auto& x) -> const char* {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, bool>) return "bool";
          else if constexpr (std::is_same_v<T, std::int64_t>) return "int";
          else if constexpr (std::is_same_v<T, double>) return "real";
          else if constexpr (std::is_same_v<T, std::string>) return "text";
          else if constexpr (std::is_same_v<T, std::vector<double>>) return "reals";
          else return "ints";
        },
        v);
    out.push_back(json{{"key", k}, {"type", type}, {"value", std::move(val)}});
  }
  return out;
}

Ledger ledger_from(const json& a) {
  Ledger L;
  for (const auto& e : a) {
    const std::string key = e.at("key").get<std::string>();
    const std::string type = e.at("type").get<std::string>();
    const json& v = e.at("value");
    if (type == "bool") L.put(key, v.get<bool>());
    else if (type == "int") L.put(key, v.get<std::int64_t>());
    else if (type == "real") L.put(key, number_from(v));
    else if (type == "text") L.put(key, v.get<std::string>());
    else if (type == "ints") L.put(key, v.get<std::vector<std::int64_t>>());
    else if (type == "reals") {
      std::vector<double> xs;
      for (const auto& x : v) xs.push_back(is_tagged(x) ? number_from(x) : x.get<double>());
      L.put(key, std::move(xs));
    } else {
      throw Error(ErrorKind::Config, "ledger entry '" + key + "' has unknown type '" + type + "'");
    }
  }
  return L;
}

json verdict_obj(const Verdict& v) {
  return json{{"name", v.name},
              {"status", to_string(v.status)},
              {"reason", v.reason},
              {"config_hash", v.config_hash},
              {"ledger", ledger_json(v.ledger)}};
}

Verdict verdict_of(const json& j) {
  Verdict v;
  v.name = j.at("name").get<std::string>();
  v.status = status_from_string(j.at("status").get<std::string>());
  v.reason = j.at("reason").get<std::string>();
  v.config_hash = j.at("config_hash").get<std::string>();
  v.ledger = ledger_from(j.at("ledger"));
  return v;
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string verdict_to_json(const Verdict& v) { return verdict_obj(v).dump(2); }

Verdict verdict_from_json(const std::string& text) {
  return guarded("verdict", [&] { return verdict_of(json::parse(text)); });
}

std::string to_json(const RunRecord& r) {
  json vs = json::array();
  for (const auto& v : r.verdicts) vs.push_back(verdict_obj(v));
  json j{{"run_id", r.run_id},
         {"config", json::parse(r.config)},
         {"verdicts", vs},
         {"artifacts", r.artifacts},
         {"started", r.started},
         {"finished", r.finished},
         {"tool_version", r.tool_version}};
  return j.dump(2) + "\n";
}

RunRecord run_record_from_json(const std::string& text) {
  return guarded("manifest", [&] {
    const json j = json::parse(text);
    RunRecord r;
    r.run_id = j.at("run_id").get<std::string>();
    r.config = j.at("config").dump();
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_of(v));
    r.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    r.started = j.at("started").get<std::string>();
    r.finished = j.at("finished").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    return r;
  });
}

std::string verdict_document(const std::string& run_id, const ExperimentResult& res) {
  json vs = json::array();
  for (const auto& v : res.verdicts) vs.push_back(verdict_obj(v));
  json j{{"run_id", run_id}, {"status", to_string(res.overall())}, {"verdicts", vs}};
  return j.dump(2) + "\n";
}

int exit_code(Status overall) {
  switch (overall) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Inconclusive: return 2;
  }
  return 2;
}

std::string error_json(const std::string& kind, const std::string& message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}}.dump();
}

std::string zeros_csv(const LocalizationReport& rep, const NodeSet& ns, int digits) {
  std::ostringstream out;
  out << "re,im,multiplicity,residual,nearest_node,dist_to_node,assigned\n";
  for (std::size_t i = 0; i < rep.zeros.size(); ++i) {
    const ZeroRecord& z = rep.zeros[i];
    PrecisionScope scope(z.location.re.bits());
    out << z.location.re.to_string(digits) << ',' << z.location.im.to_string(digits) << ',' << z.multiplicity << ','
        << z.residual.to_string(6) << ',';
    if (ns.size() > 0) {
      const std::size_t k = ns.nearest(z.location.to_std());
      out << k << ',' << abs(z.location - ns.nodes[k]).to_string(17) << ',';
    } else {
      out << ",,";
    }
    const long a = i < rep.assigned.size() ? rep.assigned[i] : -1;
    if (a >= 0) out << a;
    else out << "stray";
    out << '\n';
  }
  return out.str();
}

std::vector<ZeroRecord> read_zeros_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line.rfind("re,im,multiplicity", 0) != 0) throw Error(ErrorKind::Config, "not a zero list");
  std::vector<ZeroRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() < 4) throw Error(ErrorKind::Config, "short zero-list row: " + line);
    // Enough bits for every printed digit.
    PrecisionScope scope(std::max<long>(64, static_cast<long>(f[0].size() * 3.33) + 16));
    ZeroRecord z;
    z.location = Complex(Real(f[0]), Real(f[1]));
    z.multiplicity = std::stoi(f[2]);
    z.residual = Real(f[3]);
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace cdlab
