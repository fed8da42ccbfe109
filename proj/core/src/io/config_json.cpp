#include <algorithm>
#include <cstdio>
#include <set>

#include "cdlab/io/io.hpp"
#include "cdlab/kernel/error.hpp"
#include "cdlab/kernel/expr.hpp"
#include "json.hpp"

namespace cdlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Config, (path.empty() ? std::string() : path + ": ") + msg);
}

// Object view that rejects keys nobody asked for.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }
  ~Obj() noexcept(false) {
    if (std::uncaught_exceptions() == 0) {
      for (auto it = j_.begin(); it != j_.end(); ++it)
        if (!seen_.count(it.key())) fail(sub(it.key()), "unknown key");
    }
  }
  bool has(const std::string& k) {
    seen_.insert(k);
    return j_.contains(k) && !j_.at(k).is_null();
  }
  const json& at(const std::string& k) {
    seen_.insert(k);
    if (!j_.contains(k)) fail(sub(k), "missing");
    return j_.at(k);
  }
  std::string sub(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Real real_of(const json& v, const std::string& path) {
  if (v.is_number()) return Real(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_real_expression(v.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  fail(path, "expected a number or an expression string");
}

double double_of(const json& v, const std::string& path) { return real_of(v, path).to_double(); }

long long_of(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

Complex complex_of(const json& v, const std::string& path) {
  if (v.is_array()) {
    if (v.size() != 2) fail(path, "complex values are [re, im]");
    return Complex(real_of(v[0], path + "[0]"), real_of(v[1], path + "[1]"));
  }
  return Complex(real_of(v, path));
}

std::vector<Complex> complex_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(complex_of(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::string string_of(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool bool_of(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

FamilySpec family_of(const json& j, const std::string& path) {
  Obj o(j, path);
  FamilySpec f;
  f.kind = family_from_string(string_of(o.at("family"), o.sub("family")));
  if (o.has("ratio")) f.ratio = real_of(o.at("ratio"), o.sub("ratio"));
  if (o.has("alpha")) f.alpha = real_of(o.at("alpha"), o.sub("alpha"));
  if (o.has("rotation")) f.rotation = real_of(o.at("rotation"), o.sub("rotation"));
  if (o.has("shift")) f.shift = complex_of(o.at("shift"), o.sub("shift"));
  if (o.has("include_origin")) f.include_origin = bool_of(o.at("include_origin"), o.sub("include_origin")) ? 1 : 0;
  if (o.has("points")) f.points = complex_list(o.at("points"), o.sub("points"));
  if (o.has("operands")) {
    const json& ops = o.at("operands");
    if (!ops.is_array()) fail(o.sub("operands"), "expected an array");
    for (std::size_t i = 0; i < ops.size(); ++i)
      f.operands.push_back(family_of(ops[i], o.sub("operands") + "[" + std::to_string(i) + "]"));
  }
  return f;
}

MeasureSpec measure_of(const json& j, const std::string& path) {
  Obj o(j, path);
  MeasureSpec m;
  m.rule = measure_rule_from_string(string_of(o.at("rule"), o.sub("rule")));
  if (o.has("N")) m.N = real_of(o.at("N"), o.sub("N"));
  if (o.has("gamma")) m.gamma = real_of(o.at("gamma"), o.sub("gamma"));
  if (o.has("M")) m.M = real_of(o.at("M"), o.sub("M"));
  if (o.has("c")) m.c = real_of(o.at("c"), o.sub("c"));
  if (o.has("parts")) {
    const json& ps = o.at("parts");
    if (!ps.is_array()) fail(o.sub("parts"), "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i)
      m.parts.push_back(measure_of(ps[i], o.sub("parts") + "[" + std::to_string(i) + "]"));
  }
  if (o.has("values")) {
    const json& vs = o.at("values");
    if (!vs.is_array()) fail(o.sub("values"), "expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i)
      m.values.push_back(real_of(vs[i], o.sub("values") + "[" + std::to_string(i) + "]"));
  }
  return m;
}

EntireSpec entire_of(const json& j, const std::string& path) {
  Obj o(j, path);
  EntireSpec e;
  e.form = string_of(o.at("form"), o.sub("form"));
  if (o.has("rotation")) e.rotation = real_of(o.at("rotation"), o.sub("rotation"));
  if (o.has("drop_origin")) e.drop_origin = bool_of(o.at("drop_origin"), o.sub("drop_origin"));
  if (o.has("shift")) e.shift = complex_of(o.at("shift"), o.sub("shift"));
  if (o.has("coeffs")) e.coeffs = complex_list(o.at("coeffs"), o.sub("coeffs"));
  if (o.has("nodes")) e.nodes = family_of(o.at("nodes"), o.sub("nodes"));
  if (o.has("product_radius")) e.product_radius = double_of(o.at("product_radius"), o.sub("product_radius"));
  if (o.has("factors")) {
    const json& fs = o.at("factors");
    if (!fs.is_array()) fail(o.sub("factors"), "expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i)
      e.factors.push_back(entire_of(fs[i], o.sub("factors") + "[" + std::to_string(i) + "]"));
  }
  return e;
}

Region region_of(const json& j, const std::string& path) {
  Obj o(j, path);
  const std::string shape = string_of(o.at("shape"), o.sub("shape"));
  if (shape == "disk") {
    const double r = double_of(o.at("radius"), o.sub("radius"));
    if (!(r > 0)) fail(o.sub("radius"), "must be positive");
    std::complex<double> c{0, 0};
    if (o.has("center")) c = complex_of(o.at("center"), o.sub("center")).to_std();
    return Region::make_disk(c, r);
  }
  if (shape == "rect") {
    Rect r{double_of(o.at("x0"), o.sub("x0")), double_of(o.at("x1"), o.sub("x1")),
           double_of(o.at("y0"), o.sub("y0")), double_of(o.at("y1"), o.sub("y1"))};
    if (!(r.x1 > r.x0 && r.y1 > r.y0)) fail(path, "empty rectangle");
    return Region::make_rect(r);
  }
  fail(o.sub("shape"), "expected \"disk\" or \"rect\"");
}

CoefficientSpec coefficients_of(const json& j, const std::string& path) {
  Obj o(j, path);
  CoefficientSpec c;
  c.kind = string_of(o.at("kind"), o.sub("kind"));
  static const std::set<std::string> kinds{"basis", "random_gaussian", "orthogonal", "explicit", "supported_on", "ones"};
  if (!kinds.count(c.kind)) fail(o.sub("kind"), "unknown coefficient generator '" + c.kind + "'");
  if (o.has("index")) {
    const long i = long_of(o.at("index"), o.sub("index"));
    if (i < 0) fail(o.sub("index"), "must be non-negative");
    c.index = static_cast<std::size_t>(i);
  }
  if (o.has("values")) c.values = complex_list(o.at("values"), o.sub("values"));
  if (o.has("groups")) {
    const json& g = o.at("groups");
    if (!g.is_array()) fail(o.sub("groups"), "expected an array");
    for (const auto& x : g) c.groups.push_back(static_cast<int>(long_of(x, o.sub("groups"))));
  }
  if (o.has("inner")) c.inner = std::make_shared<CoefficientSpec>(coefficients_of(o.at("inner"), o.sub("inner")));
  return c;
}

PartitionSpec partition_of(const json& j, const std::string& path) {
  Obj o(j, path);
  PartitionSpec p;
  if (o.has("t1_group")) p.t1_group = static_cast<int>(long_of(o.at("t1_group"), o.sub("t1_group")));
  if (o.has("t2_group")) p.t2_group = static_cast<int>(long_of(o.at("t2_group"), o.sub("t2_group")));
  p.A1 = entire_of(o.at("A1"), o.sub("A1"));
  p.A2 = entire_of(o.at("A2"), o.sub("A2"));
  return p;
}

WeightSpec weight_of(const json& j, const std::string& path) {
  Obj o(j, path);
  WeightSpec w;
  const std::string k = string_of(o.at("kind"), o.sub("kind"));
  if (k == "exp") w.kind = WeightKind::Exp;
  else if (k == "quadratic") w.kind = WeightKind::Quadratic;
  else if (k == "power") w.kind = WeightKind::Power;
  else if (k == "sampled") w.kind = WeightKind::Sampled;
  else fail(o.sub("kind"), "unknown weight '" + k + "'");
  if (o.has("beta")) w.beta = double_of(o.at("beta"), o.sub("beta"));
  if (o.has("t")) w.t = o.at("t").get<std::vector<double>>();
  if (o.has("w")) w.w = o.at("w").get<std::vector<double>>();
  return w;
}

template <class T>
std::vector<T> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  std::vector<T> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(path, "expected numbers");
    out.push_back(x.get<T>());
  }
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("malformed JSON: ") + e.what());
  }
}

long requested_bits(const json& j) {
  if (j.is_object() && j.contains("precision") && j["precision"].is_object() && j["precision"].contains("bits") &&
      j["precision"]["bits"].is_number_integer())
    return j["precision"]["bits"].get<long>();
  return 512;
}

ExperimentConfig config_of(const json& j) {
  ExperimentConfig cfg;
  Obj o(j, "");
  if (!o.at("schema").is_number_integer()) fail("schema", "expected an integer");
  cfg.schema = o.at("schema").get<int>();
  if (cfg.schema != 1) fail("schema", "unsupported schema " + std::to_string(cfg.schema));
  cfg.kind = experiment_kind_from_string(string_of(o.at("kind"), "kind"));
  if (o.has("name")) cfg.name = string_of(o.at("name"), "name");

  if (o.has("precision")) {
    Obj p(o.at("precision"), "precision");
    const long bits = p.has("bits") ? long_of(p.at("bits"), "precision.bits") : 512;
    const double tol = p.has("target_tol") ? double_of(p.at("target_tol"), "precision.target_tol") : 1e-40;
    if (bits < 64) fail("precision.bits", "must be at least 64");
    cfg.precision = make_context(bits, tol);
    if (p.has("max_bits")) cfg.precision.max_bits = long_of(p.at("max_bits"), "precision.max_bits");
  }
  if (o.has("escalate_to_bits")) cfg.escalate_to_bits = long_of(o.at("escalate_to_bits"), "escalate_to_bits");

  if (o.has("space")) {
    Obj s(o.at("space"), "space");
    cfg.space.nodes = family_of(s.at("nodes"), "space.nodes");
    cfg.space.radius = real_of(s.at("radius"), "space.radius");
    if (!(cfg.space.radius > Real(0))) fail("space.radius", "must be positive");
    if (s.has("measure")) cfg.space.measure = measure_of(s.at("measure"), "space.measure");
    if (s.has("A")) cfg.space.A = entire_of(s.at("A"), "space.A");
  } else if (cfg.kind != ExperimentKind::Legendre) {
    fail("space", "missing");
  }
  if (o.has("partition")) cfg.partition = partition_of(o.at("partition"), "partition");
  if (o.has("region")) {
    cfg.region = region_of(o.at("region"), "region");
    cfg.region_set = true;
  }
  if (o.has("trials")) cfg.trials = static_cast<int>(long_of(o.at("trials"), "trials"));
  if (o.has("seeds")) cfg.seeds = number_list<std::uint64_t>(o.at("seeds"), "seeds");
  if (o.has("M")) cfg.M = double_of(o.at("M"), "M");
  if (o.has("budget")) cfg.budget = double_of(o.at("budget"), "budget");
  if (o.has("onset_max")) cfg.onset_max = double_of(o.at("onset_max"), "onset_max");
  if (o.has("coefficients")) cfg.coefficients = coefficients_of(o.at("coefficients"), "coefficients");
  if (o.has("max_cells")) cfg.max_cells = static_cast<std::size_t>(long_of(o.at("max_cells"), "max_cells"));
  if (o.has("digits")) cfg.digits = static_cast<int>(long_of(o.at("digits"), "digits"));
  if (o.has("k_max")) cfg.k_max = static_cast<int>(long_of(o.at("k_max"), "k_max"));
  if (o.has("hk_samples")) cfg.hk_samples = static_cast<int>(long_of(o.at("hk_samples"), "hk_samples"));
  if (o.has("hk_sample_radius")) cfg.hk_sample_radius = double_of(o.at("hk_sample_radius"), "hk_sample_radius");
  if (o.has("hk_radii")) cfg.hk_radii = number_list<double>(o.at("hk_radii"), "hk_radii");
  if (o.has("hk_tolerance")) cfg.hk_tolerance = double_of(o.at("hk_tolerance"), "hk_tolerance");
  if (o.has("hk_shrink")) cfg.hk_shrink = double_of(o.at("hk_shrink"), "hk_shrink");
  if (o.has("hk_M_max")) cfg.hk_M_max = static_cast<int>(long_of(o.at("hk_M_max"), "hk_M_max"));
  if (o.has("decay_powers")) cfg.decay_powers = number_list<int>(o.at("decay_powers"), "decay_powers");
  if (o.has("weights")) {
    const json& ws = o.at("weights");
    if (!ws.is_array()) fail("weights", "expected an array");
    for (std::size_t i = 0; i < ws.size(); ++i) cfg.weights.push_back(weight_of(ws[i], "weights[" + std::to_string(i) + "]"));
  }
  if (o.has("legendre_x")) cfg.legendre_x = number_list<double>(o.at("legendre_x"), "legendre_x");
  if (o.has("basis_nodes")) cfg.basis_nodes = number_list<std::size_t>(o.at("basis_nodes"), "basis_nodes");
  return cfg;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) fail("", "config must be a JSON object");
  // Reals keep the precision they were parsed at; use the highest one a run may reach.
  long escalate = 2048;
  if (j.contains("escalate_to_bits") && j["escalate_to_bits"].is_number_integer())
    escalate = j["escalate_to_bits"].get<long>();
  PrecisionScope scope(std::clamp(std::max(requested_bits(j), escalate), 64L, 1L << 16));
  ExperimentConfig cfg;
  try {
    cfg = config_of(j);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("schema: ") + e.what());
  }
  validate_config(cfg);
  return cfg;
}

std::string canonical_config(const std::string& json_text, const Overrides& ov) {
  json j = parse_json(json_text);
  if (!j.is_object()) fail("", "config must be a JSON object");
  if (ov.bits) {
    j["precision"]["bits"] = *ov.bits;
    long escalate = j.contains("escalate_to_bits") && j["escalate_to_bits"].is_number_integer()
                        ? j["escalate_to_bits"].get<long>()
                        : 2048;
    if (escalate < *ov.bits) j["escalate_to_bits"] = *ov.bits;
  }
  if (ov.budget) j["budget"] = *ov.budget;
  return j.dump();
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cdlab
