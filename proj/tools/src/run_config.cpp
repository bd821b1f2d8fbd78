#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace aro::cli {

using nlohmann::json;

namespace {

constexpr const char* kModeNames[] = {"simulate", "dressed", "scan-area", "scan-grid"};

std::string join_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const char* type_name(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::boolean: return "boolean";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    default: return "number";
  }
}

// Walks one object, recording missing, mistyped and unknown keys instead of
// stopping at the first one.
class Reader {
 public:
  Reader(const json* obj, std::string path, std::vector<std::string>& problems)
      : obj_(obj), path_(std::move(path)), problems_(problems) {}

  bool present() const { return obj_ != nullptr; }
  const std::string& path() const { return path_; }

  bool has(const char* key) const { return obj_ && obj_->contains(key); }

  const json* find(const char* key) {
    seen_.insert(key);
    if (!obj_) return nullptr;
    auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  Reader child(const char* key) {
    const json* j = find(key);
    if (j && !j->is_object()) {
      wrong_type(key, "an object", *j);
      j = nullptr;
    }
    return Reader(j, join_path(path_, key), problems_);
  }

  std::optional<double> number(const char* key) {
    const json* j = find(key);
    if (!j) return std::nullopt;
    if (!j->is_number()) {
      wrong_type(key, "a number", *j);
      return std::nullopt;
    }
    const double v = j->get<double>();
    if (!std::isfinite(v)) {
      problem(key, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::int64_t> integer(const char* key) {
    const json* j = find(key);
    if (!j) return std::nullopt;
    if (!j->is_number_integer()) {
      wrong_type(key, "an integer", *j);
      return std::nullopt;
    }
    return j->get<std::int64_t>();
  }

  std::optional<std::string> string(const char* key) {
    const json* j = find(key);
    if (!j) return std::nullopt;
    if (!j->is_string()) {
      wrong_type(key, "a string", *j);
      return std::nullopt;
    }
    return j->get<std::string>();
  }

  void missing(const char* key) { problems_.push_back("missing key '" + join_path(path_, key) + "'"); }

  void problem(const char* key, const std::string& what) {
    problems_.push_back("'" + join_path(path_, key) + "' " + what);
  }

  void block_problem(const std::string& what) { problems_.push_back("'" + path_ + "' " + what); }

  void wrong_type(const char* key, const char* expected, const json& got) {
    problem(key, std::string("must be ") + expected + ", got " + type_name(got));
  }

  void reject_unknown() {
    if (!obj_) return;
    for (const auto& [k, v] : obj_->items()) {
      if (!seen_.contains(k)) problems_.push_back("unknown key '" + join_path(path_, k) + "'");
    }
  }

 private:
  const json* obj_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::set<std::string> seen_;
};

std::optional<Axis> read_axis(Reader& parent, const char* key) {
  Reader r = parent.child(key);
  if (!r.present()) return std::nullopt;
  const auto lo = r.number("min");
  const auto hi = r.number("max");
  const auto n = r.integer("n");
  if (!lo) r.missing("min");
  if (!hi) r.missing("max");
  if (!n) r.missing("n");
  r.reject_unknown();
  if (!lo || !hi || !n) return std::nullopt;
  bool ok = true;
  if (*n < 2) {
    r.problem("n", "must be >= 2");
    ok = false;
  }
  if (*hi < *lo) {
    r.problem("max", "must be >= min");
    ok = false;
  }
  if (!ok) return std::nullopt;
  return Axis{*lo, *hi, static_cast<std::size_t>(*n)};
}

void read_system(Reader r, SystemConfig& s) {
  if (!r.present()) {
    r.missing("type");
    r.missing("delta_tau0");
    return;
  }
  const auto type = r.string("type");
  if (!type) {
    if (!r.has("type")) r.missing("type");
  } else if (*type == "tripod") {
    s.type = SystemConfig::Type::tripod;
  } else if (*type == "ladder") {
    s.type = SystemConfig::Type::ladder;
  } else {
    r.problem("type", "must be \"tripod\" or \"ladder\", got \"" + *type + "\"");
  }

  if (auto d = r.number("delta_tau0")) {
    s.delta_tau0 = *d;
  } else if (!r.has("delta_tau0")) {
    r.missing("delta_tau0");
  }

  if (const json* det = r.find("detuning_tau0")) {
    if (det->is_number()) {
      s.detuning = {DetuningRule::Kind::fixed, det->get<double>()};
    } else if (det->is_string() && det->get<std::string>() == "resonant") {
      s.detuning = {DetuningRule::Kind::resonant, 0.0};
    } else {
      r.problem("detuning_tau0", "must be a number or \"resonant\"");
    }
  }

  const bool ladder = s.type == SystemConfig::Type::ladder;
  const auto ng = r.integer("n_ground");
  const auto ne = r.integer("n_excited");
  const auto dp = r.number("delta_prime_tau0");
  if (ladder) {
    if (ng) s.n_ground = static_cast<int>(*ng);
    if (ne) s.n_excited = static_cast<int>(*ne);
    if (!r.has("n_ground")) r.missing("n_ground");
    if (!r.has("n_excited")) r.missing("n_excited");
    for (auto [key, n] : {std::pair{"n_ground", ng}, std::pair{"n_excited", ne}}) {
      if (n && (*n < 1 || *n % 2 == 0 || *n > 99)) r.problem(key, "must be an odd count between 1 and 99");
    }
    s.delta_prime_tau0 = dp;
  } else {
    s.n_ground = 3;
    s.n_excited = 1;
    if (ng && *ng != 3) r.problem("n_ground", "must be 3 for a tripod");
    if (ne && *ne != 1) r.problem("n_excited", "must be 1 for a tripod");
    if (dp) r.problem("delta_prime_tau0", "has no effect on a tripod (single excited level)");
  }

  if (const json* w = r.find("weights")) {
    bool ok = w->is_array() && w->size() == static_cast<std::size_t>(s.n_ground);
    std::vector<std::vector<double>> rows;
    if (ok) {
      for (const auto& row : *w) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(s.n_excited)) {
          ok = false;
          break;
        }
        std::vector<double> values;
        for (const auto& x : row) {
          if (!x.is_number() || !std::isfinite(x.get<double>())) {
            ok = false;
            break;
          }
          values.push_back(x.get<double>());
        }
        rows.push_back(std::move(values));
      }
    }
    if (ok) {
      s.weights = std::move(rows);
    } else {
      r.problem("weights", "must be " + std::to_string(s.n_ground) + " rows of " +
                               std::to_string(s.n_excited) + " numbers");
    }
  }

  auto read_level = [&](const char* key, Level& out) {
    if (auto label = r.string(key)) {
      if (auto level = parse_level(*label)) {
        out = *level;
      } else {
        r.problem(key, "must look like g0, g-1 or e+2, got \"" + *label + "\"");
      }
    }
  };
  read_level("initial", s.initial);
  read_level("target", s.target);
  r.reject_unknown();
}

void read_pulse(Reader r, PulseConfig& p, bool amplitude_required) {
  if (!r.present()) {
    if (amplitude_required) r.missing("omega0_tau0' or 'pulse.s0_over_pi");
    return;
  }
  if (auto shape = r.string("shape")) {
    if (*shape == "gaussian") {
      p.shape = PulseShape::gaussian;
    } else if (*shape == "constant") {
      p.shape = PulseShape::constant;
    } else {
      r.problem("shape", "must be \"gaussian\" or \"constant\", got \"" + *shape + "\"");
    }
  }
  p.omega0_tau0 = r.number("omega0_tau0");
  p.s0_over_pi = r.number("s0_over_pi");
  if (amplitude_required) {
    if (p.omega0_tau0 && p.s0_over_pi) {
      r.problem("omega0_tau0", "and 'pulse.s0_over_pi' are mutually exclusive; give one");
    } else if (!p.omega0_tau0 && !p.s0_over_pi && !r.has("omega0_tau0") && !r.has("s0_over_pi")) {
      r.missing("omega0_tau0' or 'pulse.s0_over_pi");
    }
  } else {
    if (p.omega0_tau0) r.problem("omega0_tau0", "is set by the scan axes; remove it");
    if (p.s0_over_pi) r.problem("s0_over_pi", "is set by the scan axes; remove it");
  }
  if (p.omega0_tau0 && *p.omega0_tau0 < 0.0) r.problem("omega0_tau0", "must be >= 0");
  if (p.s0_over_pi && *p.s0_over_pi < 0.0) r.problem("s0_over_pi", "must be >= 0");

  if (auto tc = r.number("tc_over_tau0")) p.tc_over_tau0 = *tc;
  if (auto t0 = r.number("t_start_over_tau0")) p.t_start_over_tau0 = *t0;
  p.t_end_over_tau0 = r.number("t_end_over_tau0");
  if (!(p.t_end() > p.t_start_over_tau0)) {
    r.problem("t_end_over_tau0", "must exceed t_start_over_tau0");
  }
  r.reject_unknown();
}

void read_numerics(Reader r, NumericsConfig& n) {
  if (auto s = r.number("steps_per_tau0")) {
    if (*s > 0.0) n.steps_per_tau0 = *s; else r.problem("steps_per_tau0", "must be > 0");
  }
  if (auto s = r.integer("output_stride")) {
    if (*s >= 1) n.output_stride = static_cast<std::size_t>(*s); else r.problem("output_stride", "must be >= 1");
  }
  if (auto s = r.number("dressed_points_per_tau0")) {
    if (*s > 0.0) n.dressed_points_per_tau0 = *s; else r.problem("dressed_points_per_tau0", "must be > 0");
  }
  r.reject_unknown();
}

void read_scan(Reader r, Mode mode, std::optional<ScanConfig>& out) {
  const bool scanning = mode == Mode::scan_area || mode == Mode::scan_grid;
  if (!scanning) {
    if (r.present()) r.block_problem("is only used by scan-area and scan-grid");
    return;
  }
  ScanConfig sc;
  if (!r.present()) {
    r.missing("area_over_pi");
    if (mode == Mode::scan_grid) r.missing("delta_tau0");
    return;
  }
  const auto area = read_axis(r, "area_over_pi");
  if (!area && !r.has("area_over_pi")) r.missing("area_over_pi");
  if (area && area->min < 0.0) r.problem("area_over_pi", "min must be >= 0");
  sc.delta_tau0 = read_axis(r, "delta_tau0");
  if (mode == Mode::scan_grid && !r.has("delta_tau0")) r.missing("delta_tau0");
  if (mode == Mode::scan_area && r.has("delta_tau0")) {
    r.problem("delta_tau0", "is only used by scan-grid");
  }
  if (const json* m = r.find("methods")) {
    bool tdse = false;
    bool ok = m->is_array();
    if (ok) {
      for (const auto& x : *m) {
        const std::string name = x.is_string() ? x.get<std::string>() : "";
        if (name == "tdse") {
          tdse = true;
        } else if (name == "adiabatic") {
          sc.adiabatic = true;
        } else {
          ok = false;
        }
      }
    }
    if (!ok || !tdse) r.problem("methods", "must be [\"tdse\"] or [\"tdse\", \"adiabatic\"]");
  }
  r.reject_unknown();
  if (area) sc.area_over_pi = *area;
  out = sc;
}

void read_output(Reader r, OutputConfig& o) {
  if (!r.present()) {
    r.missing("basename");
    return;
  }
  if (auto d = r.string("directory")) o.directory = *d;
  if (auto b = r.string("basename")) {
    if (b->empty() || b->find('/') != std::string::npos || *b == "." || *b == "..") {
      r.problem("basename", "must be a plain file name");
    } else {
      o.basename = *b;
    }
  } else if (!r.has("basename")) {
    r.missing("basename");
  }
  r.reject_unknown();
}

// Checks that need the whole config, run only when every block parsed.
void cross_check(const RunConfig& c, std::vector<std::string>& problems) {
  try {
    const LevelScheme scheme = c.scheme();
    for (auto [key, level] : {std::pair{"initial", c.system.initial}, std::pair{"target", c.system.target}}) {
      if (!scheme.contains(level)) {
        problems.push_back("'system." + std::string(key) + "' level " + to_string(level) +
                           " is not in the level scheme");
      }
    }
    if (c.system.initial == c.system.target) {
      problems.push_back("'system.target' must differ from 'system.initial'");
    }
    if (c.system.detuning.kind == DetuningRule::Kind::resonant &&
        c.system.initial.manifold == c.system.target.manifold) {
      problems.push_back("'system.detuning_tau0' \"resonant\" needs one ground and one excited level");
    }
  } catch (const std::invalid_argument& e) {
    problems.push_back(std::string("'system' ") + e.what());
  }
}

}  // namespace

std::string to_string(Mode mode) { return kModeNames[static_cast<int>(mode)]; }

std::optional<Mode> parse_mode(const std::string& name) {
  for (int i = 0; i < 4; ++i) {
    if (name == kModeNames[i]) return static_cast<Mode>(i);
  }
  return std::nullopt;
}

std::optional<Level> parse_level(const std::string& label) {
  if (label.size() < 2 || (label[0] != 'g' && label[0] != 'e')) return std::nullopt;
  const char* first = label.data() + 1;
  const char* last = label.data() + label.size();
  if (*first == '+') ++first;
  int m = 0;
  const auto [ptr, ec] = std::from_chars(first, last, m);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return Level{label[0] == 'g' ? Manifold::ground : Manifold::excited, m};
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

LevelScheme RunConfig::scheme() const {
  return system_template().make(system.delta_tau0, system.initial, system.target);
}

PulseSpec RunConfig::pulse_spec() const {
  const TimeWindow window{pulse.t_start_over_tau0, pulse.t_end()};
  if (pulse.s0_over_pi) return pulse_template().with_area(*pulse.s0_over_pi * std::numbers::pi);
  const double omega0 = pulse.omega0_tau0.value_or(0.0);
  if (pulse.shape == PulseShape::constant) return PulseSpec::constant(omega0, window);
  return PulseSpec::gaussian(omega0, 1.0, pulse.tc_over_tau0, window);
}

PulseTemplate RunConfig::pulse_template() const {
  PulseTemplate t;
  t.shape = pulse.shape;
  t.tau0 = 1.0;
  t.tc = pulse.tc_over_tau0;
  t.window = {pulse.t_start_over_tau0, pulse.t_end()};
  return t;
}

SystemTemplate RunConfig::system_template() const {
  SystemTemplate t;
  t.n_ground = system.n_ground;
  t.n_excited = system.n_excited;
  t.delta = system.delta_tau0;
  t.delta_prime = system.delta_prime_tau0;
  t.detuning = system.detuning;
  if (system.weights) {
    Eigen::MatrixXd w(system.n_ground, system.n_excited);
    for (int i = 0; i < system.n_ground; ++i) {
      for (int j = 0; j < system.n_excited; ++j) {
        w(i, j) = (*system.weights)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
    t.weights = std::move(w);
  }
  return t;
}

ScanSpec RunConfig::scan_spec() const {
  ScanSpec s;
  s.system = system_template();
  s.pulse = pulse_template();
  s.initial = system.initial;
  s.target = system.target;
  if (scan) {
    s.area_axis = scan->area_over_pi;
    s.delta_axis = scan->delta_tau0;
    s.adiabatic = scan->adiabatic;
  }
  s.steps_per_tau0 = numerics.steps_per_tau0;
  s.dressed_points_per_tau0 = numerics.dressed_points_per_tau0;
  return s;
}

RunConfig from_json(const json& doc, Mode mode) {
  std::vector<std::string> problems;
  if (!doc.is_object()) throw ConfigError({"top level must be an object, got " + std::string(type_name(doc))});

  RunConfig c;
  c.mode = mode;
  Reader root(&doc, "", problems);
  if (auto m = root.string("mode")) {
    const auto parsed = parse_mode(*m);
    if (!parsed) {
      root.problem("mode", "must be one of simulate, dressed, scan-area, scan-grid");
    } else if (*parsed != mode) {
      root.problem("mode", "is \"" + *m + "\" but the command line asked for " + to_string(mode));
    }
  }
  read_system(root.child("system"), c.system);
  const bool scanning = mode == Mode::scan_area || mode == Mode::scan_grid;
  read_pulse(root.child("pulse"), c.pulse, !scanning);
  read_numerics(root.child("numerics"), c.numerics);
  read_scan(root.child("scan"), mode, c.scan);
  read_output(root.child("output"), c.output);
  root.reject_unknown();

  if (problems.empty()) cross_check(c, problems);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

RunConfig from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("mode") || !doc["mode"].is_string()) {
    throw ConfigError({"missing key 'mode'"});
  }
  const auto mode = parse_mode(doc["mode"].get<std::string>());
  if (!mode) throw ConfigError({"'mode' must be one of simulate, dressed, scan-area, scan-grid"});
  return from_json(doc, *mode);
}

RunConfig load(const std::filesystem::path& path, Mode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return from_json(json::object(), mode);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({path.string() + ": " + e.what()});
  }
  return from_json(doc, mode);
}

json to_json(const RunConfig& c) {
  json sys = {
      {"type", c.system.type == SystemConfig::Type::tripod ? "tripod" : "ladder"},
      {"delta_tau0", c.system.delta_tau0},
      {"initial", to_string(c.system.initial)},
      {"target", to_string(c.system.target)},
  };
  if (c.system.detuning.kind == DetuningRule::Kind::resonant) {
    sys["detuning_tau0"] = "resonant";
  } else {
    sys["detuning_tau0"] = c.system.detuning.value;
  }
  if (c.system.type == SystemConfig::Type::ladder) {
    sys["n_ground"] = c.system.n_ground;
    sys["n_excited"] = c.system.n_excited;
    if (c.system.delta_prime_tau0) sys["delta_prime_tau0"] = *c.system.delta_prime_tau0;
  }
  if (c.system.weights) sys["weights"] = *c.system.weights;

  json pulse = {
      {"shape", c.pulse.shape == PulseShape::gaussian ? "gaussian" : "constant"},
      {"tc_over_tau0", c.pulse.tc_over_tau0},
      {"t_start_over_tau0", c.pulse.t_start_over_tau0},
  };
  if (c.pulse.omega0_tau0) pulse["omega0_tau0"] = *c.pulse.omega0_tau0;
  if (c.pulse.s0_over_pi) pulse["s0_over_pi"] = *c.pulse.s0_over_pi;
  if (c.pulse.t_end_over_tau0) pulse["t_end_over_tau0"] = *c.pulse.t_end_over_tau0;

  json doc = {
      {"mode", to_string(c.mode)},
      {"system", sys},
      {"pulse", pulse},
      {"numerics",
       {{"steps_per_tau0", c.numerics.steps_per_tau0},
        {"output_stride", c.numerics.output_stride},
        {"dressed_points_per_tau0", c.numerics.dressed_points_per_tau0}}},
      {"output", {{"directory", c.output.directory}, {"basename", c.output.basename}}},
  };
  if (c.scan) {
    auto axis = [](const Axis& a) { return json{{"min", a.min}, {"max", a.max}, {"n", a.n}}; };
    json scan = {{"area_over_pi", axis(c.scan->area_over_pi)}};
    if (c.scan->delta_tau0) scan["delta_tau0"] = axis(*c.scan->delta_tau0);
    scan["methods"] = c.scan->adiabatic ? json{"tdse", "adiabatic"} : json{"tdse"};
    doc["scan"] = scan;
  }
  return doc;
}

}  // namespace aro::cli
