#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nvmix/errors.hpp"
#include "nvmix/sweep.hpp"
#include "nvmix/units.hpp"

namespace nvmix {

std::string_view to_string(AxisParam p) {
  switch (p) {
    case AxisParam::B: return "B";
    case AxisParam::I_mag: return "I_mag";
    case AxisParam::P_T: return "P_T";
    case AxisParam::P_L: return "P_L";
    case AxisParam::V_RF: return "V_RF";
  }
  return "?";
}

std::string_view base_unit(AxisParam p) {
  switch (p) {
    case AxisParam::B: return "T";
    case AxisParam::I_mag: return "A";
    case AxisParam::P_T:
    case AxisParam::P_L: return "dBm";
    case AxisParam::V_RF: return "V";
  }
  return "?";
}

std::optional<AxisParam> parse_axis_param(std::string_view name) {
  for (AxisParam p : {AxisParam::B, AxisParam::I_mag, AxisParam::P_T, AxisParam::P_L, AxisParam::V_RF})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

double AxisSpec::value(int i) const {
  if (i == points - 1) return max;
  return min + i * step();
}

void AxisSpec::validate() const {
  if (points < 2) throw ConfigError("axis " + std::string(to_string(param)) + " needs at least 2 points");
  if (!(std::isfinite(min) && std::isfinite(max) && max > min))
    throw ConfigError("axis " + std::string(to_string(param)) + " needs a finite range with min < max");
}

namespace {

enum class Dim {
  none, frequency, rate, field, power, voltage, current, angle, inductance, resistance,
  freq_per_sqrt_watt, freq_per_volt, freq_per_amp, gyro, field_per_current,
};

// Scale factors to internal units. Frequencies become rad/s.
const std::map<std::string, double, std::less<>>& unit_table(Dim dim) {
  static const std::map<std::string, double, std::less<>> freq = {
      {"Hz", hz(1.0)}, {"kHz", khz(1.0)}, {"MHz", mhz(1.0)}, {"GHz", ghz(1.0)}, {"rad/s", 1.0}};
  static const std::map<std::string, double, std::less<>> field = {
      {"T", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}, {"G", 1e-4}};
  static const std::map<std::string, double, std::less<>> power = {{"dBm", 1.0}};
  static const std::map<std::string, double, std::less<>> volt = {{"V", 1.0}, {"mV", 1e-3}};
  static const std::map<std::string, double, std::less<>> amp = {{"A", 1.0}, {"mA", 1e-3}};
  static const std::map<std::string, double, std::less<>> angle = {{"rad", 1.0}, {"deg", kPi / 180.0}};
  static const std::map<std::string, double, std::less<>> ind = {
      {"H", 1.0}, {"mH", 1e-3}, {"uH", 1e-6}, {"nH", 1e-9}};
  static const std::map<std::string, double, std::less<>> ohm = {{"ohm", 1.0}};
  static const std::map<std::string, double, std::less<>> none = {};
  auto per = [](const std::string& denom, double f) {
    std::map<std::string, double, std::less<>> m;
    for (const auto& [u, s] : freq) m[u + "/" + denom] = s / f;
    return m;
  };
  static const auto fsw = per("sqrtW", 1.0);
  static const auto fv = per("V", 1.0);
  static const auto fa = per("A", 1.0);
  static const auto gy = per("T", 1.0);
  static const std::map<std::string, double, std::less<>> fpc = {{"T/A", 1.0}, {"mT/A", 1e-3}};
  switch (dim) {
    case Dim::frequency:
    case Dim::rate: return freq;
    case Dim::field: return field;
    case Dim::power: return power;
    case Dim::voltage: return volt;
    case Dim::current: return amp;
    case Dim::angle: return angle;
    case Dim::inductance: return ind;
    case Dim::resistance: return ohm;
    case Dim::freq_per_sqrt_watt: return fsw;
    case Dim::freq_per_volt: return fv;
    case Dim::freq_per_amp: return fa;
    case Dim::gyro: return gy;
    case Dim::field_per_current: return fpc;
    case Dim::none: return none;
  }
  return none;
}

struct Entry {
  std::string value;
  std::string unit;
  int line = 0;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::string source, bool angular_rates)
      : entries_(std::move(entries)), source_(std::move(source)), angular_rates_(angular_rates) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string text(const std::string& key) {
    const Entry& e = get(key);
    if (!e.unit.empty()) fail(e, "unexpected trailing text '" + e.unit + "'");
    return e.value;
  }

  double quantity(const std::string& key, Dim dim) {
    const Entry& e = get(key);
    double v = number(e);
    if (dim == Dim::none) {
      if (!e.unit.empty()) fail(e, "expected a plain number");
      return v;
    }
    if (e.unit.empty()) fail(e, "missing unit");
    const auto& table = unit_table(dim);
    const auto it = table.find(e.unit);
    if (it == table.end()) fail(e, "unit '" + e.unit + "' not valid here");
    double scale = it->second;
    // Rates given in ordinary-frequency units can be read as angular ones.
    if (dim == Dim::rate && angular_rates_ && e.unit != "rad/s") scale /= kTwoPi;
    return v * scale;
  }

  std::optional<double> optional(const std::string& key, Dim dim) {
    if (!has(key)) return std::nullopt;
    return quantity(key, dim);
  }

  int integer(const std::string& key) {
    const Entry& e = get(key);
    const double v = number(e);
    if (!e.unit.empty() || v != std::floor(v) || std::abs(v) > 1e9) fail(e, "expected an integer");
    return static_cast<int>(v);
  }

  bool boolean(const std::string& key) {
    const Entry& e = get(key);
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    fail(e, "expected true or false");
  }

  void done() {
    for (const auto& [key, e] : entries_)
      if (!used_.count(key)) fail(e, "unknown key '" + key + "'");
  }

  [[noreturn]] void fail(const Entry& e, const std::string& what) const {
    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": " + what);
  }

 private:
  const Entry& get(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError(source_ + ": missing key '" + key + "'");
    used_[key] = true;
    return it->second;
  }

  double number(const Entry& e) const {
    try {
      size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size() || !std::isfinite(v)) fail(e, "malformed number '" + e.value + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(e, "malformed number '" + e.value + "'");
    }
  }

  std::map<std::string, Entry> entries_;
  std::map<std::string, bool> used_;
  std::string source_;
  bool angular_rates_;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Dim axis_dim(AxisParam p) {
  switch (p) {
    case AxisParam::B: return Dim::field;
    case AxisParam::I_mag: return Dim::current;
    case AxisParam::P_T:
    case AxisParam::P_L: return Dim::power;
    case AxisParam::V_RF: return Dim::voltage;
  }
  return Dim::none;
}

AxisSpec read_axis(Reader& r, const std::string& prefix) {
  AxisSpec a;
  const std::string name = r.text(prefix + ".param");
  const auto p = parse_axis_param(name);
  if (!p) throw ConfigError("axis parameter '" + name + "' is not one of B, I_mag, P_T, P_L, V_RF");
  a.param = *p;
  a.min = r.quantity(prefix + ".min", axis_dim(a.param));
  a.max = r.quantity(prefix + ".max", axis_dim(a.param));
  a.points = r.integer(prefix + ".points");
  return a;
}

std::optional<AntennaModel> read_antenna(Reader& r, const std::string& p, double frequency) {
  const bool any = r.has(p + ".calibration") || r.has(p + ".coil_constant");
  if (!any) return std::nullopt;
  AntennaModel a;
  a.Z0 = r.optional(p + ".Z0", Dim::resistance).value_or(50.0);
  if (r.has(p + ".inductance")) {
    a.inductance = r.quantity(p + ".inductance", Dim::inductance);
  } else if (r.has(p + ".mismatch")) {
    const double zeta = r.quantity(p + ".mismatch", Dim::none);
    const double at = r.optional(p + ".mismatch_frequency", Dim::frequency).value_or(frequency);
    a.inductance = inductance_from_mismatch(zeta, at, a.Z0);
  }
  if (r.has(p + ".calibration")) {
    a.calibration = r.quantity(p + ".calibration", Dim::freq_per_sqrt_watt);
  } else {
    const double coil = r.quantity(p + ".coil_constant", Dim::freq_per_amp);
    a.calibration = coil * current_per_sqrt_watt(a, frequency);
  }
  return a;
}

ToneConfig read_tone(Reader& r, const std::string& p) {
  ToneConfig t;
  t.frequency = r.quantity(p + ".frequency", Dim::frequency);
  t.power_dBm = r.optional(p + ".power", Dim::power);
  t.voltage = r.optional(p + ".voltage", Dim::voltage);
  t.amplitude = r.optional(p + ".amplitude", Dim::frequency);
  t.volt_calibration = r.optional(p + ".volt_calibration", Dim::freq_per_volt).value_or(0.0);
  t.antenna = read_antenna(r, p, t.frequency);
  return t;
}

std::vector<LevelPair> read_pairs(const std::string& text) {
  std::vector<LevelPair> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.size() != 2 || !std::isdigit(item[0]) || !std::isdigit(item[1]))
      throw ConfigError("level pair '" + item + "' must look like 12, 13 or 23");
    LevelPair lp{item[0] - '0', item[1] - '0'};
    if (!lp.valid()) throw ConfigError("level pair '" + item + "' is out of range");
    pairs.push_back(lp);
  }
  if (pairs.empty()) throw ConfigError("pairs must list at least one level pair");
  return pairs;
}

bool axis_uses(const SweepConfig& c, AxisParam p) { return c.x.param == p || c.y.param == p; }

}  // namespace

void SweepConfig::validate() const {
  x.validate();
  y.validate();
  if (x.param == y.param) throw ConfigError("x and y axes must sweep different parameters");
  try {
    geometry.validate();
    rates.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const bool field_axis = axis_uses(*this, AxisParam::B) || axis_uses(*this, AxisParam::I_mag);
  if (axis_uses(*this, AxisParam::B) && axis_uses(*this, AxisParam::I_mag))
    throw ConfigError("B and I_mag cannot both be swept");
  if (!field_axis && !field) throw ConfigError("static field must be an axis or set by 'field'");

  if (!(mw.frequency > 0.0)) throw ConfigError("mw.frequency must be positive");
  auto tone_ok = [&](const ToneConfig& t, AxisParam power_axis, const std::string& name) {
    const bool swept_power = axis_uses(*this, power_axis);
    if ((swept_power || (t.power_dBm && !t.amplitude)) && !t.antenna)
      throw ConfigError(name + " power needs an antenna calibration");
    if (t.antenna) {
      try {
        t.antenna->validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(name + ": " + e.what());
      }
    }
    if (t.amplitude && *t.amplitude < 0.0) throw ConfigError(name + ".amplitude must be non-negative");
  };
  tone_ok(mw, AxisParam::P_T, "mw");
  if (!axis_uses(*this, AxisParam::P_T) && !mw.power_dBm && !mw.amplitude)
    throw ConfigError("mw drive needs a power axis, mw.power or mw.amplitude");

  if (mode == DriveMode::two_antenna) {
    if (!(rf.frequency > 0.0)) throw ConfigError("rf.frequency must be positive");
    tone_ok(rf, AxisParam::P_L, "rf");
    const bool volts = axis_uses(*this, AxisParam::V_RF) || rf.voltage;
    if (volts && !(rf.volt_calibration > 0.0))
      throw ConfigError("rf voltage drive needs rf.volt_calibration");
    if (!axis_uses(*this, AxisParam::P_L) && !volts && !rf.power_dBm && !rf.amplitude)
      throw ConfigError("rf drive needs a power or voltage axis, rf.power, rf.voltage or rf.amplitude");
  } else if (axis_uses(*this, AxisParam::P_L) || axis_uses(*this, AxisParam::V_RF)) {
    throw ConfigError("single-antenna mode cannot sweep RF parameters");
  }

  if (pairs.empty()) throw ConfigError("at least one level pair is required");
  if (l_max < 0 || l_max > 200) throw ConfigError("l_max must lie in [0, 200]");
  if (oracle_samples < 1) throw ConfigError("oracle.samples must be positive");
  if (line_l_max < line_l_min) throw ConfigError("lines.l_max must not be below lines.l_min");
  try {
    line_window.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("lines window: ") + e.what());
  }
}

SweepConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string rest = trim(line.substr(eq + 1));
    if (key.empty() || rest.empty())
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    if (entries.count(key))
      throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    const auto sp = rest.find_first_of(" \t");
    Entry e;
    e.line = lineno;
    e.value = rest.substr(0, sp);
    if (sp != std::string::npos) e.unit = trim(rest.substr(sp));
    entries[key] = e;
  }

  bool angular = false;
  if (auto it = entries.find("rates.angular"); it != entries.end()) {
    angular = it->second.value == "true" || it->second.value == "yes" || it->second.value == "1";
  }
  Reader r(std::move(entries), source, angular);
  if (r.has("rates.angular")) r.boolean("rates.angular");

  SweepConfig c;
  const std::string mode = r.text("mode");
  if (mode == "single") {
    c.mode = DriveMode::single_antenna;
  } else if (mode == "two") {
    c.mode = DriveMode::two_antenna;
  } else {
    throw ConfigError(source + ": mode must be 'single' or 'two'");
  }
  c.x = read_axis(r, "x");
  c.y = read_axis(r, "y");
  c.field = r.optional("field", Dim::field);

  if (r.has("constants.omega_D")) c.geometry.constants.omega_D = r.quantity("constants.omega_D", Dim::frequency);
  if (r.has("constants.gamma_e")) c.geometry.constants.gamma_e = r.quantity("constants.gamma_e", Dim::gyro);
  if (r.has("constants.omega_E")) c.geometry.constants.omega_E = r.quantity("constants.omega_E", Dim::frequency);
  c.geometry.misalignment_alpha = r.optional("geometry.alpha", Dim::angle).value_or(degrees(1.0));
  c.geometry.field_to_current =
      r.optional("geometry.field_to_current", Dim::field_per_current).value_or(1.0);

  c.mw = read_tone(r, "mw");
  if (c.mode == DriveMode::two_antenna) c.rf = read_tone(r, "rf");

  c.rates.gamma1 = r.quantity("rates.gamma1", Dim::rate);
  c.rates.gamma2 = r.quantity("rates.gamma2", Dim::rate);

  if (r.has("pairs")) c.pairs = read_pairs(r.text("pairs"));
  if (r.has("l_max")) c.l_max = r.integer("l_max");
  if (r.has("oracle.samples")) c.oracle_samples = r.integer("oracle.samples");
  if (r.has("lines.l_min")) c.line_l_min = r.integer("lines.l_min");
  if (r.has("lines.l_max")) c.line_l_max = r.integer("lines.l_max");
  if (r.has("lines.b_min")) c.line_window.b_min = r.quantity("lines.b_min", Dim::field);
  if (r.has("lines.b_max")) c.line_window.b_max = r.quantity("lines.b_max", Dim::field);
  if (r.has("lines.points")) c.line_window.points = r.integer("lines.points");

  r.done();
  c.validate();
  return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

}  // namespace nvmix
