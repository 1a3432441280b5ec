#include "gradtc/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gradtc/diagnostics.hpp"
#include "gradtc/errors.hpp"
#include "gradtc/kernels.hpp"
#include "gradtc/swtheory.hpp"
#include "gradtc/units.hpp"

namespace gradtc {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PhaseDiagram: return "phase_diagram";
    case ExperimentKind::Trajectory: return "trajectory";
    case ExperimentKind::ReversalTime: return "reversal_time";
    case ExperimentKind::MutualInfo: return "mutual_info";
    case ExperimentKind::Qfi: return "qfi";
    case ExperimentKind::QfiTrace: return "qfi_trace";
    case ExperimentKind::Heating: return "heating";
    case ExperimentKind::Entropy: return "entropy";
    case ExperimentKind::Participation: return "participation";
    case ExperimentKind::SwChecks: return "sw_checks";
  }
  return "?";
}

namespace {

ExperimentKind kind_from_string(const std::string& s) {
  for (ExperimentKind k :
       {ExperimentKind::PhaseDiagram, ExperimentKind::Trajectory, ExperimentKind::ReversalTime,
        ExperimentKind::MutualInfo, ExperimentKind::Qfi, ExperimentKind::QfiTrace,
        ExperimentKind::Heating, ExperimentKind::Entropy, ExperimentKind::Participation,
        ExperimentKind::SwChecks})
    if (s == to_string(k)) return k;
  throw config_error("unknown experiment kind: " + s);
}

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw config_error("unknown key '" + key + "' in " + context);
  }
}

double get_number(const json& obj, const char* key, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw config_error(std::string("missing required key '") + key + "'");
  }
  if (!obj[key].is_number()) throw config_error(std::string("key '") + key + "' must be a number");
  return obj[key].get<double>();
}

std::string get_string(const json& obj, const char* key, std::optional<std::string> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw config_error(std::string("missing required key '") + key + "'");
  }
  if (!obj[key].is_string()) throw config_error(std::string("key '") + key + "' must be a string");
  return obj[key].get<std::string>();
}

} // namespace

std::vector<double> GridAxis::values() const {
  if (points == 0) throw config_error("grid axis '" + param + "' needs at least 1 point");
  std::vector<double> v;
  v.reserve(points);
  if (points == 1) {
    v.push_back(min);
    return v;
  }
  if (log_scale) {
    if (min <= 0.0 || max <= 0.0)
      throw config_error("log-scale axis '" + param + "' needs positive bounds");
    const double ratio = max / min;
    for (std::size_t i = 0; i < points; ++i)
      v.push_back(min * std::pow(ratio, static_cast<double>(i) /
                                            static_cast<double>(points - 1)));
  } else {
    const double step = (max - min) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
      v.push_back(min + step * static_cast<double>(i));
  }
  return v;
}

void ExperimentConfig::validate() const {
  model.validate();
  drive.validate();
  if (run.realizations < 1) throw config_error("run.realizations must be >= 1");
  for (const auto& axis : grid) {
    static const std::vector<std::string> known = {"J_mhz",     "B0_mhz", "g_mhz", "width_mhz",
                                                   "epsilon",   "T_ns",   "A_mhz", "duty",
                                                   "sites"};
    bool ok = false;
    for (const auto& k : known)
      if (axis.param == k) ok = true;
    if (!ok) throw config_error("unknown grid parameter '" + axis.param + "'");
    if (axis.points < 1) throw config_error("grid axis needs points >= 1");
    if (axis.points > 1 && !(axis.min < axis.max))
      throw config_error("grid axis '" + axis.param + "' needs min < max");
    (void)axis.values();
  }

  const bool pulsed_delta = std::holds_alternative<DeltaDrive>(drive.pulse);
  const bool pulsed_edsr = std::holds_alternative<EdsrDrive>(drive.pulse);
  const bool pulsed_square = std::holds_alternative<SquareDrive>(drive.pulse);
  const bool undriven = std::holds_alternative<std::monostate>(drive.pulse);

  switch (kind) {
    case ExperimentKind::PhaseDiagram:
    case ExperimentKind::ReversalTime:
      if (!pulsed_delta && !pulsed_edsr)
        throw config_error(std::string(to_string(kind)) + " requires a delta or edsr drive");
      if (run.n_periods < 2) throw config_error("run.n_periods must be >= 2");
      break;
    case ExperimentKind::MutualInfo:
      if (!pulsed_delta) throw config_error("mutual_info requires a delta drive");
      break;
    case ExperimentKind::Heating:
      if (!pulsed_square) throw config_error("heating requires a square drive");
      if (run.n_periods < 1) throw config_error("run.n_periods must be >= 1");
      break;
    case ExperimentKind::Qfi:
    case ExperimentKind::QfiTrace:
    case ExperimentKind::Entropy:
    case ExperimentKind::Participation:
    case ExperimentKind::SwChecks:
      if (!undriven)
        throw config_error(std::string(to_string(kind)) + " runs the undriven model");
      break;
    case ExperimentKind::Trajectory:
      if (!grid.empty()) throw config_error("trajectory takes no grid");
      if (run.realizations != 1) throw config_error("trajectory uses a single realization");
      if (run.n_periods < 1) throw config_error("run.n_periods must be >= 1");
      if (undriven) throw config_error("trajectory requires a drive");
      break;
  }

  if (kind == ExperimentKind::PhaseDiagram) {
    if (run.s_max < 1) throw config_error("run.s_max must be >= 1");
    if (run.n_periods < 2 * (run.s_max - 1))
      throw config_error("run.n_periods too short for run.s_max samples at 2T spacing");
    if (run.sites_tracked.empty()) throw config_error("run.sites_tracked must not be empty");
  }

  const bool needs_window = kind == ExperimentKind::Qfi || kind == ExperimentKind::QfiTrace ||
                            (kind == ExperimentKind::Entropy &&
                             run.entropy_mode == EntropyMode::Evolved);
  if (needs_window) {
    if (run.jt_min <= 0.0 || run.jt_max <= run.jt_min)
      throw config_error("sample window needs 0 < jt_min < jt_max");
    if (run.window_samples < 1) throw config_error("sample window needs samples >= 1");
    bool j_on_grid = false;
    for (const auto& axis : grid)
      if (axis.param == "J_mhz") j_on_grid = true;
    if (!j_on_grid && model.exchange_mhz <= 0.0)
      throw config_error("the J t sample window requires J > 0");
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw config_error("config root must be an object");
  check_keys(root, "config", {"experiment", "model", "drive", "grid", "run", "output"});

  ExperimentConfig cfg;
  cfg.kind = kind_from_string(get_string(root, "experiment"));

  if (!root.contains("model")) throw config_error("missing 'model' section");
  {
    const json& m = root["model"];
    check_keys(m, "model",
               {"sites", "J_mhz", "B0_mhz", "g_mhz", "disorder", "gradient_axis"});
    cfg.model.sites = static_cast<int>(get_number(m, "sites"));
    cfg.model.exchange_mhz = get_number(m, "J_mhz", 0.0);
    cfg.model.base_field_mhz = get_number(m, "B0_mhz", 0.0);
    cfg.model.gradient_mhz = get_number(m, "g_mhz", 0.0);
    if (m.contains("disorder")) {
      const json& d = m["disorder"];
      check_keys(d, "model.disorder", {"law", "width_mhz"});
      const std::string law = get_string(d, "law", "gaussian");
      if (law == "gaussian") cfg.model.disorder_law = DisorderLaw::Gaussian;
      else if (law == "uniform") cfg.model.disorder_law = DisorderLaw::Uniform;
      else throw config_error("disorder.law must be 'gaussian' or 'uniform'");
      cfg.model.disorder_width_mhz = get_number(d, "width_mhz", 0.0);
    }
    const std::string axis = get_string(m, "gradient_axis", "z");
    if (axis == "z") cfg.model.gradient_axis = GradientAxis::Z;
    else if (axis == "y") cfg.model.gradient_axis = GradientAxis::Y;
    else throw config_error("model.gradient_axis must be 'z' or 'y'");
  }

  if (root.contains("drive")) {
    const json& d = root["drive"];
    check_keys(d, "drive", {"kind", "epsilon", "T_ns", "duty", "A_mhz"});
    const std::string kind = get_string(d, "kind", "none");
    if (kind == "none") {
      cfg.drive.pulse = std::monostate{};
    } else if (kind == "delta") {
      DeltaDrive dd;
      dd.epsilon = get_number(d, "epsilon");
      dd.period_ns = get_number(d, "T_ns");
      cfg.drive.pulse = dd;
    } else if (kind == "edsr") {
      EdsrDrive ed;
      ed.epsilon = get_number(d, "epsilon");
      ed.period_ns = get_number(d, "T_ns");
      ed.duty = get_number(d, "duty");
      cfg.drive.pulse = ed;
    } else if (kind == "square") {
      SquareDrive sd;
      sd.amplitude_mhz = get_number(d, "A_mhz");
      sd.period_ns = get_number(d, "T_ns");
      sd.duty = get_number(d, "duty");
      cfg.drive.pulse = sd;
    } else {
      throw config_error("drive.kind must be none|delta|edsr|square");
    }
  }

  if (root.contains("grid")) {
    if (!root["grid"].is_array()) throw config_error("'grid' must be an array");
    for (const json& a : root["grid"]) {
      check_keys(a, "grid axis", {"param", "min", "max", "points", "scale"});
      GridAxis axis;
      axis.param = get_string(a, "param");
      axis.min = get_number(a, "min");
      axis.max = get_number(a, "max", axis.min);
      axis.points = static_cast<std::size_t>(get_number(a, "points", 1.0));
      const std::string scale = get_string(a, "scale", "linear");
      if (scale == "log") axis.log_scale = true;
      else if (scale != "linear") throw config_error("grid scale must be 'linear' or 'log'");
      cfg.grid.push_back(axis);
    }
  }

  if (!root.contains("run")) throw config_error("missing 'run' section");
  {
    const json& r = root["run"];
    check_keys(r, "run",
               {"n_periods", "s_max", "realizations", "master_seed", "initial_state",
                "sites_tracked", "sample_window", "entropy_mode", "checkpoint_periods",
                "late_window_periods"});
    cfg.run.n_periods = static_cast<std::size_t>(get_number(r, "n_periods", 0.0));
    cfg.run.s_max = static_cast<std::size_t>(get_number(r, "s_max", 0.0));
    cfg.run.realizations = static_cast<std::size_t>(get_number(r, "realizations", 1.0));
    cfg.run.master_seed = static_cast<std::uint64_t>(get_number(r, "master_seed", 0.0));
    cfg.run.initial_state = get_string(r, "initial_state", "neel");
    if (r.contains("sites_tracked")) {
      cfg.run.sites_tracked.clear();
      for (const json& s : r["sites_tracked"])
        cfg.run.sites_tracked.push_back(s.get<int>());
    }
    if (r.contains("sample_window")) {
      const json& w = r["sample_window"];
      check_keys(w, "run.sample_window", {"jt_min", "jt_max", "samples"});
      cfg.run.jt_min = get_number(w, "jt_min", cfg.run.jt_min);
      cfg.run.jt_max = get_number(w, "jt_max", cfg.run.jt_max);
      cfg.run.window_samples = static_cast<std::size_t>(get_number(w, "samples", 24.0));
    }
    const std::string em = get_string(r, "entropy_mode", "evolved");
    if (em == "evolved") cfg.run.entropy_mode = EntropyMode::Evolved;
    else if (em == "eigenstate") cfg.run.entropy_mode = EntropyMode::Eigenstate;
    else throw config_error("run.entropy_mode must be 'evolved' or 'eigenstate'");
    if (r.contains("checkpoint_periods"))
      for (const json& c : r["checkpoint_periods"])
        cfg.run.checkpoint_periods.push_back(c.get<std::size_t>());
    cfg.run.late_window_periods =
        static_cast<std::size_t>(get_number(r, "late_window_periods", 0.0));
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    check_keys(o, "output", {"directory", "format"});
    cfg.output.directory = get_string(o, "directory", "out");
    cfg.output.format = get_string(o, "format", "csv");
    if (cfg.output.format != "csv") throw config_error("output.format must be 'csv'");
  }

  // phase diagrams default to two periods per sample
  if (cfg.kind == ExperimentKind::PhaseDiagram && cfg.run.n_periods == 0 && cfg.run.s_max > 0)
    cfg.run.n_periods = 2 * cfg.run.s_max;
  cfg.drive.n_periods = cfg.run.n_periods;

  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json root;
  root["experiment"] = to_string(cfg.kind);
  json m;
  m["sites"] = cfg.model.sites;
  m["J_mhz"] = cfg.model.exchange_mhz;
  m["B0_mhz"] = cfg.model.base_field_mhz;
  m["g_mhz"] = cfg.model.gradient_mhz;
  m["disorder"] = {{"law", cfg.model.disorder_law == DisorderLaw::Gaussian ? "gaussian"
                                                                           : "uniform"},
                   {"width_mhz", cfg.model.disorder_width_mhz}};
  m["gradient_axis"] = cfg.model.gradient_axis == GradientAxis::Z ? "z" : "y";
  root["model"] = m;

  json d;
  if (const auto* dd = std::get_if<DeltaDrive>(&cfg.drive.pulse)) {
    d = {{"kind", "delta"}, {"epsilon", dd->epsilon}, {"T_ns", dd->period_ns}};
  } else if (const auto* ed = std::get_if<EdsrDrive>(&cfg.drive.pulse)) {
    d = {{"kind", "edsr"},
         {"epsilon", ed->epsilon},
         {"T_ns", ed->period_ns},
         {"duty", ed->duty}};
  } else if (const auto* sd = std::get_if<SquareDrive>(&cfg.drive.pulse)) {
    d = {{"kind", "square"},
         {"A_mhz", sd->amplitude_mhz},
         {"T_ns", sd->period_ns},
         {"duty", sd->duty}};
  } else {
    d = {{"kind", "none"}};
  }
  root["drive"] = d;

  json axes = json::array();
  for (const auto& axis : cfg.grid)
    axes.push_back({{"param", axis.param},
                    {"min", axis.min},
                    {"max", axis.max},
                    {"points", axis.points},
                    {"scale", axis.log_scale ? "log" : "linear"}});
  root["grid"] = axes;

  json r;
  r["n_periods"] = cfg.run.n_periods;
  r["s_max"] = cfg.run.s_max;
  r["realizations"] = cfg.run.realizations;
  r["master_seed"] = cfg.run.master_seed;
  r["initial_state"] = cfg.run.initial_state;
  r["sites_tracked"] = cfg.run.sites_tracked;
  r["sample_window"] = {{"jt_min", cfg.run.jt_min},
                        {"jt_max", cfg.run.jt_max},
                        {"samples", cfg.run.window_samples}};
  r["entropy_mode"] = cfg.run.entropy_mode == EntropyMode::Evolved ? "evolved" : "eigenstate";
  r["checkpoint_periods"] = cfg.run.checkpoint_periods;
  r["late_window_periods"] = cfg.run.late_window_periods;
  root["run"] = r;

  root["output"] = {{"directory", cfg.output.directory}, {"format", cfg.output.format}};
  return root.dump();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string s = config_to_json(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0)
      throw std::invalid_argument("fit_loglog: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) throw std::invalid_argument("fit_loglog: degenerate abscissae");
  LogLogFit fit;
  fit.slope = (dn * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / dn;
  fit.points = n;
  return fit;
}

// ---------------------------------------------------------------------------
// grid expansion and per-realization tasks
// ---------------------------------------------------------------------------

namespace {

struct PointSpec {
  ModelSpec model;
  DriveSpec drive;
  RunParams run;
  std::vector<double> coords;  // grid coordinates, axis order
};

void apply_axis(PointSpec& p, const std::string& param, double value) {
  if (param == "J_mhz") p.model.exchange_mhz = value;
  else if (param == "B0_mhz") p.model.base_field_mhz = value;
  else if (param == "g_mhz") p.model.gradient_mhz = value;
  else if (param == "width_mhz") p.model.disorder_width_mhz = value;
  else if (param == "sites") {
    const double rounded = std::round(value);
    if (std::abs(rounded - value) > 1e-9)
      throw config_error("grid parameter 'sites' must take integer values");
    p.model.sites = static_cast<int>(rounded);
  } else if (param == "epsilon") {
    if (auto* dd = std::get_if<DeltaDrive>(&p.drive.pulse)) dd->epsilon = value;
    else if (auto* ed = std::get_if<EdsrDrive>(&p.drive.pulse)) ed->epsilon = value;
    else throw config_error("grid parameter 'epsilon' needs a delta or edsr drive");
  } else if (param == "T_ns") {
    if (auto* dd = std::get_if<DeltaDrive>(&p.drive.pulse)) dd->period_ns = value;
    else if (auto* ed = std::get_if<EdsrDrive>(&p.drive.pulse)) ed->period_ns = value;
    else if (auto* sd = std::get_if<SquareDrive>(&p.drive.pulse)) sd->period_ns = value;
    else throw config_error("grid parameter 'T_ns' needs a drive");
  } else if (param == "A_mhz") {
    if (auto* sd = std::get_if<SquareDrive>(&p.drive.pulse)) sd->amplitude_mhz = value;
    else throw config_error("grid parameter 'A_mhz' needs a square drive");
  } else if (param == "duty") {
    if (auto* ed = std::get_if<EdsrDrive>(&p.drive.pulse)) ed->duty = value;
    else if (auto* sd = std::get_if<SquareDrive>(&p.drive.pulse)) sd->duty = value;
    else throw config_error("grid parameter 'duty' needs an edsr or square drive");
  } else {
    throw config_error("unknown grid parameter '" + param + "'");
  }
}

std::vector<PointSpec> expand_grid(const ExperimentConfig& cfg) {
  std::vector<std::vector<double>> axis_values;
  for (const auto& axis : cfg.grid) axis_values.push_back(axis.values());

  std::size_t total = 1;
  for (const auto& v : axis_values) total *= v.size();

  std::vector<PointSpec> points;
  points.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    PointSpec p{cfg.model, cfg.drive, cfg.run, {}};
    std::size_t rem = flat;
    // last axis varies fastest
    std::vector<std::size_t> idx(cfg.grid.size(), 0);
    for (std::size_t a = cfg.grid.size(); a-- > 0;) {
      idx[a] = rem % axis_values[a].size();
      rem /= axis_values[a].size();
    }
    for (std::size_t a = 0; a < cfg.grid.size(); ++a) {
      const double value = axis_values[a][idx[a]];
      apply_axis(p, cfg.grid[a].param, value);
      p.coords.push_back(value);
    }
    p.model.validate();
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<double> window_times_ns(const PointSpec& p) {
  // Jt is the plain product J[MHz] * t[us]; sample times are log-spaced
  const double j = p.model.exchange_mhz;
  if (j <= 0.0) throw config_error("sample window requires J > 0 at every grid point");
  const std::size_t n = p.run.window_samples;
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    const double jt = p.run.jt_min * std::pow(p.run.jt_max / p.run.jt_min, frac);
    t[k] = 1e3 * jt / j;
  }
  return t;
}

StateVector make_initial(const PointSpec& p, const SpinBasis& basis, const DenseOperator& h) {
  if (p.run.initial_state == "ground") return initial_state(basis, "ground", &h);
  return initial_state(basis, p.run.initial_state);
}

Trajectory run_driven_trajectory(const PointSpec& p, std::uint64_t realization,
                                 std::size_t sample_every) {
  const FieldProfile fields = sample_fields(p.model, p.run.master_seed, realization);
  const DenseOperator h = build_heisenberg(p.model, fields);
  const StateVector psi0 = make_initial(p, h.basis(), h);

  Trajectory traj;
  if (const auto* dd = std::get_if<DeltaDrive>(&p.drive.pulse)) {
    const DenseOperator u = floquet_operator_delta(h, dd->epsilon, dd->period_ns);
    traj = evolve_stroboscopic(u, dd->period_ns, psi0, p.run.n_periods, sample_every);
  } else if (const auto* ed = std::get_if<EdsrDrive>(&p.drive.pulse)) {
    traj = evolve_edsr(h, p.model, *ed, psi0, p.run.n_periods, sample_every);
  } else if (const auto* sd = std::get_if<SquareDrive>(&p.drive.pulse)) {
    traj = evolve_square_drive(h, *sd, psi0, p.run.n_periods);
  } else {
    throw config_error("this experiment requires a drive");
  }
  traj.seed = p.run.master_seed;
  traj.realization = realization;
  return traj;
}

struct Plan {
  std::vector<std::string> quantities;
  std::function<std::vector<double>(const PointSpec&, std::uint64_t)> run_one;
};

Plan make_plan(const ExperimentConfig& cfg) {
  Plan plan;
  switch (cfg.kind) {
    case ExperimentKind::PhaseDiagram: {
      for (int site : cfg.run.sites_tracked)
        plan.quantities.push_back("sz" + std::to_string(site) + "_avg");
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const Trajectory traj = run_driven_trajectory(p, r, 2);
        std::vector<double> out;
        for (int site : p.run.sites_tracked) {
          double acc = 0.0;
          for (std::size_t s = 0; s < p.run.s_max; ++s) acc += traj.sz[s].at(site - 1);
          out.push_back(acc / static_cast<double>(p.run.s_max));
        }
        return out;
      };
      break;
    }
    case ExperimentKind::ReversalTime: {
      plan.quantities = {"t_r_ns", "reversed"};
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const Trajectory traj = run_driven_trajectory(p, r, 2);
        const auto t_r = spin_reversal_time(traj, 1);
        const double cap = traj.times_ns.back();
        return std::vector<double>{t_r.value_or(cap), t_r.has_value() ? 1.0 : 0.0};
      };
      break;
    }
    case ExperimentKind::MutualInfo: {
      plan.quantities = {"f11_nats"};
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        const auto* dd = std::get_if<DeltaDrive>(&p.drive.pulse);
        const DenseOperator u = floquet_operator_delta(h, dd->epsilon, dd->period_ns);
        const FloquetSpectrum fs = floquet_eigenstates(u);
        const std::vector<int> a = {1}, b = {p.model.sites};
        double acc = 0.0;
        for (const auto& state : fs.eigenstates) acc += mutual_information(state, a, b);
        return std::vector<double>{acc / static_cast<double>(fs.eigenstates.size())};
      };
      break;
    }
    case ExperimentKind::Qfi: {
      plan.quantities = {"fq"};
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        const StateVector psi0 = make_initial(p, h.basis(), h);
        const auto times = window_times_ns(p);
        const auto states = evolve_static_samples(h, psi0, times);
        double acc = 0.0;
        for (const auto& st : states) acc += qfi_staggered(st);
        return std::vector<double>{acc / static_cast<double>(states.size())};
      };
      break;
    }
    case ExperimentKind::QfiTrace: {
      for (std::size_t k = 0; k < cfg.run.window_samples; ++k)
        plan.quantities.push_back("fq_t" + std::to_string(k));
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        const StateVector psi0 = make_initial(p, h.basis(), h);
        const auto times = window_times_ns(p);
        const auto states = evolve_static_samples(h, psi0, times);
        std::vector<double> out;
        out.reserve(states.size());
        for (const auto& st : states) out.push_back(qfi_staggered(st));
        return out;
      };
      break;
    }
    case ExperimentKind::Heating: {
      plan.quantities = {"q_late"};
      for (std::size_t cp : cfg.run.checkpoint_periods)
        plan.quantities.push_back("q_at_" + std::to_string(cp) + "T");
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        const StateVector psi0 = make_initial(p, h.basis(), h);
        const auto* sd = std::get_if<SquareDrive>(&p.drive.pulse);
        const Trajectory traj = evolve_square_drive(h, *sd, psi0, p.run.n_periods);
        const double e0 = traj.energy_mhz.front();
        const std::size_t window =
            p.run.late_window_periods > 0 ? p.run.late_window_periods
                                          : std::max<std::size_t>(1, p.run.n_periods / 8);
        double late = 0.0;
        for (std::size_t s = traj.energy_mhz.size() - window; s < traj.energy_mhz.size(); ++s)
          late += dimensionless_energy(traj.energy_mhz[s], e0, h);
        std::vector<double> out{late / static_cast<double>(window)};
        for (std::size_t cp : p.run.checkpoint_periods) {
          if (cp >= traj.energy_mhz.size())
            throw config_error("checkpoint period beyond run length");
          out.push_back(dimensionless_energy(traj.energy_mhz[cp], e0, h));
        }
        return out;
      };
      break;
    }
    case ExperimentKind::Entropy: {
      plan.quantities = {"entropy_density"};
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        if (p.run.entropy_mode == EntropyMode::Evolved) {
          const StateVector psi0 = make_initial(p, h.basis(), h);
          const auto states = evolve_static_samples(h, psi0, window_times_ns(p));
          double acc = 0.0;
          for (const auto& st : states) acc += bipartite_entropy_density(st);
          return std::vector<double>{acc / static_cast<double>(states.size())};
        }
        // eigenstate-averaged mode: uniform mean over all eigenstates
        const auto& es = h.eigensystem();
        const std::size_t dim = h.dimension();
        double acc = 0.0;
        std::vector<cplx> amp(dim);
        for (std::size_t k = 0; k < dim; ++k) {
          for (std::size_t i = 0; i < dim; ++i) amp[i] = es.vectors(i, k);
          acc += bipartite_entropy_density(StateVector(h.basis(), amp));
        }
        return std::vector<double>{acc / static_cast<double>(dim)};
      };
      break;
    }
    case ExperimentKind::Participation: {
      plan.quantities = {"pr"};
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        const StateVector psi0 = make_initial(p, h.basis(), h);
        return std::vector<double>{participation_ratio(psi0, h)};
      };
      break;
    }
    case ExperimentKind::SwChecks: {
      plan.quantities = {"eta",     "residual_rel", "fq_twopoint",
                         "fq_pert", "onept_end",    "onept_bulk"};
      plan.run_one = [](const PointSpec& p, std::uint64_t r) {
        const FieldProfile fields = sample_fields(p.model, p.run.master_seed, r);
        const DenseOperator h = build_heisenberg(p.model, fields);
        const DenseOperator ising = build_ising(p.model, fields);
        const SwGenerator sw = build_s1(p.model, fields);
        const auto [h0, h1] = split_h0_h1(h);
        const DenseOperator residual_op = h1 + commutator(sw.generator, h0);
        const double h1_norm = h1.frobenius_norm();
        const double residual =
            h1_norm > 0.0 ? residual_op.frobenius_norm() / h1_norm : 0.0;
        const double eta = spectral_distance(h, ising);
        const double fq2 = qfi_dressed_twopoint(sw);
        const double fqp = qfi_perturbative(p.model.sites, sw.lambda);
        const SpinBasis basis(p.model.sites);
        const std::size_t neel = [&] {
          std::size_t idx = 0;
          for (int j = 2; j <= p.model.sites; j += 2)
            idx |= std::size_t(1) << basis.bit_position(j);
          return idx;
        }();
        const auto onept = [&](int site) {
          const DressedObservable d = dressed_sz(sw, site);
          return d.dressed.matrix()(neel, neel).real() / d.normalization;
        };
        const int bulk = p.model.sites >= 3 ? 2 : 1;
        return std::vector<double>{eta, residual, fq2, fqp, onept(1), onept(bulk)};
      };
      break;
    }
    case ExperimentKind::Trajectory:
      break;  // handled separately
  }
  return plan;
}

ResultTable run_trajectory(const ExperimentConfig& cfg) {
  PointSpec p{cfg.model, cfg.drive, cfg.run, {}};
  const bool sample_every_2 = !std::holds_alternative<SquareDrive>(p.drive.pulse);
  const Trajectory traj = run_driven_trajectory(p, 0, sample_every_2 ? 2 : 1);

  ResultTable table;
  table.kind = cfg.kind;
  table.columns = {"t_ns"};
  for (int j = 1; j <= cfg.model.sites; ++j)
    table.columns.push_back("sz" + std::to_string(j));
  const bool with_energy = !traj.energy_mhz.empty();
  if (with_energy) table.columns.push_back("energy_mhz");
  for (std::size_t s = 0; s < traj.times_ns.size(); ++s) {
    std::vector<double> row;
    row.push_back(traj.times_ns[s]);
    for (double v : traj.sz[s]) row.push_back(v);
    if (with_energy) row.push_back(traj.energy_mhz[s]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

} // namespace

ResultTable run_experiment(const ExperimentConfig& cfg, std::size_t workers) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  ResultTable table;
  table.kind = cfg.kind;

  if (cfg.kind == ExperimentKind::Trajectory) {
    table = run_trajectory(cfg);
  } else {
    const std::vector<PointSpec> points = expand_grid(cfg);
    if (cfg.kind == ExperimentKind::PhaseDiagram)
      for (const auto& p : points)
        for (int site : p.run.sites_tracked)
          if (site < 1 || site > p.model.sites)
            throw config_error("tracked site " + std::to_string(site) +
                               " outside the chain at a grid point");
    const Plan plan = make_plan(cfg);
    const std::size_t n_real = cfg.run.realizations;
    const std::size_t n_tasks = points.size() * n_real;

    std::vector<std::vector<std::vector<double>>> results(
        points.size(), std::vector<std::vector<double>>(n_real));
    std::vector<std::exception_ptr> errors(n_tasks);

    std::size_t n_workers = workers > 0 ? workers : std::thread::hardware_concurrency();
    if (n_workers == 0) n_workers = 1;
    n_workers = std::min(n_workers, n_tasks);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_tasks) return;
        const std::size_t point = i / n_real;
        const std::size_t realization = i % n_real;
        try {
          results[point][realization] = plan.run_one(points[point], realization);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w + 1 < n_workers; ++w) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);

    // deterministic reduction: realization order fixed by index
    for (const auto& axis : cfg.grid) table.columns.push_back(axis.param);
    if (cfg.kind == ExperimentKind::QfiTrace) {
      table.columns.push_back("t_ns");
      table.columns.push_back("fq_mean");
      table.columns.push_back("fq_std");
      for (std::size_t pt = 0; pt < points.size(); ++pt) {
        const auto times = window_times_ns(points[pt]);
        for (std::size_t k = 0; k < times.size(); ++k) {
          std::vector<double> vals(n_real);
          for (std::size_t r = 0; r < n_real; ++r) vals[r] = results[pt][r][k];
          const EnsembleStat st = reduce_stats(vals);
          std::vector<double> row = points[pt].coords;
          row.push_back(times[k]);
          row.push_back(st.mean);
          row.push_back(st.stddev);
          table.rows.push_back(std::move(row));
        }
      }
    } else {
      for (const auto& q : plan.quantities) {
        table.columns.push_back(q + "_mean");
        table.columns.push_back(q + "_std");
      }
      for (std::size_t pt = 0; pt < points.size(); ++pt) {
        std::vector<double> row = points[pt].coords;
        for (std::size_t q = 0; q < plan.quantities.size(); ++q) {
          std::vector<double> vals(n_real);
          for (std::size_t r = 0; r < n_real; ++r) vals[r] = results[pt][r][q];
          const EnsembleStat st = reduce_stats(vals);
          row.push_back(st.mean);
          row.push_back(st.stddev);
        }
        table.rows.push_back(std::move(row));
      }
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof(hash_buf), "0x%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  table.metadata["config"] = config_to_json(cfg);
  table.metadata["config_hash"] = hash_buf;
  table.metadata["master_seed"] = std::to_string(cfg.run.master_seed);
  table.metadata["version"] = library_version;
  table.metadata["kernel"] = kernels::isa_name(kernels::active_isa());
  table.metadata["wall_time_s"] = std::to_string(wall);
  return table;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_table_body(std::ofstream& out, const ResultTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_value(row[c]);
    out << "\n";
  }
}

std::optional<std::size_t> column_index(const ResultTable& table, const std::string& name) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    if (table.columns[c] == name) return c;
  return std::nullopt;
}

// power-law tail fit footer for the log-log figures; returns empty when the
// table lacks the needed columns or tail points
std::string tail_fit_footer(const ResultTable& table) {
  std::string footer;
  const auto g_col = column_index(table, "g_mhz");
  if (!g_col) return footer;

  struct FitSpec {
    const char* value_col;
    const char* label;
    double tail_min_ratio;  // g/J cut
  };
  const FitSpec specs[] = {
      {"fq_mean", "qfi tail fit (g/J >= 30): alpha", 30.0},
      {"entropy_density_mean", "entropy tail fit (g/J >= 10): prefactor", 10.0},
      {"eta_mean", "spectral-distance fit (all g): prefactor", 0.0},
  };
  for (const auto& spec : specs) {
    const auto v_col = column_index(table, spec.value_col);
    if (!v_col) continue;
    // J is constant per table unless swept; pull it from the config metadata
    double j_mhz = 0.0;
    try {
      const auto cfg = parse_config(table.metadata.at("config"));
      j_mhz = cfg.model.exchange_mhz;
    } catch (...) {
      continue;
    }
    if (j_mhz <= 0.0) continue;
    std::vector<double> xs, ys;
    for (const auto& row : table.rows) {
      const double ratio = row[*g_col] / j_mhz;
      if (ratio >= spec.tail_min_ratio && row[*v_col] > 0.0) {
        xs.push_back(ratio);
        ys.push_back(row[*v_col]);
      }
    }
    if (xs.size() < 2) continue;
    const LogLogFit fit = fit_loglog(xs, ys);
    footer += "# " + std::string(spec.label) + "=" + format_value(std::exp(fit.intercept)) +
              " exponent=" + format_value(fit.slope) + " points=" +
              std::to_string(fit.points) + "\n";
  }
  return footer;
}

const char* plot_description(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PhaseDiagram:
      return "time- and disorder-averaged z-projections over the parameter grid";
    case ExperimentKind::Trajectory:
      return "stroboscopic per-site z-projections for a single disorder realization";
    case ExperimentKind::ReversalTime:
      return "disorder-averaged end-spin reversal time (capped runs count at the cap)";
    case ExperimentKind::MutualInfo:
      return "end-to-end mutual information averaged over Floquet eigenstates";
    case ExperimentKind::Qfi:
      return "late-time-averaged quantum Fisher information of the staggered magnetization";
    case ExperimentKind::QfiTrace:
      return "quantum Fisher information vs time";
    case ExperimentKind::Heating:
      return "dimensionless absorbed energy Q under the square-pulse drive";
    case ExperimentKind::Entropy:
      return "bipartite entanglement entropy per site";
    case ExperimentKind::Participation:
      return "participation ratio of the initial state in the energy eigenbasis";
    case ExperimentKind::SwChecks:
      return "Schrieffer-Wolff diagnostics: spectral distance, residual, dressed observables";
  }
  return "";
}

} // namespace

std::string emit_plot_data(const ResultTable& table, const std::string& figure_id,
                           const std::string& directory) {
  if (figure_id != to_string(table.kind))
    throw config_error("figure id '" + figure_id + "' does not match experiment '" +
                       std::string(to_string(table.kind)) + "'");
  if (table.rows.empty()) throw config_error("emit_plot_data: empty selection, nothing to write");

  std::filesystem::create_directories(directory);
  const std::string path = directory + "/plot_" + figure_id + ".csv";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "# " << plot_description(table.kind) << "\n";
  out << "# columns: ";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? ", " : "") << table.columns[c];
  out << "\n";
  write_table_body(out, table);
  out << tail_fit_footer(table);
  return path;
}

std::vector<std::string> write_results(const ExperimentConfig& cfg, const ResultTable& table) {
  std::filesystem::create_directories(cfg.output.directory);
  const std::string results_path = cfg.output.directory + "/results.csv";
  std::ofstream out(results_path);
  if (!out) throw std::runtime_error("cannot open " + results_path + " for writing");
  out << "# gradtc " << library_version << " results\n";
  for (const auto& [key, value] : table.metadata)
    out << "# " << key << ": " << value << "\n";
  write_table_body(out, table);
  out.close();

  const std::string plot_path =
      emit_plot_data(table, to_string(cfg.kind), cfg.output.directory);
  return {results_path, plot_path};
}

} // namespace gradtc
