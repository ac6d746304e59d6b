#include "cavityhom/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace cavityhom {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument("config: " + path + ": " + msg);
}

void check_keys(const Json& obj, const std::set<std::string>& allowed,
                const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
  }
}

double get_number(const Json& obj, const std::string& key, const std::string& path,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

double require_number(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

int get_int(const Json& obj, const std::string& key, const std::string& path, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(path + "." + key, "expected an integer");
  return obj[key].get<int>();
}

std::string require_string(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  if (!obj[key].is_string()) fail(path + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

DriveField parse_drive(const Json& j, const std::string& path) {
  const std::string type = require_string(j, "type", path);
  if (type == "zero") {
    check_keys(j, {"type"}, path);
    return ZeroDrive{};
  }
  if (type == "gaussian") {
    check_keys(j, {"type", "amplitude", "center", "width"}, path);
    GaussianDrive d{require_number(j, "amplitude", path), require_number(j, "center", path),
                    require_number(j, "width", path)};
    validate_drive(d);
    return d;
  }
  if (type == "piecewise_linear") {
    check_keys(j, {"type", "knots", "dt"}, path);
    if (!j.contains("knots") || !j["knots"].is_array()) {
      fail(path + ".knots", "expected an array of numbers");
    }
    PiecewiseLinearDrive d;
    for (const auto& k : j["knots"]) {
      if (!k.is_number()) fail(path + ".knots", "expected an array of numbers");
      d.knots.push_back(k.get<double>());
    }
    d.dt = require_number(j, "dt", path);
    validate_drive(d);
    return d;
  }
  fail(path + ".type", "expected one of zero | gaussian | piecewise_linear");
}

SystemRecord parse_system(const Json& j, const std::string& path) {
  check_keys(j,
             {"type", "delta_c", "delta_d", "g", "kappa", "gamma", "gamma12_fraction",
              "gamma32_fraction", "gamma32_target"},
             path);
  SystemRecord record;
  const std::string type = require_string(j, "type", path);
  if (type == "two_level") {
    record.type = SystemType::two_level;
  } else if (type == "lambda") {
    record.type = SystemType::lambda;
  } else {
    fail(path + ".type", "expected two_level | lambda");
  }
  record.delta_c = get_number(j, "delta_c", path, record.delta_c);
  record.delta_d = get_number(j, "delta_d", path, record.delta_d);
  record.g = get_number(j, "g", path, record.g);
  record.kappa = get_number(j, "kappa", path, record.kappa);
  record.gamma = get_number(j, "gamma", path, record.gamma);
  record.gamma12_fraction = get_number(j, "gamma12_fraction", path, record.gamma12_fraction);
  record.gamma32_fraction = get_number(j, "gamma32_fraction", path, record.gamma32_fraction);
  if (j.contains("gamma32_target")) {
    const std::string target = require_string(j, "gamma32_target", path);
    if (target == "g0") {
      record.gamma32_target = Gamma32Target::g0;
    } else if (target == "g1") {
      record.gamma32_target = Gamma32Target::g1;
    } else {
      fail(path + ".gamma32_target", "expected g0 | g1");
    }
  }
  // Revalidate the parameter invariants right here at parse time.
  if (record.type == SystemType::two_level) {
    record.two_level().validate();
  } else {
    record.lambda().validate();
  }
  return record;
}

SystemRecord parse_system_with_drive(const Json& j, const std::string& path) {
  check_keys(j, {"system", "drive"}, path);
  if (!j.contains("system")) fail(path + ".system", "missing required key");
  SystemRecord record = parse_system(j["system"], path + ".system");
  if (j.contains("drive")) record.drive = parse_drive(j["drive"], path + ".drive");
  return record;
}

TimeGrid parse_grid(const Json& j, const std::string& path) {
  check_keys(j, {"t_end", "n_steps", "substeps"}, path);
  TimeGrid grid;
  grid.t_end = get_number(j, "t_end", path, grid.t_end);
  grid.n_steps = get_int(j, "n_steps", path, grid.n_steps);
  grid.substeps = get_int(j, "substeps", path, grid.substeps);
  grid.validate();
  return grid;
}

SweepAxis parse_axis(const Json& j, const std::string& path) {
  check_keys(j, {"param", "start", "stop", "count"}, path);
  SweepAxis axis;
  const std::string param = require_string(j, "param", path);
  if (param == "delta_c") {
    axis.param = SweepParam::delta_c;
  } else if (param == "g") {
    axis.param = SweepParam::g;
  } else if (param == "kappa") {
    axis.param = SweepParam::kappa;
  } else if (param == "gamma") {
    axis.param = SweepParam::gamma;
  } else {
    fail(path + ".param", "expected delta_c | g | kappa | gamma");
  }
  axis.start = require_number(j, "start", path);
  axis.stop = require_number(j, "stop", path);
  axis.count = get_int(j, "count", path, axis.count);
  axis.validate();
  return axis;
}

OptimizerConfig parse_optimizer(const Json& j, const std::string& path) {
  check_keys(j, {"eta", "gain", "max_iterations", "error_tolerance", "n_segments"}, path);
  OptimizerConfig config;
  config.eta = get_number(j, "eta", path, config.eta);
  config.gain = get_number(j, "gain", path, config.gain);
  config.max_iterations = get_int(j, "max_iterations", path, config.max_iterations);
  config.error_tolerance = get_number(j, "error_tolerance", path, config.error_tolerance);
  config.n_segments = get_int(j, "n_segments", path, config.n_segments);
  config.validate();
  return config;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  check_keys(j, {"system", "drive", "grid", "output", "hom", "sweep", "optimize"}, "config");
  RunConfig config;

  if (!j.contains("system")) fail("config.system", "missing required key");
  config.system = parse_system(j["system"], "system");
  if (j.contains("drive")) config.system.drive = parse_drive(j["drive"], "drive");
  if (j.contains("grid")) config.grid = parse_grid(j["grid"], "grid");

  if (!j.contains("output")) fail("config.output", "missing required key");
  check_keys(j["output"], {"prefix"}, "output");
  config.output_prefix = require_string(j["output"], "prefix", "output");
  if (config.output_prefix.empty()) fail("output.prefix", "must not be empty");

  if (j.contains("hom")) {
    check_keys(j["hom"], {"tau_stride"}, "hom");
    HomBlock block;
    block.tau_stride = get_int(j["hom"], "tau_stride", "hom", block.tau_stride);
    if (block.tau_stride < 0) fail("hom.tau_stride", "must be >= 0");
    if (block.tau_stride > 0 && config.grid.n_steps % block.tau_stride != 0) {
      fail("hom.tau_stride", "must divide grid.n_steps");
    }
    config.hom = block;
  }

  if (j.contains("sweep")) {
    const Json& s = j["sweep"];
    check_keys(s, {"mode", "axes", "reference", "optimize"}, "sweep");
    SweepBlock block;
    const std::string mode = require_string(s, "mode", "sweep");
    if (mode == "identical") {
      block.mode = SweepMode::identical;
    } else if (mode == "reference") {
      block.mode = SweepMode::reference;
    } else {
      fail("sweep.mode", "expected identical | reference");
    }
    if (!s.contains("axes") || !s["axes"].is_array() || s["axes"].empty() ||
        s["axes"].size() > 2) {
      fail("sweep.axes", "expected an array of one or two axes");
    }
    for (std::size_t i = 0; i < s["axes"].size(); ++i) {
      block.axes.push_back(parse_axis(s["axes"][i], "sweep.axes[" + std::to_string(i) + "]"));
    }
    if (s.contains("reference")) {
      block.reference = parse_system_with_drive(s["reference"], "sweep.reference");
    }
    if (s.contains("optimize")) {
      block.optimize = parse_optimizer(s["optimize"], "sweep.optimize");
    }
    if (block.mode == SweepMode::reference && !block.reference) {
      fail("sweep.reference", "required in reference mode");
    }
    if (block.optimize && !block.reference) {
      fail("sweep.reference", "required for an optimized sweep");
    }
    config.sweep = block;
  }

  if (j.contains("optimize")) {
    const Json& o = j["optimize"];
    check_keys(o,
               {"reference", "initial_drive", "eta", "gain", "max_iterations",
                "error_tolerance", "n_segments"},
               "optimize");
    OptimizeBlock block;
    if (!o.contains("reference")) fail("optimize.reference", "missing required key");
    block.reference = parse_system_with_drive(o["reference"], "optimize.reference");
    Json knobs = o;
    knobs.erase("reference");
    knobs.erase("initial_drive");
    block.config = parse_optimizer(knobs, "optimize");
    if (o.contains("initial_drive")) {
      block.initial = parse_drive(o["initial_drive"], "optimize.initial_drive");
    }
    config.optimize = block;
  }

  return config;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config: " + path + ": " + e.what());
  }
  for (const std::string& assignment : overrides) apply_override(j, assignment);
  return parse_config(j);
}

void apply_override(Json& j, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("--set expects section.key=value, got: " + assignment);
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  Json value;
  try {
    value = Json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw;  // bare strings are fine
  }

  Json* node = &j;
  std::size_t begin = 0;
  while (true) {
    const std::size_t dot = path.find('.', begin);
    const std::string key = path.substr(begin, dot - begin);
    if (key.empty()) throw std::invalid_argument("--set: empty key in path: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    begin = dot + 1;
  }
}

Json drive_to_json(const DriveField& drive) {
  Json j;
  if (std::holds_alternative<ZeroDrive>(drive)) {
    j["type"] = "zero";
  } else if (const auto* gauss = std::get_if<GaussianDrive>(&drive)) {
    j["type"] = "gaussian";
    j["amplitude"] = gauss->amplitude;
    j["center"] = gauss->center;
    j["width"] = gauss->width;
  } else {
    const auto& pwl = std::get<PiecewiseLinearDrive>(drive);
    j["type"] = "piecewise_linear";
    j["knots"] = pwl.knots;
    j["dt"] = pwl.dt;
  }
  return j;
}

Json system_to_json(const SystemRecord& record) {
  Json j;
  j["type"] = record.type == SystemType::two_level ? "two_level" : "lambda";
  j["delta_c"] = record.delta_c;
  if (record.type == SystemType::lambda) {
    j["delta_d"] = record.delta_d;
  }
  j["g"] = record.g;
  j["kappa"] = record.kappa;
  j["gamma"] = record.gamma;
  if (record.type == SystemType::lambda) {
    j["gamma12_fraction"] = record.gamma12_fraction;
    j["gamma32_fraction"] = record.gamma32_fraction;
    j["gamma32_target"] = record.gamma32_target == Gamma32Target::g0 ? "g0" : "g1";
    j["drive"] = drive_to_json(record.drive);
  }
  return j;
}

Json grid_to_json(const TimeGrid& grid) {
  Json j;
  j["t_end"] = grid.t_end;
  j["n_steps"] = grid.n_steps;
  j["substeps"] = grid.substeps;
  return j;
}

}  // namespace cavityhom
