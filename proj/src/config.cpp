#include "lcam/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "lcam/error.hpp"

namespace lcam {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a real number");
  }
  return x;
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("key '" + key + "': cannot parse '" + value + "' as an integer");
  }
  return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (!v.empty() && v[0] == '-') {
    throw ConfigError("key '" + key + "': must be a nonnegative integer");
  }
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("key '" + key + "': cannot parse '" + value + "' as an integer");
  }
  return x;
}

// One parsed [section], tracking which keys were consumed so leftovers can be
// reported as unknown or inapplicable.
class Section {
 public:
  Section() = default;
  explicit Section(std::string name) : name_(std::move(name)) {}

  void insert(const std::string& key, const std::string& value, int line) {
    if (entries_.count(key)) {
      throw ConfigError("duplicate key '" + key + "' in [" + name_ + "] (line " +
                        std::to_string(line) + ")");
    }
    entries_[key] = value;
  }

  void override_value(const std::string& key, const std::string& value) {
    entries_[key] = value;
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string v = it->second;
    entries_.erase(it);
    return v;
  }

  double take_double(const std::string& key, double fallback) {
    auto v = take(key);
    return v ? to_double(key, *v) : fallback;
  }

  std::int64_t take_int(const std::string& key, std::int64_t fallback) {
    auto v = take(key);
    return v ? to_int(key, *v) : fallback;
  }

  std::uint64_t take_uint(const std::string& key, std::uint64_t fallback) {
    auto v = take(key);
    return v ? to_uint(key, *v) : fallback;
  }

  std::string take_string(const std::string& key, const std::string& fallback) {
    auto v = take(key);
    return v ? *v : fallback;
  }

  std::vector<double> take_doubles(const std::string& key, std::vector<double> fallback) {
    auto v = take(key);
    if (!v) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(*v)) out.push_back(to_double(key, item));
    return out;
  }

  std::vector<int> take_ints(const std::string& key, std::vector<int> fallback) {
    auto v = take(key);
    if (!v) return fallback;
    std::vector<int> out;
    for (const auto& item : split_list(*v)) out.push_back(static_cast<int>(to_int(key, item)));
    return out;
  }

  void finish(const std::string& context) const {
    if (entries_.empty()) return;
    throw ConfigError("unknown or inapplicable key '" + entries_.begin()->first + "' in [" +
                      name_ + "]" + (context.empty() ? "" : " (" + context + ")"));
  }

 private:
  std::string name_;
  std::map<std::string, std::string> entries_;
};

struct RawConfig {
  std::map<std::string, Section> sections;
  std::vector<std::string> order;

  Section& section(const std::string& name) {
    if (!sections.count(name)) {
      sections.emplace(name, Section(name));
      order.push_back(name);
    }
    return sections.at(name);
  }
};

RawConfig parse_raw(const std::string& text) {
  static const std::vector<std::string> known = {"problem", "optimizer", "schedule", "tracker",
                                                 "run"};
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      }
      current = trim(t.substr(1, t.size() - 2));
      if (std::find(known.begin(), known.end(), current) == known.end()) {
        throw ConfigError("unknown section [" + current + "] at line " + std::to_string(lineno));
      }
      raw.section(current);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
    }
    if (current.empty()) {
      throw ConfigError("key outside any [section] at line " + std::to_string(lineno));
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    raw.section(current).insert(key, value, lineno);
  }
  return raw;
}

void check_unit_interval(double x, const char* key) {
  if (!(x > 0.0 && x < 1.0)) {
    throw ConfigError(std::string(key) + " must lie strictly in (0,1)");
  }
}

void check_positive(double x, const char* key) {
  if (!(x > 0.0)) throw ConfigError(std::string(key) + " must be positive");
}

void check_nonnegative(double x, const char* key) {
  if (!(x >= 0.0)) throw ConfigError(std::string(key) + " must be nonnegative");
}

ProblemConfig read_problem(Section& s) {
  ProblemConfig p;
  const std::string kind = s.take_string("kind", "landscape");
  if (kind == "landscape") {
    p.kind = ProblemKind::Landscape;
    p.landscape_id = s.take_string("landscape", p.landscape_id);
    const std::vector<std::string> ids = {"quadratic", "saddle", "coupled_spring", "rosenbrock"};
    if (std::find(ids.begin(), ids.end(), p.landscape_id) == ids.end()) {
      throw ConfigError("landscape: unknown id '" + p.landscape_id + "'");
    }
    p.iterations_per_epoch = s.take_int("iterations_per_epoch", p.iterations_per_epoch);
    if (p.iterations_per_epoch < 1) throw ConfigError("iterations_per_epoch must be >= 1");
    p.gradient_noise = s.take_double("gradient_noise", p.gradient_noise);
    check_nonnegative(p.gradient_noise, "gradient_noise");
    p.theta0 = s.take_doubles("theta0", p.theta0);
    for (double v : p.theta0) {
      if (!std::isfinite(v)) throw ConfigError("theta0 entries must be finite");
    }
    p.init_scale = s.take_double("init_scale", p.init_scale);
    check_positive(p.init_scale, "init_scale");
    if (p.landscape_id == "quadratic") {
      p.quad_scales = s.take_doubles("quad_scales", p.quad_scales);
      if (p.quad_scales.empty()) throw ConfigError("quad_scales must be non-empty");
      for (double v : p.quad_scales) check_positive(v, "quad_scales");
    }
    if (p.landscape_id == "coupled_spring") {
      p.spring_pairs = s.take_int("spring_pairs", p.spring_pairs);
      if (p.spring_pairs < 1) throw ConfigError("spring_pairs must be >= 1");
      p.spring_stiff = s.take_double("spring_stiff", p.spring_stiff);
      check_positive(p.spring_stiff, "spring_stiff");
      p.spring_soft = s.take_double("spring_soft", p.spring_soft);
      check_positive(p.spring_soft, "spring_soft");
      p.spring_coupling = s.take_double("spring_coupling", p.spring_coupling);
      if (p.spring_coupling * p.spring_coupling > p.spring_stiff * p.spring_soft) {
        throw ConfigError("spring_coupling violates coupling^2 <= stiff * soft");
      }
    }
  } else if (kind == "dataset") {
    p.kind = ProblemKind::Dataset;
    const std::string ds = s.take_string("dataset", "two_moons");
    if (ds == "two_moons") {
      p.dataset = DatasetKind::TwoMoons;
      p.moons_n = static_cast<int>(s.take_int("moons_n", p.moons_n));
      if (p.moons_n < 10) throw ConfigError("moons_n must be >= 10");
      p.moons_noise = s.take_double("moons_noise", p.moons_noise);
      check_nonnegative(p.moons_noise, "moons_noise");
    } else if (ds == "blobs") {
      p.dataset = DatasetKind::Blobs;
      p.blob_classes = static_cast<int>(s.take_int("blob_classes", p.blob_classes));
      if (p.blob_classes < 2) throw ConfigError("blob_classes must be >= 2");
      p.blob_per_class = static_cast<int>(s.take_int("blob_per_class", p.blob_per_class));
      if (p.blob_per_class < 1) throw ConfigError("blob_per_class must be >= 1");
      p.blob_spread = s.take_double("blob_spread", p.blob_spread);
      check_nonnegative(p.blob_spread, "blob_spread");
    } else if (ds == "csv") {
      p.dataset = DatasetKind::Csv;
      p.csv_path = s.take_string("csv_path", "");
      if (p.csv_path.empty()) throw ConfigError("csv_path is required for dataset = csv");
      p.csv_classes = static_cast<int>(s.take_int("csv_classes", p.csv_classes));
      if (p.csv_classes < 2) throw ConfigError("csv_classes must be >= 2");
    } else {
      throw ConfigError("dataset: unknown kind '" + ds + "'");
    }
    p.layers = s.take_ints("layers", p.layers);
    if (p.layers.size() < 2) throw ConfigError("layers needs at least input and output sizes");
    for (int v : p.layers) {
      if (v < 1) throw ConfigError("layers entries must be positive");
    }
    p.batch_size = static_cast<int>(s.take_int("batch_size", p.batch_size));
    if (p.batch_size < 1) throw ConfigError("batch_size must be >= 1");
  } else {
    throw ConfigError("problem kind must be 'landscape' or 'dataset', got '" + kind + "'");
  }
  s.finish("problem kind " + kind);
  return p;
}

OptimizerConfig read_optimizer(Section& s, ProblemKind problem_kind) {
  OptimizerConfig o;
  const double default_wd = problem_kind == ProblemKind::Dataset ? 5e-4 : 0.0;
  const std::string kind = s.take_string("kind", "sgd");
  if (kind == "sgd") {
    o.kind = OptimizerKind::Sgd;
    o.beta = s.take_double("beta", o.beta);
    check_unit_interval(o.beta, "beta");
    o.weight_decay = s.take_double("weight_decay", default_wd);
    check_nonnegative(o.weight_decay, "weight_decay");
  } else if (kind == "lcam") {
    o.kind = OptimizerKind::Lcam;
    o.beta_sparse = s.take_double("beta_sparse", o.beta_sparse);
    check_unit_interval(o.beta_sparse, "beta_sparse");
    o.beta_nonsparse = s.take_double("beta_nonsparse", o.beta_nonsparse);
    check_unit_interval(o.beta_nonsparse, "beta_nonsparse");
    o.weight_decay = s.take_double("weight_decay", default_wd);
    check_nonnegative(o.weight_decay, "weight_decay");
  } else if (kind == "adagrad") {
    o.kind = OptimizerKind::AdaGrad;
    o.eps = s.take_double("eps", o.eps);
    check_positive(o.eps, "eps");
  } else if (kind == "adam") {
    o.kind = OptimizerKind::Adam;
    o.beta1 = s.take_double("beta1", o.beta1);
    check_unit_interval(o.beta1, "beta1");
    o.beta2 = s.take_double("beta2", o.beta2);
    check_unit_interval(o.beta2, "beta2");
    o.eps = s.take_double("eps", o.eps);
    check_positive(o.eps, "eps");
  } else {
    throw ConfigError("optimizer kind must be sgd, lcam, adagrad or adam, got '" + kind + "'");
  }
  s.finish("optimizer kind " + kind);
  return o;
}

ScheduleConfig read_schedule(Section& s) {
  ScheduleConfig c;
  const std::string kind = s.take_string("kind", "constant");
  c.base_lr = s.take_double("base_lr", c.base_lr);
  check_positive(c.base_lr, "base_lr");
  if (kind == "constant") {
    c.kind = ScheduleKind::Constant;
  } else if (kind == "step_drop") {
    c.kind = ScheduleKind::StepDrop;
    c.drop_epochs = s.take_ints("drop_epochs", c.drop_epochs);
    for (std::size_t i = 1; i < c.drop_epochs.size(); ++i) {
      if (c.drop_epochs[i] <= c.drop_epochs[i - 1]) {
        throw ConfigError("drop_epochs must be strictly increasing");
      }
    }
    c.drop_factor = s.take_double("drop_factor", c.drop_factor);
    check_unit_interval(c.drop_factor, "drop_factor");
  } else if (kind == "per_iteration_decay") {
    c.kind = ScheduleKind::PerIterationDecay;
    c.warmup_epochs = static_cast<int>(s.take_int("warmup_epochs", c.warmup_epochs));
    if (c.warmup_epochs < 0) throw ConfigError("warmup_epochs must be nonnegative");
    c.decay = s.take_double("decay", c.decay);
    check_unit_interval(c.decay, "decay");
  } else {
    throw ConfigError("schedule kind must be constant, step_drop or per_iteration_decay, got '" +
                      kind + "'");
  }
  s.finish("schedule kind " + kind);
  return c;
}

TrackerConfig read_tracker(Section& s) {
  TrackerConfig t;
  const std::string mode = s.take_string("mode", "window");
  if (mode == "window") {
    t.mode = TrackerMode::Window;
    t.window = s.take_int("window", t.window);
    if (t.window < 0) throw ConfigError("window must be >= 0 (0 selects one epoch)");
  } else if (mode == "cumulative") {
    t.mode = TrackerMode::Cumulative;
  } else if (mode == "ema") {
    t.mode = TrackerMode::Ema;
    t.alpha = s.take_double("alpha", t.alpha);
    check_unit_interval(t.alpha, "alpha");
  } else {
    throw ConfigError("tracker mode must be cumulative, window or ema, got '" + mode + "'");
  }
  s.finish("tracker mode " + mode);
  return t;
}

RunConfig read_run(Section& s) {
  RunConfig r;
  r.epochs = static_cast<int>(s.take_int("epochs", r.epochs));
  if (r.epochs < 1) throw ConfigError("epochs must be >= 1");
  r.seed = s.take_uint("seed", r.seed);
  r.output = s.take_string("output", r.output);
  if (r.output.empty()) throw ConfigError("output must be a non-empty path");
  if (auto v = s.take("loss_threshold")) {
    const double x = to_double("loss_threshold", *v);
    if (!std::isfinite(x)) throw ConfigError("loss_threshold must be finite");
    r.loss_threshold = x;
  }
  s.finish("");
  return r;
}

ExperimentConfig build(RawConfig& raw) {
  ExperimentConfig c;
  c.problem = read_problem(raw.section("problem"));
  c.optimizer = read_optimizer(raw.section("optimizer"), c.problem.kind);
  c.schedule = read_schedule(raw.section("schedule"));
  c.tracker = read_tracker(raw.section("tracker"));
  c.run = read_run(raw.section("run"));
  return c;
}

template <class T>
std::string join(const std::vector<T>& v, std::string (*fmt)(T)) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

std::string fmt_double_item(double x) { return format_double(x); }
std::string fmt_int_item(int x) { return std::to_string(x); }

// short rendering for labels
std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string ProblemConfig::id() const {
  std::string s;
  if (kind == ProblemKind::Landscape) {
    s = "landscape:" + landscape_id + "(ipe=" + std::to_string(iterations_per_epoch) +
        ",noise=" + format_double(gradient_noise);
    if (landscape_id == "quadratic") s += ",scales=" + join(quad_scales, fmt_double_item);
    if (landscape_id == "coupled_spring") {
      s += ",pairs=" + std::to_string(spring_pairs) + ",stiff=" + format_double(spring_stiff) +
           ",soft=" + format_double(spring_soft) + ",coupling=" + format_double(spring_coupling);
    }
    if (!theta0.empty()) s += ",theta0=" + join(theta0, fmt_double_item);
    s += ")";
  } else {
    s = "dataset:";
    switch (dataset) {
      case DatasetKind::TwoMoons:
        s += "two_moons(n=" + std::to_string(moons_n) + ",noise=" + format_double(moons_noise) + ")";
        break;
      case DatasetKind::Blobs:
        s += "blobs(classes=" + std::to_string(blob_classes) +
             ",per_class=" + std::to_string(blob_per_class) +
             ",spread=" + format_double(blob_spread) + ")";
        break;
      case DatasetKind::Csv:
        s += "csv(" + csv_path + ",classes=" + std::to_string(csv_classes) + ")";
        break;
    }
    s += "|mlp[" + join(layers, fmt_int_item) + "]|batch=" + std::to_string(batch_size);
  }
  return s;
}

std::string OptimizerConfig::id() const {
  switch (kind) {
    case OptimizerKind::Sgd:
      return "sgd(beta=" + brief(beta) + ",wd=" + brief(weight_decay) + ")";
    case OptimizerKind::Lcam:
      return "lcam(bs=" + brief(beta_sparse) + ",bn=" + brief(beta_nonsparse) +
             ",wd=" + brief(weight_decay) + ")";
    case OptimizerKind::AdaGrad:
      return "adagrad(eps=" + brief(eps) + ")";
    case OptimizerKind::Adam:
      return "adam(b1=" + brief(beta1) + ",b2=" + brief(beta2) + ",eps=" + brief(eps) + ")";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  RawConfig raw = parse_raw(text);
  return build(raw);
}

ExperimentConfig parse_config_with_overrides(
    const std::string& text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  RawConfig raw = parse_raw(text);
  for (const auto& [path, value] : overrides) {
    const std::size_t dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
      throw ConfigError("override key '" + path + "' must look like section.key");
    }
    const std::string section = path.substr(0, dot);
    if (!raw.sections.count(section)) {
      static const std::vector<std::string> known = {"problem", "optimizer", "schedule",
                                                     "tracker", "run"};
      if (std::find(known.begin(), known.end(), section) == known.end()) {
        throw ConfigError("override targets unknown section [" + section + "]");
      }
    }
    raw.section(section).override_value(path.substr(dot + 1), value);
  }
  return build(raw);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[problem]\n";
  out << "kind = " << to_string(c.problem.kind) << "\n";
  if (c.problem.kind == ProblemKind::Landscape) {
    out << "landscape = " << c.problem.landscape_id << "\n";
    out << "iterations_per_epoch = " << c.problem.iterations_per_epoch << "\n";
    out << "gradient_noise = " << format_double(c.problem.gradient_noise) << "\n";
    if (!c.problem.theta0.empty()) {
      out << "theta0 = " << join(c.problem.theta0, fmt_double_item) << "\n";
    }
    out << "init_scale = " << format_double(c.problem.init_scale) << "\n";
    if (c.problem.landscape_id == "quadratic") {
      out << "quad_scales = " << join(c.problem.quad_scales, fmt_double_item) << "\n";
    }
    if (c.problem.landscape_id == "coupled_spring") {
      out << "spring_pairs = " << c.problem.spring_pairs << "\n";
      out << "spring_stiff = " << format_double(c.problem.spring_stiff) << "\n";
      out << "spring_soft = " << format_double(c.problem.spring_soft) << "\n";
      out << "spring_coupling = " << format_double(c.problem.spring_coupling) << "\n";
    }
  } else {
    out << "dataset = " << to_string(c.problem.dataset) << "\n";
    switch (c.problem.dataset) {
      case DatasetKind::TwoMoons:
        out << "moons_n = " << c.problem.moons_n << "\n";
        out << "moons_noise = " << format_double(c.problem.moons_noise) << "\n";
        break;
      case DatasetKind::Blobs:
        out << "blob_classes = " << c.problem.blob_classes << "\n";
        out << "blob_per_class = " << c.problem.blob_per_class << "\n";
        out << "blob_spread = " << format_double(c.problem.blob_spread) << "\n";
        break;
      case DatasetKind::Csv:
        out << "csv_path = " << c.problem.csv_path << "\n";
        out << "csv_classes = " << c.problem.csv_classes << "\n";
        break;
    }
    out << "layers = " << join(c.problem.layers, fmt_int_item) << "\n";
    out << "batch_size = " << c.problem.batch_size << "\n";
  }

  out << "\n[optimizer]\n";
  out << "kind = " << to_string(c.optimizer.kind) << "\n";
  switch (c.optimizer.kind) {
    case OptimizerKind::Sgd:
      out << "beta = " << format_double(c.optimizer.beta) << "\n";
      out << "weight_decay = " << format_double(c.optimizer.weight_decay) << "\n";
      break;
    case OptimizerKind::Lcam:
      out << "beta_sparse = " << format_double(c.optimizer.beta_sparse) << "\n";
      out << "beta_nonsparse = " << format_double(c.optimizer.beta_nonsparse) << "\n";
      out << "weight_decay = " << format_double(c.optimizer.weight_decay) << "\n";
      break;
    case OptimizerKind::AdaGrad:
      out << "eps = " << format_double(c.optimizer.eps) << "\n";
      break;
    case OptimizerKind::Adam:
      out << "beta1 = " << format_double(c.optimizer.beta1) << "\n";
      out << "beta2 = " << format_double(c.optimizer.beta2) << "\n";
      out << "eps = " << format_double(c.optimizer.eps) << "\n";
      break;
  }

  out << "\n[schedule]\n";
  out << "kind = " << to_string(c.schedule.kind) << "\n";
  out << "base_lr = " << format_double(c.schedule.base_lr) << "\n";
  if (c.schedule.kind == ScheduleKind::StepDrop) {
    out << "drop_epochs = " << join(c.schedule.drop_epochs, fmt_int_item) << "\n";
    out << "drop_factor = " << format_double(c.schedule.drop_factor) << "\n";
  }
  if (c.schedule.kind == ScheduleKind::PerIterationDecay) {
    out << "warmup_epochs = " << c.schedule.warmup_epochs << "\n";
    out << "decay = " << format_double(c.schedule.decay) << "\n";
  }

  out << "\n[tracker]\n";
  out << "mode = " << to_string(c.tracker.mode) << "\n";
  if (c.tracker.mode == TrackerMode::Window) out << "window = " << c.tracker.window << "\n";
  if (c.tracker.mode == TrackerMode::Ema) {
    out << "alpha = " << format_double(c.tracker.alpha) << "\n";
  }

  out << "\n[run]\n";
  out << "epochs = " << c.run.epochs << "\n";
  out << "seed = " << c.run.seed << "\n";
  out << "output = " << c.run.output << "\n";
  if (c.run.loss_threshold) {
    out << "loss_threshold = " << format_double(*c.run.loss_threshold) << "\n";
  }
  return out.str();
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << serialize_config(config);
  if (!out) throw IoError("failed writing config to '" + path + "'");
}

const char* to_string(ProblemKind k) {
  return k == ProblemKind::Landscape ? "landscape" : "dataset";
}

const char* to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::TwoMoons: return "two_moons";
    case DatasetKind::Blobs: return "blobs";
    case DatasetKind::Csv: return "csv";
  }
  return "?";
}

const char* to_string(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::Sgd: return "sgd";
    case OptimizerKind::Lcam: return "lcam";
    case OptimizerKind::AdaGrad: return "adagrad";
    case OptimizerKind::Adam: return "adam";
  }
  return "?";
}

}  // namespace lcam
