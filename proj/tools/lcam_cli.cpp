#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcam/config.hpp"
#include "lcam/dataset_io.hpp"
#include "lcam/error.hpp"
#include "lcam/experiment.hpp"
#include "lcam/landscapes.hpp"
#include "lcam/rng.hpp"
#include "lcam/tinynet.hpp"
#include "lcam/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitDiverged = 3;

std::string stem_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

void write_meta(const lcam::RunResult& result, const std::string& trace_path) {
  nlohmann::json meta{
      {"label", result.trace.label},
      {"problem", result.trace.problem_id},
      {"optimizer", result.trace.optimizer_id},
      {"seed", result.trace.seed},
      {"status", result.status == lcam::RunStatus::Completed ? "completed" : "diverged"},
      {"last_good_iteration", result.last_good_iteration},
  };
  const std::string path = trace_path + ".meta.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lcam::IoError("cannot open '" + path + "' for writing");
  out << meta.dump(2) << "\n";
}

// Runs one experiment and persists trace + sidecar; returns the result.
lcam::RunResult execute(const lcam::ExperimentConfig& config, const std::string& label) {
  lcam::RunResult result = lcam::run_experiment(config);
  if (!label.empty()) result.trace.label = label;
  const std::string path = lcam::resolve_output_path(config.run.output);
  lcam::write_trace_csv(result.trace.records, path);
  write_meta(result, path);
  std::printf("%-18s wrote %s (%zu records, %s)\n", result.trace.label.c_str(), path.c_str(),
              result.trace.records.size(),
              result.status == lcam::RunStatus::Completed ? "completed" : "DIVERGED");
  return result;
}

lcam::RunTrace load_run_trace(const std::string& path) {
  lcam::RunTrace t;
  t.records = lcam::read_trace_csv(path);
  t.label = stem_of(path);
  std::ifstream meta(path + ".meta.json");
  if (meta) {
    nlohmann::json j;
    meta >> j;
    t.label = j.value("label", t.label);
    t.problem_id = j.value("problem", "");
    t.optimizer_id = j.value("optimizer", "");
    t.seed = j.value("seed", 0ULL);
  }
  return t;
}

int cmd_run(const std::string& config_path) {
  const lcam::ExperimentConfig config = lcam::load_config(config_path);
  const lcam::RunResult result = execute(config, "");
  if (result.status == lcam::RunStatus::Diverged) {
    std::fprintf(stderr, "run diverged; last good iteration %lld\n",
                 static_cast<long long>(result.last_good_iteration));
    return kExitDiverged;
  }
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& paths, double threshold,
                const std::string& out_csv) {
  std::vector<lcam::RunTrace> traces;
  traces.reserve(paths.size());
  for (const auto& p : paths) traces.push_back(load_run_trace(p));
  const lcam::ComparisonReport report = lcam::compare_runs(traces, threshold);
  std::cout << lcam::format_report(report);
  if (!out_csv.empty()) {
    lcam::write_report_csv(report, lcam::resolve_output_path(out_csv));
    std::cout << "report written to " << lcam::resolve_output_path(out_csv) << "\n";
  }
  return kExitOk;
}

int cmd_grad_check(const std::string& only_landscape) {
  bool ok = true;
  lcam::Rng rng(20240913);
  for (const std::string& id : lcam::landscape_ids()) {
    if (!only_landscape.empty() && id != only_landscape) continue;
    const lcam::Landscape land = lcam::make_landscape(id);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      lcam::Vecd theta(land.dimension);
      for (lcam::Index i = 0; i < land.dimension; ++i) theta[i] = rng.uniform(-1.5, 1.5);
      const lcam::Vecd an = land.grad(theta);
      const lcam::Vecd fd = lcam::finite_difference_gradient(land, theta, 1e-5);
      for (lcam::Index i = 0; i < land.dimension; ++i) {
        const double err = std::abs(fd[i] - an[i]);
        const double allowed = std::max(1e-5 * std::abs(an[i]), 1e-7);
        worst = std::max(worst, err / allowed);
        if (err > allowed) ok = false;
      }
    }
    std::printf("%-16s %s (worst error at %.3g of tolerance)\n", id.c_str(),
                worst <= 1.0 ? "OK" : "FAIL", worst);
  }

  if (only_landscape.empty()) {
    // finite differences over a sample of MLP coordinates
    const std::vector<int> layers{2, 8, 3};
    lcam::MlpModel model = lcam::init_mlp(layers, 7);
    lcam::Matd x(5, 2);
    std::vector<int> y(5);
    for (int i = 0; i < 5; ++i) {
      x(i, 0) = rng.uniform(-1.0, 1.0);
      x(i, 1) = rng.uniform(-1.0, 1.0);
      y[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(3));
    }
    lcam::Vecd grad;
    lcam::forward_loss(model, x, y, grad);
    const double h = 1e-5;
    double worst = 0.0;
    bool mlp_ok = true;
    for (int trial = 0; trial < 30; ++trial) {
      const auto k = static_cast<lcam::Index>(rng.uniform_int(
          static_cast<std::uint64_t>(model.parameter_count())));
      lcam::MlpModel probe = model;
      lcam::Vecd scratch;
      probe.params[k] = model.params[k] + h;
      const double fp = lcam::forward_loss(probe, x, y, scratch);
      probe.params[k] = model.params[k] - h;
      const double fm = lcam::forward_loss(probe, x, y, scratch);
      const double fd = (fp - fm) / (2.0 * h);
      const double err = std::abs(fd - grad[k]);
      const double allowed = std::max(1e-4 * std::abs(grad[k]), 1e-7);
      worst = std::max(worst, err / allowed);
      if (err > allowed) mlp_ok = false;
    }
    std::printf("%-16s %s (worst error at %.3g of tolerance)\n", "mlp-backprop",
                mlp_ok ? "OK" : "FAIL", worst);
    ok = ok && mlp_ok;
  }
  return ok ? kExitOk : kExitValidation;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<std::string>& values, double threshold) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw lcam::IoError("cannot open config file '" + config_path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::vector<lcam::RunTrace> traces;
  for (const std::string& value : values) {
    lcam::ExperimentConfig config =
        lcam::parse_config_with_overrides(text, {{param, value}});
    const std::string stem = stem_of(config.run.output);
    config.run.output = stem + "__" + param + "=" + value + ".csv";
    const std::string label = param + "=" + value;
    traces.push_back(execute(config, label).trace);
  }
  if (traces.size() >= 2) {
    std::cout << lcam::format_report(lcam::compare_runs(traces, threshold));
  }
  return kExitOk;
}

int cmd_preset_four_group(const std::string& problem, std::uint64_t seed, double threshold,
                          bool sequential) {
  auto groups = lcam::four_group_preset(problem, seed);
  const bool has_threshold = threshold == threshold;  // NaN means "use preset default"
  for (auto& [label, config] : groups) {
    if (has_threshold) config.run.loss_threshold = threshold;
    lcam::save_config(config, lcam::resolve_output_path("four_group_" + problem + "_" + label +
                                                        ".conf"));
  }

  // Independent runs; each owns its state and output file.
  std::vector<lcam::RunResult> results(groups.size());
  if (sequential) {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      results[i] = execute(groups[i].second, groups[i].first);
    }
  } else {
    std::vector<std::future<lcam::RunResult>> futures;
    futures.reserve(groups.size());
    for (auto& [label, config] : groups) {
      futures.push_back(std::async(std::launch::async, execute, std::cref(config),
                                   std::cref(label)));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
  }

  std::vector<lcam::RunTrace> traces;
  bool diverged = false;
  for (auto& r : results) {
    diverged = diverged || r.status == lcam::RunStatus::Diverged;
    traces.push_back(std::move(r.trace));
  }
  const double th = has_threshold
                        ? threshold
                        : groups.front().second.run.loss_threshold.value_or(0.1);
  const lcam::ComparisonReport report = lcam::compare_runs(traces, th);
  std::cout << lcam::format_report(report);
  lcam::write_report_csv(report,
                         lcam::resolve_output_path("four_group_" + problem + "_report.csv"));
  return diverged ? kExitDiverged : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loss-phase momentum experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "execute one experiment config");
  run->add_option("config", config_path, "config file")->required();

  std::vector<std::string> trace_paths;
  double threshold = 0.1;
  std::string report_out;
  auto* compare = app.add_subcommand("compare", "summarize and compare trace CSVs");
  compare->add_option("traces", trace_paths, "trace CSV files")->expected(-2);
  compare->add_option("--threshold", threshold, "loss threshold for iterations-to-threshold");
  compare->add_option("--out", report_out, "also write the report as CSV");

  std::string only_landscape;
  auto* grad = app.add_subcommand("grad-check", "finite-difference gradient verification");
  grad->add_option("--landscape", only_landscape, "restrict to one landscape id");

  std::string sweep_config, sweep_param;
  std::vector<std::string> sweep_values;
  double sweep_threshold = 0.1;
  auto* sweep = app.add_subcommand("sweep", "grid sweep over one config key");
  sweep->add_option("config", sweep_config, "config file")->required();
  sweep->add_option("--param", sweep_param, "section.key to override")->required();
  sweep->add_option("--values", sweep_values, "comma separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--threshold", sweep_threshold, "loss threshold for the summary");

  std::string preset_name, preset_problem = "coupled_spring";
  std::uint64_t preset_seed = 42;
  double preset_threshold = std::nan("");
  bool preset_sequential = false;
  auto* preset = app.add_subcommand("preset", "run a packaged experiment preset");
  preset->add_option("name", preset_name, "preset name (four-group)")->required();
  preset->add_option("--problem", preset_problem, "problem id");
  preset->add_option("--seed", preset_seed, "run seed");
  preset->add_option("--threshold", preset_threshold, "loss threshold for the report");
  preset->add_flag("--sequential", preset_sequential, "run the groups one after another");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (compare->parsed()) return cmd_compare(trace_paths, threshold, report_out);
    if (grad->parsed()) return cmd_grad_check(only_landscape);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_param, sweep_values, sweep_threshold);
    if (preset->parsed()) {
      if (preset_name != "four-group") {
        throw lcam::ConfigError("unknown preset '" + preset_name + "'");
      }
      return cmd_preset_four_group(preset_problem, preset_seed, preset_threshold,
                                   preset_sequential);
    }
  } catch (const lcam::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kExitIo;
  } catch (const lcam::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitOk;
}
