#include "lcam/trace.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lcam/error.hpp"

namespace lcam {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double_field(const std::string& s, const char* field, std::size_t line) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DataError(std::string("trace line ") + std::to_string(line) + ": bad " + field +
                    " value '" + s + "'");
  }
  return x;
}

std::int64_t parse_int_field(const std::string& s, const char* field, std::size_t line) {
  char* end = nullptr;
  const long long x = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DataError(std::string("trace line ") + std::to_string(line) + ": bad " + field +
                    " value '" + s + "'");
  }
  return x;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  out << kTraceCsvHeader << "\n";
  for (const TraceRecord& r : trace) {
    out << r.epoch << ',' << r.global_iteration << ',' << fmt17(r.lr) << ',' << fmt17(r.loss)
        << ',' << fmt17(r.mean_loss) << ',' << to_string(r.phase) << ','
        << fmt17(r.beta_applied) << ',' << (r.test_error ? fmt17(*r.test_error) : "") << ','
        << r.wall_ms << "\n";
  }
  out.flush();
  if (!out) {
    throw IoError("failed writing trace to '" + path + "': " + std::strerror(errno));
  }
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open trace file '" + path + "': " + std::strerror(errno));
  }
  std::string line;
  if (!std::getline(in, line)) throw DataError("trace file '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceCsvHeader) {
    throw DataError("trace file '" + path + "' has an unexpected header");
  }
  std::vector<TraceRecord> trace;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 9) {
      throw DataError("trace line " + std::to_string(lineno) + ": expected 9 fields, got " +
                      std::to_string(fields.size()));
    }
    TraceRecord r;
    r.epoch = static_cast<int>(parse_int_field(fields[0], "epoch", lineno));
    r.global_iteration = parse_int_field(fields[1], "global_iteration", lineno);
    r.lr = parse_double_field(fields[2], "lr", lineno);
    r.loss = parse_double_field(fields[3], "loss", lineno);
    r.mean_loss = parse_double_field(fields[4], "mean_loss", lineno);
    if (fields[5] == "Sparse") {
      r.phase = Phase::Sparse;
    } else if (fields[5] == "NonSparse") {
      r.phase = Phase::NonSparse;
    } else {
      throw DataError("trace line " + std::to_string(lineno) + ": bad phase '" + fields[5] + "'");
    }
    r.beta_applied = parse_double_field(fields[6], "beta_applied", lineno);
    if (!fields[7].empty()) {
      r.test_error = parse_double_field(fields[7], "test_error", lineno);
    }
    r.wall_ms = parse_int_field(fields[8], "wall_ms", lineno);
    trace.push_back(r);
  }
  return trace;
}

std::pair<double, double> phase_occupancy(const std::vector<TraceRecord>& trace) {
  if (trace.empty()) throw DataError("phase_occupancy needs a non-empty trace");
  if (trace.size() < 2) {
    throw DataError("phase_occupancy needs at least one decided iteration");
  }
  std::int64_t sparse = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].phase == Phase::Sparse) ++sparse;
  }
  const double n = static_cast<double>(trace.size() - 1);
  return {static_cast<double>(sparse) / n, static_cast<double>(trace.size() - 1 - sparse) / n};
}

ComparisonReport compare_runs(const std::vector<RunTrace>& traces, double loss_threshold) {
  if (traces.size() < 2) throw ConfigError("compare_runs needs at least two traces");
  for (const RunTrace& t : traces) {
    if (t.records.empty()) throw DataError("run '" + t.label + "' has an empty trace");
    if (!t.problem_id.empty() && !traces.front().problem_id.empty() &&
        t.problem_id != traces.front().problem_id) {
      throw ConfigError("runs '" + traces.front().label + "' and '" + t.label +
                        "' cover different problems");
    }
  }

  ComparisonReport report;
  report.loss_threshold = loss_threshold;
  for (const RunTrace& t : traces) {
    RunSummary row;
    row.label = t.label;
    row.final_loss = t.records.back().loss;
    for (const TraceRecord& r : t.records) {
      if (r.test_error && (!row.best_test_error || *r.test_error < *row.best_test_error)) {
        row.best_test_error = r.test_error;
        row.best_epoch = r.epoch;
      }
      if (!row.iterations_to_threshold && r.loss < loss_threshold) {
        row.iterations_to_threshold = r.global_iteration;
      }
    }
    if (t.records.size() >= 2) {
      const auto [sparse, nonsparse] = phase_occupancy(t.records);
      row.sparse_fraction = sparse;
      row.nonsparse_fraction = nonsparse;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string opt_to_string(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", *v);
  return buf;
}

}  // namespace

std::string format_report(const ComparisonReport& report) {
  std::ostringstream out;
  out << "run\tfinal_loss\tbest_test_error\tbest_epoch\titers_to_loss<" << report.loss_threshold
      << "\tsparse_frac\tnonsparse_frac\n";
  for (const RunSummary& row : report.rows) {
    out << row.label << '\t';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", row.final_loss);
    out << buf << '\t' << opt_to_string(row.best_test_error) << '\t'
        << (row.best_epoch ? std::to_string(*row.best_epoch) : "-") << '\t'
        << (row.iterations_to_threshold ? std::to_string(*row.iterations_to_threshold) : "never")
        << '\t' << opt_to_string(row.sparse_fraction) << '\t'
        << opt_to_string(row.nonsparse_fraction) << "\n";
  }
  return out.str();
}

void write_report_csv(const ComparisonReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  out << "run,final_loss,best_test_error,best_epoch,iterations_to_threshold,sparse_fraction,"
         "nonsparse_fraction\n";
  for (const RunSummary& row : report.rows) {
    out << row.label << ',' << fmt17(row.final_loss) << ','
        << (row.best_test_error ? fmt17(*row.best_test_error) : "") << ','
        << (row.best_epoch ? std::to_string(*row.best_epoch) : "") << ','
        << (row.iterations_to_threshold ? std::to_string(*row.iterations_to_threshold) : "") << ','
        << (row.sparse_fraction ? fmt17(*row.sparse_fraction) : "") << ','
        << (row.nonsparse_fraction ? fmt17(*row.nonsparse_fraction) : "") << "\n";
  }
  if (!out) {
    throw IoError("failed writing report to '" + path + "': " + std::strerror(errno));
  }
}

}  // namespace lcam
