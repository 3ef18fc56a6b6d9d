#include "lcam/dataset_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <vector>

#include "lcam/error.hpp"
#include "lcam/rng.hpp"

namespace lcam {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ' && c != '\t') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Dataset load_csv_dataset(const std::string& path, int classes, std::uint64_t seed) {
  if (classes < 2) throw ConfigError("csv dataset needs classes >= 2");
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open dataset file '" + path + "': " + std::strerror(errno));
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_cells(line);
    if (cells.size() < 2) {
      throw DataError("line " + std::to_string(lineno) + ": need at least one feature and a label");
    }
    if (width == 0) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw DataError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                      " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> feats(cells.size() - 1);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      char* end = nullptr;
      feats[i] = std::strtod(cells[i].c_str(), &end);
      if (cells[i].empty() || end != cells[i].c_str() + cells[i].size()) {
        throw DataError("line " + std::to_string(lineno) + ": non-numeric feature cell '" +
                        cells[i] + "'");
      }
    }
    char* end = nullptr;
    const long lab = std::strtol(cells.back().c_str(), &end, 10);
    if (cells.back().empty() || end != cells.back().c_str() + cells.back().size()) {
      throw DataError("line " + std::to_string(lineno) + ": non-integer label cell '" +
                      cells.back() + "'");
    }
    if (lab < 0 || lab >= classes) {
      throw DataError("line " + std::to_string(lineno) + ": label " + std::to_string(lab) +
                      " outside [0, " + std::to_string(classes) + ")");
    }
    rows.push_back(std::move(feats));
    labels.push_back(static_cast<int>(lab));
  }
  if (rows.empty()) throw DataError("dataset file '" + path + "' contains no rows");

  Dataset ds;
  ds.classes = classes;
  ds.features.resize(static_cast<Index>(rows.size()), static_cast<Index>(width - 1));
  ds.labels = std::move(labels);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j + 1 < width; ++j) {
      ds.features(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }

  // Same stratified 80/20 policy as the generators.
  std::vector<std::vector<Index>> by_class(classes);
  for (Index i = 0; i < ds.size(); ++i) by_class[ds.labels[i]].push_back(i);
  Rng rng(mix_seed(seed, 0xC57));
  for (auto& idx : by_class) {
    rng.shuffle(idx);
    const auto cut =
        static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      (k < cut ? ds.train_idx : ds.test_idx).push_back(idx[k]);
    }
  }
  std::sort(ds.train_idx.begin(), ds.train_idx.end());
  std::sort(ds.test_idx.begin(), ds.test_idx.end());
  return ds;
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  }
  char buf[40];
  for (Index i = 0; i < dataset.size(); ++i) {
    for (Index j = 0; j < dataset.feature_dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", dataset.features(i, j));
      out << buf << ',';
    }
    out << dataset.labels[i] << "\n";
  }
  if (!out) {
    throw IoError("failed writing dataset to '" + path + "': " + std::strerror(errno));
  }
}

}  // namespace lcam
