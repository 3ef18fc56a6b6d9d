#pragma once

#include <cstdint>
#include <string>

#include "lcam/tinynet.hpp"

namespace lcam {

// Reads rows of d real features followed by one integer label in
// [0, classes), then builds a stratified 80/20 split seeded from `seed`.
// Ragged rows, non-numeric cells and out-of-range labels are reported with
// their line number.
Dataset load_csv_dataset(const std::string& path, int classes, std::uint64_t seed);

// Writes features then label per row, reals at 17 significant digits.
void write_dataset_csv(const Dataset& dataset, const std::string& path);

}  // namespace lcam
