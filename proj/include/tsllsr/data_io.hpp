#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "tsllsr/types.hpp"

namespace tsllsr {

/// Deterministic per-class train/test split request.
struct SplitSpec {
    int per_class_train = 1;
    std::uint64_t seed = 0;
    int repeat_index = 0;
};

/// Reads a row-per-sample CSV whose last column is an integer class label.
/// Labels are remapped to dense [0, c) in first-appearance order; the
/// original values are kept in Dataset::label_values.
Dataset load_csv(const std::string& path, bool has_header);

/// Draws exactly per_class_train samples of every class into the train set
/// by a pseudorandom permutation keyed on (seed, repeat_index, class); the
/// rest go to the test set. Same spec, same split.
std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitSpec& spec);

/// Versioned text format; 64-bit floats are written with 17 significant
/// digits so a load reproduces every entry bit for bit.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

} // namespace tsllsr
