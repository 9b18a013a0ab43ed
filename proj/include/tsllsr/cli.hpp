#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsllsr/types.hpp"

namespace tsllsr::cli {

struct TrainOptions {
    std::string data_path;
    bool has_header = false;
    Hyperparams hp;
    std::string model_path;
    std::string trace_path;  // optional per-iteration CSV
};

struct EvalOptions {
    std::string data_path;
    bool has_header = false;
    int per_class_train = 1;
    int repeats = 10;
    std::uint64_t seed = 0;
    Hyperparams hp;
    bool baseline = false;
    std::string out_path;  // optional machine-readable CSV
};

struct GridOptions {
    EvalOptions eval;
    std::vector<double> alphas;  // empty = the default 7-value grid
    std::vector<double> betas;
    std::string out_path;
};

struct SweepOptions {
    EvalOptions eval;
    std::vector<Index> p_values;
    std::string out_path;
};

struct FeaturesOptions {
    std::string model_path;
    std::string data_path;
    bool has_header = false;
    std::string out_path;
};

/// Accuracies (%) per repeat for one evaluation configuration.
struct RepeatAccuracies {
    std::vector<double> tsl;
    std::vector<double> lsr;  // filled only when the baseline runs
};

/// Shared harness: normalize, split per repeat, fit, score on the held-out
/// part. Deterministic in (data, options).
RepeatAccuracies evaluate_repeats(const Dataset& dataset, const EvalOptions& opt);

double mean(const std::vector<double>& v);
double sample_std(const std::vector<double>& v);

int run_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);
int run_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int run_grid(const GridOptions& opt, std::ostream& out, std::ostream& err);
int run_sweep_p(const SweepOptions& opt, std::ostream& out, std::ostream& err);
int run_features(const FeaturesOptions& opt, std::ostream& out, std::ostream& err);

/// Full argv-style entry point (args without the program name).
/// Exit codes: 0 success, 1 runtime/numerical error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tsllsr::cli
