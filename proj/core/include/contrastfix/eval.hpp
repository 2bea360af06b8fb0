#pragma once

#include <span>
#include <vector>

#include "contrastfix/dataset.hpp"
#include "contrastfix/metrics.hpp"
#include "contrastfix/optimizer.hpp"

namespace contrastfix {

/// Pairs whose initial ratio exceeds this are "reasonable".
inline constexpr double kReasonableRatio = 2.0;
/// Delta E below which a change counts as imperceptible.
inline constexpr double kImperceptibleDeltaE = 2.0;

struct CategoryStats {
    Category category = Category::kBrandPrimary;
    std::size_t pair_count = 0;
    std::size_t success_count = 0;
    double success_rate = 0.0;
    /// Mean delta E over pairs whose color actually changed; 0 when none did.
    double mean_delta_e_modified = 0.0;
    std::size_t modified_count = 0;
};

struct PairOutcome {
    std::size_t index = 0;
    Category category = Category::kBrandPrimary;
    RgbColor text;
    RgbColor bg;
    double initial_ratio = 1.0;
    FixResult result;
    double runtime_ms = 0.0;
};

struct BenchmarkReport {
    Mode mode = Mode::kRecursive;
    WcagTarget target;
    std::size_t total_pairs = 0;
    std::size_t reasonable_pairs = 0;
    std::size_t success_count = 0;
    std::size_t reasonable_success_count = 0;
    double success_rate_all = 0.0;
    double success_rate_reasonable = 0.0;
    // Delta E statistics over all pairs, unchanged ones included.
    double delta_e_median = 0.0;
    double delta_e_p90 = 0.0;
    double delta_e_max = 0.0;
    double fraction_under_2 = 0.0;
    std::vector<CategoryStats> per_category;
    /// Sum of per-pair optimizer wall time, excluding generation and I/O.
    double total_runtime_ms = 0.0;
    double per_pair_runtime_ms = 0.0;
    /// Relaxed mode only: failing pairs that are neither edge cases nor below the
    /// reasonable-ratio line. Expected to be empty.
    std::vector<PairOutcome> unexplained_failures;
};

/// Nearest-rank percentile: element ceil(p * n) (1-based) of the sorted values,
/// first element for p = 0. Throws std::invalid_argument on empty input or p outside [0, 1].
double percentile(std::span<const double> values, double p);

/// Runs make_readable over every pair and aggregates. With `threads` > 1 the pairs are
/// split across workers; results are collected by index so the report does not depend
/// on scheduling. When `outcomes` is non-null it receives one entry per pair in input order.
BenchmarkReport run_benchmark(std::span<const ColorPair> pairs, const ModeConfig& mode,
                              WcagTarget target = {}, std::vector<PairOutcome>* outcomes = nullptr,
                              unsigned threads = 1);

/// Aggregation half of run_benchmark, exposed so reports can be rebuilt from stored outcomes.
BenchmarkReport summarize_outcomes(std::span<const PairOutcome> outcomes, Mode mode,
                                   WcagTarget target);

}  // namespace contrastfix
