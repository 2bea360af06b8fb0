#include "contrastfix/eval.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace contrastfix {

double percentile(std::span<const double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty list");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percentile rank must be in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    // Guard against p * n landing a hair above an integer.
    const double rank = std::ceil(p * n - 1e-9);
    const auto idx = static_cast<std::size_t>(std::clamp(rank, 1.0, n)) - 1;
    return sorted[idx];
}

BenchmarkReport summarize_outcomes(std::span<const PairOutcome> outcomes, Mode mode,
                                   WcagTarget target) {
    BenchmarkReport report;
    report.mode = mode;
    report.target = target;
    report.total_pairs = outcomes.size();
    if (outcomes.empty()) return report;

    std::array<CategoryStats, kCategoryCount> cats{};
    std::array<double, kCategoryCount> delta_sums{};
    std::vector<double> deltas;
    deltas.reserve(outcomes.size());
    std::size_t under = 0;

    for (const auto& o : outcomes) {
        const bool ok = o.result.success;
        const bool reasonable = o.initial_ratio > kReasonableRatio;
        report.success_count += ok;
        report.reasonable_pairs += reasonable;
        report.reasonable_success_count += reasonable && ok;
        deltas.push_back(o.result.delta_e_from_original);
        under += o.result.delta_e_from_original < kImperceptibleDeltaE;
        report.total_runtime_ms += o.runtime_ms;

        const auto k = static_cast<std::size_t>(o.category);
        cats[k].category = o.category;
        ++cats[k].pair_count;
        cats[k].success_count += ok;
        if (o.result.color != o.text) {
            ++cats[k].modified_count;
            delta_sums[k] += o.result.delta_e_from_original;
        }

        if (mode == Mode::kRelaxed && !ok && !is_edge_case(o.category) && reasonable) {
            report.unexplained_failures.push_back(o);
        }
    }

    const auto n = static_cast<double>(outcomes.size());
    report.success_rate_all = static_cast<double>(report.success_count) / n;
    report.success_rate_reasonable =
        report.reasonable_pairs == 0
            ? 0.0
            : static_cast<double>(report.reasonable_success_count) /
                  static_cast<double>(report.reasonable_pairs);
    report.delta_e_median = percentile(deltas, 0.5);
    report.delta_e_p90 = percentile(deltas, 0.9);
    report.delta_e_max = *std::max_element(deltas.begin(), deltas.end());
    report.fraction_under_2 = static_cast<double>(under) / n;
    report.per_pair_runtime_ms = report.total_runtime_ms / n;

    for (std::size_t k = 0; k < kCategoryCount; ++k) {
        if (cats[k].pair_count == 0) continue;
        cats[k].success_rate =
            static_cast<double>(cats[k].success_count) / static_cast<double>(cats[k].pair_count);
        cats[k].mean_delta_e_modified =
            cats[k].modified_count == 0 ? 0.0
                                        : delta_sums[k] / static_cast<double>(cats[k].modified_count);
        report.per_category.push_back(cats[k]);
    }
    return report;
}

BenchmarkReport run_benchmark(std::span<const ColorPair> pairs, const ModeConfig& mode,
                              WcagTarget target, std::vector<PairOutcome>* outcomes,
                              unsigned threads) {
    if (pairs.empty()) throw std::invalid_argument("benchmark needs at least one pair");

    std::vector<PairOutcome> results(pairs.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const ColorPair& p = pairs[i];
            PairOutcome& o = results[i];
            o.index = p.index;
            o.category = p.category;
            o.text = p.text;
            o.bg = p.bg;
            o.initial_ratio = p.initial_ratio;
            const auto t0 = std::chrono::steady_clock::now();
            o.result = make_readable(p.text, p.bg, mode, target);
            const auto t1 = std::chrono::steady_clock::now();
            o.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pairs.size())));
    if (threads == 1) {
        work(0, pairs.size());
    } else {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (pairs.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(pairs.size(), begin + chunk);
            if (begin < end) workers.emplace_back(work, begin, end);
        }
    }

    BenchmarkReport report = summarize_outcomes(results, mode.mode, target);
    if (outcomes != nullptr) *outcomes = std::move(results);
    return report;
}

}  // namespace contrastfix
