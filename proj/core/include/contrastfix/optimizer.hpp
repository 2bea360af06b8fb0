#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "contrastfix/color.hpp"
#include "contrastfix/metrics.hpp"

namespace contrastfix {

enum class Mode { kStrict = 0, kRecursive = 1, kRelaxed = 2 };

std::string_view to_string(Mode mode);

/// Progressive thresholds for the single-shot strict optimizer:
/// 0.8 to 2.4 in steps of 0.2, then 2.5, 3.0, 3.5, 4.0, 5.0.
std::vector<double> strict_sequence();
/// Per-iteration thresholds for recursive refinement: 0.8 to 3.0 in steps of 0.2.
std::vector<double> recursive_sequence();
/// strict_sequence() followed by 6.0 to 15.0 in steps of 1.0.
std::vector<double> relaxed_sequence();

/// Per-mode policy. `defaults()` yields the published configuration:
///
///   mode        budget/step  iterations  paths
///   strict          5.0          1         1
///   recursive       3.0         10         1
///   relaxed        15.0         15         2
///
/// For the relaxed mode, `delta_e_sequence` drives the single-shot path and
/// `max_iterations` bounds the extended recursion; recursion steps always use
/// recursive_sequence().
struct ModeConfig {
    Mode mode = Mode::kRecursive;
    double max_delta_e_per_step = 3.0;
    int max_iterations = 10;
    int optimization_paths = 1;
    std::vector<double> delta_e_sequence;

    static ModeConfig defaults(Mode mode);
};

/// A point visited by the search. `rgb` is the quantized image of `oklch`; `ratio`
/// and `delta_e` are measured on `rgb` (delta_e against the step's original color).
struct Candidate {
    OklchColor oklch;
    RgbColor rgb;
    double ratio = 1.0;
    double delta_e = 0.0;
};

struct FixResult {
    RgbColor color;
    bool success = false;
    double achieved_ratio = 1.0;
    double delta_e_from_original = 0.0;
    int iterations_used = 0;
    double hue_drift_degrees = 0.0;
};

/// Called with every OKLCH point the search evaluates. Intended for tests.
using SearchProbe = std::function<void(const OklchColor&)>;

/// Hue drift allowed between a shipped color and the input hue, for colors whose
/// chroma on both sides is at least kHueCheckMinChroma.
inline constexpr double kHueToleranceDegrees = 2.5;
inline constexpr double kHueCheckMinChroma = 0.02;

/// Phase 1: bisection on L with C and h fixed. Tries the direction away from the
/// background first. Returns the compliant candidate with the smallest delta E from
/// `original` within `budget`, or nothing.
std::optional<Candidate> binary_search_lightness(const OklchColor& reference, RgbColor bg,
                                                 WcagTarget target, double budget,
                                                 RgbColor original,
                                                 const SearchProbe& probe = {});

/// Phase 2: ascent on the contrast ratio over (L, C) with h fixed, inside the delta E
/// ball of radius `budget` around `original`. Central differences, halving line search.
std::optional<Candidate> gradient_refine(const OklchColor& reference, RgbColor bg,
                                         WcagTarget target, double budget, RgbColor original,
                                         const SearchProbe& probe = {});

/// Runs both phases for each threshold of `sequence` in order and returns the first
/// compliant candidate. Otherwise returns the best candidate seen: highest ratio,
/// ties broken by lower delta E.
Candidate strict_optimize(const OklchColor& reference, RgbColor bg, WcagTarget target,
                          std::span<const double> sequence, RgbColor original,
                          const SearchProbe& probe = {});
Candidate strict_optimize(RgbColor text, RgbColor bg, WcagTarget target,
                          std::span<const double> sequence, RgbColor original);

FixResult fix_mode0(RgbColor text, RgbColor bg, WcagTarget target = {});
FixResult fix_mode1(RgbColor text, RgbColor bg, WcagTarget target = {});
FixResult fix_mode2(RgbColor text, RgbColor bg, WcagTarget target = {});

FixResult make_readable(RgbColor text, RgbColor bg,
                        const ModeConfig& mode = ModeConfig::defaults(Mode::kRecursive),
                        WcagTarget target = {}, const SearchProbe& probe = {});

}  // namespace contrastfix
