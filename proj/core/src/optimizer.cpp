#include "contrastfix/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace contrastfix {

namespace {

constexpr int kBisectionSteps = 40;
constexpr double kLightnessTolerance = 1e-4;
constexpr double kFiniteDifferenceStep = 1e-3;
constexpr int kGradientSteps = 50;
constexpr double kInitialStepSize = 0.01;
constexpr double kMinStepSize = 1e-5;
// Relaxed mode extends the recursion to this many iterations in total.
constexpr int kRelaxedRecursionIterations = 15;

// Background luminance at which pure black and pure white give the same contrast.
const double kBalancedLuminance = std::sqrt(1.05 * 0.05) - 0.05;

std::vector<double> ladder(double from, double to, double step) {
    std::vector<double> out;
    const int n = static_cast<int>(std::lround((to - from) / step));
    for (int i = 0; i <= n; ++i) out.push_back(std::round((from + i * step) * 100.0) / 100.0);
    return out;
}

/// Fixed state for one optimizer invocation: background, target, the color delta E
/// is measured against, and the pinned hue.
class SearchProblem {
public:
    SearchProblem(const OklchColor& reference, RgbColor bg, WcagTarget target, RgbColor original,
                  const SearchProbe& probe)
        : reference_{std::clamp(reference.l, 0.0, 1.0), std::max(reference.c, 0.0),
                     normalize_hue(reference.h)},
          bg_luminance_(relative_luminance(bg)),
          bg_oklab_l_(rgb_to_oklch(bg).l),
          required_(required_ratio(target)),
          original_lab_(rgb_to_lab(original)),
          hue_defined_(reference.c >= kAchromaticChroma),
          // Near-achromatic colors have no meaningful hue to hold, so they may lose
          // chroma but never gain it.
          chroma_cap_(reference.c < kHueCheckMinChroma ? std::max(reference.c, 0.0)
                                                       : std::numeric_limits<double>::infinity()),
          probe_(probe) {}

    const OklchColor& reference() const { return reference_; }
    double chroma_cap() const { return chroma_cap_; }

    Candidate evaluate(double l, double c) const {
        const OklchColor point{std::clamp(l, 0.0, 1.0), std::max(c, 0.0), reference_.h};
        if (probe_) probe_(point);
        GamutStatus status;
        const RgbColor rgb = quantize(oklch_to_linear_clipped(point, &status));
        Candidate out;
        out.oklch = OklchColor{point.l, status.clipped_chroma, point.h};
        out.rgb = rgb;
        out.ratio = contrast_ratio_from_luminance(relative_luminance(rgb), bg_luminance_);
        out.delta_e = delta_e_2000(rgb_to_lab(rgb), original_lab_);
        return out;
    }

    /// Contrast of the unquantized color; smooth enough for finite differences.
    double continuous_ratio(double l, double c) const {
        const OklchColor point{std::clamp(l, 0.0, 1.0), std::max(c, 0.0), reference_.h};
        if (probe_) probe_(point);
        return contrast_ratio_from_luminance(relative_luminance(oklch_to_linear_clipped(point)),
                                             bg_luminance_);
    }

    bool compliant(const Candidate& c) const { return c.ratio >= required_; }

    bool hue_preserved(const Candidate& c) const {
        if (!hue_defined_) return true;
        const OklchColor shipped = rgb_to_oklch(c.rgb);
        if (shipped.c < kHueCheckMinChroma) return true;
        return hue_distance(shipped.h, reference_.h) <= kHueToleranceDegrees;
    }

    bool feasible(const Candidate& c, double budget) const {
        return c.delta_e <= budget && hue_preserved(c);
    }

    /// +1 for lighter, -1 for darker; the direction away from the background first.
    std::array<int, 2> directions() const {
        int away;
        if (reference_.l > bg_oklab_l_) {
            away = 1;
        } else if (reference_.l < bg_oklab_l_) {
            away = -1;
        } else {
            away = bg_luminance_ > kBalancedLuminance ? -1 : 1;
        }
        return {away, -away};
    }

private:
    OklchColor reference_;
    double bg_luminance_;
    double bg_oklab_l_;
    double required_;
    LabColor original_lab_;
    bool hue_defined_;
    double chroma_cap_;
    const SearchProbe& probe_;
};

/// Best non-compliant fallback: highest ratio, then lowest delta E.
class BestCandidate {
public:
    void offer(const Candidate& c) {
        if (!best_ || c.ratio > best_->ratio ||
            (c.ratio == best_->ratio && c.delta_e < best_->delta_e)) {
            best_ = c;
        }
    }
    const std::optional<Candidate>& get() const { return best_; }

private:
    std::optional<Candidate> best_;
};

std::optional<Candidate> lightness_search(const SearchProblem& problem, double budget,
                                          BestCandidate* best) {
    const OklchColor& ref = problem.reference();
    const Candidate start = problem.evaluate(ref.l, ref.c);
    if (problem.compliant(start)) return start;

    std::optional<Candidate> found;
    for (const int dir : problem.directions()) {
        const double end = dir > 0 ? 1.0 : 0.0;
        if (ref.l == end) continue;

        const Candidate far = problem.evaluate(end, ref.c);
        if (problem.compliant(far)) {
            double lo = ref.l;
            double hi = end;
            for (int i = 0; i < kBisectionSteps && std::fabs(hi - lo) >= kLightnessTolerance; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (problem.compliant(problem.evaluate(mid, ref.c))) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            const Candidate hit = problem.evaluate(hi, ref.c);
            if (problem.feasible(hit, budget) && (!found || hit.delta_e < found->delta_e)) {
                found = hit;
            }
        }

        if (best != nullptr && !found) {
            // Furthest lightness in this direction that stays inside the budget.
            if (far.delta_e <= budget) {
                if (problem.hue_preserved(far)) best->offer(far);
                continue;
            }
            double lo = ref.l;
            double hi = end;
            for (int i = 0; i < kBisectionSteps && std::fabs(hi - lo) >= kLightnessTolerance; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (problem.evaluate(mid, ref.c).delta_e <= budget) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const Candidate edge = problem.evaluate(lo, ref.c);
            if (problem.feasible(edge, budget)) best->offer(edge);
        }
    }
    return found;
}

std::optional<Candidate> gradient_search(const SearchProblem& problem, double budget,
                                         BestCandidate* best) {
    const OklchColor& ref = problem.reference();
    const double chroma_cap = problem.chroma_cap();
    double l = ref.l;
    double c = std::min(ref.c, chroma_cap);

    Candidate current = problem.evaluate(l, c);
    if (problem.compliant(current)) return current;
    double objective = problem.continuous_ratio(l, c);

    for (int step = 0; step < kGradientSteps; ++step) {
        const double l_plus = std::min(l + kFiniteDifferenceStep, 1.0);
        const double l_minus = std::max(l - kFiniteDifferenceStep, 0.0);
        const double grad_l = (problem.continuous_ratio(l_plus, c) -
                               problem.continuous_ratio(l_minus, c)) / (l_plus - l_minus);

        double grad_c = 0.0;
        const double c_plus = std::min(c + kFiniteDifferenceStep, chroma_cap);
        const double c_minus = std::max(c - kFiniteDifferenceStep, 0.0);
        if (c_plus > c_minus) {
            grad_c = (problem.continuous_ratio(l, c_plus) - problem.continuous_ratio(l, c_minus)) /
                     (c_plus - c_minus);
        }

        const double norm = std::hypot(grad_l, grad_c);
        if (norm == 0.0 || !std::isfinite(norm)) break;

        bool moved = false;
        for (double size = kInitialStepSize; size >= kMinStepSize; size *= 0.5) {
            const double next_l = l + size * grad_l / norm;
            const double next_c = c + size * grad_c / norm;
            if (next_l < 0.0 || next_l > 1.0 || next_c < 0.0 || next_c > chroma_cap) continue;
            const double next_objective = problem.continuous_ratio(next_l, next_c);
            if (next_objective <= objective) continue;
            const Candidate trial = problem.evaluate(next_l, next_c);
            if (!problem.feasible(trial, budget)) continue;
            l = next_l;
            // Keep the parameter on the displayable surface after clipping.
            c = trial.oklch.c;
            objective = problem.continuous_ratio(l, c);
            current = trial;
            moved = true;
            break;
        }
        if (!moved) break;
        if (best != nullptr) best->offer(current);
        if (problem.compliant(current)) return current;
    }
    return std::nullopt;
}

FixResult summarize(RgbColor text, RgbColor bg, WcagTarget target, RgbColor fixed, int iterations) {
    FixResult out;
    out.color = fixed;
    out.achieved_ratio = contrast_ratio(fixed, bg);
    out.success = passes(out.achieved_ratio, target);
    out.delta_e_from_original = text == fixed ? 0.0 : delta_e_2000(text, fixed);
    out.iterations_used = iterations;
    out.hue_drift_degrees = hue_distance(rgb_to_oklch(text).h, rgb_to_oklch(fixed).h);
    return out;
}

struct Recursion {
    RgbColor current;
    int iterations = 0;
    bool stalled = false;
};

/// Recursive refinement: each round runs the strict optimizer with delta E measured
/// from the current color, until compliant, at a fixed point, or out of iterations.
void recurse(Recursion& state, double pinned_hue, RgbColor bg, WcagTarget target,
             std::span<const double> sequence, int max_iterations, const SearchProbe& probe) {
    while (!state.stalled && state.iterations < max_iterations) {
        if (passes(contrast_ratio(state.current, bg), target)) return;
        OklchColor reference = rgb_to_oklch(state.current);
        reference.h = pinned_hue;
        const Candidate next =
            strict_optimize(reference, bg, target, sequence, state.current, probe);
        ++state.iterations;
        if (next.rgb == state.current) {
            state.stalled = true;
            return;
        }
        state.current = next.rgb;
    }
}

FixResult run_strict(RgbColor text, RgbColor bg, WcagTarget target,
                     std::span<const double> sequence, const SearchProbe& probe) {
    if (passes(contrast_ratio(text, bg), target)) return summarize(text, bg, target, text, 0);
    const Candidate c = strict_optimize(rgb_to_oklch(text), bg, target, sequence, text, probe);
    return summarize(text, bg, target, c.rgb, 1);
}

FixResult run_recursive(RgbColor text, RgbColor bg, WcagTarget target,
                        std::span<const double> sequence, int max_iterations,
                        const SearchProbe& probe) {
    Recursion state{text};
    recurse(state, rgb_to_oklch(text).h, bg, target, sequence, max_iterations, probe);
    return summarize(text, bg, target, state.current, state.iterations);
}

FixResult run_relaxed(RgbColor text, RgbColor bg, WcagTarget target,
                      std::span<const double> relaxed, int total_iterations,
                      const SearchProbe& probe) {
    const std::vector<double> per_step = recursive_sequence();
    const double hue = rgb_to_oklch(text).h;

    Recursion extended{text};
    recurse(extended, hue, bg, target, per_step, ModeConfig::defaults(Mode::kRecursive).max_iterations,
            probe);
    const FixResult recursive = summarize(text, bg, target, extended.current, extended.iterations);
    if (recursive.success) return recursive;

    // Path A: keep recursing from where the default recursion stopped.
    recurse(extended, hue, bg, target, per_step, total_iterations, probe);
    const FixResult path_a = summarize(text, bg, target, extended.current, extended.iterations);

    // Path B: one relaxed single-shot pass from the original color.
    const Candidate b = strict_optimize(rgb_to_oklch(text), bg, target, relaxed, text, probe);
    const FixResult path_b = summarize(text, bg, target, b.rgb, extended.iterations + 1);

    if (path_a.success && path_b.success) {
        return path_b.delta_e_from_original < path_a.delta_e_from_original ? path_b : path_a;
    }
    if (path_a.success) return path_a;
    if (path_b.success) return path_b;
    if (path_b.achieved_ratio > path_a.achieved_ratio ||
        (path_b.achieved_ratio == path_a.achieved_ratio &&
         path_b.delta_e_from_original < path_a.delta_e_from_original)) {
        return path_b;
    }
    return path_a;
}

}  // namespace

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::kStrict: return "strict";
        case Mode::kRecursive: return "recursive";
        case Mode::kRelaxed: return "relaxed";
    }
    return "unknown";
}

std::vector<double> strict_sequence() {
    std::vector<double> seq = ladder(0.8, 2.4, 0.2);
    seq.insert(seq.end(), {2.5, 3.0, 3.5, 4.0, 5.0});
    return seq;
}

std::vector<double> recursive_sequence() { return ladder(0.8, 3.0, 0.2); }

std::vector<double> relaxed_sequence() {
    std::vector<double> seq = strict_sequence();
    const std::vector<double> tail = ladder(6.0, 15.0, 1.0);
    seq.insert(seq.end(), tail.begin(), tail.end());
    return seq;
}

ModeConfig ModeConfig::defaults(Mode mode) {
    switch (mode) {
        case Mode::kStrict: return ModeConfig{mode, 5.0, 1, 1, strict_sequence()};
        case Mode::kRecursive: return ModeConfig{mode, 3.0, 10, 1, recursive_sequence()};
        case Mode::kRelaxed:
            return ModeConfig{mode, 15.0, kRelaxedRecursionIterations, 2, relaxed_sequence()};
    }
    return ModeConfig{};
}

std::optional<Candidate> binary_search_lightness(const OklchColor& reference, RgbColor bg,
                                                 WcagTarget target, double budget,
                                                 RgbColor original, const SearchProbe& probe) {
    const SearchProblem problem(reference, bg, target, original, probe);
    return lightness_search(problem, budget, nullptr);
}

std::optional<Candidate> gradient_refine(const OklchColor& reference, RgbColor bg,
                                         WcagTarget target, double budget, RgbColor original,
                                         const SearchProbe& probe) {
    const SearchProblem problem(reference, bg, target, original, probe);
    return gradient_search(problem, budget, nullptr);
}

Candidate strict_optimize(const OklchColor& reference, RgbColor bg, WcagTarget target,
                          std::span<const double> sequence, RgbColor original,
                          const SearchProbe& probe) {
    const SearchProblem problem(reference, bg, target, original, probe);
    const Candidate start = problem.evaluate(problem.reference().l, problem.reference().c);
    if (problem.compliant(start)) return start;

    BestCandidate best;
    best.offer(start);
    for (const double budget : sequence) {
        if (auto hit = lightness_search(problem, budget, &best)) return *hit;
        if (auto hit = gradient_search(problem, budget, &best)) return *hit;
    }
    return *best.get();
}

Candidate strict_optimize(RgbColor text, RgbColor bg, WcagTarget target,
                          std::span<const double> sequence, RgbColor original) {
    return strict_optimize(rgb_to_oklch(text), bg, target, sequence, original);
}

FixResult fix_mode0(RgbColor text, RgbColor bg, WcagTarget target) {
    return make_readable(text, bg, ModeConfig::defaults(Mode::kStrict), target);
}

FixResult fix_mode1(RgbColor text, RgbColor bg, WcagTarget target) {
    return make_readable(text, bg, ModeConfig::defaults(Mode::kRecursive), target);
}

FixResult fix_mode2(RgbColor text, RgbColor bg, WcagTarget target) {
    return make_readable(text, bg, ModeConfig::defaults(Mode::kRelaxed), target);
}

FixResult make_readable(RgbColor text, RgbColor bg, const ModeConfig& mode, WcagTarget target,
                        const SearchProbe& probe) {
    if (passes(contrast_ratio(text, bg), target)) return summarize(text, bg, target, text, 0);
    switch (mode.mode) {
        case Mode::kStrict:
            return run_strict(text, bg, target, mode.delta_e_sequence, probe);
        case Mode::kRecursive:
            return run_recursive(text, bg, target, mode.delta_e_sequence, mode.max_iterations,
                                 probe);
        case Mode::kRelaxed:
            return run_relaxed(text, bg, target, mode.delta_e_sequence, mode.max_iterations,
                               probe);
    }
    return summarize(text, bg, target, text, 0);
}

}  // namespace contrastfix
