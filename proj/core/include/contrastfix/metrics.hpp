#pragma once

#include <string_view>

#include "contrastfix/color.hpp"

namespace contrastfix {

enum class WcagLevel { kAA, kAAA };
enum class TextSize { kNormal, kLarge };

struct WcagTarget {
    WcagLevel level = WcagLevel::kAA;
    TextSize size = TextSize::kNormal;

    friend constexpr bool operator==(const WcagTarget&, const WcagTarget&) = default;
};

/// Minimum contrast ratio for a level / text-size combination (4.5, 3.0, 7.0, 4.5).
constexpr double required_ratio(WcagTarget target) {
    if (target.level == WcagLevel::kAA) return target.size == TextSize::kNormal ? 4.5 : 3.0;
    return target.size == TextSize::kNormal ? 7.0 : 4.5;
}

std::string_view to_string(WcagLevel level);

/// WCAG 2.1 relative luminance of an 8-bit color.
double relative_luminance(RgbColor c);

/// Luminance of an already-linear color; matches relative_luminance on quantized input.
double relative_luminance(const LinearRgb& c);

/// (L_lighter + 0.05) / (L_darker + 0.05), symmetric, in [1, 21].
double contrast_ratio_from_luminance(double a, double b);
double contrast_ratio(RgbColor a, RgbColor b);

/// CIEDE2000 with kL = kC = kH = 1.
double delta_e_2000(const LabColor& a, const LabColor& b);
double delta_e_2000(RgbColor a, RgbColor b);

/// Exact comparison; no rounding slack.
constexpr bool passes(double ratio, WcagTarget target) { return ratio >= required_ratio(target); }

}  // namespace contrastfix
