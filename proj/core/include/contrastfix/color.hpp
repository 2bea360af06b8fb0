#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace contrastfix {

/// 8-bit sRGB triple. Every input and output color crosses the API in this form.
struct RgbColor {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend constexpr bool operator==(const RgbColor&, const RgbColor&) = default;
};

/// Continuous (L, C, h) coordinates in the cylindrical form of Oklab.
/// L in [0, 1], C >= 0, h in degrees [0, 360). Achromatic colors carry h = 0.
struct OklchColor {
    double l = 0.0;
    double c = 0.0;
    double h = 0.0;
};

struct OklabColor {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Linear-light sRGB, nominally in [0, 1] per channel.
struct LinearRgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

/// CIELAB under D65, 2 degree observer.
struct LabColor {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct GamutStatus {
    bool in_gamut = true;
    /// Chroma actually used for the emitted color; equals the requested chroma when in gamut.
    double clipped_chroma = 0.0;
};

struct GamutMapped {
    RgbColor rgb;
    GamutStatus status;
};

class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// Chroma below this is treated as achromatic and pinned to h = 0.
inline constexpr double kAchromaticChroma = 1e-6;
// Slack on [0, 1] when deciding whether a continuous sRGB image is displayable.
inline constexpr double kGamutEpsilon = 1e-6;
// Resolution of the chroma bisection used for gamut clipping.
inline constexpr double kChromaClipTolerance = 1e-5;

/// Accepts `#rgb` / `#rrggbb` (case-insensitive, `#` optional). Throws ParseError naming the input.
RgbColor parse_hex(std::string_view text);

/// Lowercase `#rrggbb`.
std::string format_hex(RgbColor c);

double srgb_decode(double encoded);
double srgb_encode(double linear);

/// Decoded channel for an 8-bit value, from a precomputed table.
double srgb_decode_u8(std::uint8_t v);

LinearRgb to_linear(RgbColor c);

OklabColor linear_to_oklab(const LinearRgb& rgb);
LinearRgb oklab_to_linear(const OklabColor& lab);
OklchColor oklab_to_oklch(const OklabColor& lab);
OklabColor oklch_to_oklab(const OklchColor& lch);

OklchColor rgb_to_oklch(RgbColor c);

/// True iff the continuous sRGB image of `c` lies in [-eps, 1 + eps]^3.
bool in_gamut(const OklchColor& c);

/// Largest chroma in [0, c.c] that is displayable at the same L and h (bisection to
/// kChromaClipTolerance). Returns c.c unchanged when already in gamut.
double max_in_gamut_chroma(const OklchColor& c);

/// Linear sRGB after chroma clipping, clamped to [0, 1]. The continuous image that
/// oklch_to_rgb quantizes.
LinearRgb oklch_to_linear_clipped(const OklchColor& c, GamutStatus* status = nullptr);

/// Round-half-away-from-zero quantization of encoded channel values.
RgbColor quantize(const LinearRgb& linear);

/// Total conversion: clips chroma at fixed L and h when needed, then quantizes.
GamutMapped oklch_to_rgb(const OklchColor& c);

double normalize_hue(double degrees);

/// Smallest absolute angular difference in degrees, in [0, 180].
double hue_distance(double a, double b);

LabColor linear_to_lab(const LinearRgb& rgb);
LabColor rgb_to_lab(RgbColor c);

}  // namespace contrastfix
