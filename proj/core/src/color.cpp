#include "contrastfix/color.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace contrastfix {

namespace {

int hex_digit(char ch) {
    if (ch >= '0' && ch <= '9') return ch - '0';
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower >= 'a' && lower <= 'f') return lower - 'a' + 10;
    return -1;
}

[[noreturn]] void bad_hex(std::string_view text) {
    throw ParseError("malformed hex color '" + std::string(text) + "'");
}

const std::array<double, 256>& decode_table() {
    static const std::array<double, 256> table = [] {
        std::array<double, 256> t{};
        for (int i = 0; i < 256; ++i) t[i] = srgb_decode(i / 255.0);
        return t;
    }();
    return table;
}

// Oklab matrices from Ottosson (2020), "A perceptual color space for image
// processing". Linear sRGB -> LMS, cube root, LMS' -> Lab, and the published inverses.
constexpr double kRgbToLms[3][3] = {
    {0.4122214708, 0.5363325363, 0.0514459929},
    {0.2119034982, 0.6806995451, 0.1073969566},
    {0.0883024619, 0.2817188376, 0.6299787005},
};
constexpr double kLmsToLab[3][3] = {
    {0.2104542553, 0.7936177850, -0.0040720468},
    {1.9779984951, -2.4285922050, 0.4505937099},
    {0.0259040371, 0.7827717662, -0.8086757660},
};
constexpr double kLabToLms[3][3] = {
    {1.0, 0.3963377774, 0.2158037573},
    {1.0, -0.1055613458, -0.0638541728},
    {1.0, -0.0894841775, -1.2914855480},
};
constexpr double kLmsToRgb[3][3] = {
    {4.0767416621, -3.3077115913, 0.2309699292},
    {-1.2684380046, 2.6097574011, -0.3413193965},
    {-0.0041960863, -0.7034186147, 1.7076147010},
};

// sRGB primaries to XYZ (D65) and the D65 reference white.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

bool channel_ok(double v) { return v >= -kGamutEpsilon && v <= 1.0 + kGamutEpsilon; }

bool linear_in_gamut(const LinearRgb& rgb) {
    return channel_ok(rgb.r) && channel_ok(rgb.g) && channel_ok(rgb.b);
}

std::uint8_t quantize_channel(double linear) {
    const double encoded = std::clamp(srgb_encode(std::clamp(linear, 0.0, 1.0)), 0.0, 1.0);
    // Values are non-negative, so round() is half-away-from-zero here.
    return static_cast<std::uint8_t>(std::lround(encoded * 255.0));
}

double lab_f(double t) {
    constexpr double kEpsilon = 216.0 / 24389.0;
    constexpr double kKappa = 24389.0 / 27.0;
    return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

}  // namespace

RgbColor parse_hex(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && digits.front() == '#') digits.remove_prefix(1);
    if (digits.size() != 3 && digits.size() != 6) bad_hex(text);

    std::array<int, 6> nibbles{};
    for (std::size_t i = 0; i < digits.size(); ++i) {
        nibbles[i] = hex_digit(digits[i]);
        if (nibbles[i] < 0) bad_hex(text);
    }
    if (digits.size() == 3) {
        return RgbColor{static_cast<std::uint8_t>(nibbles[0] * 17),
                        static_cast<std::uint8_t>(nibbles[1] * 17),
                        static_cast<std::uint8_t>(nibbles[2] * 17)};
    }
    return RgbColor{static_cast<std::uint8_t>(nibbles[0] * 16 + nibbles[1]),
                    static_cast<std::uint8_t>(nibbles[2] * 16 + nibbles[3]),
                    static_cast<std::uint8_t>(nibbles[4] * 16 + nibbles[5])};
}

std::string format_hex(RgbColor c) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "#000000";
    const std::uint8_t channels[3] = {c.r, c.g, c.b};
    for (int i = 0; i < 3; ++i) {
        out[1 + 2 * i] = kDigits[channels[i] >> 4];
        out[2 + 2 * i] = kDigits[channels[i] & 0x0f];
    }
    return out;
}

double srgb_decode(double encoded) {
    if (encoded <= 0.04045) return encoded / 12.92;
    return std::pow((encoded + 0.055) / 1.055, 2.4);
}

double srgb_encode(double linear) {
    if (linear <= 0.0031308) return linear * 12.92;
    return 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

double srgb_decode_u8(std::uint8_t v) { return decode_table()[v]; }

LinearRgb to_linear(RgbColor c) {
    return LinearRgb{srgb_decode_u8(c.r), srgb_decode_u8(c.g), srgb_decode_u8(c.b)};
}

OklabColor linear_to_oklab(const LinearRgb& rgb) {
    const double in[3] = {rgb.r, rgb.g, rgb.b};
    double lms[3];
    for (int i = 0; i < 3; ++i) {
        lms[i] = std::cbrt(kRgbToLms[i][0] * in[0] + kRgbToLms[i][1] * in[1] +
                           kRgbToLms[i][2] * in[2]);
    }
    double out[3];
    for (int i = 0; i < 3; ++i) {
        out[i] = kLmsToLab[i][0] * lms[0] + kLmsToLab[i][1] * lms[1] + kLmsToLab[i][2] * lms[2];
    }
    return OklabColor{out[0], out[1], out[2]};
}

LinearRgb oklab_to_linear(const OklabColor& lab) {
    const double in[3] = {lab.l, lab.a, lab.b};
    double lms[3];
    for (int i = 0; i < 3; ++i) {
        const double v = kLabToLms[i][0] * in[0] + kLabToLms[i][1] * in[1] + kLabToLms[i][2] * in[2];
        lms[i] = v * v * v;
    }
    double out[3];
    for (int i = 0; i < 3; ++i) {
        out[i] = kLmsToRgb[i][0] * lms[0] + kLmsToRgb[i][1] * lms[1] + kLmsToRgb[i][2] * lms[2];
    }
    return LinearRgb{out[0], out[1], out[2]};
}

OklchColor oklab_to_oklch(const OklabColor& lab) {
    const double chroma = std::hypot(lab.a, lab.b);
    if (chroma < kAchromaticChroma) return OklchColor{lab.l, chroma, 0.0};
    const double hue = std::atan2(lab.b, lab.a) * 180.0 / std::numbers::pi;
    return OklchColor{lab.l, chroma, normalize_hue(hue)};
}

OklabColor oklch_to_oklab(const OklchColor& lch) {
    const double rad = lch.h * std::numbers::pi / 180.0;
    return OklabColor{lch.l, lch.c * std::cos(rad), lch.c * std::sin(rad)};
}

OklchColor rgb_to_oklch(RgbColor c) { return oklab_to_oklch(linear_to_oklab(to_linear(c))); }

bool in_gamut(const OklchColor& c) { return linear_in_gamut(oklab_to_linear(oklch_to_oklab(c))); }

double max_in_gamut_chroma(const OklchColor& c) {
    if (in_gamut(c)) return c.c;
    double lo = 0.0;
    double hi = c.c;
    while (hi - lo > kChromaClipTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (in_gamut(OklchColor{c.l, mid, c.h})) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

LinearRgb oklch_to_linear_clipped(const OklchColor& c, GamutStatus* status) {
    const OklchColor clamped{std::clamp(c.l, 0.0, 1.0), std::max(c.c, 0.0), c.h};
    LinearRgb rgb = oklab_to_linear(oklch_to_oklab(clamped));
    GamutStatus st{true, clamped.c};
    if (!linear_in_gamut(rgb)) {
        st.in_gamut = false;
        st.clipped_chroma = max_in_gamut_chroma(clamped);
        rgb = oklab_to_linear(oklch_to_oklab(OklchColor{clamped.l, st.clipped_chroma, clamped.h}));
    }
    rgb.r = std::clamp(rgb.r, 0.0, 1.0);
    rgb.g = std::clamp(rgb.g, 0.0, 1.0);
    rgb.b = std::clamp(rgb.b, 0.0, 1.0);
    if (status != nullptr) *status = st;
    return rgb;
}

RgbColor quantize(const LinearRgb& linear) {
    return RgbColor{quantize_channel(linear.r), quantize_channel(linear.g),
                    quantize_channel(linear.b)};
}

GamutMapped oklch_to_rgb(const OklchColor& c) {
    GamutMapped out;
    out.rgb = quantize(oklch_to_linear_clipped(c, &out.status));
    return out;
}

double normalize_hue(double degrees) {
    double h = std::fmod(degrees, 360.0);
    if (h < 0.0) h += 360.0;
    // fmod of a tiny negative can land exactly on 360 after the shift.
    if (h >= 360.0) h = 0.0;
    return h;
}

double hue_distance(double a, double b) {
    const double d = std::fabs(normalize_hue(a) - normalize_hue(b));
    return d > 180.0 ? 360.0 - d : d;
}

LabColor linear_to_lab(const LinearRgb& rgb) {
    const double in[3] = {rgb.r, rgb.g, rgb.b};
    double xyz[3];
    for (int i = 0; i < 3; ++i) {
        xyz[i] = kRgbToXyz[i][0] * in[0] + kRgbToXyz[i][1] * in[1] + kRgbToXyz[i][2] * in[2];
    }
    const double fx = lab_f(xyz[0] / kWhiteX);
    const double fy = lab_f(xyz[1] / kWhiteY);
    const double fz = lab_f(xyz[2] / kWhiteZ);
    return LabColor{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LabColor rgb_to_lab(RgbColor c) { return linear_to_lab(to_linear(c)); }

}  // namespace contrastfix
