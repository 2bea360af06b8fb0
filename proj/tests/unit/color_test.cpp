#include <doctest.h>

#include <cmath>

#include "contrastfix/color.hpp"
#include "oracles.hpp"

using namespace contrastfix;

TEST_CASE("parse_hex accepts short and long forms") {
    CHECK(parse_hex("#ffffff") == RgbColor{255, 255, 255});
    CHECK(parse_hex("#FFF") == RgbColor{255, 255, 255});
    CHECK(parse_hex("0033ff") == RgbColor{0, 51, 255});
    CHECK(parse_hex("#abc") == RgbColor{0xaa, 0xbb, 0xcc});
}

TEST_CASE("parse_hex rejects malformed input") {
    for (const char* bad : {"", "#", "#ff", "#ffff", "#fffffff", "#gggggg", "red", "# ffffff"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_hex(bad), ParseError);
    }
}

TEST_CASE("format_hex is lowercase with a leading hash") {
    CHECK(format_hex({0x7e, 0x79, 0x00}) == "#7e7900");
    CHECK(format_hex(parse_hex("#ABCDEF")) == "#abcdef");
}

TEST_CASE("sRGB transfer function uses the 0.04045 threshold") {
    CHECK(srgb_decode(0.0) == 0.0);
    CHECK(srgb_decode(1.0) == doctest::Approx(1.0));
    CHECK(srgb_decode(0.04) == doctest::Approx(0.04 / 12.92));
    CHECK(srgb_decode(0.5) == doctest::Approx(std::pow(0.555 / 1.055, 2.4)));
    for (int i = 0; i <= 255; ++i) {
        CHECK(srgb_encode(srgb_decode(i / 255.0)) == doctest::Approx(i / 255.0).epsilon(1e-12));
    }
}

TEST_CASE("Oklab matches the reference transform") {
    for (int i = 0; i < 4096; ++i) {
        const RgbColor c{static_cast<std::uint8_t>(i * 37 % 256), static_cast<std::uint8_t>(i * 11 % 256),
                         static_cast<std::uint8_t>(i * 101 % 256)};
        const auto lin = to_linear(c);
        const auto want = oracle::oklab_from_linear(oracle::channel(c.r), oracle::channel(c.g),
                                                    oracle::channel(c.b));
        const auto got = linear_to_oklab(lin);
        CHECK(got.l == doctest::Approx(want.l).epsilon(1e-9));
        CHECK(std::abs(got.a - want.a) < 1e-9);
        CHECK(std::abs(got.b - want.b) < 1e-9);
    }
}

TEST_CASE("known OKLCH coordinates") {
    const auto white = rgb_to_oklch({255, 255, 255});
    CHECK(white.l == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(white.c < 1e-6);

    const auto red = linear_to_oklab(to_linear({255, 0, 0}));
    CHECK(red.l == doctest::Approx(0.627955).epsilon(1e-5));
    CHECK(red.a == doctest::Approx(0.224863).epsilon(1e-4));
    CHECK(red.b == doctest::Approx(0.125846).epsilon(1e-4));

    const auto yellow = rgb_to_oklch({255, 255, 0});
    CHECK(yellow.l == doctest::Approx(0.968).epsilon(1e-3));
    CHECK(yellow.c == doctest::Approx(0.211).epsilon(1e-2));
    CHECK(std::abs(yellow.h - 109.8) < 0.05);
}

TEST_CASE("achromatic colors get hue 0") {
    for (int v : {0, 1, 119, 128, 254, 255}) {
        const auto g = rgb_to_oklch({static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v),
                                     static_cast<std::uint8_t>(v)});
        CHECK(g.c < kAchromaticChroma);
        CHECK(g.h == 0.0);
    }
}

TEST_CASE("8-bit round trip is the identity on the whole cube") {
    int mismatches = 0;
    for (int r = 0; r < 256; r += 3) {
        for (int g = 0; g < 256; g += 5) {
            for (int b = 0; b < 256; ++b) {
                const RgbColor c{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                 static_cast<std::uint8_t>(b)};
                mismatches += oklch_to_rgb(rgb_to_oklch(c)).rgb != c;
            }
        }
    }
    CHECK(mismatches == 0);
}

TEST_CASE("chroma clipping matches a fine linear scan") {
    for (double L : {0.1, 0.3, 0.5, 0.7, 0.9, 0.97}) {
        for (double h = 0; h < 360; h += 17.5) {
            CAPTURE(L);
            CAPTURE(h);
            double scan = 0.0;
            for (double c = 0.0; c <= 0.5; c += 1e-5) {
                if (!oracle::linear_in_gamut(oracle::linear_from_oklch(L, c, h))) break;
                scan = c;
            }
            const double got = max_in_gamut_chroma({L, 0.5, h});
            CHECK(std::abs(got - scan) < 2e-5);
            CHECK(in_gamut({L, got, h}));
        }
    }
}

TEST_CASE("in-gamut colors are not clipped") {
    GamutStatus status;
    const OklchColor c{0.6, 0.05, 200.0};
    oklch_to_linear_clipped(c, &status);
    CHECK(status.in_gamut);
    CHECK(status.clipped_chroma == c.c);
    CHECK(max_in_gamut_chroma(c) == c.c);
}

TEST_CASE("out-of-gamut colors keep L and h") {
    const OklchColor c{0.5, 0.4, 109.77};
    const auto mapped = oklch_to_rgb(c);
    CHECK_FALSE(mapped.status.in_gamut);
    CHECK(mapped.status.clipped_chroma < c.c);
    const auto back = linear_to_oklab(oklch_to_linear_clipped(c));
    const auto lch = oklab_to_oklch(back);
    CHECK(lch.l == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(hue_distance(lch.h, c.h) < 0.01);
}

TEST_CASE("quantize rounds half away from zero and clamps") {
    CHECK(quantize({0.0, 1.0, 2.0}) == RgbColor{0, 255, 255});
    CHECK(quantize({-0.5, 0.0, 0.0}) == RgbColor{0, 0, 0});
    const double half = srgb_decode(127.5 / 255.0);
    CHECK(quantize({half, half, half}).r == 128);
}

TEST_CASE("hue helpers") {
    CHECK(normalize_hue(-10.0) == doctest::Approx(350.0));
    CHECK(normalize_hue(725.0) == doctest::Approx(5.0));
    CHECK(hue_distance(359.0, 1.0) == doctest::Approx(2.0));
    CHECK(hue_distance(10.0, 190.0) == doctest::Approx(180.0));
}
