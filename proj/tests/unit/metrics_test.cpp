#include <doctest.h>

#include <cmath>

#include "contrastfix/color.hpp"
#include "contrastfix/metrics.hpp"
#include "oracles.hpp"

using namespace contrastfix;

TEST_CASE("CIEDE2000 reproduces the published test pairs") {
    for (const auto& p : oracle::kSharmaPairs) {
        const LabColor a{p.first.l, p.first.a, p.first.b};
        const LabColor b{p.second.l, p.second.a, p.second.b};
        CAPTURE(p.delta_e);
        CHECK(std::abs(delta_e_2000(a, b) - p.delta_e) < 1e-4);
        CHECK(std::abs(delta_e_2000(b, a) - p.delta_e) < 1e-4);
    }
}

TEST_CASE("CIEDE2000 of identical colors is zero") {
    CHECK(delta_e_2000(RgbColor{12, 200, 99}, RgbColor{12, 200, 99}) == 0.0);
}

TEST_CASE("contrast ratio extremes are exact") {
    CHECK(contrast_ratio({0, 0, 0}, {255, 255, 255}) == 21.0);
    CHECK(contrast_ratio({255, 255, 255}, {0, 0, 0}) == 21.0);
    CHECK(contrast_ratio({10, 20, 30}, {10, 20, 30}) == 1.0);
}

TEST_CASE("contrast ratio matches the WCAG formula") {
    CHECK(std::abs(contrast_ratio(parse_hex("#ffff00"), parse_hex("#ffffff")) - 1.07) <= 0.01);
    CHECK(std::abs(contrast_ratio(parse_hex("#0033ff"), parse_hex("#040404")) - 2.83) <= 0.05);
    for (int i = 0; i < 2000; ++i) {
        const RgbColor a{static_cast<std::uint8_t>(i * 7 % 256), static_cast<std::uint8_t>(i * 13 % 256),
                         static_cast<std::uint8_t>(i * 29 % 256)};
        const RgbColor b{static_cast<std::uint8_t>(i * 31 % 256), static_cast<std::uint8_t>(i * 3 % 256),
                         static_cast<std::uint8_t>(i * 17 % 256)};
        CHECK(contrast_ratio(a, b) ==
              doctest::Approx(oracle::ratio(a.r, a.g, a.b, b.r, b.g, b.b)).epsilon(1e-12));
    }
}

TEST_CASE("required ratios") {
    CHECK(required_ratio({WcagLevel::kAA, TextSize::kNormal}) == 4.5);
    CHECK(required_ratio({WcagLevel::kAA, TextSize::kLarge}) == 3.0);
    CHECK(required_ratio({WcagLevel::kAAA, TextSize::kNormal}) == 7.0);
    CHECK(required_ratio({WcagLevel::kAAA, TextSize::kLarge}) == 4.5);
    CHECK(passes(4.5, {}));
    CHECK_FALSE(passes(4.4999, {}));
}
