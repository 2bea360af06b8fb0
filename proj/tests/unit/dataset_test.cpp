#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "contrastfix/color.hpp"
#include "contrastfix/dataset.hpp"
#include "contrastfix/metrics.hpp"

using namespace contrastfix;

namespace {

bool in(double v, Range r, double slack = 0.0) { return v >= r.lo - slack && v <= r.hi + slack; }

}  // namespace

TEST_CASE("category names round-trip") {
    for (std::size_t i = 0; i < kCategoryCount; ++i) {
        const auto c = static_cast<Category>(i);
        CHECK(category_from_string(to_string(c)) == c);
        CHECK(is_edge_case(c) == (to_string(c).substr(0, 5) == "edge:"));
    }
    CHECK_FALSE(category_from_string("nope"));
}

TEST_CASE("generator configuration is well formed") {
    const auto& cfg = GeneratorConfig::defaults();
    double weights = 0.0;
    for (const auto& s : cfg.weighted) weights += s.weight;
    CHECK(weights == doctest::Approx(1.0));
    CHECK(cfg.weighted.size() == 5);
    CHECK(cfg.edge_cases.size() == 6);
    double hue_weights = 0.0;
    for (const auto& f : cfg.hue_families) {
        hue_weights += f.weight;
        CHECK(f.band.lo >= 0.0);
        CHECK(f.band.hi <= 360.0);
    }
    CHECK(hue_weights == doctest::Approx(1.0));
    CHECK(cfg.spec(Category::kBrandPrimary).text.l.lo == 0.45);
    CHECK(cfg.spec(Category::kBrandPrimary).text.l.hi == 0.65);
    CHECK_FALSE(cfg.to_json().empty());
}

TEST_CASE("rng streams are deterministic and distinct") {
    Rng a(45, 3), b(45, 3), c(45, 4);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
    Rng u(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("hue families follow their weights") {
    const auto& cfg = GeneratorConfig::defaults();
    auto family_of = [&](double h) -> std::string {
        for (const auto& f : cfg.hue_families) {
            if (h >= f.band.lo && h < f.band.hi) return f.name;
        }
        return "?";
    };
    std::map<std::string, int> counts;
    constexpr int n = 10000;
    for (int i = 0; i < n; ++i) {
        Rng rng(45, static_cast<std::uint64_t>(i));
        const double h = sample_hue(rng);
        CHECK(h >= 0.0);
        CHECK(h < 360.0);
        ++counts[family_of(h)];
    }
    CHECK(counts["?"] == 0);
    CHECK(std::abs(counts["blue"] / double(n) - 0.25) <= 0.02);
    CHECK(std::abs((counts["red"] + counts["green"]) / double(n) - 0.30) <= 0.02);
}

TEST_CASE("generated pairs respect their category") {
    const auto& cfg = GeneratorConfig::defaults();
    for (const auto& p : gen_dataset(45, 10000)) {
        CAPTURE(p.index);
        CHECK(p.initial_ratio == contrast_ratio(p.text, p.bg));
        CHECK(parse_hex(format_hex(p.text)) == p.text);
        CHECK(parse_hex(format_hex(p.bg)) == p.bg);
        const auto t = rgb_to_oklch(p.text);
        const auto b = rgb_to_oklch(p.bg);
        // Quantization moves L by well under 0.01.
        CHECK(in(t.l, cfg.spec(p.category).text.l, 0.01));
        CHECK(in(b.l, cfg.spec(p.category).bg.l, 0.01));
        switch (p.category) {
            case Category::kDarkUi: CHECK(b.l < t.l); break;
            case Category::kBrightYellowOnWhite: CHECK(p.initial_ratio < 1.5); break;
            case Category::kMidGrayOnGray:
                CHECK(t.c < 0.05);
                CHECK(b.c < 0.05);
                CHECK(std::abs(t.l - b.l) < 0.15);
                break;
            default: break;
        }
    }
}

TEST_CASE("dataset is deterministic and sized") {
    const auto a = gen_dataset(45, 2000);
    const auto b = gen_dataset(45, 2000);
    REQUIRE(a.size() == 2000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].index == i);
        CHECK(a[i].text == b[i].text);
        CHECK(a[i].bg == b[i].bg);
        CHECK(a[i].category == b[i].category);
    }
    // Prefixes agree because each index has its own stream.
    const auto prefix = gen_dataset(45, 100);
    for (std::size_t i = 0; i < prefix.size(); ++i) CHECK(prefix[i].text == a[i].text);
    CHECK(gen_dataset(46, 10)[0].text != a[0].text);
    CHECK_THROWS_AS(gen_dataset(45, 0), std::invalid_argument);
}

TEST_CASE("category fractions track their weights") {
    const auto& cfg = GeneratorConfig::defaults();
    const auto pairs = gen_dataset(45, 1000);
    std::map<Category, int> counts;
    int edge = 0;
    for (const auto& p : pairs) {
        ++counts[p.category];
        edge += is_edge_case(p.category);
    }
    const double n = static_cast<double>(pairs.size());
    CHECK(std::abs(edge / n - 0.10) <= 0.03);
    for (const auto& s : cfg.weighted) {
        CAPTURE(to_string(s.category));
        CHECK(std::abs(counts[s.category] / n - 0.9 * s.weight) <= 0.03);
    }
    const auto big = gen_dataset(45, 10000);
    int big_edge = 0;
    for (const auto& p : big) big_edge += is_edge_case(p.category);
    CHECK(std::abs(big_edge - 1000) <= 100);
}

TEST_CASE("dataset CSV and JSONL read back") {
    const auto pairs = gen_dataset(9, 50);
    for (bool jsonl : {false, true}) {
        std::stringstream ss;
        if (jsonl) {
            write_dataset_jsonl(ss, pairs);
        } else {
            write_dataset_csv(ss, pairs);
        }
        const auto table = read_pairs(ss);
        CHECK(table.warnings.empty());
        REQUIRE(table.rows.size() == pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            CHECK(table.rows[i].text == pairs[i].text);
            CHECK(table.rows[i].bg == pairs[i].bg);
            CHECK(table.rows[i].index == pairs[i].index);
            CHECK(table.rows[i].category == pairs[i].category);
        }
    }
}

TEST_CASE("dataset CSV header and row count") {
    std::stringstream ss;
    write_dataset_csv(ss, gen_dataset(45, 10));
    std::string header;
    std::getline(ss, header);
    CHECK(header == "index,category,text_hex,bg_hex,initial_ratio");
    int rows = 0;
    for (std::string line; std::getline(ss, line);) ++rows;
    CHECK(rows == 10);
}

TEST_CASE("malformed rows become warnings") {
    std::istringstream csv(
        "text_hex,bg_hex\n"
        "#000000,#ffffff\n"
        "#zzzzzz,#ffffff\n"
        "#111\n"
        "\n"
        "#777777,#fff\n");
    const auto t = read_pairs(csv);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].line == 2);
    CHECK(t.rows[1].line == 6);
    REQUIRE(t.warnings.size() == 2);
    CHECK(t.warnings[0].line == 3);
    CHECK(t.warnings[1].line == 4);

    std::istringstream bare("#000,#fff\n#fff,#000\n");
    CHECK(read_pairs(bare).rows.size() == 2);

    std::istringstream jsonl("{\"text_hex\":\"#000\",\"bg_hex\":\"#fff\"}\n{\"text_hex\":1}\nnot json\n");
    const auto j = read_pairs(jsonl);
    CHECK(j.rows.size() == 1);
    CHECK(j.warnings.size() == 2);

    std::istringstream bad_header("text_hex,background\n#000,#fff\n");
    CHECK_THROWS_AS(read_pairs(bad_header), std::runtime_error);
}
