#include "contrastfix/dataset.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "contrastfix/metrics.hpp"

namespace contrastfix {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "brand_primary",
    "dark_ui",
    "light_ui",
    "accent",
    "pastel",
    "edge:bright_yellow_on_white",
    "edge:pure_blue_on_black",
    "edge:mid_gray_on_gray",
    "edge:neon_pink_on_dark_purple",
    "edge:red_on_green",
    "edge:orange_on_yellow",
};

// Any hue: used for near-neutral colors whose hue barely matters.
constexpr Range kAnyHue{0.0, 360.0};

GeneratorConfig make_default_config() {
    GeneratorConfig cfg;
    cfg.version = "categories-v1";
    cfg.edge_fraction = 0.10;

    // Hue families in OKLCH degrees. Blue/red/green weights are the published ones,
    // the rest is a reconstruction.
    cfg.hue_families = {
        {"red", 0.15, {15.0, 45.0}},     {"orange", 0.10, {45.0, 75.0}},
        {"yellow", 0.10, {90.0, 120.0}}, {"green", 0.15, {130.0, 165.0}},
        {"cyan", 0.05, {180.0, 215.0}},  {"blue", 0.25, {230.0, 275.0}},
        {"purple", 0.10, {290.0, 325.0}}, {"pink", 0.10, {330.0, 360.0}},
    };

    //                category                weight   text {L, C, hue}                         bg {L, C, hue}
    cfg.weighted = {
        {Category::kBrandPrimary, 0.30, {{0.45, 0.65}, {0.15, 0.35}, {}}, {{0.78, 1.00}, {0.00, 0.03}, {}}},
        {Category::kDarkUi, 0.25, {{0.80, 0.97}, {0.00, 0.04}, {}}, {{0.10, 0.25}, {0.00, 0.04}, {}}},
        {Category::kLightUi, 0.25, {{0.15, 0.35}, {0.00, 0.04}, {}}, {{0.90, 0.99}, {0.00, 0.03}, {}}},
        {Category::kAccent, 0.10, {{0.50, 0.72}, {0.20, 0.37}, {}}, {{0.85, 1.00}, {0.00, 0.02}, {}}},
        {Category::kPastel, 0.10, {{0.15, 0.35}, {0.00, 0.05}, {}}, {{0.80, 0.95}, {0.03, 0.10}, {}}},
    };

    cfg.edge_cases = {
        {Category::kBrightYellowOnWhite, 0.0,
         {{0.94, 0.97}, {0.18, 0.21}, Range{107.0, 112.0}}, {{0.99, 1.00}, {0.00, 0.005}, kAnyHue}},
        {Category::kPureBlueOnBlack, 0.0,
         {{0.44, 0.50}, {0.26, 0.31}, Range{262.0, 266.0}}, {{0.00, 0.10}, {0.00, 0.01}, kAnyHue}},
        {Category::kMidGrayOnGray, 0.0,
         {{0.46, 0.56}, {0.00, 0.04}, kAnyHue}, {{0.45, 0.55}, {0.00, 0.04}, kAnyHue}},
        {Category::kNeonPinkOnDarkPurple, 0.0,
         {{0.65, 0.75}, {0.25, 0.30}, Range{340.0, 355.0}}, {{0.15, 0.25}, {0.06, 0.12}, Range{295.0, 315.0}}},
        {Category::kRedOnGreen, 0.0,
         {{0.58, 0.66}, {0.20, 0.25}, Range{25.0, 33.0}}, {{0.80, 0.88}, {0.20, 0.29}, Range{138.0, 146.0}}},
        {Category::kOrangeOnYellow, 0.0,
         {{0.70, 0.78}, {0.16, 0.20}, Range{50.0, 65.0}}, {{0.93, 0.97}, {0.15, 0.21}, Range{105.0, 112.0}}},
    };
    const double each = 1.0 / static_cast<double>(cfg.edge_cases.size());
    for (auto& e : cfg.edge_cases) e.weight = each;
    return cfg;
}

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RgbColor sample_color(const ColorSpec& spec, Rng& rng, const GeneratorConfig& config) {
    // Fixed draw order: L, C, hue.
    const double l = rng.uniform(spec.l.lo, spec.l.hi);
    const double c = rng.uniform(spec.c.lo, spec.c.hi);
    const double h = spec.hue ? normalize_hue(rng.uniform(spec.hue->lo, spec.hue->hi))
                              : sample_hue(rng, config);
    return oklch_to_rgb(OklchColor{l, c, h}).rgb;
}

template <typename T, typename Weight>
const T& pick_weighted(const std::vector<T>& items, double u, Weight weight) {
    double acc = 0.0;
    for (const auto& item : items) {
        acc += weight(item);
        if (u < acc) return item;
    }
    return items.back();
}

std::string format_ratio(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", ratio);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r\"");
        const auto last = field.find_last_not_of(" \t\r\"");
        out.push_back(first == std::string::npos ? std::string{}
                                                 : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

bool looks_like_hex(const std::string& field) {
    try {
        parse_hex(field);
        return true;
    } catch (const ParseError&) {
        return false;
    }
}

InputTable read_jsonl(std::istream& in) {
    InputTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        try {
            const auto obj = nlohmann::json::parse(line);
            if (!obj.is_object()) throw std::runtime_error("not a JSON object");
            InputRow row;
            row.line = line_no;
            row.text = parse_hex(obj.at("text_hex").get<std::string>());
            row.bg = parse_hex(obj.at("bg_hex").get<std::string>());
            if (obj.contains("index")) row.index = obj.at("index").get<std::size_t>();
            if (obj.contains("category")) {
                row.category = category_from_string(obj.at("category").get<std::string>());
                if (!row.category) throw std::runtime_error("unknown category");
            }
            table.rows.push_back(row);
        } catch (const std::exception& e) {
            table.warnings.push_back({line_no, e.what()});
        }
    }
    return table;
}

InputTable read_csv(std::istream& in) {
    InputTable table;
    std::string line;
    std::size_t line_no = 0;

    std::optional<std::size_t> index_col;
    std::optional<std::size_t> category_col;
    std::size_t text_col = 0;
    std::size_t bg_col = 1;
    bool first = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto fields = split_csv(line);
        if (first) {
            first = false;
            const bool named = std::find(fields.begin(), fields.end(), "text_hex") != fields.end();
            if (named && !looks_like_hex(fields[0])) {
                // Header row: locate columns by name.
                std::optional<std::size_t> t;
                std::optional<std::size_t> b;
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    if (fields[i] == "text_hex") t = i;
                    if (fields[i] == "bg_hex") b = i;
                    if (fields[i] == "index") index_col = i;
                    if (fields[i] == "category") category_col = i;
                }
                if (!t || !b) {
                    throw std::runtime_error(
                        "input header must name text_hex and bg_hex columns");
                }
                text_col = *t;
                bg_col = *b;
                continue;
            }
        }
        try {
            const std::size_t needed = std::max({text_col, bg_col, index_col.value_or(0),
                                                 category_col.value_or(0)});
            if (fields.size() <= needed) throw std::runtime_error("too few columns");
            InputRow row;
            row.line = line_no;
            row.text = parse_hex(fields[text_col]);
            row.bg = parse_hex(fields[bg_col]);
            if (index_col) row.index = std::stoul(fields[*index_col]);
            if (category_col) {
                row.category = category_from_string(fields[*category_col]);
                if (!row.category) throw std::runtime_error("unknown category '" + fields[*category_col] + "'");
            }
            table.rows.push_back(row);
        } catch (const std::exception& e) {
            table.warnings.push_back({line_no, e.what()});
        }
    }
    return table;
}

}  // namespace

std::string_view to_string(Category category) {
    return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<Category> category_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
        if (kCategoryNames[i] == name) return static_cast<Category>(i);
    }
    return std::nullopt;
}

bool is_edge_case(Category category) {
    return static_cast<int>(category) >= static_cast<int>(Category::kBrightYellowOnWhite);
}

const GeneratorConfig& GeneratorConfig::defaults() {
    static const GeneratorConfig config = make_default_config();
    return config;
}

const CategorySpec& GeneratorConfig::spec(Category category) const {
    for (const auto& s : weighted) {
        if (s.category == category) return s;
    }
    for (const auto& s : edge_cases) {
        if (s.category == category) return s;
    }
    throw std::out_of_range("no spec for category " + std::string(to_string(category)));
}

std::string GeneratorConfig::to_json() const {
    using nlohmann::ordered_json;
    auto range = [](const Range& r) { return ordered_json::array({r.lo, r.hi}); };
    auto side = [&](const ColorSpec& s) {
        ordered_json j;
        j["L"] = range(s.l);
        j["C"] = range(s.c);
        j["hue"] = s.hue ? range(*s.hue) : ordered_json("families");
        return j;
    };
    auto category = [&](const CategorySpec& s) {
        ordered_json j;
        j["category"] = to_string(s.category);
        j["weight"] = s.weight;
        j["text"] = side(s.text);
        j["bg"] = side(s.bg);
        return j;
    };

    ordered_json root;
    root["version"] = version;
    root["edge_fraction"] = edge_fraction;
    root["hue_families"] = ordered_json::array();
    for (const auto& f : hue_families) {
        root["hue_families"].push_back({{"name", f.name}, {"weight", f.weight}, {"band", range(f.band)}});
    }
    root["weighted"] = ordered_json::array();
    for (const auto& s : weighted) root["weighted"].push_back(category(s));
    root["edge_cases"] = ordered_json::array();
    for (const auto& s : edge_cases) root["edge_cases"].push_back(category(s));
    return root.dump(2);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
    // Derive the stream state from both inputs through two mixing rounds.
    std::uint64_t s = seed ^ (stream * 0xd1342543de82ef95ULL);
    state_ = splitmix(s);
    state_ ^= splitmix(s);
}

std::uint64_t Rng::next() { return splitmix(state_); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double sample_hue(Rng& rng, const GeneratorConfig& config) {
    const HueFamily& family = pick_weighted(config.hue_families, rng.uniform(),
                                            [](const HueFamily& f) { return f.weight; });
    return normalize_hue(rng.uniform(family.band.lo, family.band.hi));
}

ColorPair gen_pair(const CategorySpec& spec, Rng& rng, const GeneratorConfig& config) {
    ColorPair pair;
    pair.category = spec.category;
    pair.text = sample_color(spec.text, rng, config);
    pair.bg = sample_color(spec.bg, rng, config);
    pair.initial_ratio = contrast_ratio(pair.text, pair.bg);
    return pair;
}

std::vector<ColorPair> gen_dataset(std::uint64_t seed, std::size_t count,
                                   const GeneratorConfig& config) {
    if (count == 0) throw std::invalid_argument("dataset count must be positive");
    std::vector<ColorPair> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(seed, i);
        const bool edge = rng.uniform() < config.edge_fraction;
        const double u = rng.uniform();
        const auto weight = [](const CategorySpec& s) { return s.weight; };
        const CategorySpec& spec =
            edge ? pick_weighted(config.edge_cases, u, weight) : pick_weighted(config.weighted, u, weight);
        ColorPair pair = gen_pair(spec, rng, config);
        pair.index = i;
        pairs.push_back(pair);
    }
    return pairs;
}

void write_dataset_csv(std::ostream& out, std::span<const ColorPair> pairs) {
    out << "index,category,text_hex,bg_hex,initial_ratio\n";
    for (const auto& p : pairs) {
        out << p.index << ',' << to_string(p.category) << ',' << format_hex(p.text) << ','
            << format_hex(p.bg) << ',' << format_ratio(p.initial_ratio) << '\n';
    }
}

void write_dataset_jsonl(std::ostream& out, std::span<const ColorPair> pairs) {
    for (const auto& p : pairs) {
        out << "{\"index\":" << p.index << ",\"category\":\"" << to_string(p.category)
            << "\",\"text_hex\":\"" << format_hex(p.text) << "\",\"bg_hex\":\""
            << format_hex(p.bg) << "\",\"initial_ratio\":" << format_ratio(p.initial_ratio)
            << "}\n";
    }
}

InputTable read_pairs(std::istream& in) {
    // Sniff the first non-blank character without consuming the stream.
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto pos = content.find_first_not_of(" \t\r\n");
    std::istringstream body(content);
    if (pos != std::string::npos && content[pos] == '{') return read_jsonl(body);
    return read_csv(body);
}

}  // namespace contrastfix
