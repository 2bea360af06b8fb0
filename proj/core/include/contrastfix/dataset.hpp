#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contrastfix/color.hpp"

namespace contrastfix {

enum class Category {
    kBrandPrimary,
    kDarkUi,
    kLightUi,
    kAccent,
    kPastel,
    kBrightYellowOnWhite,
    kPureBlueOnBlack,
    kMidGrayOnGray,
    kNeonPinkOnDarkPurple,
    kRedOnGreen,
    kOrangeOnYellow,
};

inline constexpr std::size_t kCategoryCount = 11;

/// "brand_primary", ..., "edge:bright_yellow_on_white", ...
std::string_view to_string(Category category);
std::optional<Category> category_from_string(std::string_view name);
bool is_edge_case(Category category);

struct ColorPair {
    std::size_t index = 0;
    RgbColor text;
    RgbColor bg;
    Category category = Category::kBrandPrimary;
    double initial_ratio = 1.0;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// OKLCH sampling box for one side of a pair. Without a hue band the hue is drawn
/// from the weighted hue families.
struct ColorSpec {
    Range l;
    Range c;
    std::optional<Range> hue;
};

struct CategorySpec {
    Category category = Category::kBrandPrimary;
    double weight = 0.0;
    ColorSpec text;
    ColorSpec bg;
};

struct HueFamily {
    std::string name;
    double weight = 0.0;
    Range band;
};

/// Everything the generator samples from. `defaults()` is the versioned built-in table;
/// `to_json()` dumps it for auditing.
struct GeneratorConfig {
    std::string version;
    double edge_fraction = 0.10;
    std::vector<CategorySpec> weighted;
    std::vector<CategorySpec> edge_cases;
    std::vector<HueFamily> hue_families;

    static const GeneratorConfig& defaults();
    const CategorySpec& spec(Category category) const;
    std::string to_json() const;
};

/// SplitMix64. One independent stream per (seed, stream id), so pair i's colors do
/// not depend on how many pairs were generated before it.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    double uniform(double lo, double hi);

private:
    std::uint64_t state_;
};

double sample_hue(Rng& rng, const GeneratorConfig& config = GeneratorConfig::defaults());

ColorPair gen_pair(const CategorySpec& spec, Rng& rng,
                   const GeneratorConfig& config = GeneratorConfig::defaults());

/// Deterministic in (seed, count). Each pair is an edge case with probability
/// `edge_fraction` (kind uniform over the six), otherwise drawn from the weighted
/// categories. Throws std::invalid_argument when count == 0.
std::vector<ColorPair> gen_dataset(std::uint64_t seed, std::size_t count,
                                   const GeneratorConfig& config = GeneratorConfig::defaults());

/// CSV: header `index,category,text_hex,bg_hex,initial_ratio`, ratio with 6 decimals.
void write_dataset_csv(std::ostream& out, std::span<const ColorPair> pairs);
/// One JSON object per line with the same keys as the CSV header.
void write_dataset_jsonl(std::ostream& out, std::span<const ColorPair> pairs);

/// One parsed input row. `line` is 1-based in the source file.
struct InputRow {
    std::size_t line = 0;
    std::optional<std::size_t> index;
    std::optional<Category> category;
    RgbColor text;
    RgbColor bg;
};

struct RowWarning {
    std::size_t line = 0;
    std::string message;
};

struct InputTable {
    std::vector<InputRow> rows;
    std::vector<RowWarning> warnings;
};

/// Reads the dataset CSV, the JSON-lines export, or a bare `text_hex,bg_hex` CSV
/// (header optional). Format is sniffed from the first non-blank character.
/// Malformed rows become warnings; a file with no recognizable columns throws
/// std::runtime_error.
InputTable read_pairs(std::istream& in);

}  // namespace contrastfix
