#include "contrastfix/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace contrastfix {

namespace {

using nlohmann::ordered_json;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string pct(double fraction) { return fmt("%.2f%%", 100.0 * fraction); }

std::string size_name(TextSize s) { return s == TextSize::kNormal ? "normal" : "large"; }

ordered_json outcome_to_json(const PairOutcome& o) {
    ordered_json j;
    j["index"] = o.index;
    j["category"] = to_string(o.category);
    j["text_hex"] = format_hex(o.text);
    j["bg_hex"] = format_hex(o.bg);
    j["initial_ratio"] = o.initial_ratio;
    j["fixed_hex"] = format_hex(o.result.color);
    j["success"] = o.result.success;
    j["achieved_ratio"] = o.result.achieved_ratio;
    j["delta_e"] = o.result.delta_e_from_original;
    j["iterations"] = o.result.iterations_used;
    j["hue_drift_degrees"] = o.result.hue_drift_degrees;
    j["runtime_ms"] = o.runtime_ms;
    return j;
}

PairOutcome outcome_from_json(const ordered_json& j) {
    PairOutcome o;
    o.index = j.at("index").get<std::size_t>();
    const auto cat = category_from_string(j.at("category").get<std::string>());
    if (!cat) throw std::runtime_error("unknown category in report");
    o.category = *cat;
    o.text = parse_hex(j.at("text_hex").get<std::string>());
    o.bg = parse_hex(j.at("bg_hex").get<std::string>());
    o.initial_ratio = j.at("initial_ratio").get<double>();
    o.result.color = parse_hex(j.at("fixed_hex").get<std::string>());
    o.result.success = j.at("success").get<bool>();
    o.result.achieved_ratio = j.at("achieved_ratio").get<double>();
    o.result.delta_e_from_original = j.at("delta_e").get<double>();
    o.result.iterations_used = j.at("iterations").get<int>();
    o.result.hue_drift_degrees = j.at("hue_drift_degrees").get<double>();
    o.runtime_ms = j.at("runtime_ms").get<double>();
    return o;
}

ordered_json report_to_json(const BenchmarkReport& r) {
    ordered_json j;
    j["mode"] = static_cast<int>(r.mode);
    j["mode_name"] = to_string(r.mode);
    j["level"] = to_string(r.target.level);
    j["text_size"] = size_name(r.target.size);
    j["required_ratio"] = required_ratio(r.target);
    j["total_pairs"] = r.total_pairs;
    j["reasonable_pairs"] = r.reasonable_pairs;
    j["success_count"] = r.success_count;
    j["reasonable_success_count"] = r.reasonable_success_count;
    j["success_rate_all"] = r.success_rate_all;
    j["success_rate_reasonable"] = r.success_rate_reasonable;
    j["delta_e_median"] = r.delta_e_median;
    j["delta_e_p90"] = r.delta_e_p90;
    j["delta_e_max"] = r.delta_e_max;
    j["fraction_under_2"] = r.fraction_under_2;
    j["per_category"] = ordered_json::array();
    for (const auto& c : r.per_category) {
        ordered_json cj;
        cj["category"] = to_string(c.category);
        cj["pair_count"] = c.pair_count;
        cj["success_count"] = c.success_count;
        cj["success_rate"] = c.success_rate;
        cj["modified_count"] = c.modified_count;
        cj["mean_delta_e_modified"] = c.mean_delta_e_modified;
        j["per_category"].push_back(cj);
    }
    j["total_runtime_ms"] = r.total_runtime_ms;
    j["per_pair_runtime_ms"] = r.per_pair_runtime_ms;
    j["unexplained_failures"] = ordered_json::array();
    for (const auto& o : r.unexplained_failures) j["unexplained_failures"].push_back(outcome_to_json(o));
    return j;
}

std::string write_json(std::span<const BenchmarkReport> reports) {
    if (reports.size() == 1) return report_to_json(reports[0]).dump(2) + "\n";
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
}

std::string write_csv(std::span<const BenchmarkReport> reports) {
    std::ostringstream out;
    out << "mode,category,pair_count,success_count,success_rate,modified_count,mean_delta_e_modified\n";
    for (const auto& r : reports) {
        for (const auto& c : r.per_category) {
            out << static_cast<int>(r.mode) << ',' << to_string(c.category) << ',' << c.pair_count
                << ',' << c.success_count << ',' << fmt("%.6f", c.success_rate) << ','
                << c.modified_count << ',' << fmt("%.6f", c.mean_delta_e_modified) << '\n';
        }
    }
    return out.str();
}

class TextTable {
public:
    explicit TextTable(std::span<const BenchmarkReport> reports) : reports_(reports) {}

    void heading(const std::string& title) {
        out_ << '\n' << title << '\n';
        row("Metric", [](const BenchmarkReport& r) {
            return "Mode " + std::to_string(static_cast<int>(r.mode)) + " (" +
                   std::string(to_string(r.mode)) + ")";
        });
        out_ << std::string(kLabelWidth + reports_.size() * kColumnWidth, '-') << '\n';
    }

    template <typename Cell>
    void row(const std::string& label, Cell cell) {
        out_ << pad(label, kLabelWidth);
        for (const auto& r : reports_) out_ << pad(cell(r), kColumnWidth);
        out_ << '\n';
    }

    std::ostringstream& stream() { return out_; }

private:
    static constexpr std::size_t kLabelWidth = 34;
    static constexpr std::size_t kColumnWidth = 22;

    static std::string pad(const std::string& s, std::size_t width) {
        // Count UTF-8 code points so labels with Greek letters line up.
        std::size_t glyphs = 0;
        for (const unsigned char ch : s) glyphs += (ch & 0xC0) != 0x80;
        return glyphs >= width ? s + " " : s + std::string(width - glyphs, ' ');
    }

    std::span<const BenchmarkReport> reports_;
    std::ostringstream out_;
};

std::string write_text(std::span<const BenchmarkReport> reports) {
    TextTable t(reports);
    const BenchmarkReport& first = reports.front();
    t.stream() << "Target: WCAG " << to_string(first.target.level) << " "
               << size_name(first.target.size) << " text ("
               << fmt("%.1f", required_ratio(first.target)) << ":1), " << first.total_pairs
               << " pairs, " << first.reasonable_pairs << " reasonable\n";

    t.heading("Success rate");
    t.row("All Pairs", [](const BenchmarkReport& r) { return pct(r.success_rate_all); });
    t.row("Reasonable (ρ > 2.0)",
          [](const BenchmarkReport& r) { return pct(r.success_rate_reasonable); });

    t.heading("Perceptual change (ΔE2000)");
    t.row("Median ΔE", [](const BenchmarkReport& r) { return fmt("%.2f", r.delta_e_median); });
    t.row("P90 ΔE", [](const BenchmarkReport& r) { return fmt("%.2f", r.delta_e_p90); });
    t.row("Max ΔE", [](const BenchmarkReport& r) { return fmt("%.2f", r.delta_e_max); });
    t.row("% Under ΔE = 2.0", [](const BenchmarkReport& r) { return pct(r.fraction_under_2); });

    t.heading("Success rate by category");
    for (std::size_t k = 0; k < kCategoryCount; ++k) {
        const auto cat = static_cast<Category>(k);
        bool present = false;
        for (const auto& r : reports) {
            for (const auto& c : r.per_category) present |= c.category == cat;
        }
        if (!present) continue;
        t.row(std::string(is_edge_case(cat) ? "  " : "") + std::string(to_string(cat)),
              [cat](const BenchmarkReport& r) {
                  for (const auto& c : r.per_category) {
                      if (c.category == cat) {
                          return pct(c.success_rate) + " (n=" + std::to_string(c.pair_count) + ")";
                      }
                  }
                  return std::string("-");
              });
    }

    t.heading("Runtime");
    t.row("Total time", [](const BenchmarkReport& r) { return fmt("%.3f s", r.total_runtime_ms / 1000.0); });
    t.row("Per pair", [](const BenchmarkReport& r) { return fmt("%.3f ms", r.per_pair_runtime_ms); });

    for (const auto& r : reports) {
        if (r.unexplained_failures.empty()) continue;
        t.stream() << "\nMode " << static_cast<int>(r.mode)
                   << " failures outside edge cases with initial ρ > 2.0:\n";
        for (const auto& o : r.unexplained_failures) {
            t.stream() << "  #" << o.index << ' ' << to_string(o.category) << ' '
                       << format_hex(o.text) << " on " << format_hex(o.bg) << " ρ0="
                       << fmt("%.3f", o.initial_ratio) << " -> " << format_hex(o.result.color)
                       << " ρ=" << fmt("%.3f", o.result.achieved_ratio) << '\n';
        }
    }
    return t.stream().str();
}

}  // namespace

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
    if (name == "json") return ReportFormat::kJson;
    if (name == "csv") return ReportFormat::kCsv;
    if (name == "text") return ReportFormat::kText;
    return std::nullopt;
}

std::string write_report(std::span<const BenchmarkReport> reports, ReportFormat format) {
    if (reports.empty()) throw std::invalid_argument("no reports to write");
    switch (format) {
        case ReportFormat::kJson: return write_json(reports);
        case ReportFormat::kCsv: return write_csv(reports);
        case ReportFormat::kText: return write_text(reports);
    }
    return {};
}

std::string write_report(const BenchmarkReport& report, ReportFormat format) {
    return write_report(std::span<const BenchmarkReport>(&report, 1), format);
}

BenchmarkReport parse_report_json(std::string_view json) {
    try {
        const auto j = ordered_json::parse(json);
        BenchmarkReport r;
        const int mode = j.at("mode").get<int>();
        if (mode < 0 || mode > 2) throw std::runtime_error("mode out of range");
        r.mode = static_cast<Mode>(mode);
        const auto level = j.at("level").get<std::string>();
        r.target.level = level == "AAA" ? WcagLevel::kAAA : WcagLevel::kAA;
        r.target.size = j.at("text_size").get<std::string>() == "large" ? TextSize::kLarge
                                                                         : TextSize::kNormal;
        r.total_pairs = j.at("total_pairs").get<std::size_t>();
        r.reasonable_pairs = j.at("reasonable_pairs").get<std::size_t>();
        r.success_count = j.at("success_count").get<std::size_t>();
        r.reasonable_success_count = j.at("reasonable_success_count").get<std::size_t>();
        r.success_rate_all = j.at("success_rate_all").get<double>();
        r.success_rate_reasonable = j.at("success_rate_reasonable").get<double>();
        r.delta_e_median = j.at("delta_e_median").get<double>();
        r.delta_e_p90 = j.at("delta_e_p90").get<double>();
        r.delta_e_max = j.at("delta_e_max").get<double>();
        r.fraction_under_2 = j.at("fraction_under_2").get<double>();
        for (const auto& cj : j.at("per_category")) {
            CategoryStats c;
            const auto cat = category_from_string(cj.at("category").get<std::string>());
            if (!cat) throw std::runtime_error("unknown category in report");
            c.category = *cat;
            c.pair_count = cj.at("pair_count").get<std::size_t>();
            c.success_count = cj.at("success_count").get<std::size_t>();
            c.success_rate = cj.at("success_rate").get<double>();
            c.modified_count = cj.at("modified_count").get<std::size_t>();
            c.mean_delta_e_modified = cj.at("mean_delta_e_modified").get<double>();
            r.per_category.push_back(c);
        }
        r.total_runtime_ms = j.at("total_runtime_ms").get<double>();
        r.per_pair_runtime_ms = j.at("per_pair_runtime_ms").get<double>();
        for (const auto& oj : j.at("unexplained_failures")) {
            r.unexplained_failures.push_back(outcome_from_json(oj));
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("invalid report JSON: ") + e.what());
    }
}

}  // namespace contrastfix
