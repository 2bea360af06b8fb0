#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "contrastfix/color.hpp"
#include "contrastfix/dataset.hpp"
#include "contrastfix/eval.hpp"
#include "contrastfix/metrics.hpp"
#include "contrastfix/optimizer.hpp"
#include "contrastfix/report.hpp"

namespace contrastfix::cli {

namespace {

struct TargetOptions {
    std::string level = "aa";
    bool large = false;

    WcagTarget target() const {
        return WcagTarget{level == "aaa" ? WcagLevel::kAAA : WcagLevel::kAA,
                          large ? TextSize::kLarge : TextSize::kNormal};
    }
};

void add_target_options(CLI::App* cmd, TargetOptions& opts) {
    cmd->add_option("--level", opts.level, "WCAG level")
        ->check(CLI::IsMember({"aa", "aaa"}, CLI::ignore_case))
        ->transform([](std::string s) {
            std::transform(s.begin(), s.end(), s.begin(), ::tolower);
            return s;
        })
        ->capture_default_str();
    cmd->add_flag("--large", opts.large, "Large-text thresholds (3.0 for AA, 4.5 for AAA)");
}

std::string num(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string target_label(WcagTarget t) {
    return std::string(to_string(t.level)) + (t.size == TextSize::kLarge ? " large" : " normal");
}

std::string describe(RgbColor c) {
    const OklchColor o = rgb_to_oklch(c);
    return format_hex(c) + " oklch(" + num("%.4f", o.l) + " " + num("%.4f", o.c) + " " +
           num("%.2f", o.h) + ")";
}

/// Thrown for errors that map to exit code 2 after the command line parsed.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RgbColor parse_arg(const std::string& value, const char* name) {
    try {
        return parse_hex(value);
    } catch (const ParseError& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
}

/// Writes to the file at `path`, or to `fallback` when path is empty or "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open '" + path + "' for writing");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }
    void finish() {
        stream_->flush();
        if (!*stream_) throw UsageError("write failed");
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

// -- check -----------------------------------------------------------------

struct CheckOptions {
    std::string text;
    std::string bg;
    TargetOptions target;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
    const RgbColor text = parse_arg(o.text, "text color");
    const RgbColor bg = parse_arg(o.bg, "background color");
    const WcagTarget selected = o.target.target();
    const double ratio = contrast_ratio(text, bg);

    out << "text  " << describe(text) << '\n';
    out << "bg    " << describe(bg) << '\n';
    out << "ratio " << num("%.2f", ratio) << ":1 (" << num("%.4f", ratio) << ")\n";
    for (const WcagLevel level : {WcagLevel::kAA, WcagLevel::kAAA}) {
        for (const TextSize size : {TextSize::kNormal, TextSize::kLarge}) {
            const WcagTarget t{level, size};
            out << (t == selected ? "* " : "  ") << target_label(t) << " >= "
                << num("%.1f", required_ratio(t)) << ": " << (passes(ratio, t) ? "pass" : "fail")
                << '\n';
        }
    }
    return passes(ratio, selected) ? kOk : kAccessibilityFailure;
}

// -- fix -------------------------------------------------------------------

struct FixOptions {
    std::string text;
    std::string bg;
    int mode = 1;
    TargetOptions target;
    std::string format = "text";
};

int cmd_fix(const FixOptions& o, std::ostream& out) {
    const RgbColor text = parse_arg(o.text, "text color");
    const RgbColor bg = parse_arg(o.bg, "background color");
    const FixResult r = make_readable(text, bg, ModeConfig::defaults(static_cast<Mode>(o.mode)),
                                      o.target.target());
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["fixed"] = format_hex(r.color);
        j["success"] = r.success;
        j["ratio"] = r.achieved_ratio;
        j["delta_e"] = r.delta_e_from_original;
        j["iterations"] = r.iterations_used;
        j["hue_drift"] = r.hue_drift_degrees;
        j["mode"] = o.mode;
        out << j.dump() << '\n';
    } else {
        out << "fixed=" << format_hex(r.color) << " success=" << (r.success ? "true" : "false")
            << " ratio=" << num("%.4f", r.achieved_ratio)
            << " delta_e=" << num("%.4f", r.delta_e_from_original)
            << " iterations=" << r.iterations_used << " hue_drift=" << num("%.2f", r.hue_drift_degrees)
            << " mode=" << o.mode << '\n';
    }
    return r.success ? kOk : kAccessibilityFailure;
}

// -- batch -----------------------------------------------------------------

struct BatchOptions {
    std::string input;
    std::string output;
    int mode = 1;
    TargetOptions target;
    std::string format = "csv";
};

int cmd_batch(const BatchOptions& o, std::ostream& out, std::ostream& err) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + o.input + "'");
    InputTable table;
    try {
        table = read_pairs(in);
    } catch (const std::runtime_error& e) {
        throw UsageError(o.input + ": " + e.what());
    }
    for (const auto& w : table.warnings) {
        err << "warning: " << o.input << ":" << w.line << ": " << w.message << " (row skipped)\n";
    }

    const ModeConfig mode = ModeConfig::defaults(static_cast<Mode>(o.mode));
    const WcagTarget target = o.target.target();
    std::vector<FixResult> results;
    results.reserve(table.rows.size());
    for (const auto& row : table.rows) results.push_back(make_readable(row.text, row.bg, mode, target));

    std::size_t succeeded = 0;
    for (const auto& r : results) succeeded += r.success;
    const double rate = results.empty() ? 0.0 : static_cast<double>(succeeded) / static_cast<double>(results.size());

    Sink sink(o.output, out);
    std::ostream& os = sink.get();
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["results"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& row = table.rows[i];
            const auto& r = results[i];
            nlohmann::ordered_json rj;
            rj["line"] = row.line;
            if (row.index) rj["index"] = *row.index;
            if (row.category) rj["category"] = to_string(*row.category);
            rj["text_hex"] = format_hex(row.text);
            rj["bg_hex"] = format_hex(row.bg);
            rj["fixed_hex"] = format_hex(r.color);
            rj["success"] = r.success;
            rj["initial_ratio"] = contrast_ratio(row.text, row.bg);
            rj["ratio"] = r.achieved_ratio;
            rj["delta_e"] = r.delta_e_from_original;
            rj["iterations"] = r.iterations_used;
            j["results"].push_back(rj);
        }
        j["warnings"] = nlohmann::ordered_json::array();
        for (const auto& w : table.warnings) j["warnings"].push_back({{"line", w.line}, {"message", w.message}});
        j["summary"] = {{"rows", results.size()},       {"succeeded", succeeded},
                        {"success_rate", rate},         {"skipped", table.warnings.size()},
                        {"mode", o.mode},               {"required_ratio", required_ratio(target)}};
        os << j.dump(2) << '\n';
    } else {
        const bool csv = o.format == "csv";
        if (csv) {
            os << "line,index,category,text_hex,bg_hex,fixed_hex,success,initial_ratio,ratio,delta_e,iterations\n";
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& row = table.rows[i];
            const auto& r = results[i];
            const std::string index = row.index ? std::to_string(*row.index) : "";
            const std::string category = row.category ? std::string(to_string(*row.category)) : "";
            const double initial = contrast_ratio(row.text, row.bg);
            if (csv) {
                os << row.line << ',' << index << ',' << category << ',' << format_hex(row.text) << ','
                   << format_hex(row.bg) << ',' << format_hex(r.color) << ','
                   << (r.success ? "true" : "false") << ',' << num("%.4f", initial) << ','
                   << num("%.4f", r.achieved_ratio) << ',' << num("%.4f", r.delta_e_from_original)
                   << ',' << r.iterations_used << '\n';
            } else {
                os << format_hex(row.text) << " on " << format_hex(row.bg) << "  "
                   << num("%5.2f", initial) << " -> " << format_hex(r.color) << "  "
                   << num("%5.2f", r.achieved_ratio) << "  dE " << num("%6.2f", r.delta_e_from_original)
                   << "  " << (r.success ? "ok" : "FAIL") << '\n';
            }
        }
        os << "# rows=" << results.size() << " succeeded=" << succeeded
           << " success_rate=" << num("%.6f", rate) << " skipped=" << table.warnings.size()
           << " mode=" << o.mode << " target=" << target_label(target) << '\n';
    }
    sink.finish();
    return kOk;
}

// -- gen-dataset -----------------------------------------------------------

struct GenOptions {
    std::uint64_t seed = 45;
    std::size_t count = 10000;
    std::string output;
    std::string format;
    bool print_config = false;
};

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_gen_dataset(const GenOptions& o, std::ostream& out) {
    if (o.print_config) {
        out << GeneratorConfig::defaults().to_json() << '\n';
        return kOk;
    }
    const auto pairs = gen_dataset(o.seed, o.count);
    std::string format = o.format;
    if (format.empty()) format = ends_with(o.output, ".jsonl") ? "jsonl" : "csv";
    Sink sink(o.output, out);
    if (format == "jsonl") {
        write_dataset_jsonl(sink.get(), pairs);
    } else {
        write_dataset_csv(sink.get(), pairs);
    }
    sink.finish();
    return kOk;
}

// -- bench -----------------------------------------------------------------

struct BenchOptions {
    std::uint64_t seed = 45;
    std::size_t count = 10000;
    std::string mode = "1";
    TargetOptions target;
    std::string format = "text";
    std::string output;
    std::string outcomes;
    unsigned threads = 1;
};

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<Mode> modes;
    if (o.mode == "all") {
        modes = {Mode::kStrict, Mode::kRecursive, Mode::kRelaxed};
    } else {
        modes = {static_cast<Mode>(std::stoi(o.mode))};
    }
    const auto pairs = gen_dataset(o.seed, o.count);
    const WcagTarget target = o.target.target();

    std::vector<BenchmarkReport> reports;
    std::vector<std::vector<PairOutcome>> outcomes;
    for (const Mode m : modes) {
        err << "running mode " << static_cast<int>(m) << " (" << to_string(m) << ") on "
            << pairs.size() << " pairs\n";
        outcomes.emplace_back();
        reports.push_back(run_benchmark(pairs, ModeConfig::defaults(m), target, &outcomes.back(), o.threads));
    }

    if (!o.outcomes.empty()) {
        Sink sink(o.outcomes, out);
        auto& os = sink.get();
        os << "mode,index,category,text_hex,bg_hex,initial_ratio,fixed_hex,success,ratio,delta_e,iterations,hue_drift,runtime_ms\n";
        for (std::size_t k = 0; k < modes.size(); ++k) {
            for (const auto& p : outcomes[k]) {
                os << static_cast<int>(modes[k]) << ',' << p.index << ',' << to_string(p.category) << ','
                   << format_hex(p.text) << ',' << format_hex(p.bg) << ',' << num("%.4f", p.initial_ratio)
                   << ',' << format_hex(p.result.color) << ',' << (p.result.success ? "true" : "false")
                   << ',' << num("%.4f", p.result.achieved_ratio) << ','
                   << num("%.4f", p.result.delta_e_from_original) << ',' << p.result.iterations_used
                   << ',' << num("%.3f", p.result.hue_drift_degrees) << ',' << num("%.4f", p.runtime_ms)
                   << '\n';
            }
        }
        sink.finish();
    }

    Sink sink(o.output, out);
    sink.get() << write_report(reports, *report_format_from_string(o.format));
    sink.finish();
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hue-preserving WCAG contrast correction in OKLCH"};
    app.name("contrastfix");
    app.require_subcommand(1);

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Report contrast ratio and WCAG pass/fail");
    check_cmd->add_option("text", check.text, "Text color (#rgb or #rrggbb)")->required();
    check_cmd->add_option("bg", check.bg, "Background color")->required();
    add_target_options(check_cmd, check.target);

    FixOptions fix;
    auto* fix_cmd = app.add_subcommand("fix", "Correct a text color for its background");
    fix_cmd->add_option("text", fix.text, "Text color (#rgb or #rrggbb)")->required();
    fix_cmd->add_option("bg", fix.bg, "Background color")->required();
    fix_cmd->add_option("--mode", fix.mode, "0 strict, 1 recursive, 2 relaxed")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    add_target_options(fix_cmd, fix.target);
    fix_cmd->add_option("--format", fix.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    BatchOptions batch;
    auto* batch_cmd = app.add_subcommand("batch", "Correct every pair in a CSV or JSON-lines file");
    batch_cmd->add_option("input", batch.input, "Input file")->required();
    batch_cmd->add_option("-o,--output", batch.output, "Output file (default stdout)");
    batch_cmd->add_option("--mode", batch.mode, "0 strict, 1 recursive, 2 relaxed")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    add_target_options(batch_cmd, batch.target);
    batch_cmd->add_option("--format", batch.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "text"}))
        ->capture_default_str();

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-dataset", "Generate the synthetic color-pair dataset");
    gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--count", gen.count, "Number of pairs")
        ->check(CLI::Range(std::size_t{1}, std::size_t{100'000'000}))
        ->capture_default_str();
    gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");
    gen_cmd->add_option("--format", gen.format, "csv or jsonl (default from extension, else csv)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    gen_cmd->add_flag("--print-config", gen.print_config, "Print the generator configuration and exit");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Generate a dataset and benchmark one or all modes");
    bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
    bench_cmd->add_option("--count", bench.count, "Number of pairs")
        ->check(CLI::Range(std::size_t{1}, std::size_t{100'000'000}))
        ->capture_default_str();
    bench_cmd->add_option("--mode", bench.mode, "0, 1, 2 or all")
        ->check(CLI::IsMember({"0", "1", "2", "all"}))
        ->capture_default_str();
    add_target_options(bench_cmd, bench.target);
    bench_cmd->add_option("--format", bench.format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    bench_cmd->add_option("-o,--output", bench.output, "Report file (default stdout)");
    bench_cmd->add_option("--outcomes", bench.outcomes, "Also write per-pair results as CSV");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*check_cmd) return cmd_check(check, out);
        if (*fix_cmd) return cmd_fix(fix, out);
        if (*batch_cmd) return cmd_batch(batch, out, err);
        if (*gen_cmd) return cmd_gen_dataset(gen, out);
        if (*bench_cmd) return cmd_bench(bench, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace contrastfix::cli
