#pragma once

// Command implementations behind the `selfauth` executable. Each command
// writes to caller-supplied streams and returns the process exit code:
// 0 success/authentic, 1 tampered, 2 error.

#include "selfauth/authenticator.hpp"
#include "selfauth/embedding.hpp"
#include "selfauth/error.hpp"
#include "selfauth/image_io.hpp"
#include "selfauth/metrics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace selfauth::cli {

enum ExitCode : int { Success = 0, Tampered = 1, Failure = 2 };

struct EmbedOptions {
    std::filesystem::path input;
    std::filesystem::path output;
    int key = EmbedKey::default_value;
};

struct VerifyOptions {
    std::filesystem::path input;
    int key = EmbedKey::default_value;
    std::optional<std::filesystem::path> tamper_map;
    bool json = false;
    std::size_t max_mismatch = 0;
};

struct MetricsOptions {
    std::filesystem::path first;
    std::filesystem::path second;
    bool json = false;
};

struct ReportOptions {
    std::filesystem::path directory;
    int key = EmbedKey::default_value;
    std::optional<std::filesystem::path> csv;
};

/// One row of the batch report (Table-1 layout).
struct ReportRow {
    std::string name;
    double mse = 0.0;
    double psnr = 0.0;
    double image_fidelity = 0.0;
};

/// Fixed six-decimal rendering; infinity prints as "inf".
inline std::string format_fixed(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline nlohmann::json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : report.mismatched_blocks) {
        blocks.push_back({{"channel", std::string(1, channel_letter(b.channel))},
                          {"row", b.block_row},
                          {"col", b.block_col},
                          {"carriers", {b.carrier_pixels[0], b.carrier_pixels[1]}}});
    }
    return {{"authentic", report.authentic},
            {"total_payload_bytes", report.total_payload_bytes},
            {"mismatched_bytes", report.mismatched_bytes},
            {"blocks", std::move(blocks)}};
}

inline ReportRow average_row(const std::vector<ReportRow>& rows) {
    ReportRow avg{"average", 0.0, 0.0, 0.0};
    if (rows.empty()) return avg;
    for (const auto& r : rows) {
        avg.mse += r.mse;
        avg.psnr += r.psnr;
        avg.image_fidelity += r.image_fidelity;
    }
    const auto n = static_cast<double>(rows.size());
    avg.mse /= n;
    avg.psnr /= n;
    avg.image_fidelity /= n;
    return avg;
}

inline int cmd_embed(const EmbedOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const EmbedKey key(opt.key);
        const RgbImage cover = load_ppm(opt.input);
        const RgbImage stego = encode(cover, key);
        save_ppm(opt.output, stego);
        const auto m = metrics::measure(cover, stego);
        out << "mse\tpsnr\tif\n"
            << format_fixed(m.mse) << '\t' << format_fixed(m.psnr) << '\t' << format_fixed(m.image_fidelity) << '\n';
        return Success;
    } catch (const std::exception& e) {
        err << "embed: " << e.what() << '\n';
        return Failure;
    }
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const EmbedKey key(opt.key);
        const RgbImage candidate = load_ppm(opt.input);
        const VerificationReport report = verify(candidate, key);
        if (opt.tamper_map) detail::write_file(*opt.tamper_map, tamper_mask_to_pgm(report));
        const bool accepted = report.mismatched_bytes <= opt.max_mismatch;
        if (opt.json) {
            out << report_to_json(report).dump() << '\n';
        } else if (report.authentic) {
            out << "authentic: 0 of " << report.total_payload_bytes << " payload bytes mismatched\n";
        } else {
            out << (accepted ? "accepted" : "tampered") << ": " << report.mismatched_bytes << " of "
                << report.total_payload_bytes << " payload bytes mismatched\n";
        }
        return accepted ? Success : Tampered;
    } catch (const std::exception& e) {
        err << "verify: " << e.what() << '\n';
        return Failure;
    }
}

inline int cmd_metrics(const MetricsOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        const RgbImage a = load_ppm(opt.first);
        const RgbImage b = load_ppm(opt.second);
        const auto m = metrics::measure(a, b);
        if (opt.json) {
            out << nlohmann::json{{"mse", m.mse},
                                  {"psnr", json_number(m.psnr)},
                                  {"if", m.image_fidelity},
                                  {"sd_a", m.std_dev_original},
                                  {"sd_b", m.std_dev_stego}}
                       .dump()
                << '\n';
        } else {
            out << "mse\tpsnr\tif\tsd_a\tsd_b\n"
                << format_fixed(m.mse) << '\t' << format_fixed(m.psnr) << '\t' << format_fixed(m.image_fidelity)
                << '\t' << format_fixed(m.std_dev_original) << '\t' << format_fixed(m.std_dev_stego) << '\n';
        }
        return Success;
    } catch (const std::exception& e) {
        err << "metrics: " << e.what() << '\n';
        return Failure;
    }
}

inline bool has_ppm_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".ppm" || ext == ".pnm";
}

inline int cmd_report(const ReportOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<std::filesystem::path> files;
    EmbedKey key;
    try {
        key = EmbedKey(opt.key);
        for (const auto& entry : std::filesystem::directory_iterator(opt.directory)) {
            if (entry.is_regular_file() && has_ppm_extension(entry.path())) files.push_back(entry.path());
        }
    } catch (const std::exception& e) {
        err << "report: " << e.what() << '\n';
        return Failure;
    }
    std::sort(files.begin(), files.end(), [](const auto& x, const auto& y) { return x.filename() < y.filename(); });

    auto process = [key](const std::filesystem::path& path) {
        const RgbImage cover = load_ppm(path);
        const RgbImage stego = encode(cover, key);
        const double mse = metrics::mse(cover, stego);
        return ReportRow{path.filename().string(), mse, metrics::psnr(mse), metrics::image_fidelity(cover, stego)};
    };

    // Images are processed in waves of at most hardware_concurrency threads;
    // rows are collected in file-name order regardless of completion order.
    const std::size_t wave = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ReportRow> rows;
    for (std::size_t first = 0; first < files.size(); first += wave) {
        const std::size_t last = std::min(files.size(), first + wave);
        std::vector<std::future<ReportRow>> jobs;
        for (std::size_t i = first; i < last; ++i) jobs.push_back(std::async(std::launch::async, process, files[i]));
        for (std::size_t i = first; i < last; ++i) {
            try {
                rows.push_back(jobs[i - first].get());
            } catch (const std::exception& e) {
                err << "report: skipping " << files[i].filename().string() << ": " << e.what() << '\n';
            }
        }
    }
    if (rows.empty()) {
        err << "report: no images processed in " << opt.directory.string() << '\n';
        return Failure;
    }

    const ReportRow avg = average_row(rows);
    out << "name\tmse\tpsnr\tif\n";
    for (const auto& r : rows) {
        out << r.name << '\t' << format_fixed(r.mse) << '\t' << format_fixed(r.psnr) << '\t'
            << format_fixed(r.image_fidelity) << '\n';
    }
    out << avg.name << '\t' << format_fixed(avg.mse) << '\t' << format_fixed(avg.psnr) << '\t'
        << format_fixed(avg.image_fidelity) << '\n';

    if (opt.csv) {
        std::ofstream csv(*opt.csv, std::ios::trunc);
        if (!csv) {
            err << "report: cannot write " << opt.csv->string() << '\n';
            return Failure;
        }
        csv << "name,mse,psnr,if\n";
        rows.push_back(avg);
        for (const auto& r : rows) {
            csv << r.name << ',' << format_fixed(r.mse) << ',' << format_fixed(r.psnr) << ','
                << format_fixed(r.image_fidelity) << '\n';
        }
    }
    return Success;
}

/// Parses argv and dispatches to a command.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-authenticating color images: hide a wavelet digest of red/green in blue, verify it later."};
    app.require_subcommand(1);

    auto key_option = [](CLI::App* cmd, int& key) {
        return cmd->add_option("--key,-k", key, "Embedding key S")
            ->check(CLI::Range(EmbedKey::min_value, EmbedKey::max_value));
    };

    EmbedOptions embed_opt;
    auto* embed_cmd = app.add_subcommand("embed", "Watermark a PPM image");
    embed_cmd->add_option("input", embed_opt.input, "Cover image (PPM)")->required();
    embed_cmd->add_option("output", embed_opt.output, "Output image (PPM, P6)")->required();
    key_option(embed_cmd, embed_opt.key)->capture_default_str();

    VerifyOptions verify_opt;
    std::string tamper_map;
    auto* verify_cmd = app.add_subcommand("verify", "Authenticate a watermarked image and localize tampering");
    verify_cmd->add_option("input", verify_opt.input, "Candidate image (PPM)")->required();
    key_option(verify_cmd, verify_opt.key)->required();
    verify_cmd->add_option("--tamper-map", tamper_map, "Write a P5 tamper mask here");
    verify_cmd->add_flag("--json", verify_opt.json, "Emit a JSON report");
    verify_cmd->add_option("--max-mismatch", verify_opt.max_mismatch, "Mismatched bytes tolerated")
        ->capture_default_str();

    MetricsOptions metrics_opt;
    auto* metrics_cmd = app.add_subcommand("metrics", "Compare two images (MSE, PSNR, IF, SD)");
    metrics_cmd->add_option("original", metrics_opt.first, "Original image (PPM)")->required();
    metrics_cmd->add_option("stego", metrics_opt.second, "Modified image (PPM)")->required();
    metrics_cmd->add_flag("--json", metrics_opt.json, "Emit JSON");

    ReportOptions report_opt;
    std::string csv;
    auto* report_cmd = app.add_subcommand("report", "Encode every PPM in a directory and tabulate quality");
    report_cmd->add_option("directory", report_opt.directory, "Directory of PPM images")->required();
    key_option(report_cmd, report_opt.key)->capture_default_str();
    report_cmd->add_option("--csv", csv, "Also write the table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : Failure;
    }

    if (*embed_cmd) return cmd_embed(embed_opt, out, err);
    if (*verify_cmd) {
        if (!tamper_map.empty()) verify_opt.tamper_map = tamper_map;
        return cmd_verify(verify_opt, out, err);
    }
    if (*metrics_cmd) return cmd_metrics(metrics_opt, out, err);
    if (!csv.empty()) report_opt.csv = csv;
    return cmd_report(report_opt, out, err);
}

} // namespace selfauth::cli
