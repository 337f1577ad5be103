#include "selfauth/cli.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace selfauth;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "selfauth");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("selfauth_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write_random(const std::string& name, std::size_t w, std::size_t h, unsigned seed) const {
        std::mt19937_64 rng(seed);
        save_ppm(path(name), fixtures::random_image(rng, w, h));
        return path(name);
    }

    fs::path dir_;
};

std::string natural(const std::string& name) { return (fixtures::data_dir() / "natural" / (name + ".ppm")).string(); }

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, sep);) out.push_back(cell);
    return out;
}

std::vector<std::string> lines_of(const std::string& text) { return split_line(text, '\n'); }

} // namespace

TEST_F(CliTest, EmbedThenVerify) {
    const auto in = write_random("in.ppm", 16, 16, 1);
    ASSERT_EQ(run({"embed", in, path("out.ppm"), "--key", "6"}).code, 0);
    const auto r = run({"verify", path("out.ppm"), "--key", "6"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("authentic"), std::string::npos);
}

TEST_F(CliTest, EmbedOddWidthFails) {
    const auto in = write_random("odd.ppm", 5, 4, 2);
    const auto r = run({"embed", in, path("out.ppm")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("even dimensions"), std::string::npos);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST_F(CliTest, EmbedPrintsPsnrInNaturalRange) {
    const auto r = run({"embed", natural("astronaut"), path("stego.ppm")});
    ASSERT_EQ(r.code, 0);
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 2u);
    const auto cells = split_line(rows[1], '\t');
    ASSERT_EQ(cells.size(), 3u);
    const double psnr = std::stod(cells[1]);
    EXPECT_GE(psnr, 34.0);
    EXPECT_LE(psnr, 40.0);
}

TEST_F(CliTest, VerifyRequiresKey) {
    const auto in = write_random("in.ppm", 4, 4, 3);
    EXPECT_EQ(run({"verify", in}).code, 2);
    EXPECT_EQ(run({"verify", in, "--key", "1"}).code, 2);
    EXPECT_EQ(run({"verify", in, "--key", "8"}).code, 2);
}

TEST_F(CliTest, VerifyOneBlueBitFlip) {
    const auto in = write_random("in.ppm", 32, 32, 4);
    ASSERT_EQ(run({"embed", in, path("stego.ppm")}).code, 0);
    RgbImage stego = load_ppm(path("stego.ppm"));
    stego.blue[100] ^= 0x01;
    save_ppm(path("edited.ppm"), stego);

    const auto r = run({"verify", path("edited.ppm"), "--key", "4", "--json", "--tamper-map", path("mask.pgm")});
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["authentic"], false);
    EXPECT_EQ(j["total_payload_bytes"], 512);
    EXPECT_EQ(j["mismatched_bytes"], 1);
    ASSERT_EQ(j["blocks"].size(), 1u);
    // Payload byte 50 -> red block 50 of a 16-wide LL plane.
    EXPECT_EQ(j["blocks"][0]["channel"], "R");
    EXPECT_EQ(j["blocks"][0]["row"], 3);
    EXPECT_EQ(j["blocks"][0]["col"], 2);
    EXPECT_EQ(j["blocks"][0]["carriers"], nlohmann::json::array({100, 101}));

    const auto mask = detail::read_file(path("mask.pgm"));
    const std::string header = "P5\n32 32\n255\n";
    ASSERT_EQ(mask.size(), header.size() + 1024);
    EXPECT_EQ(std::count(mask.begin() + static_cast<long>(header.size()), mask.end(), 255), 6);

    EXPECT_EQ(run({"verify", path("edited.ppm"), "--key", "4", "--max-mismatch", "1"}).code, 0);
}

TEST_F(CliTest, VerifyUnencodedImage) {
    const auto in = write_random("plain.ppm", 64, 64, 5);
    const auto r = run({"verify", in, "--key", "4", "--json"});
    EXPECT_EQ(r.code, 1);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["total_payload_bytes"], 2048);
    EXPECT_GT(j["mismatched_bytes"].get<int>(), 1900);
}

TEST_F(CliTest, VerifyPristineJson) {
    const auto in = write_random("in.ppm", 8, 8, 6);
    ASSERT_EQ(run({"embed", in, path("s.ppm"), "-k", "2"}).code, 0);
    const auto r = run({"verify", path("s.ppm"), "-k", "2", "--json"});
    EXPECT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["authentic"], true);
    EXPECT_EQ(j["mismatched_bytes"], 0);
    EXPECT_TRUE(j["blocks"].empty());
}

TEST_F(CliTest, VerifyMalformedInput) {
    std::ofstream(path("junk.ppm")) << "P6 2 2 255\nxx";
    EXPECT_EQ(run({"verify", path("junk.ppm"), "--key", "4"}).code, 2);
    EXPECT_EQ(run({"verify", path("missing.ppm"), "--key", "4"}).code, 2);
}

TEST_F(CliTest, MetricsIdentical) {
    const auto a = write_random("a.ppm", 8, 8, 7);
    const auto r = run({"metrics", a, a});
    ASSERT_EQ(r.code, 0);
    const auto cells = split_line(lines_of(r.out)[1], '\t');
    ASSERT_EQ(cells.size(), 5u);
    EXPECT_EQ(cells[0], "0.000000");
    EXPECT_EQ(cells[1], "inf");
    EXPECT_EQ(cells[2], "1.000000");
    EXPECT_EQ(cells[3], cells[4]);
}

TEST_F(CliTest, MetricsJsonAgreesWithTable) {
    ASSERT_EQ(run({"embed", natural("chelsea"), path("s.ppm")}).code, 0);
    const auto table = run({"metrics", natural("chelsea"), path("s.ppm")});
    const auto json = run({"metrics", natural("chelsea"), path("s.ppm"), "--json"});
    ASSERT_EQ(table.code, 0);
    ASSERT_EQ(json.code, 0);
    const auto header = split_line(lines_of(table.out)[0], '\t');
    const auto cells = split_line(lines_of(table.out)[1], '\t');
    const auto j = nlohmann::json::parse(json.out);
    ASSERT_EQ(header, (std::vector<std::string>{"mse", "psnr", "if", "sd_a", "sd_b"}));
    for (std::size_t i = 0; i < header.size(); ++i) {
        EXPECT_EQ(cli::format_fixed(j[header[i]].get<double>()), cells[i]) << header[i];
        const auto dot = cells[i].find('.');
        EXPECT_EQ(cells[i].size() - dot - 1, 6u);
    }
}

TEST(FormatFixed, SixDecimalsLikeThePublishedTable) {
    EXPECT_EQ(cli::format_fixed(14.113154), "14.113154");
    EXPECT_EQ(cli::format_fixed(36.6345631), "36.634563");
    EXPECT_EQ(cli::format_fixed(0.999212), "0.999212");
}

TEST_F(CliTest, MetricsDimensionMismatch) {
    const auto a = write_random("a.ppm", 8, 8, 8);
    const auto b = write_random("b.ppm", 8, 6, 9);
    EXPECT_EQ(run({"metrics", a, b}).code, 2);
}

TEST_F(CliTest, ReportEmptyDirectory) {
    EXPECT_EQ(run({"report", dir_.string()}).code, 2);
    EXPECT_EQ(run({"report", path("does-not-exist")}).code, 2);
}

TEST_F(CliTest, ReportSingleImageAverageEqualsRow) {
    write_random("only.ppm", 16, 16, 10);
    const auto r = run({"report", dir_.string(), "--csv", path("out.csv")});
    ASSERT_EQ(r.code, 0);
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 3u);
    const auto row = split_line(rows[1], '\t');
    const auto avg = split_line(rows[2], '\t');
    EXPECT_EQ(row[0], "only.ppm");
    EXPECT_EQ(avg[0], "average");
    EXPECT_EQ(std::vector(row.begin() + 1, row.end()), std::vector(avg.begin() + 1, avg.end()));

    std::ifstream csv(path("out.csv"));
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "name,mse,psnr,if");
}

TEST_F(CliTest, ReportSkipsUnreadableAndSortsByName) {
    write_random("b.ppm", 8, 8, 11);
    write_random("a.ppm", 8, 8, 12);
    write_random("odd.ppm", 7, 8, 13);
    std::ofstream(path("broken.ppm")) << "P6 9";
    std::ofstream(path("notes.txt")) << "ignored";
    const auto r = run({"report", dir_.string(), "--key", "7"});
    ASSERT_EQ(r.code, 0);
    const auto rows = lines_of(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(split_line(rows[1], '\t')[0], "a.ppm");
    EXPECT_EQ(split_line(rows[2], '\t')[0], "b.ppm");
    EXPECT_NE(r.err.find("broken.ppm"), std::string::npos);
    EXPECT_NE(r.err.find("odd.ppm"), std::string::npos);
}

TEST(AverageRow, AveragesPerImagePsnr) {
    const std::vector<cli::ReportRow> rows = {{"a", 10.0, metrics::psnr(10.0), 0.9},
                                              {"b", 20.0, metrics::psnr(20.0), 0.8}};
    const auto avg = cli::average_row(rows);
    EXPECT_DOUBLE_EQ(avg.mse, 15.0);
    EXPECT_DOUBLE_EQ(avg.psnr, (metrics::psnr(10.0) + metrics::psnr(20.0)) / 2.0);
    EXPECT_GT(std::abs(avg.psnr - metrics::psnr(15.0)), 0.1);
    EXPECT_DOUBLE_EQ(avg.image_fidelity, 0.85);
}

TEST_F(CliTest, HelpExitsZero) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
}
