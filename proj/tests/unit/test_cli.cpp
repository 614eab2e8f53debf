#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "lextok/manifest.hpp"
#include "lextok/normalization.hpp"
#include "lextok/serialization.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using testing_support::fixture;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = lextok::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("lextok_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    model_ = (dir_ / "toy.tok").string();
    const auto r = run({"train", "--config", fixture("toy.cfg").string(), "--corpus",
                        fixture("corpus").string(), "--out", model_});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static inline fs::path dir_;
  static inline std::string model_;
};

}  // namespace

TEST_F(Cli, TrainThenInspect) {
  const auto r = run({"inspect", model_});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("size\t1024\n"), std::string::npos);
  EXPECT_NE(r.out.find("power_of_two\tyes\n"), std::string::npos);
  const auto j = run({"inspect", "--json", "--model", model_});
  ASSERT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["size"], 1024);
  EXPECT_LE(parsed["longest_learned"].get<int>(), 4);
}

TEST_F(Cli, TrainIsDeterministic) {
  const auto again = (dir_ / "again.tok").string();
  ASSERT_EQ(run({"train", "--config", fixture("toy.cfg").string(), "--corpus", fixture("corpus").string(), "--out", again}).code, 0);
  EXPECT_EQ(testing_support::read_file(again), testing_support::read_file(model_));
}

TEST_F(Cli, EncodeEmptyString) {
  const auto r = run({"encode", "--model", model_, ""});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "\n");
  EXPECT_EQ(r.err, "");
}

TEST_F(Cli, DecodeOutOfRange) {
  const auto r = run({"decode", "--model", model_, "999999999"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("999999999"), std::string::npos);
  EXPECT_NE(r.err.find("out of range"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"encode", "--bogus"}).code, 1);
  EXPECT_EQ(run({"encode", "hello"}).code, 1);
  EXPECT_EQ(run({"eval-tpc", "--model", model_}).code, 1);
  EXPECT_EQ(run({"eval-sizes", "--model", model_, "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"train", "--preset", "char-4k"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, DataErrors) {
  EXPECT_EQ(run({"encode", "--model", (dir_ / "missing.tok").string(), "x"}).code, 2);
  EXPECT_EQ(run({"train", "--preset", "no-such", "--corpus", fixture("corpus").string(), "--out",
                 (dir_ / "x.tok").string()}).code, 2);
  EXPECT_EQ(run({"eval-tpc", "--model", model_, "--corpus", (dir_ / "nowhere").string()}).code, 2);
  const auto bad = run({"decode", "--model", model_, "12x"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("12x"), std::string::npos);
}

TEST_F(Cli, EncodeDecodePipe) {
  std::mt19937 rng(17);
  std::string input;
  std::string expected;
  const auto model = lextok::load(model_);
  for (int i = 0; i < 300; ++i) {
    std::string line = testing_support::random_unicode(rng, 30);
    std::erase_if(line, [](char c) { return c == '\n' || c == '\r' || c == '\v' || c == '\f'; });
    const std::string normalized = lextok::normalize(line, model.normalization());
    if (normalized.find_first_of("\n\r\v\f") != std::string::npos) continue;
    input += line + "\n";
    expected += normalized + "\n";
  }
  const auto enc = run({"encode", "--model", model_}, input);
  ASSERT_EQ(enc.code, 0) << enc.err;
  const auto dec = run({"decode", "--model", model_}, enc.out);
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(dec.out, expected);

  const auto json = run({"encode", "--json", "--model", model_}, input);
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(run({"decode", "--json", "--model", model_}, json.out).out, expected);
}

TEST_F(Cli, EncodeJsonRecord) {
  const auto r = run({"encode", "--json", "--model", model_, "The court"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ids"].size(), j["tokens"].size());
  EXPECT_EQ(j["offsets"].back()[1], 9);
}

TEST_F(Cli, EvalCommands) {
  const auto tpc = run({"eval-tpc", "--model", model_, "--corpus", fixture("corpus").string(), "--format", "csv"});
  ASSERT_EQ(tpc.code, 0) << tpc.err;
  EXPECT_NE(tpc.out.find("Corpus,Characters,toy\r\n"), std::string::npos);

  const auto terms = run({"eval-terms", "--model", model_, "--terms", fixture("terms.tsv").string()});
  ASSERT_EQ(terms.code, 0) << terms.err;
  EXPECT_NE(terms.out.find("certiorari"), std::string::npos);
  EXPECT_NE(terms.out.find("Overall"), std::string::npos);

  const auto sizes = run({"eval-sizes", "--model", model_});
  ASSERT_EQ(sizes.code, 0);
  EXPECT_NE(sizes.out.find("Coverage"), std::string::npos);

  const auto out_file = (dir_ / "align.md").string();
  const auto align = run({"eval-align", "--model", model_, "--pairs", fixture("pairs.tsv").string(), "--out", out_file});
  ASSERT_EQ(align.code, 0) << align.err;
  EXPECT_EQ(align.out, "");
  EXPECT_NE(testing_support::read_file(out_file).find("Vnited"), std::string::npos);
}

TEST_F(Cli, EvalWithManifest) {
  const std::string hash = lextok::sha256_file(model_);
  const auto manifest = dir_ / "manifest.json";
  std::ofstream(manifest) << R"({"models": {"pinned-toy": {"path": "toy.tok", "sha256": ")" << hash << R"("}}})";
  const auto r = run({"eval-sizes", "--manifest", manifest.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("pinned-toy"), std::string::npos);
}

TEST_F(Cli, CatalogExport) {
  const auto r = run({"catalog", "--preset", "domain-64k"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[years]\n1776\n"), std::string::npos);
  EXPECT_NE(r.out.find("[citations]"), std::string::npos);
}
