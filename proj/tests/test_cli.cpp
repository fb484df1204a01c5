#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "permwilf/cli.hpp"

using namespace permwilf;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
public:
  explicit TempFile(const std::string& name) : path_(fs::temp_directory_path() / ("permwilf_" + name)) {
    fs::remove(path_);
  }
  ~TempFile() { fs::remove(path_); }
  std::string str() const { return path_.string(); }
  std::vector<std::string> lines() const {
    std::ifstream in(path_);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
  }

private:
  fs::path path_;
};

}  // namespace

TEST(Cli, CountExamples) {
  EXPECT_EQ(run({"count", "--pattern", "123", "--n", "4"}).out, "14\n");
  EXPECT_EQ(run({"count", "--pattern", "21", "--n", "5"}).out, "1\n");
  EXPECT_EQ(run({"count", "--pattern", "1342", "--n", "6"}).out, "512\n");
  EXPECT_EQ(run({"count", "--pattern", "1,3,4,2", "--n", "7"}).out, "2740\n");
}

TEST(Cli, CountFormats) {
  EXPECT_EQ(run({"--format", "csv", "count", "--pattern", "123", "--n", "4"}).out, "pattern,n,count\n\"1,2,3\",4,14\n");
  EXPECT_EQ(run({"--format", "json", "count", "--pattern", "123", "--n", "4"}).out,
            "{\"pattern\":\"1,2,3\",\"n\":4,\"count\":\"14\"}\n");
}

TEST(Cli, CountByMinima) {
  const auto r = run({"--format", "json", "count", "--pattern", "123", "--n", "4", "--by-lr-minima"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"pattern\":\"1,2,3\",\"n\":4,\"per_m\":{\"1\":\"1\",\"2\":\"6\",\"3\":\"6\",\"4\":\"1\"},\"total\":\"14\"}\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"count", "--pattern", "1,2,2", "--n", "4"}).code, cli::kUsage);
  EXPECT_EQ(run({"count", "--pattern", "12", "--n", "13"}).code, cli::kCeiling);
  EXPECT_EQ(run({"--ceiling", "5", "count", "--pattern", "12", "--n", "6"}).code, cli::kCeiling);
  EXPECT_EQ(run({"--ceiling", "5", "--force", "count", "--pattern", "12", "--n", "6"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "nosuch"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  EXPECT_EQ(run({"count", "--pattern", "", "--n", "3"}).code, cli::kUsage);
  EXPECT_EQ(run({"construct", "qk", "--k", "3"}).code, cli::kUsage);
  EXPECT_EQ(run({"construct", "layered"}).code, cli::kUsage);
}

TEST(Cli, ParseErrorNamesToken) {
  const auto r = run({"count", "--pattern", "1,x,3", "--n", "4"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("'x'"), std::string::npos);
}

TEST(Cli, ConstructExamples) {
  EXPECT_EQ(run({"construct", "qk", "--k", "5"}).out, "1,2,4,5,3\n");
  EXPECT_EQ(run({"construct", "layered", "--layers", "3,4"}).out, "3,2,1,7,6,5,4\n");
  EXPECT_EQ(run({"construct", "qprime", "--pattern", "1342"}).out, "1,2,4,5,3\n");
  EXPECT_EQ(run({"construct", "sandwich", "--pattern", "21"}).out, "1,3,2,4\n");
  EXPECT_EQ(run({"construct", "block", "--blocks", "21;12"}).out, "4,3,1,2\n");
  EXPECT_EQ(run({"construct", "witness", "--pattern", "3142", "--block-size", "2", "--blocks", "12;21"}).out,
            "3,1,5,6,4,2\n");
}

TEST(Cli, WitnessThatDisturbsMinimaExitsOne) {
  // p' = 3412, N = 3: a single five-long block; find one that is rejected
  int rejected = 0;
  for (const auto& b : Engine().enumerate_avoiders({1, 3, 4, 2}, 5)) {
    const auto r = run({"construct", "witness", "--pattern", "3412", "--block-size", "3", "--blocks", format_digits(b)});
    if (r.code == cli::kVerificationFailed) {
      ++rejected;
      EXPECT_NE(r.err.find("minima"), std::string::npos);
    } else {
      EXPECT_EQ(r.code, cli::kOk);
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(run({"verify", "bwx", "--max-n", "7"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "layered", "--max-n", "7"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "supermult", "--max-n", "8"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "recprop", "--max-n", "7"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "witness", "--max-n", "7"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "narayana", "--max-n", "7"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "recprop", "--max-n", "9"}).code, cli::kCeiling);
}

TEST(Cli, VerifyJsonShape) {
  const auto r = run({"--format", "json", "verify", "layered", "--max-n", "6"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["suite"], "layered");
  EXPECT_EQ(j["passed"], true);
  EXPECT_TRUE(j["failures"].empty());
}

TEST(Cli, LimitExamples) {
  auto r = run({"limit", "--pattern", "12453", "--max-n", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("closed form: 9+4*sqrt(2) = 14.6568542495"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("upper chain: 9+4*sqrt(2)"), std::string::npos);
  r = run({"limit", "--pattern", "123"});
  EXPECT_NE(r.out.find("closed form: 4 "), std::string::npos) << r.out;
  r = run({"--format", "json", "limit", "--pattern", "1324", "--max-n", "7"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["closed_form"].is_null());
  EXPECT_TRUE(j["upper_chain"].is_null());
  EXPECT_EQ(j["finite_lower"]["witness_n"], 7);
}

TEST(Cli, LimitJsonCarriesExactAndDecimal) {
  const auto j = nlohmann::json::parse(run({"--format", "json", "limit", "--pattern", "12453", "--max-n", "8"}).out);
  EXPECT_EQ(j["closed_form"]["exact"], "9+4*sqrt(2)");
  EXPECT_EQ(j["closed_form"]["decimal"], "14.6568542495");
  EXPECT_EQ(j["consistent"], true);
}

TEST(Cli, ClassifyAndWilf) {
  const auto j = nlohmann::json::parse(run({"--format", "json", "classify", "--pattern", "3217654"}).out);
  EXPECT_EQ(j["layers"], nlohmann::json::array({3, 4}));
  EXPECT_EQ(j["indecomposable"], true);
  auto r = run({"wilf", "--pattern", "1234", "--pattern2", "1342", "--max-n", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "differ at n=6: 513 vs 512\n");
  r = run({"wilf", "--pattern", "1243", "--pattern2", "2143", "--max-n", "7"});
  EXPECT_EQ(r.out, "agree for all n <= 7\n");
}

TEST(Cli, Avoiders) {
  EXPECT_EQ(run({"avoiders", "--pattern", "123", "--n", "3"}).out, "1,3,2\n2,1,3\n2,3,1\n3,1,2\n3,2,1\n");
  EXPECT_EQ(run({"avoiders", "--pattern", "123", "--n", "9"}).code, cli::kCeiling);
}

TEST(Cli, OutputDeterministicAcrossWorkers) {
  for (const std::string fmt : {"csv", "json"}) {
    const auto a = run({"--workers", "1", "--format", fmt, "count", "--pattern", "2143", "--n", "9", "--by-lr-minima"});
    const auto b = run({"--workers", "4", "--format", fmt, "count", "--pattern", "2143", "--n", "9", "--by-lr-minima"});
    EXPECT_EQ(a.out, b.out);
    const auto c = run({"--workers", "1", "--format", fmt, "limit", "--pattern", "12453", "--max-n", "8"});
    const auto d = run({"--workers", "3", "--format", fmt, "limit", "--pattern", "12453", "--max-n", "8"});
    EXPECT_EQ(c.out, d.out);
  }
}

TEST(Cache, WriteThroughAndReuse) {
  TempFile file("cache_reuse.jsonl");
  const auto first = run({"--cache", file.str(), "count", "--pattern", "1342", "--n", "8"});
  EXPECT_EQ(first.out, "15485\n");
  const auto lines = file.lines();
  ASSERT_EQ(lines.size(), 1u);
  const auto rec = parse_cache_line(lines[0]);
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->pattern, "1,3,4,2");
  EXPECT_EQ(rec->n, 8);
  EXPECT_EQ(rec->count, "15485");
  EXPECT_EQ(rec->engine_version, kEngineVersion);
  // same answer from the cache, and no duplicate record
  const auto second = run({"--cache", file.str(), "count", "--pattern", "1,3,4,2", "--n", "8"});
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(file.lines().size(), 1u);
  // and the same answer with no cache
  EXPECT_EQ(run({"count", "--pattern", "1342", "--n", "8"}).out, first.out);
}

TEST(Cache, CachedValueIsServed) {
  TempFile file("cache_planted.jsonl");
  {
    std::ofstream out(file.str());
    out << R"({"pattern":"1,2","n":5,"count":"7","engine_version":"x"})" << "\n";
  }
  // a planted record wins, which shows lookups go to the file first
  EXPECT_EQ(run({"--cache", file.str(), "count", "--pattern", "12", "--n", "5"}).out, "7\n");
}

TEST(Cache, CorruptLinesAreSkipped) {
  TempFile file("cache_corrupt.jsonl");
  {
    std::ofstream out(file.str());
    out << "not json\n";
    out << R"({"pattern":"1,2,3","n":4,"count":"fourteen","engine_version":"v"})" << "\n";
    out << R"({"pattern":"1,2,2","n":4,"count":"14","engine_version":"v"})" << "\n";
    out << R"({"pattern":"1,2,3","n":3,"count":"5","engine_version":"v"})" << "\n";
    out << R"({"pattern":"1,2,3","n":-1,"count":"5","engine_version":"v"})" << "\n";
    out << "{\"pattern\":\"1,2,3\"\n";
  }
  std::ostringstream warnings;
  JsonlCountCache cache(file.str(), warnings);
  EXPECT_EQ(cache.size(), 1u);
  EXPECT_EQ(cache.skipped_lines(), 5);
  EXPECT_NE(warnings.str().find(":1: skipping corrupt cache line"), std::string::npos);
  EXPECT_EQ(cache.lookup({1, 2, 3}, 3), Count(5));

  const auto r = run({"--cache", file.str(), "count", "--pattern", "123", "--n", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "14\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cache, CanonicalisesPatternText) {
  const auto rec = parse_cache_line(R"({"pattern":"1342","n":2,"count":"2","engine_version":"v"})");
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->pattern, "1,3,4,2");
  EXPECT_EQ(to_json(*rec).dump(), R"({"pattern":"1,3,4,2","n":2,"count":"2","engine_version":"v"})");
}
