#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "segre/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = segre::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("hyperdet command") {
    CHECK(run({"hyperdet", "1,1,1"}).out == "4\n");
    CHECK(run({"hyperdet", "2", "--omega", "3"}).out == "12\n");
    const auto defective = run({"hyperdet", "1,1,3"});
    CHECK(defective.code == 0);
    CHECK(defective.out.rfind("0\n", 0) == 0);
    CHECK(defective.out.find("dual defective") != std::string::npos);
  }

  TEST_CASE("eddeg command") {
    CHECK(run({"eddeg", "1,1,1"}).out == "6\n");
    CHECK(run({"eddeg", "1,3", "--generic"}).out == "14\n");
    CHECK(run({"eddeg", "2", "--generic", "--weights", "3"}).out == "39\n");
    CHECK(run({"eddeg", "1,1", "--weights", "2,2"}).code == segre::cli::kUsage);
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == segre::cli::kUsage);
    CHECK(run({"hyperdet", "1,x"}).code == segre::cli::kUsage);
    CHECK(run({"hyperdet", "1,,1"}).code == segre::cli::kUsage);
    CHECK(run({"bogus"}).code == segre::cli::kUsage);
    CHECK(run({"table", "table9"}).code == segre::cli::kUsage);
    CHECK(run({"--format", "xml", "hyperdet", "1"}).code == segre::cli::kUsage);
    const auto d2 = run({"asympt", "hyperdet", "2", "5"});
    CHECK(d2.code == segre::cli::kUsage);
    CHECK(d2.err.find("d >= 3") != std::string::npos);
  }

  TEST_CASE("resource cap exits 3 and names the cap") {
    const auto r = run({"--cap-bytes", "4096", "hyperdet", "6,6,6"});
    CHECK(r.code == segre::cli::kResourceCap);
    CHECK(r.err.find("cap") != std::string::npos);
  }

  TEST_CASE("json records keep exact integers as strings") {
    const auto r = run({"--format", "json", "hyperdet", "3,3,3,3"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j[0]["command"] == "hyperdet");
    CHECK(j[0]["parameters"]["dims"] == "3,3,3,3");
    CHECK(j[0]["result"].is_string());
    CHECK_FALSE(j[0].contains("elapsed_ms"));
    const auto timed = nlohmann::json::parse(run({"--timing", "--format", "json", "hyperdet", "1,1"}).out);
    CHECK(timed[0]["elapsed_ms"].is_number());
  }

  TEST_CASE("csv table2") {
    const auto r = run({"--format", "csv", "table", "table2"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "X,m0,m1,m2,m3,m4,m5\n"
          "P1xP1,2,6,8,8,8,8\n"
          "P1xP2,2,8,15,18,18,18\n"
          "P2xP2,3,15,37,55,61,61\n"
          "P2xP3,3,18,55,104,138,148\n");
  }

  TEST_CASE("output is byte-identical across runs and job counts") {
    for (const auto& fmt : {"plain", "csv", "json"}) {
      const auto a = run({"--format", fmt, "--jobs", "1", "table", "stabilization"});
      const auto b = run({"--format", fmt, "--jobs", "4", "table", "stabilization"});
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
      CHECK(run({"--format", fmt, "asympt", "ed", "3", "2..6", "--compare"}).out ==
            run({"--format", fmt, "asympt", "ed", "3", "2..6", "--compare"}).out);
    }
  }

  TEST_CASE("--out writes the records to a file") {
    const auto path = std::filesystem::temp_directory_path() / "segre_cli_out_test.json";
    const auto r = run({"--format", "json", "--out", path.string(), "table", "dual-example"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j.size() == 6);
    CHECK(j[5]["result"]["degree"] == "24");
    std::filesystem::remove(path);
  }

  TEST_CASE("verify suites pass on small ranges") {
    CHECK(run({"verify", "identities", "--max", "8"}).code == 0);
    CHECK(run({"verify", "rw-constants", "--max", "5"}).code == 0);
    CHECK(run({"verify", "stabilization", "--max", "4"}).code == 0);
    CHECK(run({"verify", "cross-oracle", "--max", "5"}).code == 0);
    CHECK(run({"verify", "nothing"}).code == segre::cli::kUsage);
  }

  TEST_CASE("asympt variants") {
    CHECK(run({"asympt", "binary", "6", "--compare"}).code == 0);
    CHECK(run({"asympt", "discriminant", "2", "3..5"}).code == 0);
    CHECK(run({"asympt", "sv-hyperdet", "3", "2", "--omega", "2", "--compare"}).code == 0);
    CHECK(run({"asympt", "nope", "3", "2"}).code == segre::cli::kUsage);
  }

  TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("hyperdet") != std::string::npos);
  }
}
