#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "twistkit/cli.hpp"
#include "twistkit/jsonio.hpp"

using twistkit::Json;
using twistkit::cli::run_cli;

TEST_CASE("usage errors exit 2") {
  std::string out;
  CHECK(run_cli({"bogus-subcommand"}, out) == 2);
  CHECK(run_cli({"compute", "nope"}, out) == 2);
  CHECK(run_cli({"verify", "nonexistent-suite"}, out) == 2);
  CHECK(run_cli({"verify", "witt", "--config", "/nonexistent.json"}, out) == 2);
}

TEST_CASE("help exits 0") {
  std::string out;
  CHECK(run_cli({"--help"}, out) == 0);
  CHECK(out.find("verify") != std::string::npos);
}

TEST_CASE("compute twisted-power") {
  std::string out;
  CHECK(run_cli({"compute", "twisted-power", "--n", "2"}, out) == 0);
  CHECK(out.find("x^2") != std::string::npos);
  // specialization at x=q, y=1
  CHECK(run_cli({"compute", "twisted-power", "--x", "q", "--y", "1", "--n",
                 "4"},
                out) == 0);
}

TEST_CASE("compute epsilon, norm, ghost, vartheta") {
  std::string out;
  CHECK(run_cli({"compute", "epsilon", "--m", "1", "--n", "1", "--a", "3,5"},
                out) == 0);
  CHECK(out.find("8*q^4 + 8") != std::string::npos);
  CHECK(run_cli({"compute", "norm", "--m", "6", "--n", "1", "--f", "q+1"},
                out) == 0);
  CHECK(run_cli({"compute", "ghost", "--p", "2", "--coords", "3,5"}, out) == 0);
  CHECK(out.find("19") != std::string::npos);
  CHECK(run_cli({"compute", "vartheta", "--d", "6", "--f", "3"}, out) == 0);
  CHECK(out.find("-116") != std::string::npos);
  CHECK(run_cli({"compute", "phi-d", "--d", "6"}, out) == 0);
  CHECK(out.find("q^2 - q + 1") != std::string::npos);
}

TEST_CASE("verify witt is deterministic given the seed") {
  std::string a, b;
  CHECK(run_cli({"verify", "witt", "--samples", "4", "--seed", "11"}, a) == 0);
  CHECK(run_cli({"verify", "witt", "--samples", "4", "--seed", "11"}, b) == 0);
  CHECK(a == b);
  Json rep = Json::parse(a);
  CHECK(rep.at("summary").at("ok").get<bool>());
  CHECK(rep.at("checks").size() > 10);
}

TEST_CASE("config file is honored and flags override") {
  std::string path = "/tmp/twistkit_cfg_test.json";
  {
    std::ofstream f(path);
    f << R"({"primes": [2], "samples": 3, "seed": 5, "levels": 2})";
  }
  std::string a, b;
  CHECK(run_cli({"verify", "witt", "--config", path}, a) == 0);
  Json ra = Json::parse(a);
  CHECK(ra.at("config").at("config").at("samples").get<long>() == 3);
  CHECK(run_cli({"verify", "witt", "--config", path, "--samples", "4"}, b) ==
        0);
  Json rb = Json::parse(b);
  CHECK(rb.at("config").at("config").at("samples").get<long>() == 4);
  std::remove(path.c_str());
}

TEST_CASE("goldens command") {
  const char* dir = std::getenv("TWISTKIT_GOLDENS");
  REQUIRE(dir != nullptr);
  std::string out;
  CHECK(run_cli({"goldens", "--dir", dir}, out) == 0);
  CHECK(out.find("match") != std::string::npos);
  CHECK(run_cli({"goldens", "--dir", "/nonexistent-dir"}, out) == 2);
}

TEST_CASE("report files are written") {
  std::string out;
  std::string jsonpath = "/tmp/twistkit_report_test.json";
  std::string mdpath = "/tmp/twistkit_report_test.md";
  CHECK(run_cli({"verify", "witt", "--samples", "3", "--output", jsonpath,
                 "--markdown", mdpath},
                out) == 0);
  std::ifstream jf(jsonpath);
  REQUIRE(jf.good());
  Json rep;
  jf >> rep;
  CHECK(rep.at("summary").at("ok").get<bool>());
  std::ifstream mf(mdpath);
  REQUIRE(mf.good());
  std::string line;
  std::getline(mf, line);
  CHECK(line.find("| check |") != std::string::npos);
  std::remove(jsonpath.c_str());
  std::remove(mdpath.c_str());
}
