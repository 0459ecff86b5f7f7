#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FERMAT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("analyze") {
  const Run r = run("analyze p=97,h=2,n=294,a=1,b=1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "fermat.analysis/1");
  CHECK(j["classification"][2]["case"] == "sigma3-triple-norm");
  CHECK(j["classification"][2]["witness_r"] == 1);
  CHECK(j["counts"][0]["value"] == 1038114);
  CHECK(j["bounds"]["sv_floor"]["3"] == 951678);
  CHECK(j["flags"]["mismatch"] == false);
  bool violated = false;
  for (const auto& v : j["flags"]["violated"]) violated = violated || v == "sv-floor-3";
  CHECK(violated);

  const Run s = run("analyze p=13,h=2,n=8,a=-1,b=-1");
  REQUIRE(s.code == 0);
  const auto k = nlohmann::json::parse(s.out);
  CHECK(k["classification"][2]["frobenius_nonclassical"] == false);
  CHECK(k["counts"][0]["value"] == 512);
  CHECK(k["bounds"]["comparisons"]["sv-floor-3"]["attained"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run("analyze p=13,h=2,n=13,a=1,b=1").code == 2);
  CHECK(run("analyze p=13,h=2,n=8").code == 2);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("analyze p=13,h=1,n=5,a=1,b=1 --format xml").code == 1);
  CHECK(run("orders p=13,h=2,n=8,a=1,b=1 -s 3").code == 2);
  CHECK(run("orders p=13,h=2,n=8,a=1,b=1 --point 1,1 -s 1").code == 2);
  CHECK(run("verify nonsense").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("output is byte-deterministic") {
  for (const char* args : {"analyze p=23,h=2,n=8,a=1,b=1", "--seed 4 orders p=23,h=2,n=8,a=1,b=1 --generic -s 3",
                           "sweep --primes 13,17 --h-max 2 --n-max 10 --policy random --pairs 2 --seed 3",
                           "bounds p=13,h=2,n=8,a=-1,b=-1 --format table"}) {
    CAPTURE(args);
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  CHECK(run("--threads 1 sweep --primes 13 --h-max 2 --n-max 20").out ==
        run("--threads 3 sweep --primes 13 --h-max 2 --n-max 20").out);
}

TEST_CASE("orders") {
  const Run r = run("orders p=97,h=2,n=294,a=1,b=1 --generic --seed 1 -s 3 --precision 128");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["orders"] == nlohmann::json::array({0, 1, 2, 3, 4, 5, 6, 7, 8, 97}));
  CHECK(j["precision_used"] == 128);
  CHECK(j["field_extension_degree"] == 3);
  CHECK(j["seed"] == 1);
  CHECK(j.contains("point"));

  const Run a = run("orders p=13,h=2,n=8,a=1,b=1 --axis -s 1");
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["orders"] == nlohmann::json::array({0, 1, 8}));

  // (2, 3) lies on 3x^12 + 11y^12 = 1 over GF(13).
  const Run p = run("orders p=13,n=12,a=3,b=11 --point 2,3 -s 1");
  REQUIRE(p.code == 0);
  CHECK(nlohmann::json::parse(p.out)["field_extension_degree"] == 1);

  CHECK(run("orders p=97,h=2,n=294,a=1,b=1 --generic -s 3 --precision 64").code == 2);
}

TEST_CASE("sweep") {
  const Run r = run("sweep --primes 23 --h-min 2 --h-max 2 --n-min 8 --n-max 8");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# fermat.sweep.csv/1\n", 0) == 0);
  CHECK(r.out.find(",1496,1496,1496,") != std::string::npos);

  const Run e = run("sweep --primes 13 --n-min 5 --n-max 4");
  REQUIRE(e.code == 0);
  std::istringstream in(e.out);
  std::string line;
  int data = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++data;
  CHECK(data == 1);  // header only

  const Run j = run("sweep --primes 13 --n-max 4 --format json");
  REQUIRE(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["summary"]["rows"] == 4);
}

TEST_CASE("verify and output directory") {
  const Run r = run("verify examples");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("1038114") != std::string::npos);
  CHECK(r.out.find("1496") != std::string::npos);
  CHECK(r.out.find("512") != std::string::npos);

  const Run f = run("verify fixtures");
  CHECK(f.code == 0);
  int passes = 0;
  std::istringstream in(f.out);
  for (std::string line; std::getline(in, line);) passes += line.rfind("PASS", 0) == 0;
  CHECK(passes == 8);

  const auto dir = std::filesystem::temp_directory_path() / "fermat_cli_test";
  std::filesystem::remove_all(dir);
  const Run o = run("--output-dir " + dir.string() + " count p=23,h=2,n=8,a=1,b=1");
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream file(dir / "count.json");
  REQUIRE(file.good());
  std::stringstream content;
  content << file.rdbuf();
  CHECK(nlohmann::json::parse(content.str())["counts"].size() == 3);
  std::filesystem::remove_all(dir);
}
