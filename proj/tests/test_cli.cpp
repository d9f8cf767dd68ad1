#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Run {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "levy-lab");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = levycli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("levylab_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("eval J golden value", "[cli]") {
  auto r = cli({"eval", "--functional", "J", "--shape", "interval:-1,1", "--s", "0.5", "--T", "1"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["functional"] == "J");
  CHECK_THAT(j["value"].get<double>(), WithinRel(0.323893281719456, 1e-12));
  CHECK(j.contains("error_estimate"));
  CHECK(j["params"]["s"] == 0.5);
}

TEST_CASE("eval Jinf above 1/2 is a numerical failure", "[cli]") {
  auto r = cli({"eval", "--functional", "Jinf", "--R", "1", "--r", "1", "--s", "0.6"});
  CHECK(r.code == 3);
  CHECK_THAT(r.err, ContainsSubstring("diverges"));
  CHECK(r.json()["kind"] == "domain");
}

TEST_CASE("eval overlap", "[cli]") {
  auto r = cli({"eval", "--functional", "overlap", "--omega1", "interval:-1,1", "--omega2", "interval:-1,1"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["value"] == 0.5);
}

TEST_CASE("invalid arguments exit 2", "[cli]") {
  CHECK(cli({"eval", "--functional", "nope"}).code == 2);
  CHECK(cli({"eval", "--s", "abc"}).code == 2);
  CHECK(cli({"eval", "--shape", "triangle:1"}).code == 2);
  CHECK(cli({"eval", "--s", "1.5"}).code == 2);
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({}).code == 2);
}

TEST_CASE("eval reruns are bit-identical", "[cli]") {
  std::vector<std::string> args{"eval", "--functional", "scaled", "--r", "0.3", "--s", "0.7", "--T", "20"};
  CHECK(cli(args).out == cli(args).out);
}

TEST_CASE("config file", "[cli]") {
  auto dir = scratch("config");
  {
    std::ofstream(dir / "good.cfg") << "# long-time functional\ncommand = eval\nfunctional = Jinf\ns = 0.25\nR = 1\n";
    std::ofstream(dir / "unknown.cfg") << "command = eval\nfunctional = J\nbogus = 1\n";
    std::ofstream(dir / "malformed.cfg") << "command = eval\nthis line has no equals\n";
  }
  auto good = cli({"--config", (dir / "good.cfg").string()});
  REQUIRE(good.code == 0);
  CHECK_THAT(good.json()["value"].get<double>(), WithinRel(3.0090111122547, 1e-11));
  auto override_s = cli({"eval", "--config", (dir / "good.cfg").string(), "--s", "0.1"});
  REQUIRE(override_s.code == 0);
  CHECK(override_s.json()["params"]["s"] == 0.1);
  auto unknown = cli({"--config", (dir / "unknown.cfg").string()});
  CHECK(unknown.code == 2);
  CHECK_THAT(unknown.err, ContainsSubstring("unknown.cfg:3"));
  CHECK_THAT(unknown.err, ContainsSubstring("bogus"));
  auto malformed = cli({"--config", (dir / "malformed.cfg").string()});
  CHECK(malformed.code == 2);
  CHECK_THAT(malformed.err, ContainsSubstring("malformed.cfg:2"));
  CHECK(cli({"--config", (dir / "missing.cfg").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("sweep writes CSV with provenance", "[cli]") {
  auto dir = scratch("sweep");
  auto csv = (dir / "curve.csv").string();
  auto r = cli({"sweep", "--functional", "Junnorm", "--band", "0,0.08", "--s-lo", "0.1", "--s-hi", "0.9", "--points",
                "9", "--out", csv});
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,value,derivative");
  auto prov = nlohmann::json::parse(std::ifstream(csv + ".json"));
  CHECK(prov["command"] == "sweep");
  CHECK(prov["params"]["band"] == "0,0.08");
  CHECK(prov["points"] == 9);
  CHECK(prov["failures"].empty());
  fs::remove_all(dir);
}

TEST_CASE("figure command", "[cli]") {
  auto dir = scratch("figure");
  auto r = cli({"figure", "fig4", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "fig4_a0.5.csv"));
  CHECK(cli({"figure", "fig4", "--out", "/proc/levylab-denied"}).code == 4);
  CHECK(cli({"figure", "fig9", "--out", dir.string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("optimize command", "[cli]") {
  auto r = cli({"optimize", "--min", "--shape", "interval:-1,1", "--r", "0.01", "--T", "1e6"});
  REQUIRE(r.code == 0);
  auto rep = r.json()["report"];
  CHECK(rep["classification"] == "interior");
  CHECK(rep["converged"] == true);
  auto drift = cli({"optimize", "--shape", "interval:-1,1", "--r", "0.01", "--drift", "1e4,1e6"});
  REQUIRE(drift.code == 0);
  CHECK(drift.json()["drift"].size() == 2);
  CHECK(cli({"optimize", "--min", "--max"}).code == 2);
}

TEST_CASE("thresholds command", "[cli]") {
  auto r = cli({"thresholds", "--R", "1", "--sigma", "0.25"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK_THAT(j["r_Omega"].get<double>(), WithinRel(0.7631025557979, 1e-9));
  CHECK(j["truncated"] == false);
  CHECK(cli({"thresholds", "--sigma", "0.7"}).code == 3);
}

TEST_CASE("oracle command", "[cli]") {
  auto r = cli({"oracle", "--all"});
  CHECK(r.code == 0);
  CHECK(r.json()["all_passed"] == true);
  auto one = cli({"oracle", "--name", "Jinf-vs-boost"});
  REQUIRE(one.code == 0);
  CHECK(one.json()["comparisons"].size() == 1);
  CHECK(cli({"oracle", "--name", "nope"}).code == 2);
}
