#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "morreylab/cli.hpp"
#include "morreylab/errors.hpp"
#include "morreylab/io.hpp"

using namespace morreylab;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "morreylab_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_function(const std::string& name, const GridFunction& f) {
  const std::string path = (scratch() / name).string();
  write_grid_function(path, f);
  return path;
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = (scratch() / name).string();
  std::ofstream(path) << text;
  return path;
}

Grid unit_line(int level) { return Grid(DomainBox(1, 1.0, 0.25), level); }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  const std::string in = write_function("f.csv", GridFunction::constant(unit_line(5), 1.0));
  CHECK(run({"op", "nosuchop", "--in", in}).code == kExitUsage);
  const Run r = run({"op", "ialpha", "--alpha", "1.5", "--in", in});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("alpha must be in (0, n)") != std::string::npos);
  CHECK(run({"op", "mw", "--in", in}).code == kExitUsage);
}

TEST_CASE("op writes its result") {
  const Grid g = unit_line(6);
  const std::string in = write_function("f.csv", GridFunction::sample(g, [](const Point& x) {
                                          return std::abs(x[0]) < 0.3 ? 1.0 : 0.0;
                                        }));
  const std::string out = (scratch() / "g.csv").string();
  fs::remove(out);
  const Run r = run({"op", "ialpha", "--alpha", "0.5", "--in", in, "--out", out});
  REQUIRE(r.code == kExitOk);
  const GridFunction res = read_grid_function(out);
  CHECK(res.grid().size() == g.size());
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["hash"] == res.content_hash());
  CHECK(j["max"].get<double>() > 0.0);

  const std::string c = write_function("c.csv", GridFunction::constant(g, 5.0));
  const auto sharp = nlohmann::json::parse(run({"op", "msharp", "--in", c}).out);
  CHECK(sharp["max"].get<double>() == Approx(0.0).epsilon(1e-12));
  CHECK(sharp["min"].get<double>() == Approx(0.0).epsilon(1e-12));
  const auto plain = nlohmann::json::parse(run({"op", "m", "--in", c}).out);
  CHECK(plain["max"].get<double>() == Approx(5.0));
  const Run comm = run({"op", "commutator", "--in", in, "--b", c, "--alpha", "0.5"});
  REQUIRE(comm.code == kExitOk);
  CHECK(std::abs(nlohmann::json::parse(comm.out)["max"].get<double>()) < 1e-12);
}

TEST_CASE("norm") {
  const std::string in = write_function("one.csv", GridFunction::constant(unit_line(7), 1.0));
  const Run r = run({"norm", "--space", "morrey:p=2,kappa=0.5", "--in", in});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == Approx(std::pow(2.0, 0.25)).epsilon(1e-6));
  CHECK(run({"norm", "--space", "morrey:p=2,kappa=0.5", "--in", (scratch() / "missing.csv").string()}).code ==
        kExitParse);
  const std::string bad = write_file("bad.csv", "n,J,L\n1,3,1\n1\n2\nx\n");
  CHECK(run({"norm", "--space", "morrey:p=2,kappa=0.5", "--in", bad}).code == kExitParse);
  const Run div = run({"norm", "--space", "osc:beta=0,p=3,w=power:gamma=0.6", "--in", in});
  CHECK(div.code == kExitNotIntegrable);
  CHECK(div.err.find("not integrable") != std::string::npos);
}

TEST_CASE("weights") {
  const Run ap = run({"weights", "--w", "power:gamma=-0.5", "--class", "ap", "--p", "2", "--oracle", "--shifts", "1",
                      "--J", "10"});
  REQUIRE(ap.code == kExitOk);
  const auto j = nlohmann::json::parse(ap.out);
  CHECK(j["constant"].get<double>() == Approx(4.0 / 3.0).epsilon(1e-6));
  CHECK(j["oracle"] == true);
  CHECK(j["agree"] == true);

  const Run rh = run({"weights", "--w", "power:gamma=-0.5", "--class", "rh", "--r", "3", "--J", "8"});
  CHECK(rh.code == kExitNotIntegrable);
  CHECK(rh.err.find("not in RH_3") != std::string::npos);

  const Run unit = run({"weights", "--w", "power:gamma=0", "--class", "ap", "--p", "3", "--J", "8"});
  REQUIRE(unit.code == kExitOk);
  CHECK(nlohmann::json::parse(unit.out)["constant"].get<double>() == Approx(1.0).epsilon(1e-12));

  // a grid never sees the essential infimum 0, so the A_1 constant stays finite
  const Run a1 = run({"weights", "--w", "power:gamma=0.5", "--class", "ap", "--p", "1", "--oracle", "--J", "8"});
  CHECK(a1.code == kExitOracle);
  CHECK(a1.err.find("oracle disagreement") != std::string::npos);
  const Run li = run({"weights", "--w", "power:gamma=-3", "--J", "8"});
  CHECK(li.code == kExitNotIntegrable);
  CHECK(li.err.find("weight not locally integrable") != std::string::npos);
}

TEST_CASE("verify") {
  const std::string cfg = write_file("thm1.cfg", "id = THM1\nJ1 = 7\nJ2 = 8\ncount = 4\n");
  const std::string report = (scratch() / "thm1.json").string();
  fs::remove(report);
  const Run ok = run({"verify", "--config", cfg, "--out", report});
  CHECK(ok.code == kExitOk);
  std::ifstream rf(report);
  const auto j = nlohmann::json::parse(rf);
  CHECK(j["id"] == "THM1");
  CHECK(j["hypotheses"].size() > 0);
  for (const auto& h : j["hypotheses"]) CHECK(h["pass"] == true);

  const std::string bad = write_file("thm1_bad.cfg", "id = THM1\nkappa = 0.6\n");
  const Run fail = run({"verify", "--config", bad});
  CHECK(fail.code == kExitHypotheses);
  CHECK(fail.err.find("0<κ<p/q failed") != std::string::npos);

  const std::string l32 = write_file("l32.cfg", "id = L3.2\ngamma = 0\nJ1 = 7\nJ2 = 8\ncount = 4\n");
  CHECK(run({"verify", "--config", l32}).code == kExitOk);

  // a three-level grid is far from converged
  CHECK(run({"verify", "--id", "THM1", "--J1", "3", "--J2", "5", "--count", "3"}).code == kExitDrift);

  const Run pw = run({"verify", "--id", "THM1", "--J1", "7", "--J2", "8", "--count", "4", "--pointwise", "P3.7"});
  CHECK(pw.code == kExitOk);
  CHECK(nlohmann::json::parse(pw.out).contains("pointwise"));

  const std::string unknown = write_file("unknown.cfg", "id = THM1\ncolour = red\n");
  CHECK(run({"verify", "--config", unknown}).code == kExitParse);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args = {"verify", "--id", "L4.3", "--J1", "6", "--J2", "7", "--count", "3"};
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j.erase("seconds");
    return j.dump();
  };
  CHECK(strip(run(args).out) == strip(run(args).out));
  const Run a = run({"corpus", "--count", "5", "--J", "6"});
  const Run b = run({"corpus", "--count", "5", "--J", "6"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  for (const auto& e : nlohmann::json::parse(a.out)["inputs"]) CHECK(e["margin_compliant"] == true);
}

TEST_CASE("run configuration round trip") {
  RunConfig cfg = parse_run_config("id = THM2\nn = 1\nJ1 = 8\nkappa = 0.15\nseed = 7\npointwise = P4.4\n");
  CHECK(cfg.id == "THM2");
  CHECK(cfg.params.kappa == 0.15);
  CHECK(cfg.params.beta == Approx(0.3));
  CHECK(parse_run_config(format_run_config(cfg)) == cfg);
  cfg.out = "r.json";
  cfg.params.r = 1.2;
  CHECK(parse_run_config(format_run_config(cfg)) == cfg);
  CHECK_THROWS_AS(parse_run_config("colour = red\n"), ParseError);
  CHECK_THROWS_AS(parse_run_config("J1 = nine\n"), ParseError);
  CHECK_THROWS_AS(parse_run_config("just a line\n"), ParseError);
}
