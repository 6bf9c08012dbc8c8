#include "doctest.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "christo/cli/config.hpp"
#include "christo/cli/output.hpp"
#include "christo/cli/run.hpp"
#include "support.hpp"

using namespace christo::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "christo");
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines_of(text)) {
    if (l.rfind("# ", 0) != 0) out.push_back(l);
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

const char* kCurve = R"({"type":"curve_region","a":[-0.8,0,0.2],"b":[0.9,-0.1]})";

}  // namespace

TEST_CASE("range and list parsing") {
  const auto r = parse_range("-1.5:1.5:101");
  CHECK(r.min == -1.5);
  CHECK(r.max == 1.5);
  CHECK(r.count == 101);
  const auto pts = r.points();
  CHECK(pts.size() == 101);
  CHECK(pts.front() == -1.5);
  CHECK(pts.back() == 1.5);
  CHECK(pts[50] == doctest::Approx(0.0));
  CHECK(parse_range("2:2:1").points() == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_range("1:2"), ConfigError);
  CHECK_THROWS_AS(parse_range("2:1:5"), ConfigError);
  CHECK_THROWS_AS(parse_range("0:1:2.5"), ConfigError);
  CHECK(parse_reals("-0.5,0,0.5") == std::vector<double>{-0.5, 0.0, 0.5});
  CHECK_THROWS_AS(parse_reals("1,,2"), ConfigError);
  CHECK_THROWS_AS(parse_reals("1,x"), ConfigError);
  CHECK(parse_naturals("1,2,5") == std::vector<unsigned>{1, 2, 5});
  CHECK_THROWS_AS(parse_naturals("1,-2"), ConfigError);
}

TEST_CASE("config schema") {
  const auto cfg = parse_config(json::parse(R"({
    "command": "disintegrate", "t": 3, "x": [0.0, 0.5], "y_grid": "-1:1:5",
    "measure": {"type": "uniform_box", "bounds": [[-1, 1], [-1, 1]]}})"));
  CHECK(cfg.command == "disintegrate");
  CHECK(*cfg.t == 3);
  CHECK(cfg.x == std::vector<double>{0.0, 0.5});
  CHECK(cfg.y_grid->count == 5);
  CHECK(cfg.measure->dim() == 2);
  CHECK_NOTHROW(validate(cfg));

  CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"moments","colour":1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"({"t":"three"})")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::parse(R"([1,2])")), ConfigError);
  CHECK_THROWS_AS(parse_measure(json::parse(R"({"type":"uniform_box","bounds":[[1,1]]})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_measure(json::parse(R"({"type":"sphere"})")), ConfigError);
  CHECK_THROWS_AS(parse_measure(json::parse(R"({"type":"uniform_box","bounds":"wide"})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_measure(json::parse(R"({"bounds":[[0,1]]})")), ConfigError);
  CHECK_THROWS_AS(parse_measure(json::parse(R"({"type":"curve_region","a":[0],"b":[1],"c":2})")),
                  ConfigError);
  const auto table = parse_measure(json::parse(
      R"({"type":"curve_region","a":0,"b":{"x":[-1,1],"values":[1,2]},"x_density":[1,0.5]})"));
  CHECK(table.dim() == 2);
}

TEST_CASE("validation catches missing and inconsistent settings") {
  RunConfig cfg;
  cfg.command = "cf-grid";
  CHECK_THROWS_AS(validate(cfg), ConfigError);  // no measure
  cfg.measure = testing::square();
  cfg.t = 2;
  CHECK_THROWS_AS(validate(cfg), ConfigError);  // no grid
  cfg.grid = {parse_range("-1:1:3")};
  CHECK_THROWS_AS(validate(cfg), ConfigError);  // one axis for a 2-d measure
  cfg.grid.push_back(parse_range("-1:1:3"));
  CHECK_NOTHROW(validate(cfg));
  cfg.t = 13;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.t = 2;
  cfg.jitter = -1.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.jitter = 0.0;
  cfg.command = "launch";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
    const std::string s = format_real(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_real(0.25) == "0.25");
}

TEST_CASE("csv quoting and hashing") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cf-grid on the square") {
  const auto o = invoke({"cf-grid", "--box=-1:1,-1:1", "--t", "3", "--grid=-1.5:1.5:101",
                         "--grid=-1.5:1.5:101", "--gamma", "0.5"});
  REQUIRE(o.code == 0);
  const auto rows = data_lines(o.out);
  REQUIRE(rows.size() == 1 + 101 * 101);
  CHECK(rows[0] == "x,y,cf,score,inside");
  CHECK(rows[1].rfind("-1.5,-1.5,", 0) == 0);
  // centre of the grid is inside, the corner is not
  CHECK(rows[1 + 50 * 101 + 50].substr(rows[1 + 50 * 101 + 50].size() - 2) == ",1");
  CHECK(rows[1].substr(rows[1].size() - 2) == ",0");
  CHECK(o.out.find("# config_hash: ") != std::string::npos);
  CHECK(o.out.find("moment_condition") != std::string::npos);
  const auto again = invoke({"cf-grid", "--box=-1:1,-1:1", "--t", "3", "--grid=-1.5:1.5:101",
                             "--grid=-1.5:1.5:101", "--gamma", "0.5"});
  CHECK(again.out == o.out);
}

TEST_CASE("disintegrate on a curve region") {
  const auto o = invoke({"disintegrate", "--measure", kCurve, "--x", "0.0", "--t", "3"});
  REQUIRE(o.code == 0);
  const auto doc = json::parse(o.out);
  const auto& r = doc.at("results").at(0);
  CHECK(r.at("sos").size() == 7);
  CHECK(r.at("hankel").at("labels") == json::array({"1", "y", "y^2", "y^3"}));
  CHECK(r.at("hankel").at("rows").size() == 4);
  CHECK(r.at("atoms").at("nodes").size() == 4);
  CHECK(r.at("residual").get<double>() <= 1e-8);
  CHECK(r.contains("mass"));
  const auto& meta = doc.at("metadata");
  CHECK(meta.at("tool") == "christo");
  CHECK(meta.at("command") == "disintegrate");
  CHECK(meta.at("diagnostics").contains("joint_condition"));
  CHECK(meta.at("diagnostics").contains("newton_iterations"));
  RunConfig echo = parse_config(meta.at("config"));
  CHECK(config_hash(echo) == meta.at("config_hash"));
}

TEST_CASE("config file runs reproduce byte for byte") {
  const auto samples = temp_file("christo_cli_samples.csv", "u,v\n0,0\n1,0\n0,1\n1,1\n0.5,0.5\n0.2,0.9\n");
  const auto cfg = temp_file("christo_cli_cfg.json",
                             R"({"command":"cf-grid","t":1,"grid":["0:1:3","0:1:3"],
                                "measure":{"type":"samples","file":"christo_cli_samples.csv"}})");
  const auto a = invoke({"--config", cfg.string()});
  const auto b = invoke({"--config", cfg.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(data_lines(a.out).size() == 10);
  // flags override the file
  const auto c = invoke({"--config", cfg.string(), "--grid=0:1:2", "--grid=0:1:2"});
  CHECK(data_lines(c.out).size() == 5);
  std::filesystem::remove(samples);
  std::filesystem::remove(cfg);
}

TEST_CASE("score with a threshold") {
  const auto pts = temp_file("christo_cli_pts.csv", "x,y\n0,0\n2,2\n");
  const auto o = invoke({"score", "--box=-1:1,-1:1", "--t", "1", "--input", pts.string(),
                         "--gamma", "0.5"});
  REQUIRE(o.code == 0);
  const auto rows = data_lines(o.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "x,y,score,inside");
  CHECK(rows[1] == "0,0,3,1");
  CHECK(rows[2].substr(rows[2].size() - 2) == ",0");
  std::filesystem::remove(pts);
}

TEST_CASE("exit codes and machine-readable errors") {
  const auto bad = invoke({"cf-grid", "--t", "2"});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.err).at("error") == "ConfigError");

  const auto unknown = invoke({"launch"});
  CHECK(unknown.code == 1);

  const auto num = invoke({"weighted-maxdet", "--poly", "0,1", "--generators", "1;1,0,-1", "--t", "1"});
  CHECK(num.code == 2);
  CHECK(json::parse(num.err).at("error") == "NotInInterior");
  CHECK(num.out.empty());

  const auto single = temp_file("christo_cli_single.csv", "x\n0.3\n");
  const auto npd = invoke({"cf-grid", "--samples", single.string(), "--t", "1", "--grid=0:1:2"});
  CHECK(npd.code == 2);
  CHECK(json::parse(npd.err).at("error") == "NotPositiveDefinite");
  std::filesystem::remove(single);

  const auto ill = invoke({"cf-grid", "--box=0:10", "--t", "6", "--grid=0:1:2"});
  CHECK(ill.code == 2);
  CHECK(json::parse(ill.err).at("error") == "IllConditioned");

  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--version"}).out == "0.1.0\n");
}

TEST_CASE("every subcommand produces an artifact") {
  CHECK(invoke({"moments", "--box=-1:1", "--t", "2"}).code == 0);
  CHECK(invoke({"orthonormal", "--box=-1:1,-1:1", "--t", "2"}).code == 0);
  const auto md = invoke({"maxdet", "--poly", "1,0,0,0,1"});
  REQUIRE(md.code == 0);
  CHECK(json::parse(md.out).at("gram_determinant").get<double>() ==
        doctest::Approx(4.0 / (3.0 * std::sqrt(3.0))));
  CHECK(invoke({"weighted-maxdet", "--poly", "2,1", "--generators", "1;1,0,-1", "--t", "1"}).code == 0);
  const auto decay = invoke({"decay-sweep", "--box=-1:1,-1:1", "--x", "0", "--y", "1.5",
                             "--t-list", "2,3,4"});
  REQUIRE(decay.code == 0);
  CHECK(data_lines(decay.out).size() == 4);
  CHECK(decay.out.find("log_slope") != std::string::npos);
  CHECK(invoke({"asymptotic-sweep", "--box=-1:1", "--x", "0", "--t-list", "10,20"}).code == 0);
  const auto probe = invoke({"conjecture-probe", "--box=-1:1,-1:1", "--x", "0", "--t-list", "1,2,3"});
  REQUIRE(probe.code == 0);
  CHECK(json::parse(probe.out).at("distances").size() == 2);
}

TEST_CASE("moments JSON carries labelled matrices") {
  const auto o = invoke({"moments", "--box=-1:1,-1:1", "--t", "1"});
  const auto doc = json::parse(o.out);
  CHECK(doc.at("moment_matrix").at("labels") == json::array({"1", "x", "y"}));
  CHECK(doc.at("moment_matrix").at("rows").at(1).at(1).get<double>() ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("several y variables are reported as coefficients only") {
  const auto o = invoke({"disintegrate", "--box=-1:1,-1:1,0:1", "--n", "1", "--x", "0.2", "--t", "2"});
  REQUIRE(o.code == 0);
  const auto doc = json::parse(o.out);
  CHECK(doc.at("output") == "coefficients only");
  CHECK_FALSE(doc.at("results").at(0).contains("hankel"));
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "christo_cli_out.json";
  std::filesystem::remove(path);
  const auto o = invoke({"maxdet", "--poly", "1,0,1", "--out", path.string()});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in).at("status") == "converged");
  std::filesystem::remove(path);
}
