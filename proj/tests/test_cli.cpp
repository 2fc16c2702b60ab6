#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hpq/cli/commands.hpp"
#include "hpq/cli/config.hpp"
#include "hpq/cli/io.hpp"
#include "hpq/cli/suites.hpp"
#include "hpq/errors.hpp"
#include "hpq/tolerance.hpp"

using namespace hpq;
using namespace hpq::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hpq_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

size_t data_rows(const fs::path& csv) {
  const std::string s = slurp(csv);
  size_t lines = 0;
  for (char c : s) lines += c == '\n';
  return lines - 1;
}

RunConfig small(const fs::path& out) {
  RunConfig cfg;
  cfg.output_dir = out.string();
  cfg.n_list = {3};
  cfg.cells = 60;
  cfg.probes = 5;
  cfg.figure_n = 4;
  return cfg;
}

}  // namespace

TEST_CASE("command names") {
  CHECK(parse_command("hp") == Command::hp);
  CHECK(parse_command("verify") == Command::verify);
  CHECK_FALSE(parse_command("plot"));
  CHECK(std::string(command_name(Command::figures)) == "figures");
}

TEST_CASE("config parsing") {
  const auto cfg = config_from_document(toml::parse(R"(
[system]
mode = "nikishin"
intervals = [[1.2, 2.0], ["3.0", "4.0"]]

[run]
n = [2, 4]
cells = 80
seed = 7

[tolerances]
energy = 1e-8
)"));
  CHECK(cfg.system.intervals.size() == 2);
  CHECK(cfg.n_list == std::vector<int>{2, 4});
  CHECK(cfg.cells == 80);
  CHECK(cfg.seed == 7);
  CHECK(cfg.tol.energy == 1e-8);
  CHECK(cfg.precision == 0);
  cfg.validate();

  CHECK_THROWS_AS(config_from_document(toml::parse("[run]\nbogus = 1\n")), ConfigError);
  CHECK_THROWS_AS(config_from_document(toml::parse("[extra]\nx = 1\n")), ConfigError);
  CHECK_THROWS_AS(config_from_document(toml::parse("[system]\nmode = \"other\"\n")), ConfigError);
  CHECK_THROWS(toml::parse("[run\nn = 1\n"));

  RunConfig bad;
  bad.n_list = {4, 2};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = RunConfig{};
  bad.cells = 10;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = RunConfig{};
  bad.precision = 8;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("override precedence") {
  RunConfig cfg;
  apply_overrides(cfg, {}, "300");
  CHECK(cfg.precision == 300);

  RunConfig flag;
  Overrides o;
  o.precision = 400;
  o.n = 7;
  apply_overrides(flag, o, "300");
  CHECK(flag.precision == 400);
  CHECK(flag.n_list == std::vector<int>{7});
  CHECK(flag.figure_n == 7);

  RunConfig fixed;
  fixed.precision = 512;
  apply_overrides(fixed, {}, "300");
  CHECK(fixed.precision == 512);

  RunConfig junk;
  CHECK_THROWS_AS(apply_overrides(junk, {}, "12x"), ConfigError);
  CHECK(fixed.precision_for(10) == 512);
  CHECK(RunConfig{}.precision_for(10) == hp_default_precision(10));
}

TEST_CASE("csv and atomic writes") {
  io::Csv csv({"a", "b"});
  csv.row({"1", "x,y"});
  csv.row({"say \"hi\"", ""});
  CHECK(csv.str() == "a,b\r\n1,\"x,y\"\r\n\"say \"\"hi\"\"\",\r\n");

  const auto dir = scratch("io");
  io::atomic_write(dir / "sub" / "f.txt", "hello");
  CHECK(slurp(dir / "sub" / "f.txt") == "hello");
  CHECK_FALSE(fs::exists(dir / "sub" / "f.txt.tmp"));
  io::mark_failed(dir, "boom");
  CHECK(fs::exists(dir / ".failed"));
  io::clear_failed(dir);
  CHECK_FALSE(fs::exists(dir / ".failed"));
  CHECK(io::decimal(0.1) == "0.1");
  fs::remove_all(dir);
}

TEST_CASE("hp command output is deterministic and reloadable") {
  const auto a = scratch("hp_a"), b = scratch("hp_b");
  std::ostringstream log;
  REQUIRE(run(Command::hp, small(a), log) == 0);
  REQUIRE(run(Command::hp, small(b), log) == 0);
  CHECK(slurp(a / "hp_3.json") == slurp(b / "hp_3.json"));
  CHECK(slurp(a / "zeros_3.csv") == slurp(b / "zeros_3.csv"));
  CHECK(data_rows(a / "zeros_3.csv") == 3);
  const auto j = Json::parse(slurp(a / "hp_3.json"));
  CHECK(j["n"] == 3);
  CHECK(reexpand_residual_order(j) >= 8);
  CHECK(reexpand_residual_order(j) == j["residual_order"].get<int>());
  CHECK(system_from_json(j["system"]).intervals.size() == 1);

  auto zero = small(a);
  zero.n_list = {0};
  REQUIRE(run(Command::hp, zero, log) == 0);
  CHECK(data_rows(a / "zeros_0.csv") == 0);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("equilibrium command is deterministic") {
  const auto a = scratch("eq_a"), b = scratch("eq_b");
  std::ostringstream log;
  REQUIRE(run(Command::equilibrium, small(a), log) == 0);
  REQUIRE(run(Command::equilibrium, small(b), log) == 0);
  CHECK(slurp(a / "lambda.csv") == slurp(b / "lambda.csv"));
  CHECK(data_rows(a / "lambda.csv") == 60);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("figures command at small n") {
  const auto d = scratch("fig");
  std::ostringstream log;
  REQUIRE(run(Command::figures, small(d), log) == 0);
  CHECK(data_rows(d / "fig1_zeros.csv") == 3 * 4 - 1);
  CHECK(data_rows(d / "fig2_zeros.csv") == 2 * 4);
  CHECK(slurp(d / "fig1.svg").find("<svg") != std::string::npos);
  CHECK(fs::exists(d / "fig2.svg"));
  fs::remove_all(d);
}

TEST_CASE("failures leave a marker") {
  const auto d = scratch("fail");
  auto cfg = small(d);
  cfg.system.intervals = {{Decimal("0.5"), Decimal("2.0")}};
  std::ostringstream log;
  CHECK(run(Command::hp, cfg, log) != 0);
  CHECK(fs::exists(d / ".failed"));
  fs::remove_all(d);
}

TEST_CASE("cluster split") {
  std::vector<std::complex<double>> pts;
  for (int i = 0; i < 10; ++i) pts.emplace_back(-0.9 + 0.2 * i, 0.0);
  for (int i = 0; i < 10; ++i) pts.emplace_back(-0.5 + 0.1 * i, 1.0);
  const auto c = suites::two_means(pts, {-0.5, 1.0}, {0.5, 1.0}, 0.1);
  CHECK(c.passed);
}
