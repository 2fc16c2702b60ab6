// Runs the acceptance criteria and prints one PASS/FAIL line for each.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "hpq/cli/commands.hpp"
#include "hpq/cli/suites.hpp"
#include "hpq/errors.hpp"
#include "hpq/tolerance.hpp"

using namespace hpq;
using suites::Check;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool passed = false;
  std::string summary;
  std::vector<Check> checks;
};

Outcome from_checks(std::vector<Check> checks, std::string summary) {
  Outcome o;
  o.passed = suites::all_passed(checks);
  o.summary = std::move(summary);
  o.checks = std::move(checks);
  return o;
}

Check timing(const std::string& name, double seconds, double limit) {
  return {name + " seconds", seconds, limit, seconds < limit, ""};
}

double worst(const std::vector<Check>& checks, const std::string& prefix) {
  double w = -1e300;
  for (const auto& c : checks) {
    if (c.name.rfind(prefix, 0) == 0) w = std::max(w, c.value);
  }
  return w;
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

void append(std::vector<Check>& to, std::vector<Check> from) {
  for (auto& c : from) to.push_back(std::move(c));
}

Outcome figures(int n, const fs::path& out, uint64_t seed) {
  cli::RunConfig cfg;
  cfg.system = NikishinSystem::angelesco();
  cfg.figure_n = n;
  cfg.n_list = {n};
  cfg.seed = seed;
  cfg.output_dir = (out / "figures").string();
  std::ostringstream log;
  const auto t0 = Clock::now();
  const int rc = cli::run(cli::Command::figures, cfg, log);
  const double secs = since(t0);
  std::vector<Check> checks;
  checks.push_back({"figures exit status", static_cast<double>(rc), 0, rc == 0, ""});
  for (const char* f : {"fig1.svg", "fig2.svg"}) {
    const bool ok = fs::exists(fs::path(cfg.output_dir) / f) && fs::file_size(fs::path(cfg.output_dir) / f) > 0;
    checks.push_back({std::string(f) + " written", ok ? 1.0 : 0.0, 1, ok, ""});
  }
  if (rc != 0) return from_checks(std::move(checks), "figures failed: " + log.str());
  std::ifstream in(fs::path(cfg.output_dir) / "figures.json");
  const auto j = cli::Json::parse(in);
  const auto& c = j["cluster_check"];
  const int pts2 = j["fig2_points"].get<int>();
  checks.push_back({"type II zero count", static_cast<double>(pts2), 2.0 * n, pts2 == 2 * n, ""});
  const double lower = std::stod(c["lower_max_distance_to_cut"].get<std::string>());
  const double upper = std::stod(c["upper_max_distance_to_segment"].get<std::string>());
  checks.push_back({"lower cluster distance to [-1,1]", lower, 0.1, lower <= 0.1, ""});
  checks.push_back({"upper cluster distance to segment", upper, 0.1, upper <= 0.1, ""});
  return from_checks(std::move(checks), "n=" + std::to_string(n) + " clusters " +
                                            std::to_string(c["lower_count"].get<int>()) + "+" +
                                            std::to_string(c["upper_count"].get<int>()) + ", lower max distance " +
                                            fmt(lower) + ", upper max distance " + fmt(upper) + ", " +
                                            fmt(secs) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int figure_n = 100;
  std::string out = "acceptance_out";
  uint64_t seed = 20240611;
  std::vector<int> expect_fail;
  app.add_option("--figure-n", figure_n, "order for the figure criterion")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "directory for figure artifacts");
  app.add_option("--seed", seed, "seed for random points and measures");
  app.add_option("--expect-fail", expect_fail, "criteria with a known, recorded failure");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> known(expect_fail.begin(), expect_fail.end());

  const NikishinSystem sys = NikishinSystem::uniform({{"1.5", "2.5"}});
  const NikishinSystem two = NikishinSystem::uniform({{"1.2", "2.0"}, {"3.0", "4.0"}});
  const eq::Intervals f{{1.5, 2.5}};
  const cli::Tolerances tol;

  auto fig = std::async(std::launch::async, figures, figure_n, fs::path(out), seed);

  int unexpected = 0;
  auto report = [&](int k, const Outcome& o) {
    const bool expected = known.count(k) > 0;
    std::cout << "criterion " << std::setw(2) << k << ": " << (o.passed ? "PASS" : "FAIL")
              << (!o.passed && expected ? " (known)" : "") << "  " << o.summary << "\n";
    for (const auto& c : o.checks) {
      if (!c.passed) std::cout << "    failed: " << c.name << " value=" << c.value << " limit=" << c.limit << "\n";
    }
    std::cout.flush();
    if (!o.passed && !expected) ++unexpected;
  };
  auto guarded = [&](int k, auto&& body) {
    try {
      report(k, body());
    } catch (const std::exception& e) {
      report(k, {false, std::string("exception: ") + e.what(), {}});
    }
  };

  guarded(1, [&] {
    const auto t0 = Clock::now();
    auto c = suites::surface_identities(1000, 256, seed);
    const double s = since(t0);
    const double w = worst(c, "");
    c.push_back(timing("identity suite", s, 10.0));
    return from_checks(std::move(c), "max log2 residual " + fmt(w, 4) + " (limit -240), " + fmt(s) + " s");
  });

  guarded(2, [&] {
    auto c = suites::second_kind(50, 20, 192, seed);
    return from_checks(c, "n<=50, 20 points, 192 bits, max log10 disagreement " + fmt(worst(c, ""), 4) +
                              " (limit -30)");
  });

  std::map<int, suites::HpRun> runs;
  guarded(3, [&] {
    std::vector<Check> c;
    std::string orders;
    for (int n : {5, 10, 20, 40}) {
      runs[n] = suites::construct(sys, n);
      append(c, suites::hp_order(runs[n]));
      orders += " n=" + std::to_string(n) + ":" + std::to_string(runs[n].triple.residual_order);
    }
    c.push_back(timing("n=40 construction", runs[40].seconds, 300.0));
    return from_checks(std::move(c), "residual orders" + orders + ", n=40 in " + fmt(runs[40].seconds) + " s");
  });

  guarded(4, [&] {
    std::vector<Check> c;
    runs[30] = suites::construct(sys, 30);
    for (int n : {5, 10, 20, 30}) append(c, suites::route_agreement(sys, runs.at(n), tol.route_hausdorff));
    return from_checks(c, "n in {5,10,20,30}, max Hausdorff " + fmt(worst(c, "")) + " (limit 1e-12)");
  });

  guarded(5, [&] {
    std::vector<Check> c;
    for (int n : {5, 10, 20, 40}) {
      append(c, suites::localization(sys, runs.at(n)));
      append(c, suites::localization(two, suites::construct(two, n)));
    }
    return from_checks(c, "[1.5,2.5] and [1.2,2]u[3,4], n in {5,10,20,40}, outside hull " +
                              fmt(worst(c, "zeros outside")) + ", max zeros per gap " +
                              fmt(worst(c, "zeros per gap")));
  });

  guarded(6, [&] {
    std::vector<Check> c;
    for (int n : {2, 5, 10, 20}) append(c, suites::orthogonality(sys, n));
    double margin = 1e300, control = 1e300;
    for (const auto& k : c) {
      if (k.name.find("Q2") != std::string::npos) margin = std::min(margin, k.limit - k.value);
      if (k.name.find("control") != std::string::npos) control = std::min(control, k.value - k.limit);
    }
    return from_checks(c, "n in {2,5,10,20}, Q2 below 10^(-p/4) by at least " + fmt(margin) +
                              " decades, control above 10^6 times it by " + fmt(control) + " decades");
  });

  eq::EquilibriumSolution lambda;
  guarded(7, [&] {
    const auto t0 = Clock::now();
    auto e = suites::equilibrium(f, 400, tol.equilibrium, 100, seed, tol.solver_gap);
    const double s = since(t0);
    lambda = e.solution;
    e.checks.push_back(timing("equilibrium suite", s, 120.0));
    return from_checks(std::move(e.checks), "residual " + fmt(e.solution.residual_on_support) +
                                                 " at 400 cells (limit 5e-3), 100 probes, " + fmt(s) + " s");
  });

  guarded(8, [&] {
    if (lambda.lambda.cells.empty()) {
      eq::SolveOptions o;
      o.cells_per_interval = 400;
      o.tol = tol.solver_gap;
      lambda = eq::solve_equilibrium(f, o);
    }
    const auto rows = suites::convergence_study(sys, {10, 20, 40, 80}, lambda.lambda);
    std::string d;
    for (const auto& r : rows) d += " " + fmt(r.weak_distance);
    return from_checks(suites::convergence_checks(rows, tol.weak_distance), "weak distances" + d + " (limit 0.05)");
  });

  guarded(9, [&] { return fig.get(); });

  guarded(10, [&] {
    auto c = suites::energy_properties(f, 400, 50, seed, tol.energy);
    return from_checks(c, "50 pairs, tolerance 1e-6");
  });

  std::cout << "acceptance: " << (unexpected == 0 ? "done" : "unexpected failures") << "\n";
  return unexpected == 0 ? 0 : 1;
}
