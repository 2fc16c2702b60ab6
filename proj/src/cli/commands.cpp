#include "hpq/cli/commands.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>

#include "hpq/cli/io.hpp"
#include "hpq/cli/suites.hpp"
#include "hpq/errors.hpp"
#include "hpq/laurent.hpp"
#include "hpq/tolerance.hpp"

namespace hpq::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* density_name(Density::Kind k) {
  switch (k) {
    case Density::Kind::constant: return "constant";
    case Density::Kind::polynomial: return "polynomial";
    case Density::Kind::chebyshev_table: return "chebyshev_table";
  }
  return "constant";
}

Density::Kind density_kind(const std::string& s) {
  if (s == "constant") return Density::Kind::constant;
  if (s == "polynomial") return Density::Kind::polynomial;
  if (s == "chebyshev_table") return Density::Kind::chebyshev_table;
  throw ConfigError("unknown density kind " + s);
}

Json polynomial_to_json(const Polynomial& p) {
  Json re = Json::array(), im = Json::array();
  for (const auto& c : p.coeffs()) {
    re.push_back(io::decimal(c.re));
    im.push_back(io::decimal(c.im));
  }
  Json j;
  j["degree"] = p.degree();
  j["re"] = std::move(re);
  if (!p.is_real()) j["im"] = std::move(im);
  return j;
}

Polynomial polynomial_from_json(const Json& j, Precision bits) {
  std::vector<Complex> c;
  const auto& re = j.at("re");
  for (size_t k = 0; k < re.size(); ++k) {
    Real r = Real::parse(re[k].get<std::string>(), bits);
    Real i = j.contains("im") ? Real::parse(j.at("im")[k].get<std::string>(), bits) : Real::zero(bits);
    c.emplace_back(std::move(r), std::move(i));
  }
  return Polynomial(std::move(c));
}

Json check_json(const suites::Check& c) {
  Json j;
  j["name"] = c.name;
  j["value"] = io::decimal(c.value);
  j["limit"] = io::decimal(c.limit);
  j["passed"] = c.passed;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json checks_json(const std::vector<suites::Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(check_json(c));
  return a;
}

eq::Intervals intervals_of(const NikishinSystem& sys) {
  if (sys.mode != SystemMode::nikishin) throw ConfigError("this command needs a Nikishin system with intervals F");
  eq::Intervals f;
  for (const auto& i : sys.intervals) f.emplace_back(i.lo.value(), i.hi.value());
  return f;
}

void write_json(const fs::path& path, const Json& j) { io::atomic_write(path, j.dump(2) + "\n"); }

std::string zeros_csv(const roots::DiscreteMeasure& zeros) {
  io::Csv csv({"index", "re", "im", "multiplicity"});
  const auto s = zeros.sorted();
  for (size_t i = 0; i < s.nodes.size(); ++i) {
    csv.row({std::to_string(i), io::decimal(s.nodes[i].re), io::decimal(s.nodes[i].im), io::decimal(s.weights[i])});
  }
  return csv.str();
}

int run_hp(const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  for (int n : cfg.n_list) {
    const auto t0 = Clock::now();
    const auto run = suites::construct(cfg.system, n, cfg.precision_for(n));
    write_json(out / ("hp_" + std::to_string(n) + ".json"), triple_to_json(cfg.system, run.triple));
    io::atomic_write(out / ("zeros_" + std::to_string(n) + ".csv"), zeros_csv(run.zeros));
    log << "hp n=" << n << " precision=" << run.triple.precision << " residual_order=" << run.triple.residual_order
        << " zeros=" << run.zeros.nodes.size() << " (" << seconds_since(t0) << " s)\n";
    if (run.triple.residual_order < 2 * n + 2) {
      throw PrecisionError("residual order " + std::to_string(run.triple.residual_order) + " below " +
                           std::to_string(2 * n + 2) + " at n=" + std::to_string(n));
    }
  }
  return 0;
}

Json solution_json(const eq::EquilibriumSolution& s, int cells) {
  Json j;
  j["cells_per_interval"] = cells;
  j["grading"] = "chebyshev";
  j["w_F"] = io::decimal(s.w_F);
  j["residual_on_support"] = io::decimal(s.residual_on_support);
  j["min_off_support"] = io::decimal(s.min_off_support);
  j["discrete_residual"] = io::decimal(s.discrete_residual);
  j["zero_cell_fraction"] = io::decimal(s.zero_cell_fraction);
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  return j;
}

eq::EquilibriumSolution solve(const RunConfig& cfg, const eq::Intervals& f) {
  eq::SolveOptions opts;
  opts.cells_per_interval = cfg.cells;
  opts.tol = cfg.tol.solver_gap;
  return eq::solve_equilibrium(f, opts);
}

int run_equilibrium(const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  const auto f = intervals_of(cfg.system);
  const auto t0 = Clock::now();
  const auto s = solve(cfg, f);
  io::Csv csv({"cell", "interval", "lo", "hi", "mass", "density"});
  for (size_t i = 0; i < s.lambda.cells.size(); ++i) {
    const auto& c = s.lambda.cells[i];
    csv.row({std::to_string(i), std::to_string(c.interval), io::decimal(c.lo), io::decimal(c.hi),
             io::decimal(s.lambda.mass[i]), io::decimal(s.lambda.density(i))});
  }
  io::atomic_write(out / "lambda.csv", csv.str());
  Json j;
  j["system"] = system_to_json(cfg.system);
  j["solution"] = solution_json(s, cfg.cells);
  j["tolerance"] = io::decimal(cfg.tol.equilibrium);
  j["residual_within_tolerance"] = s.residual_on_support < cfg.tol.equilibrium;
  write_json(out / "equilibrium.json", j);
  log << "equilibrium cells=" << cfg.cells << " w_F=" << s.w_F << " residual=" << s.residual_on_support
      << " iterations=" << s.iterations << " (" << seconds_since(t0) << " s)\n";
  if (!s.converged) throw Error("equilibrium solver did not converge");
  return 0;
}

int run_converge(const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  const auto f = intervals_of(cfg.system);
  const auto t0 = Clock::now();
  const auto s = solve(cfg, f);
  const double t_eq = seconds_since(t0);
  const auto rows = suites::convergence_study(cfg.system, cfg.n_list, s.lambda, cfg.precision);
  io::Csv csv({"n", "precision", "residual_order", "zeros_outside_hull", "zeros_non_real", "max_zeros_per_gap",
               "weak_distance"});
  io::Csv timing({"stage", "seconds"});
  timing.row({"equilibrium", io::decimal(t_eq)});
  Json jr = Json::array();
  for (const auto& r : rows) {
    csv.row({std::to_string(r.n), std::to_string(r.precision), std::to_string(r.residual_order),
             std::to_string(r.outside_hull), std::to_string(r.non_real), std::to_string(r.max_per_gap),
             io::decimal(r.weak_distance)});
    timing.row({"hp n=" + std::to_string(r.n), io::decimal(r.seconds)});
    log << "converge n=" << r.n << " weak_distance=" << r.weak_distance << " residual_order=" << r.residual_order
        << " (" << r.seconds << " s)\n";
  }
  io::atomic_write(out / "convergence.csv", csv.str());
  io::atomic_write(out / "timings.csv", timing.str());
  Json j;
  j["system"] = system_to_json(cfg.system);
  j["equilibrium"] = solution_json(s, cfg.cells);
  j["checks"] = checks_json(suites::convergence_checks(rows, cfg.tol.weak_distance));
  write_json(out / "convergence.json", j);
  if (!s.converged) throw Error("equilibrium solver did not converge");
  return 0;
}

std::string points_csv(const std::vector<std::pair<std::string, const std::vector<std::complex<double>>*>>& sets) {
  io::Csv csv({"set", "re", "im"});
  for (const auto& [name, pts] : sets) {
    for (const auto& z : *pts) csv.row({name, io::decimal(z.real()), io::decimal(z.imag())});
  }
  return csv.str();
}

int run_figures(const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  const NikishinSystem sys =
      cfg.system.mode == SystemMode::angelesco_algebraic ? cfg.system : NikishinSystem::angelesco();
  const int n = cfg.figure_n;
  const auto t0 = Clock::now();
  const auto d = suites::figure_data(sys, n, cfg.precision);
  const std::string ns = std::to_string(n);
  io::atomic_write(out / "fig1_zeros.csv", points_csv({{"Q0", &d.q0}, {"Q1", &d.q1}, {"Q2", &d.q2}}));
  io::atomic_write(out / "fig2_zeros.csv", points_csv({{"type2", &d.type2}}));
  io::atomic_write(out / "fig1.svg",
                   io::scatter_svg("Type I zeros, n = " + ns, {{"Q" + ns + ",0", "blue", d.q0},
                                                                {"Q" + ns + ",1", "red", d.q1},
                                                                {"Q" + ns + ",2", "black", d.q2}}));
  io::atomic_write(out / "fig2.svg", io::scatter_svg("Type II denominator zeros, n = " + ns,
                                                     {{"P" + std::to_string(2 * n), "#3fa9f5", d.type2}}));
  const std::complex<double> a(sys.a_re.value(), sys.a_im.value()), b(sys.b_re.value(), sys.b_im.value());
  const auto cl = suites::two_means(d.type2, a, b, 0.1);
  Json j;
  j["system"] = system_to_json(sys);
  j["n"] = n;
  j["precision"] = d.precision;
  j["residual_order"] = d.residual_order;
  j["type2_order_f1"] = d.order_f1;
  j["type2_order_f2"] = d.order_f2;
  j["fig1_points"] = {{"Q0", d.q0.size()}, {"Q1", d.q1.size()}, {"Q2", d.q2.size()}};
  j["fig2_points"] = d.type2.size();
  Json c;
  c["near"] = io::decimal(0.1);
  c["lower_count"] = cl.lower_count;
  c["upper_count"] = cl.upper_count;
  c["lower_max_distance_to_cut"] = io::decimal(cl.lower_to_cut);
  c["upper_max_distance_to_segment"] = io::decimal(cl.upper_to_segment);
  c["min_gap"] = io::decimal(cl.gap);
  c["passed"] = cl.passed;
  j["cluster_check"] = std::move(c);
  write_json(out / "figures.json", j);
  log << "figures n=" << n << " points " << d.q0.size() + d.q1.size() + d.q2.size() << " / " << d.type2.size()
      << " clusters " << cl.lower_count << "+" << cl.upper_count << (cl.passed ? " separated" : " not separated")
      << " (" << seconds_since(t0) << " s)\n";
  return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  Json suites_json;
  bool ok = true;
  auto record = [&](const std::string& name, const std::vector<suites::Check>& checks, double seconds) {
    const bool pass = suites::all_passed(checks);
    ok = ok && pass;
    suites_json[name] = checks_json(checks);
    log << "verify " << name << ": " << (pass ? "pass" : "FAIL") << " (" << seconds << " s)\n";
    for (const auto& c : checks) {
      if (!c.passed) log << "  failed: " << c.name << " value=" << c.value << " limit=" << c.limit << "\n";
    }
  };

  auto t0 = Clock::now();
  auto lap = [&] {
    const double s = seconds_since(t0);
    t0 = Clock::now();
    return s;
  };
  const auto surface = suites::surface_identities(1000, 256, cfg.seed);
  record("surface", surface, lap());
  const auto second = suites::second_kind(50, 20, 192, cfg.seed);
  record("second_kind", second, lap());

  std::vector<suites::Check> hp_checks, route_checks, loc_checks, orth_checks;
  double t_hp = 0.0, t_route = 0.0, t_loc = 0.0, t_orth = 0.0;
  auto append = [](std::vector<suites::Check>& to, std::vector<suites::Check> from) {
    for (auto& c : from) to.push_back(std::move(c));
  };
  for (int n : cfg.n_list) {
    lap();
    const auto run = suites::construct(cfg.system, n, cfg.precision_for(n));
    append(hp_checks, suites::hp_order(run));
    t_hp += lap();
    if (cfg.system.mode != SystemMode::nikishin) continue;
    append(loc_checks, suites::localization(cfg.system, run));
    t_loc += lap();
    if (n >= 1 && n <= 30) append(route_checks, suites::route_agreement(cfg.system, run, cfg.tol.route_hausdorff));
    t_route += lap();
    if (n <= 20) append(orth_checks, suites::orthogonality(cfg.system, n));
    t_orth += lap();
  }
  record("hermite_pade", hp_checks, t_hp);
  if (cfg.system.mode == SystemMode::nikishin) {
    record("routes", route_checks, t_route);
    record("localization", loc_checks, t_loc);
    record("orthogonality", orth_checks, t_orth);
    const auto f = intervals_of(cfg.system);
    lap();
    const auto es = suites::equilibrium(f, cfg.cells, cfg.tol.equilibrium, cfg.probes, cfg.seed, cfg.tol.solver_gap);
    record("equilibrium", es.checks, lap());
    const auto energy = suites::energy_properties(f, cfg.cells, 50, cfg.seed, cfg.tol.energy);
    record("energy", energy, lap());
  }

  Json j;
  j["system"] = system_to_json(cfg.system);
  j["n"] = cfg.n_list;
  j["seed"] = cfg.seed;
  j["passed"] = ok;
  j["suites"] = std::move(suites_json);
  write_json(out / "verify.json", j);
  return ok ? 0 : 1;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "hp") return Command::hp;
  if (name == "equilibrium") return Command::equilibrium;
  if (name == "converge") return Command::converge;
  if (name == "figures") return Command::figures;
  if (name == "verify") return Command::verify;
  return std::nullopt;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::hp: return "hp";
    case Command::equilibrium: return "equilibrium";
    case Command::converge: return "converge";
    case Command::figures: return "figures";
    case Command::verify: return "verify";
  }
  return "?";
}

Json system_to_json(const NikishinSystem& sys) {
  Json j;
  j["mode"] = sys.mode == SystemMode::nikishin ? "nikishin" : "angelesco";
  Json iv = Json::array();
  for (const auto& i : sys.intervals) iv.push_back({i.lo.text, i.hi.text});
  j["intervals"] = std::move(iv);
  Json dens = Json::array();
  for (const auto& d : sys.densities) {
    Json v = Json::array();
    for (const auto& x : d.values) v.push_back(x.text);
    dens.push_back({{"kind", density_name(d.kind)}, {"values", std::move(v)}});
  }
  j["densities"] = std::move(dens);
  if (sys.mode == SystemMode::angelesco_algebraic) {
    j["branch_points"] = {{sys.a_re.text, sys.a_im.text}, {sys.b_re.text, sys.b_im.text}};
  }
  return j;
}

NikishinSystem system_from_json(const Json& j) {
  NikishinSystem sys;
  const std::string mode = j.at("mode").get<std::string>();
  sys.mode = mode == "nikishin" ? SystemMode::nikishin : SystemMode::angelesco_algebraic;
  for (const auto& i : j.at("intervals")) {
    sys.intervals.push_back({Decimal(i.at(0).get<std::string>()), Decimal(i.at(1).get<std::string>())});
  }
  for (const auto& d : j.at("densities")) {
    Density den;
    den.kind = density_kind(d.at("kind").get<std::string>());
    den.values.clear();
    for (const auto& v : d.at("values")) den.values.emplace_back(v.get<std::string>());
    sys.densities.push_back(std::move(den));
  }
  if (j.contains("branch_points")) {
    const auto& b = j.at("branch_points");
    sys.a_re = Decimal(b.at(0).at(0).get<std::string>());
    sys.a_im = Decimal(b.at(0).at(1).get<std::string>());
    sys.b_re = Decimal(b.at(1).at(0).get<std::string>());
    sys.b_im = Decimal(b.at(1).at(1).get<std::string>());
  }
  sys.validate();
  return sys;
}

Json triple_to_json(const NikishinSystem& sys, const hp::HPTriple& t) {
  Json j;
  j["generator"] = io::kGeneratorVersion;
  j["n"] = t.n;
  j["precision"] = t.precision;
  j["system"] = system_to_json(sys);
  j["residual_order"] = t.residual_order;
  j["kernel_dim"] = t.kernel_dim;
  j["q0"] = polynomial_to_json(t.q0);
  j["q1"] = polynomial_to_json(t.q1);
  j["q2"] = polynomial_to_json(t.q2);
  return j;
}

int reexpand_residual_order(const Json& j) {
  const auto sys = system_from_json(j.at("system"));
  const Precision bits = j.at("precision").get<Precision>();
  PrecisionGuard guard(bits);
  hp::HPTriple t;
  t.n = j.at("n").get<int>();
  t.precision = bits;
  t.q0 = polynomial_from_json(j.at("q0"), bits);
  t.q1 = polynomial_from_json(j.at("q1"), bits);
  t.q2 = polynomial_from_json(j.at("q2"), bits);
  const size_t k_max = 3 * static_cast<size_t>(t.n) + 4;
  const auto c1 = laurent::to_complex(f1_series(k_max, bits));
  const auto c2 = f2_series(sys, k_max, bits);
  return hp::residual_order(t, c1, c2);
}

int run(Command c, const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  try {
    cfg.validate();
    fs::create_directories(out);
    io::clear_failed(out);
    int status = 0;
    switch (c) {
      case Command::hp: status = run_hp(cfg, log); break;
      case Command::equilibrium: status = run_equilibrium(cfg, log); break;
      case Command::converge: status = run_converge(cfg, log); break;
      case Command::figures: status = run_figures(cfg, log); break;
      case Command::verify: status = run_verify(cfg, log); break;
    }
    if (status != 0) io::mark_failed(out, std::string(command_name(c)) + ": checks failed");
    return status;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    io::mark_failed(out, std::string(command_name(c)) + ": " + e.what());
    return 2;
  }
}

}  // namespace hpq::cli
