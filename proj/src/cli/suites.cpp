#include "hpq/cli/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <random>

#include "hpq/orthopoly.hpp"
#include "hpq/surface.hpp"
#include "hpq/tolerance.hpp"

namespace hpq::suites {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double log2_of(const Real& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(x.exponent());
}

double log10_of(const Real& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  const Precision p = x.precision();
  return (log(abs(x)) / log(Real(p, 10L))).to_double();
}

Check make(std::string name, double value, double limit, bool passed, std::string note = {}) {
  return Check{std::move(name), value, limit, passed, std::move(note)};
}

std::vector<std::complex<double>> to_std(const std::vector<Complex>& v) {
  std::vector<std::complex<double>> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.to_std());
  return out;
}

double distance_to_segment(std::complex<double> z, std::complex<double> a, std::complex<double> b) {
  const std::complex<double> d = b - a;
  const double len2 = std::norm(d);
  double t = len2 > 0.0 ? ((z - a) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

std::vector<Complex> zero_nodes(const Polynomial& p) {
  if (p.degree() < 1) return {};
  return roots::zero_measure(p).nodes;
}

}  // namespace

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<Complex> random_points_off_cut(int count, Precision bits, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const double x = u(rng), y = u(rng);
    if (std::abs(y) < 1e-2 && std::abs(x) <= 1.01) continue;
    out.emplace_back(bits, x, y);
  }
  return out;
}

std::vector<Check> surface_identities(int points, Precision bits, uint64_t seed) {
  PrecisionGuard guard(bits);
  const auto zs = random_points_off_cut(2 * points, bits, seed);
  Real dist = Real::zero(bits), sheeted = Real::zero(bits), recip = Real::zero(bits), split = Real::zero(bits);
  for (int i = 0; i < points; ++i) {
    const Complex& z = zs[static_cast<size_t>(2 * i)];
    const Complex& a = zs[static_cast<size_t>(2 * i + 1)];
    const auto r = surface::check_identities(z, a);
    dist = max(dist, r.distance_identity);
    sheeted = max(sheeted, r.sheeted_identity);
    recip = max(recip, r.reciprocal_identity);
    split = max(split, surface::kernel_split_residual(z, a));
  }
  const Real limit = Real::exp2i(-(bits - 16), bits);
  const double ll = -static_cast<double>(bits - 16);
  return {
      make("factorisation identity", log2_of(dist), ll, dist < limit, "log2"),
      make("sheeted identity", log2_of(sheeted), ll, sheeted < limit, "log2"),
      make("reciprocal identity", log2_of(recip), ll, recip < limit, "log2"),
      make("kernel split", log2_of(split), ll, split < limit, "log2"),
  };
}

std::vector<Check> second_kind(int n_max, int points, Precision bits, uint64_t /*seed*/, double log10_limit) {
  PrecisionGuard guard(bits);
  // Grid on level curves |phi(z)| = rho, mapped back through the Joukowski map.
  const std::array<double, 4> rhos{1.25, 1.5, 2.0, 3.0};
  const int per = std::max(1, points / static_cast<int>(rhos.size()));
  std::vector<Complex> grid;
  for (double rho : rhos) {
    for (int k = 0; k < per; ++k) {
      const double th = (k + 0.5) * 2.0 * std::numbers::pi / per;
      const std::complex<double> w = std::polar(rho, th);
      grid.emplace_back(0.5 * (w + 1.0 / w));
    }
  }
  // The quadrature oracle cancels up to n log2(rho) bits; it runs with guard bits.
  const Precision oracle_bits = bits + 2 * n_max + 64;
  const Real rel_tol = pow(Real(oracle_bits, 10L), static_cast<long>(std::floor(log10_limit)) - 10);
  Real worst_quad = Real::zero(bits), worst_rec = Real::zero(bits);
  for (const auto& z0 : grid) {
    const Complex z(Real(bits, z0.re), Real(bits, z0.im));
    const Complex zq(Real(oracle_bits, z0.re), Real(oracle_bits, z0.im));
    std::vector<Complex> h;
    for (int n = 0; n <= n_max; ++n) {
      h.push_back(orthopoly::H_closed(n, z).value);
      const auto q = orthopoly::H_quadrature_adaptive(n, zq, rel_tol);
      if (!q.converged) throw PrecisionError("second-kind quadrature did not converge");
      worst_quad = max(worst_quad, abs(h.back() - q.value) / abs(q.value));
      // T_0 = 1 breaks the doubling of the leading coefficient, so the
      // recurrence links H_n to H_{n-1}, H_{n-2} from n = 3 on.
      if (n >= 3) {
        const Complex rec = orthopoly::recurrence_apply(h[static_cast<size_t>(n - 2)], h[static_cast<size_t>(n - 1)], z);
        worst_rec = max(worst_rec, abs(rec - h.back()) / abs(h.back()));
      }
    }
  }
  const double lq = log10_of(worst_quad), lr = log10_of(worst_rec);
  return {
      make("H closed vs quadrature", lq, log10_limit, lq < log10_limit, "log10 relative"),
      make("H recurrence", lr, log10_limit, lr < log10_limit, "log10 relative"),
  };
}

HpRun construct(const NikishinSystem& sys, int n, Precision bits) {
  const auto t0 = Clock::now();
  HpRun run;
  run.n = n;
  run.triple = hp::hp_type1(sys, n, bits);
  if (run.triple.q2.degree() >= 1) run.zeros = roots::zero_measure(run.triple.q2);
  run.seconds = seconds_since(t0);
  return run;
}

std::vector<Check> hp_order(const HpRun& run) {
  const int n = run.n;
  const std::string tag = " n=" + std::to_string(n);
  return {
      make("residual order" + tag, run.triple.residual_order, 2 * n + 2, run.triple.residual_order >= 2 * n + 2),
      make("kernel dimension" + tag, static_cast<double>(run.triple.kernel_dim), 1, run.triple.kernel_dim == 1),
      make("deg Q2" + tag, run.triple.q2.degree(), n, run.triple.q2.degree() == n),
  };
}

std::vector<Check> route_agreement(const NikishinSystem& sys, const HpRun& run, double limit) {
  const Markov markov(sys, run.triple.precision);
  const auto ze = zero_nodes(hp::q2_via_orthogonality(markov, run.n, hp::Route::e_route));
  const auto zf = zero_nodes(hp::q2_via_orthogonality(markov, run.n, hp::Route::f_route));
  const auto& z0 = run.zeros.nodes;
  const std::string tag = " n=" + std::to_string(run.n);
  const double d1 = roots::hausdorff(z0, ze), d2 = roots::hausdorff(z0, zf), d3 = roots::hausdorff(ze, zf);
  return {
      make("null space vs E route" + tag, d1, limit, d1 <= limit),
      make("null space vs F route" + tag, d2, limit, d2 <= limit),
      make("E route vs F route" + tag, d3, limit, d3 <= limit),
  };
}

Localization localize(const NikishinSystem& sys, const roots::DiscreteMeasure& zeros) {
  constexpr double eps = 1e-20;
  Localization out;
  auto [lo, hi] = sys.hull();
  std::vector<std::pair<double, double>> iv;
  for (const auto& i : sys.intervals) iv.emplace_back(i.lo.value(), i.hi.value());
  std::sort(iv.begin(), iv.end());
  std::vector<int> per_gap(iv.size() > 0 ? iv.size() - 1 : 0, 0);
  for (const auto& z : zeros.nodes) {
    const double x = z.re.to_double();
    const bool real = abs(z.im) < Real(z.precision(), eps);
    if (!real) ++out.non_real;
    if (!real || x < lo - eps || x > hi + eps) ++out.outside_hull;
    if (!real) continue;
    for (size_t g = 0; g + 1 < iv.size(); ++g) {
      if (x > iv[g].second && x < iv[g + 1].first) ++per_gap[g];
    }
  }
  for (int c : per_gap) out.max_per_gap = std::max(out.max_per_gap, c);
  return out;
}

std::vector<Check> localization(const NikishinSystem& sys, const HpRun& run) {
  const auto loc = localize(sys, run.zeros);
  const std::string tag = " n=" + std::to_string(run.n);
  return {
      make("zeros outside hull" + tag, static_cast<double>(loc.outside_hull), 0, loc.outside_hull == 0),
      make("zeros per gap" + tag, loc.max_per_gap, 1, loc.max_per_gap <= 1),
  };
}

std::vector<Check> orthogonality(const NikishinSystem& sys, int n) {
  const Precision bits = hp_verify_precision(n);
  PrecisionGuard guard(bits);
  const auto triple = hp::hp_type1(sys, n, bits);
  const Markov markov(sys, bits);
  const double limit = -static_cast<double>(bits / 4);
  const double control_limit = limit + 6.0;
  auto [lo, hi] = sys.hull();

  hp::OrthogonalityParams p_plain;
  p_plain.n = n;
  hp::OrthogonalityParams p_weighted;
  p_weighted.n = n;
  p_weighted.big_n = std::max(n, 1);
  for (int j = 0; j + 1 < p_weighted.big_n; ++j) {
    const double a = lo + (hi - lo) * (j + 1.0) / p_weighted.big_n;
    p_weighted.points.emplace_back(Real(bits, a));
  }
  const Polynomial control = orthopoly::chebyshev_T(n, bits);

  const std::string tag = " n=" + std::to_string(n);
  std::vector<Check> out;
  auto measure = [&](const Polynomial& q, hp::Relation r, const hp::OrthogonalityParams& params) {
    return log10_of(hp::verify_orthogonality(markov, q, r, params).max_relative);
  };
  auto add = [&](const std::string& name, const Polynomial& q, hp::Relation r, const hp::OrthogonalityParams& params) {
    const double v = measure(triple.q2, r, params);
    out.push_back(make(name + " Q2" + tag, v, limit, v <= limit, "log10 relative"));
    const double c = measure(q, r, params);
    out.push_back(make(name + " control" + tag, c, control_limit, c > control_limit, "log10 relative, lower bound"));
  };
  add("second_kind", control, hp::Relation::second_kind, p_plain);
  if (n >= 1) add("second_kind_weighted", control, hp::Relation::second_kind_weighted, p_weighted);
  return out;
}

EquilibriumSuite equilibrium(const eq::Intervals& f, int cells, double tol, int probes, uint64_t seed,
                             double solver_tol) {
  const auto t0 = Clock::now();
  EquilibriumSuite out;
  eq::SolveOptions opts;
  opts.cells_per_interval = cells;
  opts.tol = solver_tol;
  const eq::KernelMatrix k(eq::make_cells(f, cells, opts.grading));
  out.solution = eq::solve_equilibrium(k, opts);
  const auto& s = out.solution;
  const std::string tag = " cells=" + std::to_string(cells);
  out.checks.push_back(make("solver converged" + tag, s.iterations, opts.max_iter, s.converged));
  out.checks.push_back(make("residual on support" + tag, s.residual_on_support, tol, s.residual_on_support < tol));

  eq::SolveOptions fine = opts;
  fine.cells_per_interval = 2 * cells;
  const auto s2 = eq::solve_equilibrium(f, fine);
  const double ratio = s2.residual_on_support / s.residual_on_support;
  out.checks.push_back(make("residual ratio at doubled cells", ratio, 0.5, ratio >= 0.25 && ratio <= 0.75,
                            "accepted range [0.25, 0.75]"));

  const double c = std::min(std::abs(f.front().first), std::abs(f.front().second));
  const double d = std::max(std::abs(f.front().first), std::abs(f.front().second));
  const eq::Intervals sym{{-d, -c}, {c, d}};
  const auto ss = eq::solve_equilibrium(sym, opts);
  const auto& m = ss.lambda.mass;
  const double mmax = *std::max_element(m.begin(), m.end());
  double asym = 0.0;
  for (size_t i = 0; i < m.size(); ++i) asym = std::max(asym, std::abs(m[i] - m[m.size() - 1 - i]) / mmax);
  out.checks.push_back(make("mirror symmetry", asym, tol, asym < tol));
  out.checks.push_back(make("residual on support, mirrored F", ss.residual_on_support, tol, ss.residual_on_support < tol));

  const auto rep = eq::verify_equilibrium(k, s, probes, tol, seed);
  out.checks.push_back(make("variational probes", rep.min_variational, -tol, rep.variational_ok, "lower bound"));
  out.checks.push_back(make("maximin probes", rep.max_maximin_excess, tol, rep.maximin_ok));
  out.seconds = seconds_since(t0);
  return out;
}

std::vector<Check> energy_properties(const eq::Intervals& f, int cells, int pairs, uint64_t seed, double tol) {
  const auto grid = eq::make_cells(f, cells, eq::Grading::chebyshev);
  const eq::KernelMatrix k(grid);
  double worst_convex = -std::numeric_limits<double>::infinity();
  double worst_parallelogram = 0.0;
  double min_j = std::numeric_limits<double>::infinity(), min_i = std::numeric_limits<double>::infinity();
  for (int t = 0; t < pairs; ++t) {
    const auto mu = eq::random_measure(grid, seed + 2 * static_cast<uint64_t>(t));
    const auto nu = eq::random_measure(grid, seed + 2 * static_cast<uint64_t>(t) + 1);
    eq::GridMeasure mid = mu;
    for (size_t i = 0; i < mid.mass.size(); ++i) mid.mass[i] = 0.5 * (mu.mass[i] + nu.mass[i]);
    const auto em = eq::energies(k, mu, &nu);
    const auto en = eq::energies(k, nu);
    const auto emid = eq::energies(k, mid);
    worst_convex = std::max(worst_convex, emid.J_psi - 0.5 * (em.J_psi + en.J_psi));
    const double jd = *em.J_of_difference;
    worst_parallelogram =
        std::max(worst_parallelogram, std::abs(jd - (2 * em.J_psi + 2 * en.J_psi - 4 * emid.J_psi)));
    min_j = std::min(min_j, jd);
    min_i = std::min(min_i, eq::log_energy_of_difference(k, mu, nu));
  }
  return {
      make("convexity", worst_convex, tol, worst_convex <= tol, "J_psi(mid) - mean"),
      make("parallelogram identity", worst_parallelogram, tol, worst_parallelogram <= tol),
      make("J of neutral charge", min_j, -tol, min_j >= -tol, "lower bound"),
      make("I of neutral charge", min_i, -tol, min_i >= -tol, "lower bound"),
  };
}

std::vector<ConvergenceRow> convergence_study(const NikishinSystem& sys, const std::vector<int>& n_list,
                                              const eq::GridMeasure& lambda, Precision fixed_bits) {
  const auto lam = eq::WeakMeasure::from(lambda.normalized());
  const auto hull = sys.hull();
  std::vector<ConvergenceRow> rows;
  for (int n : n_list) {
    const auto run = construct(sys, n, fixed_bits);
    ConvergenceRow r;
    r.n = n;
    r.precision = run.triple.precision;
    r.residual_order = run.triple.residual_order;
    const auto loc = localize(sys, run.zeros);
    r.outside_hull = loc.outside_hull;
    r.non_real = loc.non_real;
    r.max_per_gap = loc.max_per_gap;
    r.weak_distance = n > 0 ? eq::weak_distance(eq::WeakMeasure::from(run.zeros, 1.0 / n), lam, hull)
                            : std::numeric_limits<double>::quiet_NaN();
    r.seconds = run.seconds;
    rows.push_back(r);
  }
  return rows;
}

std::vector<Check> convergence_checks(const std::vector<ConvergenceRow>& rows, double limit) {
  bool decreasing = true;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].weak_distance < rows[i - 1].weak_distance)) decreasing = false;
  }
  const double last = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().weak_distance;
  return {
      make("weak distance strictly decreasing", decreasing ? 1 : 0, 1, decreasing),
      make("weak distance at largest n", last, limit, last < limit),
  };
}

ClusterCheck two_means(const std::vector<std::complex<double>>& pts, std::complex<double> a, std::complex<double> b,
                       double near) {
  ClusterCheck out;
  out.label.assign(pts.size(), 0);
  if (pts.size() < 2) return out;
  auto by_im = [](auto x, auto y) { return x.imag() < y.imag() || (x.imag() == y.imag() && x.real() < y.real()); };
  std::complex<double> c0 = *std::min_element(pts.begin(), pts.end(), by_im);
  std::complex<double> c1 = *std::max_element(pts.begin(), pts.end(), by_im);
  for (int iter = 0; iter < 200; ++iter) {
    bool changed = false;
    std::complex<double> s0 = 0.0, s1 = 0.0;
    size_t n0 = 0, n1 = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      const int l = std::abs(pts[i] - c1) < std::abs(pts[i] - c0) ? 1 : 0;
      if (l != out.label[i]) changed = true;
      out.label[i] = l;
      if (l == 0) {
        s0 += pts[i];
        ++n0;
      } else {
        s1 += pts[i];
        ++n1;
      }
    }
    if (n0 > 0) c0 = s0 / static_cast<double>(n0);
    if (n1 > 0) c1 = s1 / static_cast<double>(n1);
    if (!changed && iter > 0) break;
  }
  out.gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i) {
    if (out.label[i] == 0) {
      ++out.lower_count;
      out.lower_to_cut = std::max(out.lower_to_cut, distance_to_segment(pts[i], -1.0, 1.0));
      for (size_t j = 0; j < pts.size(); ++j) {
        if (out.label[j] == 1) out.gap = std::min(out.gap, std::abs(pts[i] - pts[j]));
      }
    } else {
      ++out.upper_count;
      out.upper_to_segment = std::max(out.upper_to_segment, distance_to_segment(pts[i], b, a));
    }
  }
  out.passed = out.lower_count > 0 && out.upper_count > 0 && out.lower_to_cut <= near && out.upper_to_segment <= near;
  return out;
}

FigureData figure_data(const NikishinSystem& sys, int n, Precision bits) {
  if (bits == 0) bits = hp_default_precision(n);
  FigureData out;
  out.n = n;
  out.precision = bits;
  auto type2 = std::async(std::launch::async, [&] {
    PrecisionGuard guard(bits);
    const auto t = hp::hp_type2(sys, n, bits);
    return std::make_tuple(t.order_f1, t.order_f2, to_std(zero_nodes(t.q)));
  });
  PrecisionGuard guard(bits);
  const auto triple = hp::hp_type1(sys, n, bits);
  out.residual_order = triple.residual_order;
  auto roots_of = [bits](const Polynomial& p) {
    return std::async(std::launch::async, [bits, &p] {
      PrecisionGuard g(bits);
      return to_std(zero_nodes(p));
    });
  };
  auto f0 = roots_of(triple.q0);
  auto f1 = roots_of(triple.q1);
  auto f2 = roots_of(triple.q2);
  out.q0 = f0.get();
  out.q1 = f1.get();
  out.q2 = f2.get();
  std::tie(out.order_f1, out.order_f2, out.type2) = type2.get();
  return out;
}

}  // namespace hpq::suites
