#include "hpq/equilibrium.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hpq/errors.hpp"
#include "hpq/simd/kernels.hpp"

namespace hpq::eq {

namespace {

constexpr double kLog2 = std::numbers::ln2;
// Three-point Gauss-Legendre on [-1/2, 1/2].
constexpr double kGaussOffset = 0.3872983346207417;  // sqrt(3/5) / 2
constexpr std::array<double, 3> kGaussX{-kGaussOffset, 0.0, kGaussOffset};
constexpr std::array<double, 3> kGaussW{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// G'' = log|u|, G(0) = 0.
double g2(double u) { return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(std::abs(u)) - 0.75 * u * u; }
// H' = log|u|, H(0) = 0.
double h1(double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; }

// Average of log 1/|x - y| over x in a, y in b.
double log_cell_pair(const Cell& a, const Cell& b) {
  const double ha = a.width(), hb = b.width();
  const double d = std::abs(a.mid() - b.mid());
  if (d > 8.0 * (ha + hb)) {
    // Fourth-order moment expansion about the midpoints.
    const double var = (ha * ha + hb * hb) / 12.0;
    const double mu4 = (std::pow(ha, 4) + std::pow(hb, 4)) / 80.0 + ha * ha * hb * hb / 24.0;
    return -std::log(d) + var / (2.0 * d * d) + mu4 / (4.0 * std::pow(d, 4));
  }
  const double s = g2(a.hi - b.lo) - g2(a.lo - b.lo) - g2(a.hi - b.hi) + g2(a.lo - b.hi);
  return -s / (ha * hb);
}

// Average of log 1/|z - t| over t in c.
double log_cell_point(const Cell& c, double z) { return -(h1(z - c.lo) - h1(z - c.hi)) / c.width(); }

double log_cell_point(const Cell& c, std::complex<double> z) {
  if (z.imag() == 0.0) return log_cell_point(c, z.real());
  auto h = [](std::complex<double> u) { return u * std::log(u) - u; };
  return -(h(z - c.lo) - h(z - c.hi)).real() / c.width();
}

double phi_prime_real(double x) { return phi_real(x) / std::copysign(std::sqrt((x - 1.0) * (x + 1.0)), x); }

// (phi(x) - phi(y)) / (x - y), positive on R \ (-1, 1).
double divided_difference(double x, double y) {
  if (x == y) return phi_prime_real(x);
  return (phi_real(x) - phi_real(y)) / (x - y);
}

double point(const Cell& c, size_t k) { return c.mid() + kGaussX[k] * c.width(); }

// Average of -log D over the pair of cells.
double log_dd_cell_pair(const Cell& a, const Cell& b) {
  double s = 0.0;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) s -= kGaussW[i] * kGaussW[j] * std::log(divided_difference(point(a, i), point(b, j)));
  return s;
}

double log_dd_cell_point(const Cell& c, double z) {
  double s = 0.0;
  for (size_t i = 0; i < 3; ++i) s -= kGaussW[i] * std::log(divided_difference(z, point(c, i)));
  return s;
}

double psi_cell(const Cell& c) {
  double s = 0.0;
  for (size_t i = 0; i < 3; ++i) s += kGaussW[i] * psi_real(point(c, i));
  return s;
}

void check_real_point(double x) {
  if (!(std::abs(x) > 1.0)) throw BranchCutError("point lies on [-1, 1]");
}

}  // namespace

double phi_real(double x) {
  if (std::abs(x) < 1.0) throw BranchCutError("phi_real: |x| < 1");
  const double ax = std::abs(x);
  return std::copysign(ax + std::sqrt((ax - 1.0) * (ax + 1.0)), x);
}

double psi_real(double x) { return std::log(std::abs(phi_real(x))); }

std::vector<Cell> make_cells(const Intervals& f, int cells_per_interval, Grading grading) {
  if (cells_per_interval < 1) throw std::invalid_argument("make_cells: need at least one cell");
  std::vector<Cell> out;
  for (size_t k = 0; k < f.size(); ++k) {
    const auto [lo, hi] = f[k];
    if (!(lo < hi)) throw std::invalid_argument("make_cells: empty interval");
    const int m = cells_per_interval;
    std::vector<double> edges(static_cast<size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
      const double s = grading == Grading::uniform
                           ? static_cast<double>(i) / m
                           : 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) / m));
      edges[static_cast<size_t>(i)] = lo + (hi - lo) * s;
    }
    edges.front() = lo;
    edges.back() = hi;
    for (int i = 0; i < m; ++i) {
      out.push_back({edges[static_cast<size_t>(i)], edges[static_cast<size_t>(i) + 1], static_cast<int>(k)});
    }
  }
  return out;
}

double GridMeasure::total() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

GridMeasure GridMeasure::normalized() const {
  GridMeasure out = *this;
  const double t = total();
  if (!(t > 0.0)) throw NormalizationError("measure has no mass");
  for (auto& m : out.mass) m /= t;
  return out;
}

double kernel(double z, double t) {
  if (z == t) throw DiagonalError("kernel evaluated on the diagonal");
  check_real_point(z);
  check_real_point(t);
  return -std::log(std::abs(z - t)) - std::log(std::abs(phi_real(z) - phi_real(t))) + kLog2 + psi_real(z) +
         psi_real(t);
}

double kernel_direct(double z, double t) {
  if (z == t) throw DiagonalError("kernel evaluated on the diagonal");
  return std::log(std::abs(1.0 - phi_real(z) * phi_real(t)) / ((z - t) * (z - t)));
}

KernelMatrix::KernelMatrix(std::vector<Cell> cells) : cells_(std::move(cells)), n_(cells_.size()) {
  for (const auto& c : cells_) {
    check_real_point(c.lo);
    check_real_point(c.hi);
  }
  a_.assign(n_ * n_, 0.0);
  k_.assign(n_ * n_, 0.0);
  psi_.resize(n_);
  for (size_t i = 0; i < n_; ++i) psi_[i] = psi_cell(cells_[i]);
  for (size_t i = 0; i < n_; ++i) {
    for (size_t j = i; j < n_; ++j) {
      const double a = log_cell_pair(cells_[i], cells_[j]);
      const double l = log_dd_cell_pair(cells_[i], cells_[j]);
      const double k = 2.0 * a + l + kLog2 + psi_[i] + psi_[j];
      a_[i * n_ + j] = a_[j * n_ + i] = a;
      k_[i * n_ + j] = k_[j * n_ + i] = k;
    }
  }
}

std::vector<double> KernelMatrix::field(const std::vector<double>& mass) const {
  std::vector<double> g(n_);
  simd::matvec(k_.data(), n_, n_, mass.data(), g.data());
  for (size_t i = 0; i < n_; ++i) g[i] += psi_[i];
  return g;
}

Potentials potentials(const GridMeasure& mu, double z) {
  check_real_point(z);
  Potentials p;
  const double pz = phi_real(z), psi_z = psi_real(z);
  for (size_t j = 0; j < mu.cells.size(); ++j) {
    const Cell& c = mu.cells[j];
    const double m = mu.mass[j];
    if (m == 0.0) continue;
    const double v = log_cell_point(c, z);
    p.V += m * v;
    p.P += m * (2.0 * v + log_dd_cell_point(c, z) + kLog2 + psi_z + psi_cell(c));
    double vt = 0.0;
    for (size_t k = 0; k < 3; ++k) vt -= kGaussW[k] * std::log(std::abs(1.0 - pz * phi_real(point(c, k))));
    p.V_tilde += m * vt;
  }
  return p;
}

double log_potential(const GridMeasure& mu, std::complex<double> z) {
  double v = 0.0;
  for (size_t j = 0; j < mu.cells.size(); ++j) {
    if (mu.mass[j] != 0.0) v += mu.mass[j] * log_cell_point(mu.cells[j], z);
  }
  return v;
}

namespace {

void check_grid(const KernelMatrix& k, const GridMeasure& mu) {
  if (mu.cells.size() != k.size() || mu.mass.size() != k.size()) {
    throw std::invalid_argument("measure does not live on the kernel grid");
  }
}

double quad_form(const std::vector<double>& x, const std::vector<double>& m, size_t n) {
  std::vector<double> y(n);
  simd::matvec(m.data(), n, n, x.data(), y.data());
  return simd::dot(x.data(), y.data(), n);
}

std::vector<double> log_matrix(const KernelMatrix& k) {
  const size_t n = k.size();
  std::vector<double> a(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i * n + j] = k.log_avg(i, j);
  return a;
}

}  // namespace

Energies energies(const KernelMatrix& k, const GridMeasure& mu, const GridMeasure* nu) {
  check_grid(k, mu);
  const size_t n = k.size();
  Energies e;
  const auto a = log_matrix(k);
  e.I = quad_form(mu.mass, a, n);
  e.J = quad_form(mu.mass, k.kernel_data(), n);
  e.J_psi = e.J + 2.0 * simd::dot(k.psi_data().data(), mu.mass.data(), n);
  if (nu != nullptr) {
    check_grid(k, *nu);
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = mu.mass[i] - nu->mass[i];
    // Two-log form: 2 log 1/|x-y| + (-log D), no constant or field terms.
    std::vector<double> two_log(n * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        two_log[i * n + j] = k.kernel_avg(i, j) - kLog2 - k.psi_avg(i) - k.psi_avg(j);
    e.J_of_difference = quad_form(d, two_log, n);
  }
  return e;
}

double log_energy_of_difference(const KernelMatrix& k, const GridMeasure& mu, const GridMeasure& nu) {
  check_grid(k, mu);
  check_grid(k, nu);
  const size_t n = k.size();
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = mu.mass[i] - nu.mass[i];
  return quad_form(d, log_matrix(k), n);
}

namespace {

// Euclidean projection onto {x >= 0, sum x = total}.
void project_simplex(double* x, size_t n, double total) {
  std::vector<double> s(x, x + n);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cum += s[i];
    const double t = (cum - total) / static_cast<double>(i + 1);
    if (i + 1 == n || s[i + 1] <= t) {
      theta = t;
      break;
    }
  }
  for (size_t i = 0; i < n; ++i) x[i] = std::max(x[i] - theta, 0.0);
}

struct Block {
  size_t begin, end;
  double mass;
};

// min x^T Q x + 2 c^T x over a product of scaled simplices.
struct QuadProblem {
  const std::vector<double>* q;
  std::vector<double> c;
  std::vector<Block> blocks;
  size_t n;

  std::vector<double> field(const std::vector<double>& x) const {
    std::vector<double> g(n);
    simd::matvec(q->data(), n, n, x.data(), g.data());
    for (size_t i = 0; i < n; ++i) g[i] += c[i];
    return g;
  }
  double value(const std::vector<double>& x, const std::vector<double>& g) const {
    // x^T Q x + 2 c^T x = x^T (g + c)
    double v = 0.0;
    for (size_t i = 0; i < n; ++i) v += x[i] * (g[i] + c[i]);
    return v;
  }
  void project(std::vector<double>& x) const {
    for (const auto& b : blocks) project_simplex(x.data() + b.begin, b.end - b.begin, b.mass);
  }
  // Frank-Wolfe gap: sum over blocks of x.g - mass * min g.
  double gap(const std::vector<double>& x, const std::vector<double>& g) const {
    double total = 0.0;
    for (const auto& b : blocks) {
      double xg = 0.0, gmin = std::numeric_limits<double>::infinity();
      for (size_t i = b.begin; i < b.end; ++i) {
        xg += x[i] * g[i];
        gmin = std::min(gmin, g[i]);
      }
      total += xg - b.mass * gmin;
    }
    return total;
  }
};

struct QuadResult {
  std::vector<double> x;
  int iterations = 0;
  bool converged = false;
};

// Accelerated projected gradient (FISTA) with Armijo backtracking on the step
// and function-value restarts.
QuadResult minimize(const QuadProblem& p, std::vector<double> x, double tol, int max_iter) {
  p.project(x);
  std::vector<double> y = x, gy, x_new(p.n);
  std::vector<double> gx = p.field(x);
  double fx = p.value(x, gx);
  double step = 1.0, theta = 1.0;
  QuadResult r;
  for (int it = 1; it <= max_iter; ++it) {
    gy = p.field(y);
    const double fy = p.value(y, gy);
    std::vector<double> g_new;
    double f_new = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      for (size_t i = 0; i < p.n; ++i) x_new[i] = y[i] - 2.0 * step * gy[i];
      p.project(x_new);
      g_new = p.field(x_new);
      f_new = p.value(x_new, g_new);
      double lin = 0.0, sq = 0.0;
      for (size_t i = 0; i < p.n; ++i) {
        const double d = x_new[i] - y[i];
        lin += 2.0 * gy[i] * d;
        sq += d * d;
      }
      if (f_new <= fy + lin + sq / (2.0 * step) + 1e-15 * std::abs(fy)) break;
      step *= 0.5;
    }
    if (f_new > fx) {
      // Restart momentum from the last accepted iterate.
      theta = 1.0;
      y = x;
      r.iterations = it;
      continue;
    }
    const double theta_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    const double beta = (theta - 1.0) / theta_new;
    for (size_t i = 0; i < p.n; ++i) y[i] = x_new[i] + beta * (x_new[i] - x[i]);
    theta = theta_new;
    x.swap(x_new);
    gx.swap(g_new);
    fx = f_new;
    step *= 1.05;
    r.iterations = it;
    if (p.gap(x, gx) <= tol) {
      r.converged = true;
      break;
    }
  }
  r.x = std::move(x);
  return r;
}

// KKT solve restricted to the current support: Q_SS x_S - w_b = -c_S per block,
// block masses fixed. Accepted only if it stays feasible and improves the gap.
bool polish(const QuadProblem& p, std::vector<double>& x, double tol) {
  std::vector<size_t> support;
  for (const auto& b : p.blocks) {
    double mx = 0.0;
    for (size_t i = b.begin; i < b.end; ++i) mx = std::max(mx, x[i]);
    for (size_t i = b.begin; i < b.end; ++i)
      if (x[i] > 1e-12 * mx) support.push_back(i);
  }
  const size_t s = support.size(), nb = p.blocks.size();
  auto block_of = [&](size_t i) {
    for (size_t b = 0; b < nb; ++b)
      if (i >= p.blocks[b].begin && i < p.blocks[b].end) return b;
    return nb;
  };
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<long>(s + nb), static_cast<long>(s + nb));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<long>(s + nb));
  for (size_t a = 0; a < s; ++a) {
    for (size_t b = 0; b < s; ++b) m(static_cast<long>(a), static_cast<long>(b)) = (*p.q)[support[a] * p.n + support[b]];
    const size_t blk = block_of(support[a]);
    m(static_cast<long>(a), static_cast<long>(s + blk)) = -1.0;
    m(static_cast<long>(s + blk), static_cast<long>(a)) = 1.0;
    rhs(static_cast<long>(a)) = -p.c[support[a]];
  }
  for (size_t b = 0; b < nb; ++b) rhs(static_cast<long>(s + b)) = p.blocks[b].mass;
  const Eigen::VectorXd sol = m.partialPivLu().solve(rhs);
  std::vector<double> cand(p.n, 0.0);
  for (size_t a = 0; a < s; ++a) {
    const double v = sol(static_cast<long>(a));
    if (!(v >= 0.0)) return false;
    cand[support[a]] = v;
  }
  const auto g_old = p.field(x);
  const auto g_new = p.field(cand);
  const double gap_new = p.gap(cand, g_new);
  if (!(gap_new <= std::max(tol, p.gap(x, g_old)))) return false;
  x.swap(cand);
  return true;
}

// Projected-gradient chunks, each followed by a KKT solve on the support found
// so far; the support stabilises long before the gradient iteration converges.
QuadResult minimize_polished(const QuadProblem& p, std::vector<double> x, double tol, int max_iter) {
  constexpr int kChunk = 500;
  QuadResult total;
  while (total.iterations < max_iter) {
    QuadResult r = minimize(p, std::move(x), tol, std::min(kChunk, max_iter - total.iterations));
    total.iterations += r.iterations;
    x = std::move(r.x);
    if (r.converged || (polish(p, x, tol) && p.gap(x, p.field(x)) <= tol)) {
      total.converged = true;
      break;
    }
  }
  total.x = std::move(x);
  return total;
}

std::vector<double> arcsine_start(const std::vector<Cell>& cells, const Intervals& f, double total) {
  std::vector<double> x(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto [lo, hi] = f[static_cast<size_t>(cells[i].interval)];
    auto cdf = [&](double t) { return std::asin(std::clamp((2.0 * t - lo - hi) / (hi - lo), -1.0, 1.0)); };
    x[i] = cdf(cells[i].hi) - cdf(cells[i].lo);
  }
  const double s = std::accumulate(x.begin(), x.end(), 0.0);
  for (auto& v : x) v *= total / s;
  return x;
}

Intervals intervals_of(const std::vector<Cell>& cells) {
  Intervals f;
  for (const auto& c : cells) {
    const size_t k = static_cast<size_t>(c.interval);
    if (f.size() <= k) f.resize(k + 1, {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
    f[k].first = std::min(f[k].first, c.lo);
    f[k].second = std::max(f[k].second, c.hi);
  }
  return f;
}

constexpr double kSupportThreshold = 1e-8;

}  // namespace

EquilibriumSolution solve_equilibrium(const Intervals& f, const SolveOptions& opts) {
  if (opts.cells_per_interval < 1) throw std::invalid_argument("solve_equilibrium: need cells");
  for (const auto& [lo, hi] : f) {
    if (!(hi <= -1.0 || lo >= 1.0)) throw GeometryError("F meets E = [-1, 1]");
  }
  KernelMatrix k(make_cells(f, opts.cells_per_interval, opts.grading));
  return solve_equilibrium(k, opts);
}

EquilibriumSolution solve_equilibrium(const KernelMatrix& k, const SolveOptions& opts) {
  const size_t n = k.size();
  QuadProblem p{&k.kernel_data(), k.psi_data(), {{0, n, 1.0}}, n};
  auto start = arcsine_start(k.cells(), intervals_of(k.cells()), 1.0);
  QuadResult r = minimize_polished(p, std::move(start), opts.tol, opts.max_iter);

  EquilibriumSolution sol;
  sol.lambda.cells = k.cells();
  sol.lambda.mass = r.x;
  sol.iterations = r.iterations;
  sol.converged = r.converged;
  const auto g = k.field(r.x);
  sol.w_F = simd::dot(r.x.data(), g.data(), n);

  double max_density = 0.0;
  for (size_t i = 0; i < n; ++i) max_density = std::max(max_density, sol.lambda.density(i));
  sol.residual_on_support = 0.0;
  sol.discrete_residual = 0.0;
  sol.min_off_support = std::numeric_limits<double>::infinity();
  size_t zero_cells = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = k.cells()[i].mid();
    const double pointwise = potentials(sol.lambda, x).P + psi_real(x) - sol.w_F;
    if (sol.lambda.density(i) > kSupportThreshold * max_density) {
      sol.residual_on_support = std::max(sol.residual_on_support, std::abs(pointwise));
      sol.discrete_residual = std::max(sol.discrete_residual, std::abs(g[i] - sol.w_F));
    } else {
      ++zero_cells;
      sol.min_off_support = std::min(sol.min_off_support, pointwise);
    }
  }
  sol.zero_cell_fraction = static_cast<double>(zero_cells) / static_cast<double>(n);
  return sol;
}

GridMeasure random_measure(const std::vector<Cell>& cells, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Intervals f = intervals_of(cells);
  std::vector<std::array<double, 5>> coef(f.size());
  for (auto& c : coef) {
    c[0] = unit(rng);  // interval weight (log scale)
    for (size_t k = 1; k < c.size(); ++k) c[k] = 1.5 * unit(rng) / static_cast<double>(k);
  }
  GridMeasure mu;
  mu.cells = cells;
  for (const auto& cell : cells) {
    const auto& c = coef[static_cast<size_t>(cell.interval)];
    const auto [lo, hi] = f[static_cast<size_t>(cell.interval)];
    const double s = (cell.mid() - lo) / (hi - lo);
    double e = c[0];
    for (size_t k = 1; k < c.size(); ++k) e += c[k] * std::cos(std::numbers::pi * static_cast<double>(k) * s);
    mu.mass.push_back(std::exp(e) * cell.width());
  }
  return mu.normalized();
}

VerifyReport verify_equilibrium(const KernelMatrix& k, const EquilibriumSolution& sol, int probes, double tol,
                                uint64_t seed) {
  check_grid(k, sol.lambda);
  VerifyReport rep;
  rep.sup_on_support = sol.residual_on_support;
  rep.min_off_support = sol.min_off_support;
  const auto g = k.field(sol.lambda.mass);
  const double g_min = *std::min_element(g.begin(), g.end());
  rep.min_variational = std::numeric_limits<double>::infinity();
  rep.max_maximin_excess = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < probes; ++t) {
    const GridMeasure nu = random_measure(k.cells(), seed + static_cast<uint64_t>(t));
    double var = 0.0;
    for (size_t i = 0; i < k.size(); ++i) var += (nu.mass[i] - sol.lambda.mass[i]) * g[i];
    rep.min_variational = std::min(rep.min_variational, var);
    const auto gn = k.field(nu.mass);
    rep.max_maximin_excess = std::max(rep.max_maximin_excess, *std::min_element(gn.begin(), gn.end()) - g_min);
  }
  rep.variational_ok = rep.min_variational >= -tol;
  rep.maximin_ok = rep.max_maximin_excess <= tol;
  rep.ok = rep.sup_on_support <= tol && rep.min_off_support >= -tol && rep.variational_ok && rep.maximin_ok;
  return rep;
}

VectorSolution vector_nikishin_solve(const Intervals& f, int cells_per_interval, std::pair<double, double> masses,
                                     const SolveOptions& opts) {
  if (!(masses.first > 0.0 && masses.second > 0.0)) throw std::invalid_argument("vector masses must be positive");
  const std::vector<Cell> ce = make_cells({{-1.0, 1.0}}, cells_per_interval, Grading::chebyshev);
  const std::vector<Cell> cf = make_cells(f, cells_per_interval, opts.grading);
  const size_t ne = ce.size(), nf = cf.size(), n = ne + nf;
  std::vector<Cell> all = ce;
  all.insert(all.end(), cf.begin(), cf.end());
  // Energy 2 I(l1) + 2 I(l2) - 2 I(l1, l2) = x^T Q x with the Nikishin matrix.
  std::vector<double> q(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const bool ei = i < ne, ej = j < ne;
      const double a = log_cell_pair(all[i], all[j]);
      const double v = (ei == ej) ? 2.0 * a : -a;
      q[i * n + j] = q[j * n + i] = v;
    }
  }
  QuadProblem p{&q, std::vector<double>(n, 0.0), {{0, ne, masses.first}, {ne, n, masses.second}}, n};
  std::vector<double> start = arcsine_start(ce, {{-1.0, 1.0}}, masses.first);
  const auto sf = arcsine_start(cf, f, masses.second);
  start.insert(start.end(), sf.begin(), sf.end());
  QuadResult r = minimize_polished(p, std::move(start), opts.tol, opts.max_iter);

  VectorSolution out;
  out.on_e.cells = ce;
  out.on_e.mass.assign(r.x.begin(), r.x.begin() + static_cast<long>(ne));
  out.on_f.cells = cf;
  out.on_f.mass.assign(r.x.begin() + static_cast<long>(ne), r.x.end());
  out.energy = p.value(r.x, p.field(r.x));
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

MassCalibration calibrate_vector_masses(const Intervals& f, int cells_per_interval, const WeakMeasure& target,
                                        std::pair<double, double> search, const SolveOptions& opts) {
  double lo_f = std::numeric_limits<double>::infinity(), hi_f = -lo_f;
  for (const auto& [lo, hi] : f) {
    lo_f = std::min(lo_f, lo);
    hi_f = std::max(hi_f, hi);
  }
  auto eval = [&](double m1) {
    MassCalibration c;
    c.m1 = m1;
    c.solution = vector_nikishin_solve(f, cells_per_interval, {m1, 1.0}, opts);
    c.distance = weak_distance(WeakMeasure::from(c.solution.on_f), target, {lo_f, hi_f});
    return c;
  };
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = search.first, b = search.second;
  MassCalibration left = eval(b - ratio * (b - a)), right = eval(a + ratio * (b - a));
  for (int it = 0; it < 30 && b - a > 1e-3; ++it) {
    if (left.distance <= right.distance) {
      b = right.m1;
      right = std::move(left);
      left = eval(b - ratio * (b - a));
    } else {
      a = left.m1;
      left = std::move(right);
      right = eval(a + ratio * (b - a));
    }
  }
  return left.distance <= right.distance ? left : right;
}

WeakMeasure WeakMeasure::from(const GridMeasure& g) {
  WeakMeasure w;
  w.cells = g.cells;
  w.cell_mass = g.mass;
  return w;
}

WeakMeasure WeakMeasure::from(const roots::DiscreteMeasure& d, double scale) {
  d.validate();
  WeakMeasure w;
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    w.atoms.push_back(d.nodes[i].to_std());
    w.atom_weights.push_back(d.weights[i].to_double() * scale);
  }
  return w;
}

double WeakMeasure::total() const {
  return std::accumulate(atom_weights.begin(), atom_weights.end(), 0.0) +
         std::accumulate(cell_mass.begin(), cell_mass.end(), 0.0);
}

double WeakMeasure::cdf(double x, bool left_limit) const {
  double s = 0.0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    const double a = atoms[i].real();
    if (a < x || (!left_limit && a == x)) s += atom_weights[i];
  }
  for (size_t i = 0; i < cells.size(); ++i) {
    s += cell_mass[i] * std::clamp((x - cells[i].lo) / cells[i].width(), 0.0, 1.0);
  }
  return s;
}

double WeakMeasure::potential(std::complex<double> z) const {
  double v = 0.0;
  for (size_t i = 0; i < atoms.size(); ++i) v -= atom_weights[i] * std::log(std::abs(z - atoms[i]));
  for (size_t i = 0; i < cells.size(); ++i) {
    if (cell_mass[i] != 0.0) v += cell_mass[i] * log_cell_point(cells[i], z);
  }
  return v;
}

double weak_distance(const WeakMeasure& mu, const WeakMeasure& nu, std::pair<double, double> hull) {
  if (std::abs(mu.total() - nu.total()) > 1e-8) throw NormalizationError("weak_distance: masses differ");
  std::vector<double> breaks;
  for (const WeakMeasure* m : {&mu, &nu}) {
    for (const auto& a : m->atoms) breaks.push_back(a.real());
    for (const auto& c : m->cells) {
      breaks.push_back(c.lo);
      breaks.push_back(c.hi);
    }
  }
  double kolmogorov = 0.0;
  for (double x : breaks) {
    for (bool left : {true, false}) kolmogorov = std::max(kolmogorov, std::abs(mu.cdf(x, left) - nu.cdf(x, left)));
  }
  // Stadium of radius r around [lo, hi], 200 points equally spaced in arc length.
  const double r = 0.1, lo = hull.first, hi = hull.second, len = hi - lo;
  const double perimeter = 2.0 * len + 2.0 * std::numbers::pi * r;
  double potential = 0.0;
  for (int k = 0; k < 200; ++k) {
    double s = perimeter * k / 200.0;
    std::complex<double> z;
    if (s < len) {
      z = {lo + s, -r};
    } else if ((s -= len) < std::numbers::pi * r) {
      const double t = -0.5 * std::numbers::pi + s / r;
      z = std::complex<double>(hi, 0.0) + std::polar(r, t);
    } else if ((s -= std::numbers::pi * r) < len) {
      z = {hi - s, r};
    } else {
      s -= len;
      const double t = 0.5 * std::numbers::pi + s / r;
      z = std::complex<double>(lo, 0.0) + std::polar(r, t);
    }
    potential = std::max(potential, std::abs(mu.potential(z) - nu.potential(z)));
  }
  return std::max(kolmogorov, potential);
}

}  // namespace hpq::eq
