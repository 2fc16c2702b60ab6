#include "hpq/nikishin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "hpq/errors.hpp"
#include "hpq/surface.hpp"

namespace hpq {

Decimal::Decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  text.assign(buf, res.ptr);
}

double Decimal::value() const { return std::stod(text); }

Real Density::at(const Real& t, const Real& lo, const Real& hi) const {
  const Precision p = t.precision();
  switch (kind) {
    case Kind::constant:
      return values.at(0).at(p);
    case Kind::polynomial: {
      Real acc(p, 0L);
      for (size_t k = values.size(); k-- > 0;) {
        acc *= t;
        acc += values[k].at(p);
      }
      return acc;
    }
    case Kind::chebyshev_table: {
      // Barycentric interpolation through the Chebyshev-Lobatto points.
      const size_t m = values.size() - 1;
      if (m == 0) return values[0].at(p);
      const Real u = (2 * t - lo - hi) / (hi - lo);
      const Real pi = Real::pi(p);
      Real num(p, 0L), den(p, 0L);
      for (size_t j = 0; j <= m; ++j) {
        const Real xj = cos(pi * static_cast<long>(j) / static_cast<long>(m));
        const Real diff = u - xj;
        if (diff.is_zero()) return values[j].at(p);
        Real w(p, (j % 2 == 0) ? 1L : -1L);
        if (j == 0 || j == m) w = ldexp(w, -1);
        w /= diff;
        num.add_mul(w, values[j].at(p));
        den += w;
      }
      return num / den;
    }
  }
  return Real::zero(p);
}

NikishinSystem NikishinSystem::uniform(const std::vector<std::pair<Decimal, Decimal>>& intervals) {
  NikishinSystem sys;
  for (const auto& [lo, hi] : intervals) {
    sys.intervals.push_back({lo, hi});
    sys.densities.push_back(Density{});
  }
  return sys;
}

NikishinSystem NikishinSystem::angelesco() {
  NikishinSystem sys;
  sys.mode = SystemMode::angelesco_algebraic;
  return sys;
}

void NikishinSystem::validate() const {
  if (mode == SystemMode::angelesco_algebraic) {
    const double ai = a_im.value(), bi = b_im.value();
    if (ai == 0.0 && std::abs(a_re.value()) <= 1.0) throw ConfigError("branch point a lies on [-1, 1]");
    if (bi == 0.0 && std::abs(b_re.value()) <= 1.0) throw ConfigError("branch point b lies on [-1, 1]");
    return;
  }
  if (intervals.empty()) throw ConfigError("F must contain at least one interval");
  if (densities.size() != intervals.size()) throw ConfigError("one density per interval of F is required");
  double prev_hi = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < intervals.size(); ++j) {
    const double lo = intervals[j].lo.value(), hi = intervals[j].hi.value();
    if (!(lo < hi)) throw ConfigError("interval " + std::to_string(j) + " has c >= d");
    if (!(lo > prev_hi)) throw ConfigError("intervals of F must be ordered and disjoint");
    if (hi >= -1.0 && lo <= 1.0) throw ConfigError("interval " + std::to_string(j) + " meets [-1, 1]");
    prev_hi = hi;
    const auto& d = densities[j];
    if (d.values.empty()) throw ConfigError("density without values");
    // Positivity probe on a fixed sample.
    Real rlo = intervals[j].lo.at(128), rhi = intervals[j].hi.at(128);
    for (int s = 1; s < 16; ++s) {
      Real t = rlo + (rhi - rlo) * static_cast<long>(s) / 16L;
      if (!(d.at(t, rlo, rhi) > 0)) throw ConfigError("density must be positive on interval " + std::to_string(j));
    }
  }
}

std::pair<double, double> NikishinSystem::hull() const {
  return {intervals.front().lo.value(), intervals.back().hi.value()};
}

double NikishinSystem::gap_to_cut() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals) {
    const double lo = iv.lo.value(), hi = iv.hi.value();
    best = std::min(best, lo > 1.0 ? lo - 1.0 : -1.0 - hi);
  }
  return best;
}

std::vector<Real> f1_series(size_t k_max, Precision bits) {
  std::vector<Real> c(k_max + 1, Real::zero(bits));
  c[0] = Real(bits, 1L);
  // c_{2m} = binom(2m, m) 4^{-m} = c_{2m-2} (2m-1)/(2m)
  for (size_t k = 2; k <= k_max; k += 2) {
    c[k] = c[k - 2] * static_cast<long>(k - 1) / static_cast<long>(k);
  }
  return c;
}

std::vector<Complex> algebraic_series(const Complex& a, const Complex& b, size_t k_max) {
  const Precision p = a.precision();
  const Complex s = a + b;
  const Complex prod = a * b;
  std::vector<Complex> g(k_max + 1, Complex(Real::zero(p)));
  g[0] = Complex(Real(p, 1L));
  // 2(k+1) g_{k+1} = (2k+1) S g_k - 2k P g_{k-1}
  for (size_t k = 0; k < k_max; ++k) {
    Complex next = s * g[k] * Real(p, static_cast<long>(2 * k + 1));
    if (k > 0) next -= prod * g[k - 1] * Real(p, static_cast<long>(2 * k));
    g[k + 1] = next / Real(p, static_cast<long>(2 * (k + 1)));
  }
  return g;
}

Markov::Markov(NikishinSystem sys, Precision bits) : sys_(std::move(sys)), bits_(bits) {
  if (sys_.mode != SystemMode::nikishin) throw ConfigError("Markov quadrature requires a nikishin-mode system");
  sys_.validate();
  for (const auto& iv : sys_.intervals) {
    lo_.push_back(iv.lo.at(bits_));
    hi_.push_back(iv.hi.at(bits_));
  }
}

double Markov::rho_cut() const {
  // Nearest singularity of h seen from E: the endpoint of F closest to E.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : sys_.intervals) {
    for (double x : {iv.lo.value(), iv.hi.value()}) {
      const double ax = std::abs(x);
      best = std::min(best, ax + std::sqrt(ax * ax - 1.0));
    }
  }
  return best;
}

std::shared_ptr<const Markov::SigmaRule> Markov::sigma_rule(size_t degree) const {
  const size_t bucket = (degree + 15) / 16 * 16;
  {
    std::lock_guard lock(mu_);
    auto it = sigma_rules_.find(bucket);
    if (it != sigma_rules_.end()) return it->second;
  }
  auto rule = std::make_shared<SigmaRule>();
  for (size_t j = 0; j < sys_.intervals.size(); ++j) {
    const double lo = sys_.intervals[j].lo.value(), hi = sys_.intervals[j].hi.value();
    const double nearest = lo > 1.0 ? 1.0 : -1.0;
    const size_t m = quad::nodes_for_accuracy(quad::bernstein_rho(lo, hi, nearest), bits_, bucket);
    const quad::Rule gl = quad::gauss_legendre_on(lo_[j], hi_[j], m);
    for (size_t i = 0; i < gl.size(); ++i) {
      rule->weights.push_back(gl.weights[i] * sys_.densities[j].at(gl.nodes[i], lo_[j], hi_[j]));
      rule->f1.push_back(inverse(surface::sqrt_branch(Complex(gl.nodes[i]))).re);
      rule->nodes.push_back(gl.nodes[i]);
    }
  }
  std::lock_guard lock(mu_);
  return sigma_rules_.emplace(bucket, std::move(rule)).first->second;
}

Real Markov::h(const Real& x) const {
  auto rule = sigma_rule();
  Real acc(bits_, 0L);
  for (size_t i = 0; i < rule->nodes.size(); ++i) acc += rule->weights[i] / (x - rule->nodes[i]);
  return acc;
}

size_t Markov::cut_nodes_for(size_t degree) const { return quad::nodes_for_accuracy(rho_cut(), bits_, degree); }

std::shared_ptr<const Markov::CutTable> Markov::cut_table(size_t n_nodes) const {
  {
    std::lock_guard lock(mu_);
    auto it = cut_tables_.find(n_nodes);
    if (it != cut_tables_.end()) return it->second;
  }
  auto table = std::make_shared<CutTable>();
  table->rule = quad::gauss_chebyshev(n_nodes, bits_);
  table->h.reserve(n_nodes);
  for (const auto& x : table->rule->nodes) table->h.push_back(h(x));
  std::lock_guard lock(mu_);
  return cut_tables_.emplace(n_nodes, std::move(table)).first->second;
}

Complex Markov::f2(const Complex& z) const {
  auto rule = sigma_rule();
  const Complex f1z = inverse(surface::sqrt_branch(z));
  Complex acc(Real::zero(bits_));
  for (size_t i = 0; i < rule->nodes.size(); ++i) {
    const Complex dz = z - Complex(rule->nodes[i]);
    acc += (f1z - Complex(rule->f1[i])) / dz * rule->weights[i];
  }
  return acc * Real::pi(bits_);
}

Complex Markov::f2_by_cut(const Complex& z, size_t n_nodes) const {
  if (surface::on_cut(z)) throw BranchCutError("f2 evaluated on [-1, 1]");
  auto table = cut_table(n_nodes);
  Complex acc(Real::zero(bits_));
  for (size_t i = 0; i < n_nodes; ++i) {
    acc += Complex(table->h[i]) / (z - Complex(table->rule->nodes[i]));
  }
  return acc * table->rule->weights[0];
}

std::vector<Real> Markov::moments_at(size_t k_max, size_t n_nodes) const {
  auto table = cut_table(n_nodes);
  std::vector<Real> s(k_max + 1, Real::zero(bits_));
  for (size_t i = 0; i < n_nodes; ++i) {
    Real term = table->h[i];
    const Real& x = table->rule->nodes[i];
    for (size_t k = 0; k <= k_max; ++k) {
      s[k] += term;
      term *= x;
    }
  }
  for (auto& v : s) v *= table->rule->weights[0];
  return s;
}

std::vector<Real> Markov::moments(size_t k_max) const {
  const size_t n1 = cut_nodes_for(k_max);
  const size_t n2 = n1 + std::max<size_t>(16, n1 / 8);
  std::vector<Real> s = moments_at(k_max, n1);
  const std::vector<Real> check = moments_at(k_max, n2);
  Real scale(bits_, 0L);
  for (const auto& v : check) scale = max(scale, abs(v));
  const Real tol = scale * Real::exp2i(-(bits_ - 24), bits_);
  for (size_t k = 0; k <= k_max; ++k) {
    if (abs(s[k] - check[k]) > tol) {
      throw PrecisionError("moment quadrature did not converge at k = " + std::to_string(k) +
                           "; raise the precision or node budget");
    }
  }
  return s;
}

std::vector<Complex> f2_series(const NikishinSystem& sys, size_t k_max, Precision bits) {
  if (sys.mode == SystemMode::angelesco_algebraic) {
    const Complex a(sys.a_re.at(bits), sys.a_im.at(bits));
    const Complex b(sys.b_re.at(bits), sys.b_im.at(bits));
    return algebraic_series(a, b, k_max);
  }
  Markov markov(sys, bits);
  std::vector<Complex> out;
  for (auto& v : markov.moments(k_max)) out.emplace_back(std::move(v));
  return out;
}

}  // namespace hpq
