#include "hpq/quadrature.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hpq::quad {

namespace {

using Key = std::pair<size_t, Precision>;

struct Cache {
  std::mutex mu;
  std::map<Key, std::shared_ptr<const Rule>> rules;
};

Cache& chebyshev_cache() {
  static Cache c;
  return c;
}

Cache& legendre_cache() {
  static Cache c;
  return c;
}

// P_n(x) and P_{n-1}(x) by the three-term recurrence.
void legendre_pair(size_t n, const Real& x, Real& pn, Real& pn1) {
  const Precision p = x.precision();
  Real prev(p, 1L);
  Real cur(x);
  for (size_t k = 2; k <= n; ++k) {
    Real next = x * cur;
    next *= static_cast<long>(2 * k - 1);
    next.sub_mul(Real(p, static_cast<long>(k - 1)), prev);
    next /= static_cast<long>(k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  pn = std::move(cur);
  pn1 = std::move(prev);
}

std::shared_ptr<const Rule> build_legendre(size_t n, Precision bits) {
  auto rule = std::make_shared<Rule>();
  rule->nodes.assign(n, Real::zero(bits));
  rule->weights.assign(n, Real::zero(bits));
  const Real eps = Real::exp2i(-static_cast<long>(bits) + 4, bits);
  const size_t half = (n + 1) / 2;
  for (size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton in double before going wide.
    double xd = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    for (int it = 0; it < 8; ++it) {
      double p0 = 1.0, p1 = xd;
      for (size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * xd * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      double dp = static_cast<double>(n) * (xd * p1 - p0) / (xd * xd - 1.0);
      xd -= p1 / dp;
    }
    Real x(bits, xd);
    Real pn(bits, 0L), pn1(bits, 0L), dp(bits, 0L);
    for (int it = 0; it < 64; ++it) {
      legendre_pair(n, x, pn, pn1);
      dp = (x * pn - pn1) * static_cast<long>(n) / (x * x - 1);
      Real step = pn / dp;
      x -= step;
      if (abs(step) <= eps) break;
    }
    legendre_pair(n, x, pn, pn1);
    dp = (x * pn - pn1) * static_cast<long>(n) / (x * x - 1);
    Real w = Real(bits, 2L) / ((1 - x * x) * dp * dp);
    rule->nodes[i] = x;
    rule->weights[i] = w;
    rule->nodes[n - 1 - i] = -x;
    rule->weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->nodes[n / 2] = Real::zero(bits);
  return rule;
}

std::shared_ptr<const Rule> build_chebyshev(size_t n, Precision bits) {
  auto rule = std::make_shared<Rule>();
  const Real pi = Real::pi(bits);
  const Real w = pi / static_cast<long>(n);
  rule->nodes.reserve(n);
  rule->weights.assign(n, w);
  for (size_t i = 1; i <= n; ++i) {
    rule->nodes.push_back(cos(pi * static_cast<long>(2 * i - 1) / static_cast<long>(2 * n)));
  }
  return rule;
}

template <typename Build>
std::shared_ptr<const Rule> cached(Cache& cache, size_t n, Precision bits, Build build) {
  if (n == 0) throw std::invalid_argument("quadrature rule needs at least one node");
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.rules.find({n, bits});
    if (it != cache.rules.end()) return it->second;
  }
  auto rule = build(n, bits);
  std::lock_guard lock(cache.mu);
  return cache.rules.emplace(Key{n, bits}, std::move(rule)).first->second;
}

}  // namespace

std::shared_ptr<const Rule> gauss_chebyshev(size_t n, Precision bits) {
  return cached(chebyshev_cache(), n, bits, build_chebyshev);
}

std::shared_ptr<const Rule> gauss_legendre(size_t n, Precision bits) {
  return cached(legendre_cache(), n, bits, build_legendre);
}

Rule gauss_legendre_on(const Real& a, const Real& b, size_t n) {
  const Precision bits = std::max(a.precision(), b.precision());
  auto base = gauss_legendre(n, bits);
  const Real half = ldexp(b - a, -1);
  const Real mid = ldexp(a + b, -1);
  Rule out;
  out.nodes.reserve(n);
  out.weights.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    out.nodes.push_back(mid + half * base->nodes[i]);
    out.weights.push_back(half * base->weights[i]);
  }
  return out;
}

size_t nodes_for_accuracy(double rho, Precision bits, size_t degree) {
  if (!(rho > 1.0)) throw std::invalid_argument("Bernstein parameter must exceed 1");
  // Error of an N-point Gauss rule decays like rho^(-2N).
  const double needed = (static_cast<double>(bits) + 16.0) * std::log(2.0) / (2.0 * std::log(rho));
  return static_cast<size_t>(std::ceil(needed)) + degree / 2 + 4;
}

double bernstein_rho(double a, double b, double x) {
  const std::complex<double> u((2.0 * x - a - b) / (b - a), 0.0);
  const std::complex<double> w = u + std::sqrt(u - 1.0) * std::sqrt(u + 1.0);
  return std::abs(w);
}

}  // namespace hpq::quad
