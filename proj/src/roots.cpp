#include "hpq/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hpq::roots {

Real DiscreteMeasure::mass() const {
  Real m(weights.empty() ? kDefaultPrecision : weights.front().precision(), 0L);
  for (const auto& w : weights) m += w;
  return m;
}

void DiscreteMeasure::validate() const {
  if (nodes.size() != weights.size()) throw NormalizationError("measure has mismatched nodes and weights");
  for (const auto& w : weights) {
    if (w.sign() < 0) throw NormalizationError("measure has a negative weight");
  }
}

DiscreteMeasure DiscreteMeasure::scaled(const Real& factor) const {
  DiscreteMeasure out = *this;
  for (auto& w : out.weights) w *= factor;
  return out;
}

DiscreteMeasure DiscreteMeasure::sorted() const {
  std::vector<size_t> idx(nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (nodes[a].re != nodes[b].re) return nodes[a].re < nodes[b].re;
    return nodes[a].im < nodes[b].im;
  });
  DiscreteMeasure out;
  for (size_t i : idx) {
    out.nodes.push_back(nodes[i]);
    out.weights.push_back(weights[i]);
  }
  return out;
}

namespace {

struct Eval {
  Complex value;
  Complex derivative;
  Real scale;  // sum |a_k| |z|^k
};

Eval horner(const std::vector<Complex>& a, const Complex& z) {
  const Precision bits = z.precision();
  const Real az = abs(z);
  Eval e{a.back(), Complex(Real::zero(bits)), abs(a.back())};
  for (size_t k = a.size() - 1; k-- > 0;) {
    e.derivative = e.derivative * z + e.value;
    e.value = e.value * z + a[k];
    e.scale = e.scale * az + abs(a[k]);
  }
  return e;
}

bool residual_ok(const Eval& e, const Real& bound) { return abs(e.value) <= bound * e.scale; }

}  // namespace

std::vector<Complex> aberth(const Polynomial& p, const AberthOptions& opts) {
  const int d = p.degree();
  if (d <= 0) return {};
  const Precision bits = p.precision();
  PrecisionGuard guard(bits);
  const Polynomial q = p.monic();
  const std::vector<Complex>& a = q.coeffs();
  const Real residual_bound = Real::exp2i(-static_cast<long>(bits / 2), bits);
  const Real step_floor = Real::exp2i(-static_cast<long>(bits - 8), bits);

  // Circle about the root centroid with the geometric-mean root distance.
  const Complex centre = -a[static_cast<size_t>(d - 1)] / Real(bits, static_cast<long>(d));
  const Complex at_centre = horner(a, centre).value;
  double radius = at_centre.is_zero() ? 0.0 : std::exp(log(abs(at_centre)).to_double() / d);
  radius = std::max(radius, 1e-3 * (1.0 + abs(centre).to_double()));
  std::vector<Complex> z;
  z.reserve(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / d + 0.4;
    z.push_back(centre + Complex(bits, radius * std::cos(angle), radius * std::sin(angle)));
  }

  std::vector<bool> frozen(static_cast<size_t>(d), false);
  std::vector<bool> settled(static_cast<size_t>(d), false);
  double best_step = HUGE_VAL;
  int since_improvement = 0;
  const Complex one(Real(bits, 1L));
  for (int it = 0; it < opts.max_iterations; ++it) {
    Real max_step = Real::zero(bits);
    for (size_t i = 0; i < z.size(); ++i) {
      if (frozen[i]) continue;
      const Eval e = horner(a, z[i]);
      settled[i] = residual_ok(e, residual_bound);
      if (e.value.is_zero()) {
        frozen[i] = true;
        continue;
      }
      if (e.derivative.is_zero()) {
        z[i] += Complex(bits, 1e-8 * (1.0 + abs(z[i]).to_double()), 1e-8);
        continue;
      }
      const Complex ratio = e.value / e.derivative;
      Complex s(Real::zero(bits));
      for (size_t j = 0; j < z.size(); ++j) {
        if (j != i) s += inverse(z[i] - z[j]);
      }
      const Complex w = ratio / (one - ratio * s);
      z[i] -= w;
      const Real step = abs(w) / max(abs(z[i]), Real(bits, 1L));
      if (step <= step_floor) frozen[i] = true;
      max_step = max(max_step, step);
    }
    const bool all_frozen = std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; });
    const double step = max_step.to_double();
    if (step < 0.5 * best_step) {
      best_step = step;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (all_frozen || since_improvement >= 5) {
      for (size_t i = 0; i < z.size(); ++i) settled[i] = residual_ok(horner(a, z[i]), residual_bound);
      if (std::all_of(settled.begin(), settled.end(), [](bool s) { return s; })) return z;
      if (all_frozen) break;
    }
  }
  for (size_t i = 0; i < z.size(); ++i) settled[i] = residual_ok(horner(a, z[i]), residual_bound);
  if (std::all_of(settled.begin(), settled.end(), [](bool s) { return s; })) return z;
  throw RootNonConvergence("Aberth iteration did not converge within " + std::to_string(opts.max_iterations) +
                               " iterations",
                           z, settled);
}

namespace {

using RealPoly = std::vector<Real>;

Real eval_real(const RealPoly& c, const Real& x) {
  Real acc = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) {
    acc *= x;
    acc += c[k];
  }
  return acc;
}

Real max_abs(const RealPoly& c) {
  Real m = Real::zero(c.front().precision());
  for (const auto& v : c) m = max(m, abs(v));
  return m;
}

// Negated remainder of a / b; trailing coefficients below `floor` are dropped.
RealPoly neg_remainder(RealPoly a, const RealPoly& b, const Real& floor) {
  const size_t db = b.size() - 1;
  while (a.size() > db) {
    const Real f = a.back() / b.back();
    const size_t shift = a.size() - 1 - db;
    for (size_t k = 0; k <= db; ++k) a[shift + k].sub_mul(f, b[k]);
    a.pop_back();
  }
  while (!a.empty() && abs(a.back()) <= floor) a.pop_back();
  for (auto& v : a) v = -v;
  return a;
}

std::vector<RealPoly> sturm_sequence(const Polynomial& p) {
  std::vector<RealPoly> seq{p.real_coeffs(), p.derivative().real_coeffs()};
  const Precision bits = p.precision();
  const Real rel = Real::exp2i(-static_cast<long>(bits / 2), bits);
  while (seq.back().size() > 1) {
    RealPoly r = neg_remainder(seq[seq.size() - 2], seq.back(), rel * max_abs(seq.back()));
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

size_t sign_changes(const std::vector<RealPoly>& seq, const Real& x) {
  size_t changes = 0;
  int last = 0;
  for (const auto& c : seq) {
    const int s = eval_real(c, x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

size_t sturm_count(const Polynomial& p, const Real& a, const Real& b) {
  if (!p.is_real()) throw std::invalid_argument("sturm_count: polynomial is not real");
  if (p.degree() <= 0) return 0;
  const auto seq = sturm_sequence(p);
  const size_t va = sign_changes(seq, a), vb = sign_changes(seq, b);
  return va > vb ? va - vb : 0;
}

std::vector<Real> real_roots_sturm(const Polynomial& p) {
  if (!p.is_real()) throw RootFindingError("real_roots_sturm: polynomial is not real");
  const int d = p.degree();
  if (d <= 0) return {};
  const Precision bits = p.precision();
  PrecisionGuard guard(bits);
  const RealPoly c = p.monic().real_coeffs();
  const auto seq = sturm_sequence(p);
  Real bound(bits, 1L);
  for (int k = 0; k < d; ++k) bound = max(bound, Real(bits, 1L) + abs(c[static_cast<size_t>(k)]));
  const Real lo0 = -bound, hi0 = bound;
  if (sign_changes(seq, lo0) - sign_changes(seq, hi0) != static_cast<size_t>(d)) {
    throw RootFindingError("real_roots_sturm: roots are not all real and simple");
  }
  const Real width_floor = Real::exp2i(-static_cast<long>(bits / 2), bits);
  std::vector<Real> out;
  struct Box {
    Real lo, hi;
    size_t count;
  };
  std::vector<Box> stack{{lo0, hi0, static_cast<size_t>(d)}};
  while (!stack.empty()) {
    Box b = std::move(stack.back());
    stack.pop_back();
    if (b.count == 0) continue;
    if (b.count == 1) {
      // Bisection on sign; the root is simple and lies in (lo, hi].
      Real lo = b.lo, hi = b.hi;
      const int s_hi = eval_real(c, hi).sign();
      if (s_hi == 0) {
        out.push_back(hi);
        continue;
      }
      while (hi - lo > width_floor * max(abs(hi), Real(bits, 1L))) {
        Real mid = ldexp(lo + hi, -1);
        const int s = eval_real(c, mid).sign();
        if (s == 0) {
          lo = hi = mid;
          break;
        }
        (s == s_hi ? hi : lo) = std::move(mid);
      }
      out.push_back(ldexp(lo + hi, -1));
      continue;
    }
    Real mid = ldexp(b.lo + b.hi, -1);
    const size_t vl = sign_changes(seq, b.lo), vm = sign_changes(seq, mid), vh = sign_changes(seq, b.hi);
    stack.push_back({b.lo, mid, vl - vm});
    stack.push_back({mid, b.hi, vm - vh});
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiscreteMeasure zero_measure(const Polynomial& p, const AberthOptions& opts) {
  if (p.is_zero()) throw std::invalid_argument("zero_measure: zero polynomial");
  const Precision bits = p.precision();
  std::vector<Complex> z;
  try {
    z = aberth(p, opts);
  } catch (const RootNonConvergence&) {
    if (!p.is_real()) throw;
    for (auto& r : real_roots_sturm(p)) z.emplace_back(std::move(r));
  }
  if (p.is_real()) {
    // Imaginary parts at the noise level of a real polynomial are dropped.
    const Real snap = Real::exp2i(-static_cast<long>(bits / 2), bits);
    for (auto& r : z) {
      if (abs(r.im) <= snap * max(abs(r.re), Real(bits, 1L))) r.im = Real::zero(bits);
    }
  }
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });
  const Real merge = Real::exp2i(-static_cast<long>(bits / 8), bits);
  DiscreteMeasure out;
  std::vector<bool> used(z.size(), false);
  for (size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    Complex sum = z[i];
    long count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < z.size(); ++j) {
      if (used[j]) continue;
      if (abs(z[j] - z[i]) <= merge * max(abs(z[i]), Real(bits, 1L))) {
        sum += z[j];
        ++count;
        used[j] = true;
      }
    }
    out.nodes.push_back(sum / Real(bits, count));
    out.weights.emplace_back(bits, count);
  }
  return out;
}

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) return a.size() == b.size() ? 0.0 : HUGE_VAL;
  auto directed = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      Real best = abs(p - y.front());
      for (const auto& q : y) best = min(best, abs(p - q));
      worst = std::max(worst, best.to_double());
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace hpq::roots
