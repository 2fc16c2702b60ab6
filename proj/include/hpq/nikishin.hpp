#pragma once

// The function pair f1 = (z^2-1)^(-1/2), f2 and the quadrature machinery that
// evaluates f2, its density h and its Laurent coefficients at a fixed precision.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hpq/complex.hpp"
#include "hpq/quadrature.hpp"

namespace hpq {

/// A decimal literal kept verbatim so it can be re-read at any precision.
struct Decimal {
  std::string text = "0";

  Decimal() = default;
  Decimal(std::string t) : text(std::move(t)) {}  // NOLINT
  Decimal(const char* t) : text(t) {}             // NOLINT
  Decimal(double x);                              // NOLINT: shortest round-trip form

  double value() const;
  Real at(Precision bits) const { return Real::parse(text, bits); }
};

enum class SystemMode { nikishin, angelesco_algebraic };

/// Density of sigma on one interval of F.
struct Density {
  enum class Kind { constant, polynomial, chebyshev_table };
  Kind kind = Kind::constant;
  /// constant: one value; polynomial: ascending coefficients in t;
  /// chebyshev_table: values at the Chebyshev-Lobatto points of the interval.
  std::vector<Decimal> values{Decimal("1")};

  Real at(const Real& t, const Real& lo, const Real& hi) const;
};

struct Interval {
  Decimal lo;
  Decimal hi;
};

struct NikishinSystem {
  SystemMode mode = SystemMode::nikishin;
  std::vector<Interval> intervals;  // F, ordered, pairwise disjoint, off [-1, 1]
  std::vector<Density> densities;   // one per interval
  // Branch points of f2 = ((z-a)(z-b))^(-1/2) in algebraic mode.
  Decimal a_re{"0.8"}, a_im{"0.5"}, b_re{"-0.8"}, b_im{"0.5"};

  /// sigma uniform (density 1) on each interval.
  static NikishinSystem uniform(const std::vector<std::pair<Decimal, Decimal>>& intervals);
  /// f2 = ((z - .8 - .5i)(z + .8 - .5i))^(-1/2), the Angelesco pair.
  static NikishinSystem angelesco();

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
  /// [min c_j, max d_j]
  std::pair<double, double> hull() const;
  /// Distance between [-1, 1] and F.
  double gap_to_cut() const;
};

/// Laurent coefficients at infinity of f1: f1(z) = sum c_k z^(-k-1).
std::vector<Real> f1_series(size_t k_max, Precision bits);

/// Laurent coefficients of ((z-a)(z-b))^(-1/2) from the recurrence induced by
/// 2 p w' + p' w = 0 with p = (z-a)(z-b).
std::vector<Complex> algebraic_series(const Complex& a, const Complex& b, size_t k_max);

/// Quadrature state for f2 and h = sigma-hat of a Nikishin-mode system at a
/// fixed precision. Node tables are built lazily and cached; all accessors are
/// safe for concurrent use.
class Markov {
 public:
  Markov(NikishinSystem sys, Precision bits);

  const NikishinSystem& system() const noexcept { return sys_; }
  Precision precision() const noexcept { return bits_; }

  /// Nodes and d(sigma) weights on F resolving integrands whose smooth
  /// factor has polynomial-like degree `degree`.
  struct SigmaRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
    std::vector<Real> f1;  // f1 at the nodes
  };
  std::shared_ptr<const SigmaRule> sigma_rule(size_t degree = 0) const;

  /// Gauss-Chebyshev table on E with h at the nodes.
  struct CutTable {
    std::shared_ptr<const quad::Rule> rule;
    std::vector<Real> h;
  };
  std::shared_ptr<const CutTable> cut_table(size_t n_nodes) const;
  /// Chebyshev node count that resolves x^degree h(x)/sqrt(1-x^2) on E.
  size_t cut_nodes_for(size_t degree) const;

  Real h(const Real& x) const;
  /// f2(z) off E via f2(z) = pi * int_F (f1(z) - f1(t)) / (z - t) d sigma(t).
  Complex f2(const Complex& z) const;
  /// f2(z) off E via the defining integral over E (independent route).
  Complex f2_by_cut(const Complex& z, size_t n_nodes) const;

  /// s_k = int_E x^k h(x) dx / sqrt(1-x^2), k = 0..k_max, by nested quadrature.
  /// Recomputed at a second node level; disagreement raises PrecisionError.
  std::vector<Real> moments(size_t k_max) const;

 private:
  double rho_cut() const;
  std::vector<Real> moments_at(size_t k_max, size_t n_nodes) const;

  NikishinSystem sys_;
  Precision bits_;
  std::vector<Real> lo_, hi_;
  mutable std::mutex mu_;
  mutable std::map<size_t, std::shared_ptr<const SigmaRule>> sigma_rules_;
  mutable std::map<size_t, std::shared_ptr<const CutTable>> cut_tables_;
};

/// Laurent coefficients s_0..s_K of f2 (nikishin: nested quadrature;
/// angelesco_algebraic: recurrence).
std::vector<Complex> f2_series(const NikishinSystem& sys, size_t k_max, Precision bits);

}  // namespace hpq
