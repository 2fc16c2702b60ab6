#include "hpq/surface.hpp"

#include <array>
#include <string>

#include "hpq/errors.hpp"

namespace hpq::surface {

namespace {

Real cut_tolerance(Precision p) { return Real::exp2i(-(p / 2), p); }

Complex root_product(const Complex& z) {
  const Real one(z.precision(), 1L);
  return sqrt(Complex(z.re - one, z.im)) * sqrt(Complex(z.re + one, z.im));
}

[[noreturn]] void reject(const Complex& z) {
  throw BranchCutError("argument on the cut [-1, 1]: " + z.re.to_string(12) + " + " +
                       z.im.to_string(12) + "i");
}

Complex sheet_value(const Complex& phi_z, Sheet s) { return s == Sheet::first ? phi_z : inverse(phi_z); }

Real identity_residual(const Complex& z, const Complex& a, const Complex& fz, const Complex& fa) {
  Complex prod = fz * fa;
  Complex rhs = (fz - fa) * (Complex(Real(z.precision(), 1L)) - prod) / (prod * Real(z.precision(), 2L));
  return abs(z - a + rhs);
}

}  // namespace

bool on_cut(const Complex& z) {
  const Precision p = z.precision();
  Real dx = abs(z.re) - 1;
  if (dx.sign() < 0) dx = Real::zero(p);
  return hypot(dx, z.im) <= cut_tolerance(p);
}

bool on_open_cut(const Complex& z) {
  const Real tol = cut_tolerance(z.precision());
  return abs(z.im) <= tol && abs(z.re) < 1 - tol;
}

Complex sqrt_branch(const Complex& z) {
  if (on_cut(z)) reject(z);
  return root_product(z);
}

Complex phi(const Complex& z) {
  if (on_open_cut(z)) reject(z);
  return z + root_product(z);
}

Complex phi_prime(const Complex& z) { return phi(z) / sqrt_branch(z); }

Complex phi_sheeted(const SheetPoint& pt) {
  if (on_cut(pt.z)) reject(pt.z);
  return sheet_value(phi(pt.z), pt.sheet);
}

Real psi(const Complex& z) { return log(abs(phi(z))); }

IdentityResiduals check_identities(const Complex& z, const Complex& a) {
  const Complex fz = phi(z);
  const Complex fa = phi(a);
  if (on_cut(z)) reject(z);
  if (on_cut(a)) reject(a);

  IdentityResiduals out{identity_residual(z, a, fz, fa), Real::zero(z.precision()),
                        Real::zero(z.precision())};
  constexpr std::array sheets{Sheet::first, Sheet::second};
  for (Sheet sz : sheets) {
    for (Sheet sa : sheets) {
      out.sheeted_identity =
          max(out.sheeted_identity, identity_residual(z, a, sheet_value(fz, sz), sheet_value(fa, sa)));
    }
  }
  out.reciprocal_identity = abs(fz * (z - sqrt_branch(z)) - Complex(Real(z.precision(), 1L)));
  return out;
}

Real kernel_split_residual(const Complex& z, const Complex& t) {
  const Precision p = z.precision();
  const Complex fz = phi(z);
  const Complex ft = phi(t);
  const Real one(p, 1L);
  Real direct = log(abs(Complex(one) - fz * ft)) - 2 * log(abs(z - t));
  Real split = -log(abs(z - t)) - log(abs(fz - ft)) + Real::log2(p) + psi(z) + psi(t);
  return abs(direct - split);
}

}  // namespace hpq::surface
