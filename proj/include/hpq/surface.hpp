#pragma once

// Branch-correct evaluation on the two-sheeted surface w^2 = z^2 - 1.
//
// sqrt_branch(z) ~ z at infinity, phi(z) = z + sqrt_branch(z) maps the plane
// cut along E = [-1, 1] onto the exterior of the unit disk, and the sheeted
// function Phi equals phi on the first sheet and 1/phi on the second.

#include "hpq/complex.hpp"

namespace hpq::surface {

enum class Sheet { first, second };

struct SheetPoint {
  Complex z;
  Sheet sheet = Sheet::first;
};

/// True when z lies within 2^(-p/2) of the closed segment [-1, 1].
bool on_cut(const Complex& z);
/// True when z lies within 2^(-p/2) of the open segment (-1, 1).
bool on_open_cut(const Complex& z);

/// (z^2 - 1)^(1/2) with the branch ~ z at infinity. Throws BranchCutError on E.
Complex sqrt_branch(const Complex& z);

/// z + sqrt_branch(z). The endpoints +-1 are admitted and map to +-1.
Complex phi(const Complex& z);

/// d(phi)/dz = phi(z) / sqrt_branch(z).
Complex phi_prime(const Complex& z);

Complex phi_sheeted(const SheetPoint& pt);

/// log|phi(z)|, the external field.
Real psi(const Complex& z);

struct IdentityResiduals {
  Real distance_identity;    // z - a against the phi factorisation
  Real sheeted_identity;     // same identity, worst of the four sheet pairings
  Real reciprocal_identity;  // phi(z) (z - sqrt_branch(z)) - 1
};

/// Absolute residuals of the meromorphic identities linking z - a with phi.
IdentityResiduals check_identities(const Complex& z, const Complex& a);

/// log(|1 - phi(z)phi(t)| / |z - t|^2) minus its split form
/// -log|z-t| - log|phi(z)-phi(t)| + log 2 + psi(z) + psi(t).
Real kernel_split_residual(const Complex& z, const Complex& t);

}  // namespace hpq::surface
