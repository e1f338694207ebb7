#pragma once

#include "hmcusp/field.hpp"
#include "hmcusp/rational.hpp"

namespace hmcusp {

// Exact special value at s = -1 via the finite divisor sum
//   (1/60) * sum over b with b^2 < D, b = D mod 2, of sigma_1((D - b^2)/4).
Rat zeta_minus1_exact(const QuadraticField& F);

struct NumericOptions {
    double rel_tol = 1e-13;
    bool high_precision = false;  // evaluate internally in quad precision
};

// Riemann zeta for real s > 0, s != 1 (Euler-Maclaurin continuation).
double riemann_zeta(double s, const NumericOptions& opts = {});

// L(s, chi) for the real quadratic character attached to the field, s > 0.
// Regular at s = 1 (the partial-fraction pole terms cancel there).
double dirichlet_l(const QuadraticField& F, double s, const NumericOptions& opts = {});

// Dedekind zeta of the field, as zeta(s) * L(s, chi), s > 0, s != 1.
double dedekind_zeta(const QuadraticField& F, double s, const NumericOptions& opts = {});

// Completed zeta: D^{s/2} * (pi^{-s/2} Gamma(s/2))^2 * zeta_field(s), s > 0, s != 1.
// Invariant under s -> 1 - s.
double completed_xi(const QuadraticField& F, double s, const NumericOptions& opts = {});

// The completed value at s = -1 obtained from the exact special value:
//   (4 pi^2 / sqrt(D)) * zeta_minus1_exact.
// By the functional equation this equals completed_xi at s = 2.
double completed_xi_at_minus1(const QuadraticField& F);

// Hilbert modular surface volume: 2 |zeta_F(-1)| (2 pi)^2, from the exact value.
double volume_interior(const QuadraticField& F);

// Total boundary cross-section volume: per cusp, the covolume of the order
// lattice under the two embeddings (via a Gram determinant) times the flow
// period of the totally positive fundamental unit, summed over the class
// number.  Cross-checked against the closed form 2 h Reg sqrt(D); a relative
// disagreement above 1e-9 raises NormalizationMismatch.
double volume_boundary(const QuadraticField& F);

struct ResidueIdentityReport {
    double lhs = 0;      // h * Reg / xi(2): numerator exact-side, denominator numeric
    double rhs = 0;      // volume_boundary / volume_interior, from exact values
    double abs_err = 0;
    bool pass = false;
};

// Checks h * Reg / xi(2) == vol(boundary) / vol(interior).  The left side runs
// through the Euler-Maclaurin evaluation of the completed zeta at s = 2, the
// right side through the exact special value at s = -1, so agreement is a
// genuine cross-validation of both pipelines.
ResidueIdentityReport verify_residue_identity(const QuadraticField& F, double tol = 1e-9);

}  // namespace hmcusp
