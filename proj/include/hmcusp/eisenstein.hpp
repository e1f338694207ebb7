#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "hmcusp/field.hpp"
#include "hmcusp/ideal.hpp"

namespace hmcusp {

// Fourier data of the weight-two holomorphic series at full level: the
// constant is the exact -zeta_F(-1)/4, and the coefficient attached to a
// totally positive alpha in the inverse different is the divisor sum of the
// integral ideal alpha * different.
struct FourierExpansion {
    Rat constant;
    long trace_bound = 0;
    std::vector<std::pair<FieldElement, Int>> coeffs;  // ordered by (trace, b, a)
};

// Requires narrow class number one; throws NarrowClassNumberNotOne otherwise.
FourierExpansion fourier_holomorphic(const QuadraticField& F, long trace_bound);

// Internal-consistency checks on the coefficient family: prime coefficients
// are 1 + Np, coprime ideals multiply, and prime powers satisfy the standard
// three-term recursion.  Throws InsufficientCoefficients when fewer than 20
// coefficients are available.
struct HeckeReport {
    long coefficients_available = 0;
    long prime_checks = 0;
    long multiplicative_checks = 0;
    long recursion_checks = 0;
    bool all_pass = true;
};

HeckeReport hecke_checks(const QuadraticField& F, const FourierExpansion& E);

// A point (x1 + i y1, x2 + i y2) in the product of two upper half planes.
struct EisPoint {
    double x1 = 0, y1 = 1, x2 = 0, y2 = 1;
};

// Truncated q-expansion evaluation with a certified tail estimate: the terms
// of trace t are at most (sqrt(D) t + 2) many, each coefficient is at most
// (D t^2 / 4)^2, and the exponential factor is at most exp(-2 pi ymin t);
// the tail is summed by the geometric ratio ((t+1)/t)^5 exp(-2 pi ymin).
// Throws NotInConvergenceRegion when that ratio is not below one at the
// first omitted trace.
struct EvalResult {
    std::complex<double> value;
    double tail_bound = 0;
};

EvalResult eval_holomorphic(const QuadraticField& F, const FourierExpansion& E,
                            const EisPoint& z);

// The unit multiple of x (full unit group, both signs) whose first embedding
// lies in [1, eps1); every nonzero x has exactly one such multiple.
FieldElement orbit_normalize(const QuadraticField& F, const FieldElement& x);

// Primitive pairs (c, d) in the order, one per unit orbit: (0, 1), plus all
// c in the normalization window with |second embedding| <= bound and d in a
// box adapted to the evaluation area.  Primitivity means cO + dO = O.
struct OrbitRep {
    FieldElement c, d;
};

std::vector<OrbitRep> enumerate_primitive_orbit_reps(const QuadraticField& F,
                                                     const EisPoint& z, double bound);

// Partial lattice sum  N(y)^s  sum over reps  1 / |N(c z + d)|^(2s).
// Requires s > 1 (NotInConvergenceRegion) and y1, y2 > 0 (BadInput); class
// number one is assumed for the attached constant-term law
// (ClassNumberNotOne).
double lattice_eis_partial(const QuadraticField& F, const EisPoint& z, double s,
                           double bound);

// Averages the partial sums over a quadrature x-grid on the translation
// torus and compares against  N(y)^s + (Xi(2s-1)/Xi(2s)) N(y)^(1-s).
struct ConstantTermReport {
    double measured = 0;
    double predicted = 0;
    double abs_err = 0;
    double leading = 0;     // N(y)^s
    double reflected = 0;   // coefficient times N(y)^{1-s}
};

ConstantTermReport constant_term_numeric(const QuadraticField& F, double y1, double y2,
                                         double s, double bound, int quadrature);

}  // namespace hmcusp
