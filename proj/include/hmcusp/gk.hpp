#pragma once

#include <map>
#include <string>
#include <vector>

#include "hmcusp/rational.hpp"

namespace hmcusp {

// Dense univariate polynomial over the rationals.  Used in two roles: in the
// spectral parameter s (raising/lowering coefficients before specialization)
// and in the formal residue symbol R (coefficients of the specialized
// complex).  The variable name is supplied only when printing.
struct Poly {
    std::vector<Rat> c;  // c[k] is the coefficient of t^k; no trailing zeros

    Poly() = default;
    explicit Poly(const Rat& r);
    explicit Poly(long n);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    Rat evaluate(const Rat& t) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& r) const;
    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
};

Poly poly_var();  // the polynomial t

// Quotient and remainder; divisor must be nonzero.
void poly_divmod(const Poly& a, const Poly& b, Poly* quot, Poly* rem);
// Monic gcd, with gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
std::string poly_to_string(const Poly& p, const std::string& var);

using SPoly = Poly;  // polynomial in s
using RPoly = Poly;  // polynomial in R

// Reduced fraction of polynomials (denominator monic, gcd cleared); the
// coefficient field for exactness computations.
struct RatFunc {
    Poly num, den;

    RatFunc();
    explicit RatFunc(const Poly& p);
    RatFunc(const Poly& n, const Poly& d);

    void normalize();
    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.degree() == 0; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

// ---------------------------------------------------------------------------
// Weight-vector level: formal combinations of the standard basis vectors of
// the induced representation, indexed by even weight vectors, with
// coefficients polynomial in s.  The lowering operator on axis i sends
// weight j to j - 2 with coefficient (s - j/2); raising sends j to j + 2
// with coefficient (s + j/2).
// ---------------------------------------------------------------------------

struct PsElement {
    int d = 0;
    std::map<std::vector<int>, SPoly> terms;
};

PsElement ps_basis(const std::vector<int>& J);
PsElement ps_add(const PsElement& a, const PsElement& b);
PsElement ps_scale(const PsElement& a, const SPoly& f);
PsElement ps_lower(const PsElement& a, int axis);
PsElement ps_raise(const PsElement& a, int axis);

// Specialization at s = 1.  Basis vectors with nonzero weight map to the
// corresponding series value; a landing on the zero weight vector is only
// defined when its coefficient vanishes at s = 1, in which case the first
// derivative couples to the residue symbol R (coefficient / (s-1) at s = 1,
// times R).  A nonvanishing constant-coefficient landing throws
// NonVanishingConstantCoefficient.
struct EisValue {
    int d = 0;
    std::map<std::vector<int>, RPoly> terms;  // zero key = the constant function
};

EisValue eis_act(const PsElement& a);

// ---------------------------------------------------------------------------
// The finite-dimensional complex.  A basis key is a weight vector J with
// entries in {-2, 0, 2} together with a set eps of axes disjoint from the
// support of J; it stands for the form  E_J eta_J ^ w'_eps, where eta_J
// wedges the weight-(+/-2) one-forms over supp(J) in increasing axis order
// and w'_i = eta_{2,i} ^ eta_{-2,i}.  Form degree is |supp J| + 2 |eps|.
// ---------------------------------------------------------------------------

struct GkKey {
    std::vector<int> J;
    std::vector<int> eps;  // strictly increasing, 0-based axes

    bool operator<(const GkKey& o) const {
        if (J != o.J) return J < o.J;
        return eps < o.eps;
    }
    bool operator==(const GkKey& o) const { return J == o.J && eps == o.eps; }
};

void validate_key(const GkKey& k, int d);  // InvalidKey on malformed input
int form_degree(const GkKey& k);

struct GkElement {
    int d = 0;
    std::map<GkKey, RPoly> terms;

    bool is_zero() const { return terms.empty(); }
};

GkElement gk_zero(int d);
GkElement gk_basis(const GkKey& k);
GkElement gk_add(const GkElement& a, const GkElement& b);
GkElement gk_sub(const GkElement& a, const GkElement& b);
GkElement gk_scale(const GkElement& a, const RPoly& f);
bool gk_equal(const GkElement& a, const GkElement& b);

// all basis keys in degree d (every weight pattern with every disjoint eps)
std::vector<GkKey> enumerate_keys(int d);

// The exterior derivative, derived from the weight-raising/lowering action
// specialized at s = 1: free axes (weight 0, not in eps) contribute both
// neighbors with sign given by the number of support axes below the
// insertion point; a single-support key in addition produces the residue
// term  -(j_i/2) R  on the key (0, eps + {i}).  Keys with J = 0 represent
// constant multiples of w'_eps and are closed.
GkElement differential(const GkElement& a);

// partial conjugation on axis i and global conjugation
GkElement conj_c(const GkElement& a, int axis);
GkElement conj_bar(const GkElement& a);

// E'_S = E_{phi(S)} eta_{phi(S)} ^ w'_{[d] - S}, phi(S) the 0/2 indicator
GkElement eprime(int d, const std::vector<int>& S);

bool is_closed(const GkElement& a);

// Decides whether a = d(y) is solvable over the field of rational functions
// in R; when it is, returns a certified witness with polynomial entries
// after clearing the common denominator:  d(witness_num) = witness_den * a.
struct ExactnessResult {
    bool exact = false;
    GkElement witness_num;
    RPoly witness_den;
};

ExactnessResult is_exact(const GkElement& a);

std::string gk_to_string(const GkElement& a);

// Scale between the basis 2-form on an axis and the unit-normalized Chern
// form used when quoting numeric periods; display only.
inline constexpr int kOmegaNormalization = 4;

// ---------------------------------------------------------------------------
// identity drivers
// ---------------------------------------------------------------------------

struct IdentityReport {
    bool pass = false;
    long checks = 0;
    std::string detail;
};

// d of d vanishes on every basis key
IdentityReport verify_dd(int d);

// For every pair i < j:  E'_{I} - (-1)^d conj(E'_{I}) - R (w'_{[d]-i} - w'_{[d]-j})
// is exact, with certified witness.  (I = {i, j}.)
IdentityReport verify_defective(int d);

// For |I| > 2:  (c_i^* + 1) E'_I  equals the signed derivative of
// E_{phi(I-i)} eta_{phi(I-i)} ^ w'_{[d]-I}  when i is in I, and vanishes
// when i is not in I.
IdentityReport verify_harder(int d);

// d(E'_S) = 0 exactly when |S| != 1; a singleton gives -R w'_{[d]}.  Also
// tallies closedness over every basis key against the structural predicate.
struct ClosednessCensus {
    long keys = 0;
    long closed = 0;
    bool pass = false;
};

ClosednessCensus closedness_census(int d);

}  // namespace hmcusp
