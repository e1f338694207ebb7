#pragma once

#include <iosfwd>
#include <vector>

#include "hmcusp/field.hpp"

namespace hmcusp {

// Fractional ideal in two-element Hermite normal form:
//   I = ( Z*p + Z*(q + r*omega) ) / den
// with r > 0, r | p, r | q, 0 <= q < p, den > 0, gcd of all four reduced out.
// Norm is p*r/den^2.
struct FractionalIdeal {
    Int den{1};
    Int p{1};
    Int q{0};
    Int r{1};

    bool operator==(const FractionalIdeal& o) const {
        return den == o.den && p == o.p && q == o.q && r == o.r;
    }
    bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }
    bool operator<(const FractionalIdeal& o) const {  // for ordered containers
        if (den != o.den) return den < o.den;
        if (p != o.p) return p < o.p;
        if (q != o.q) return q < o.q;
        return r < o.r;
    }

    bool is_integral() const { return den == 1; }
    Rat norm() const { return Rat(p * r, den * den); }
};

std::ostream& operator<<(std::ostream& os, const FractionalIdeal& I);

struct PrimeFactor {
    FractionalIdeal prime;
    long residue_char = 0;   // rational prime below
    Int prime_norm;          // p or p^2
    int exponent = 0;
};

FractionalIdeal unit_ideal();

// HNF span of a finite set of field elements (must be an O-module generating
// set, e.g. closed under multiplication by omega up to Z-span); throws
// ZeroIdeal if all generators vanish.
FractionalIdeal ideal_from_generators(const QuadraticField& F,
                                      const std::vector<FieldElement>& gens);

// principal ideal (x)
FractionalIdeal principal_ideal(const QuadraticField& F, const FieldElement& x);

// validated HNF input: checks the invariants and O-module stability
FractionalIdeal ideal_from_hnf(const QuadraticField& F, const Int& den, const Int& p,
                               const Int& q, const Int& r);

FractionalIdeal mul_ideal(const QuadraticField& F, const FractionalIdeal& I,
                          const FractionalIdeal& J);
FractionalIdeal conj_ideal(const QuadraticField& F, const FractionalIdeal& I);
FractionalIdeal inv_ideal(const QuadraticField& F, const FractionalIdeal& I);
FractionalIdeal pow_ideal(const QuadraticField& F, const FractionalIdeal& I, long k);

bool ideal_contains(const QuadraticField& F, const FractionalIdeal& I,
                    const FieldElement& x);
// J | I in the integral sense, i.e. I is contained in J
bool ideal_divides(const QuadraticField& F, const FractionalIdeal& J,
                   const FractionalIdeal& I);

// generator search over a bounded box; writes the generator through the
// pointer when one is found, throws AccuracyNotReached if the box is too big
bool is_principal(const QuadraticField& F, const FractionalIdeal& I,
                  FieldElement* generator = nullptr);

// prime ideal(s) above a rational prime; one entry if inert or ramified,
// the two conjugate primes if split
std::vector<FractionalIdeal> primes_above(const QuadraticField& F, long p);

// factorization of a nonzero integral ideal into prime powers, sorted by
// (residue characteristic, HNF); product of the powers is verified to
// reproduce the input
std::vector<PrimeFactor> factor_ideal(const QuadraticField& F, const FractionalIdeal& I);

// sum of norms of integral ideal divisors, via the prime factorization
Int sigma1(const QuadraticField& F, const FractionalIdeal& I);

// the different (sqrt(D)) and its inverse
FractionalIdeal different_ideal(const QuadraticField& F);
FractionalIdeal inverse_different(const QuadraticField& F);

// Totally positive elements of the inverse different with trace <= bound,
// sorted by (trace, b, a). Trace of such an element is always an integer.
std::vector<FieldElement> enumerate_inverse_different(const QuadraticField& F,
                                                      long trace_bound);

}  // namespace hmcusp
