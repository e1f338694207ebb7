#include "hmcusp/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hmcusp/error.hpp"

namespace hmcusp {

std::ostream& operator<<(std::ostream& os, const FractionalIdeal& I) {
    os << "(" << I.p << ", " << I.q << " + " << I.r << "*w)";
    if (I.den != 1) os << "/" << I.den;
    return os;
}

FractionalIdeal unit_ideal() { return FractionalIdeal{1, 1, 0, 1}; }

namespace {

// Hermite form of the Z-span of integer pairs (u, v) <-> u + v*omega.
// The span must have full rank 2.
FractionalIdeal hnf_of_pairs(std::vector<std::pair<Int, Int>> rows, const Int& den) {
    // stage 1: gcd of all omega-coordinates, with a witness row achieving it
    Int wu = 0, wv = 0;
    for (auto& [u, v] : rows) {
        if (v == 0) continue;
        if (wv == 0) {
            wu = u;
            wv = v;
        } else {
            Int x, y;
            Int g = int_ext_gcd(wv, v, x, y);
            wu = x * wu + y * u;
            wv = g;
        }
    }
    if (wv == 0) throw Error(errkind::ZeroIdeal, "generators span a rank < 2 lattice");
    if (wv < 0) { wv = -wv; wu = -wu; }

    // stage 2: clear omega-coordinates, gcd of what is left on the rational axis
    Int p = 0;
    for (auto& [u, v] : rows) {
        Int u2 = u - (v / wv) * wu;  // v is always a multiple of wv here
        p = int_gcd(p, u2);
    }
    if (p == 0) throw Error(errkind::ZeroIdeal, "generators span a rank < 2 lattice");

    FractionalIdeal I;
    I.den = den;
    I.p = p;
    I.r = wv;
    I.q = int_mod(wu, p);
    // reduce by the overall content
    Int g = int_gcd(int_gcd(I.p, I.q), int_gcd(I.r, I.den));
    I.den /= g;
    I.p /= g;
    I.q /= g;
    I.r /= g;
    return I;
}

void check_module(const QuadraticField& F, const FractionalIdeal& I) {
    if (I.r <= 0 || I.p <= 0 || I.den <= 0 || I.q < 0 || I.q >= I.p ||
        I.p % I.r != 0 || I.q % I.r != 0)
        throw Error(errkind::BadInput, "malformed HNF triple");
    // stability under multiplication by omega
    auto member = [&](const FieldElement& x) { return ideal_contains(F, I, x); };
    FieldElement w = F.omega();
    FieldElement g1{Rat(I.p, I.den), Rat(0)};
    FieldElement g2{Rat(I.q, I.den), Rat(I.r, I.den)};
    if (!member(F.mul(g1, w)) || !member(F.mul(g2, w)))
        throw Error(errkind::BadInput, "HNF triple is not stable under omega");
}

}  // namespace

FractionalIdeal ideal_from_generators(const QuadraticField& F,
                                      const std::vector<FieldElement>& gens) {
    // close under omega so the span is the fractional ideal generated
    std::vector<FieldElement> all;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        all.push_back(g);
        all.push_back(F.mul(g, F.omega()));
    }
    if (all.empty()) throw Error(errkind::ZeroIdeal, "all generators are zero");

    Int den = 1;
    for (const auto& g : all) {
        den = den / int_gcd(den, g.a.denominator()) * g.a.denominator();
        den = den / int_gcd(den, g.b.denominator()) * g.b.denominator();
    }
    std::vector<std::pair<Int, Int>> rows;
    rows.reserve(all.size());
    for (const auto& g : all)
        rows.emplace_back(g.a.numerator() * (den / g.a.denominator()),
                          g.b.numerator() * (den / g.b.denominator()));
    return hnf_of_pairs(std::move(rows), den);
}

FractionalIdeal principal_ideal(const QuadraticField& F, const FieldElement& x) {
    return ideal_from_generators(F, {x});
}

FractionalIdeal ideal_from_hnf(const QuadraticField& F, const Int& den, const Int& p,
                               const Int& q, const Int& r) {
    FractionalIdeal I{den, p, q, r};
    check_module(F, I);
    Int g = int_gcd(int_gcd(I.p, I.q), int_gcd(I.r, I.den));
    I.den /= g;
    I.p /= g;
    I.q /= g;
    I.r /= g;
    return I;
}

bool ideal_contains(const QuadraticField& F, const FractionalIdeal& I,
                    const FieldElement& x) {
    (void)F;
    // x in I  iff  den*x = u + v*omega with integers v = j*r, u = j*q + i*p
    Rat u = x.a * Rat(I.den), v = x.b * Rat(I.den);
    if (u.denominator() != 1 || v.denominator() != 1) return false;
    if (v.numerator() % I.r != 0) return false;
    Int j = v.numerator() / I.r;
    return (u.numerator() - j * I.q) % I.p == 0;
}

bool ideal_divides(const QuadraticField& F, const FractionalIdeal& J,
                   const FractionalIdeal& I) {
    FieldElement g1{Rat(I.p, I.den), Rat(0)};
    FieldElement g2{Rat(I.q, I.den), Rat(I.r, I.den)};
    return ideal_contains(F, J, g1) && ideal_contains(F, J, g2);
}

FractionalIdeal mul_ideal(const QuadraticField& F, const FractionalIdeal& I,
                          const FractionalIdeal& J) {
    FieldElement a1{Rat(I.p), Rat(0)}, a2{Rat(I.q), Rat(I.r)};
    FieldElement b1{Rat(J.p), Rat(0)}, b2{Rat(J.q), Rat(J.r)};
    std::vector<std::pair<Int, Int>> rows;
    for (const auto& x : {a1, a2})
        for (const auto& y : {b1, b2}) {
            FieldElement pr = F.mul(x, y);
            rows.emplace_back(pr.a.numerator(), pr.b.numerator());
        }
    return hnf_of_pairs(std::move(rows), I.den * J.den);
}

FractionalIdeal conj_ideal(const QuadraticField& F, const FractionalIdeal& I) {
    FieldElement g1{Rat(I.p, I.den), Rat(0)};
    FieldElement g2{Rat(I.q, I.den), Rat(I.r, I.den)};
    return ideal_from_generators(F, {F.conj(g1), F.conj(g2)});
}

namespace {
FractionalIdeal scale_ideal(const FractionalIdeal& I, const Rat& t) {
    FractionalIdeal K = I;
    Int n = t.numerator(), d = t.denominator();
    if (n < 0) throw Error(errkind::BadInput, "negative ideal scale");
    K.p *= n;
    K.q *= n;
    K.r *= n;
    K.den *= d;
    Int g = int_gcd(int_gcd(K.p, K.q), int_gcd(K.r, K.den));
    K.p /= g;
    K.q /= g;
    K.r /= g;
    K.den /= g;
    return K;
}
}  // namespace

FractionalIdeal inv_ideal(const QuadraticField& F, const FractionalIdeal& I) {
    // I * conj(I) = (N(I)), hence I^-1 = conj(I)/N(I)
    Rat n = I.norm();
    return scale_ideal(conj_ideal(F, I), Rat(n.denominator(), n.numerator()));
}

FractionalIdeal pow_ideal(const QuadraticField& F, const FractionalIdeal& I, long k) {
    FractionalIdeal base = k < 0 ? inv_ideal(F, I) : I;
    if (k < 0) k = -k;
    FractionalIdeal result = unit_ideal();
    while (k > 0) {
        if (k & 1) result = mul_ideal(F, result, base);
        base = mul_ideal(F, base, base);
        k >>= 1;
    }
    return result;
}

std::vector<FractionalIdeal> primes_above(const QuadraticField& F, long p) {
    if (p < 2) throw Error(errkind::BadInput, "not a prime: " + std::to_string(p));
    int chi = kronecker(F.disc(), p);
    if (chi == -1) {
        // inert: (p) with norm p^2
        return {FractionalIdeal{1, Int(p), 0, Int(p)}};
    }
    // roots of x^2 - par*x + (par^2 - D)/4 modulo p
    long par = F.par();
    long c = (par * par - static_cast<long>(F.disc())) / 4;
    std::vector<long> roots;
    for (long t = 0; t < p; ++t) {
        long v = ((t * t - par * t + c) % p + p) % p;
        if (v == 0) roots.push_back(t);
    }
    if (roots.empty())
        throw Error(errkind::BadInput, "no root found for non-inert prime (internal)");
    std::vector<FractionalIdeal> out;
    for (long t : roots) {
        FractionalIdeal P = ideal_from_generators(
            F, {fe_int(p), F.omega() - fe_int(t)});
        if (P.norm() != Rat(Int(p))) continue;  // p | index cases cannot occur for fundamental D
        out.push_back(P);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (chi == 1 && out.size() != 2)
        throw Error(errkind::BadInput, "split prime did not give two ideals (internal)");
    if (chi == 0 && out.size() != 1)
        throw Error(errkind::BadInput, "ramified prime did not give one ideal (internal)");
    return out;
}

std::vector<PrimeFactor> factor_ideal(const QuadraticField& F, const FractionalIdeal& I) {
    if (!I.is_integral())
        throw Error(errkind::NotIntegral, "factorization requires an integral ideal");
    Int N = I.p * I.r;
    if (N == 0) throw Error(errkind::ZeroIdeal, "zero ideal");

    // rational prime factorization of the norm
    std::vector<std::pair<long, int>> nfactors;
    Int rest = N;
    for (Int d = 2; d * d <= rest; ++d) {
        if (rest % d != 0) continue;
        int e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        nfactors.emplace_back(static_cast<long>(d), e);
    }
    if (rest > 1) nfactors.emplace_back(static_cast<long>(rest), 1);

    std::vector<PrimeFactor> out;
    for (auto [p, mult] : nfactors) {
        int chi = kronecker(F.disc(), p);
        for (const auto& P : primes_above(F, p)) {
            // valuation = largest k with I contained in P^k
            int e = 0;
            FractionalIdeal Pk = P;
            while (ideal_divides(F, Pk, I)) {
                ++e;
                Pk = mul_ideal(F, Pk, P);
            }
            if (e > 0) {
                PrimeFactor pf;
                pf.prime = P;
                pf.residue_char = p;
                pf.prime_norm = chi == -1 ? Int(p) * p : Int(p);
                pf.exponent = e;
                out.push_back(pf);
            }
        }
        (void)mult;
    }

    std::sort(out.begin(), out.end(), [](const PrimeFactor& x, const PrimeFactor& y) {
        if (x.residue_char != y.residue_char) return x.residue_char < y.residue_char;
        return x.prime < y.prime;
    });

    // the factorization must reproduce the ideal
    FractionalIdeal check = unit_ideal();
    for (const auto& pf : out)
        check = mul_ideal(F, check, pow_ideal(F, pf.prime, pf.exponent));
    if (!(check == I))
        throw Error(errkind::BadInput, "factorization consistency check failed (internal)");
    return out;
}

Int sigma1(const QuadraticField& F, const FractionalIdeal& I) {
    Int total = 1;
    for (const auto& pf : factor_ideal(F, I)) {
        Int geom = 0, power = 1;
        for (int i = 0; i <= pf.exponent; ++i) {
            geom += power;
            power *= pf.prime_norm;
        }
        total *= geom;
    }
    return total;
}

FractionalIdeal different_ideal(const QuadraticField& F) {
    // (sqrt(D)) with sqrt(D) = 2*omega - par
    return principal_ideal(F, fe_int(-F.par(), 2));
}

FractionalIdeal inverse_different(const QuadraticField& F) {
    return inv_ideal(F, different_ideal(F));
}

std::vector<FieldElement> enumerate_inverse_different(const QuadraticField& F,
                                                      long trace_bound) {
    // elements (m + n*omega)/sqrt(D); the trace of such an element is n
    std::vector<FieldElement> out;
    FieldElement sqrtD = fe_int(-F.par(), 2);
    FieldElement inv_sqrtD = F.inv(sqrtD);
    for (long n = 1; n <= trace_bound; ++n) {
        FieldElement nw = fe_int(0, n);
        // need sigma1(m + n*omega) > 0 and sigma2(m + n*omega) < 0
        Int m_lo = F.floor_embed1(-nw) + 1;
        Int m_hi = F.floor_embed1(F.conj(-nw));
        for (Int m = m_lo; m <= m_hi; ++m) {
            FieldElement alpha = F.mul(FieldElement{Rat(m), Rat(Int(n))}, inv_sqrtD);
            if (F.trace(alpha) != Rat(Int(n)))
                throw Error(errkind::BadInput, "trace enumeration check failed (internal)");
            out.push_back(alpha);
        }
    }
    // generation order is already (trace, b, a); keep a defensive exact sort
    std::stable_sort(out.begin(), out.end(), [&](const FieldElement& x, const FieldElement& y) {
        Rat tx = F.trace(x), ty = F.trace(y);
        if (tx != ty) return tx < ty;
        if (x.b != y.b) return x.b < y.b;
        return x.a < y.a;
    });
    return out;
}

bool is_principal(const QuadraticField& F, const FractionalIdeal& I,
                  FieldElement* generator) {
    if (!I.is_integral()) throw Error(errkind::NotIntegral, "principality test wants an integral ideal");
    Rat nr = I.norm();
    double N = rat_to_double(nr);
    double eps1 = F.embed(F.fund_unit(), 0);
    double B = std::sqrt(N * eps1) * (1 + 1e-9) + 1;
    double rootD = std::sqrt(static_cast<double>(F.disc()));
    double w1 = (F.par() + rootD) / 2.0, w2 = (F.par() - rootD) / 2.0;
    double jmax = 2 * B / (rat_to_double(Rat(I.r)) * rootD) + 2;
    if (jmax * B > 5e7)
        throw Error(errkind::AccuracyNotReached, "principality search box too large");

    double pd = rat_to_double(Rat(I.p)), qd = rat_to_double(Rat(I.q)),
           rd = rat_to_double(Rat(I.r));
    for (long j = static_cast<long>(-jmax); j <= static_cast<long>(jmax); ++j) {
        double s1 = j * (qd + rd * w1), s2 = j * (qd + rd * w2);
        double lo = std::max(-B - s1, -B - s2) / pd;
        double hi = std::min(B - s1, B - s2) / pd;
        for (long i = static_cast<long>(std::floor(lo)) - 1; i <= static_cast<long>(std::ceil(hi)) + 1; ++i) {
            if (i == 0 && j == 0) continue;
            FieldElement x{Rat(Int(i) * I.p + Int(j) * I.q), Rat(Int(j) * I.r)};
            Rat nx = F.norm(x);
            if (nx < Rat(0)) nx = -nx;
            if (nx == nr) {
                if (principal_ideal(F, x) == I) {
                    if (generator) *generator = x;
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace hmcusp
