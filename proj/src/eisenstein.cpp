#include "hmcusp/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "hmcusp/error.hpp"
#include "hmcusp/lvalues.hpp"

namespace hmcusp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double to_double(const Int& n) { return n.convert_to<double>(); }

}  // namespace

FourierExpansion fourier_holomorphic(const QuadraticField& F, long trace_bound) {
    if (!F.narrow_h1())
        throw Error(errkind::NarrowClassNumberNotOne,
                    "holomorphic Fourier coefficients need narrow class number one");
    if (trace_bound < 1) throw Error(errkind::BadInput, "trace bound must be positive");

    FourierExpansion E;
    E.constant = -zeta_minus1_exact(F) / Rat(4);
    E.trace_bound = trace_bound;

    const FractionalIdeal dd = different_ideal(F);
    for (const FieldElement& alpha : enumerate_inverse_different(F, trace_bound)) {
        FractionalIdeal I = mul_ideal(F, principal_ideal(F, alpha), dd);
        if (!I.is_integral())
            throw Error(errkind::NotIntegral, "scaled coefficient index left the order");
        E.coeffs.emplace_back(alpha, sigma1(F, I));
    }
    return E;
}

HeckeReport hecke_checks(const QuadraticField& F, const FourierExpansion& E) {
    HeckeReport rep;
    rep.coefficients_available = static_cast<long>(E.coeffs.size());
    if (rep.coefficients_available < 20)
        throw Error(errkind::InsufficientCoefficients,
                    "need at least 20 coefficients for the multiplicative checks");

    const FractionalIdeal dd = different_ideal(F);
    // Index the coefficients by the integral ideal they belong to.  Distinct
    // alpha can generate the same ideal (unit multiples); their coefficients
    // must then agree, which is itself part of the consistency being tested.
    std::map<FractionalIdeal, Int> c;
    for (const auto& [alpha, value] : E.coeffs) {
        FractionalIdeal I = mul_ideal(F, principal_ideal(F, alpha), dd);
        auto it = c.find(I);
        if (it == c.end()) {
            c.emplace(I, value);
        } else if (it->second != value) {
            rep.all_pass = false;
        }
    }

    // Factor every indexed ideal once; remember primes and prime powers.
    std::map<FractionalIdeal, std::vector<PrimeFactor>> fac;
    for (const auto& [I, value] : c) fac.emplace(I, factor_ideal(F, I));

    for (const auto& [I, factors] : fac) {
        if (factors.size() == 1 && factors[0].exponent == 1) {
            ++rep.prime_checks;
            if (c.at(I) != Int(1) + factors[0].prime_norm) rep.all_pass = false;
        }
        if (factors.size() == 1 && factors[0].exponent >= 2) {
            // three-term recursion at the top of the prime power
            const PrimeFactor& pf = factors[0];
            FractionalIdeal P = pf.prime;
            FractionalIdeal Pk = pow_ideal(F, P, pf.exponent - 1);
            FractionalIdeal Pkm(unit_ideal());
            if (pf.exponent >= 2) Pkm = pow_ideal(F, P, pf.exponent - 2);
            auto a = c.find(P), b = c.find(Pk), d = c.find(Pkm);
            if (a != c.end() && b != c.end() && (pf.exponent == 2 || d != c.end())) {
                Int lower = (pf.exponent == 2) ? Int(1) : d->second;
                ++rep.recursion_checks;
                if (c.at(I) != a->second * b->second - pf.prime_norm * lower)
                    rep.all_pass = false;
            }
        }
    }

    // Coprime pairs (I, J) with I*J also indexed.
    std::vector<FractionalIdeal> keys;
    keys.reserve(c.size());
    for (const auto& [I, value] : c) keys.push_back(I);
    for (size_t i = 0; i < keys.size(); ++i) {
        for (size_t j = i; j < keys.size(); ++j) {
            const auto& fi = fac.at(keys[i]);
            const auto& fj = fac.at(keys[j]);
            bool coprime = true;
            for (const auto& a : fi)
                for (const auto& b : fj)
                    if (a.prime == b.prime) coprime = false;
            if (!coprime) continue;
            auto it = c.find(mul_ideal(F, keys[i], keys[j]));
            if (it == c.end()) continue;
            ++rep.multiplicative_checks;
            if (it->second != c.at(keys[i]) * c.at(keys[j])) rep.all_pass = false;
        }
    }
    return rep;
}

EvalResult eval_holomorphic(const QuadraticField& F, const FourierExpansion& E,
                            const EisPoint& z) {
    if (!(z.y1 > 0) || !(z.y2 > 0))
        throw Error(errkind::BadInput, "evaluation point must lie in the upper half planes");

    const double ymin = std::min(z.y1, z.y2);
    const double sqrtD = std::sqrt(static_cast<double>(F.disc()));
    const double D = static_cast<double>(F.disc());

    // Certified tail: trace-t block is bounded by
    //   (sqrt(D) t + 2) * (D t^2 / 4)^2 * exp(-2 pi ymin t),
    // and consecutive blocks shrink by at least ((t+1)/t)^5 exp(-2 pi ymin).
    const double T = static_cast<double>(E.trace_bound + 1);
    const double ratio = std::pow((T + 1.0) / T, 5.0) * std::exp(-kTwoPi * ymin);
    if (ratio >= 1.0) {
        std::ostringstream msg;
        msg << "tail not geometric at trace " << T << " for ymin " << ymin
            << "; raise the trace bound or move the point up";
        throw Error(errkind::NotInConvergenceRegion, msg.str());
    }
    const double first_block =
        (sqrtD * T + 2.0) * std::pow(D * T * T / 4.0, 2.0) * std::exp(-kTwoPi * ymin * T);

    EvalResult out;
    out.tail_bound = first_block / (1.0 - ratio);
    std::complex<double> acc(rat_to_double(E.constant), 0.0);
    for (const auto& [alpha, coeff] : E.coeffs) {
        const double a1 = F.embed(alpha, 0);
        const double a2 = F.embed(alpha, 1);
        const double damp = std::exp(-kTwoPi * (a1 * z.y1 + a2 * z.y2));
        const double phase = kTwoPi * (a1 * z.x1 + a2 * z.x2);
        acc += to_double(coeff) * damp * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out.value = acc;
    return out;
}

FieldElement orbit_normalize(const QuadraticField& F, const FieldElement& x) {
    if (x.is_zero()) throw Error(errkind::BadInput, "cannot normalize zero");
    FieldElement y = x;
    if (F.sign_embed(y, 0) < 0) y = -y;

    const FieldElement eps = F.fund_unit();
    const FieldElement one = fe_int(1);
    long k = static_cast<long>(
        std::floor(std::log(F.embed(y, 0)) / std::log(F.embed(eps, 0))));
    y = F.mul(y, F.unit_pow(-k));
    while (F.sign_embed(y - one, 0) < 0) y = F.mul(y, eps);
    while (F.sign_embed(y - eps, 0) >= 0) y = F.mul(y, F.unit_pow(-1));
    return y;
}

namespace {

// Representatives c of the unit orbits of nonzero lattice points, restricted
// to |second embedding| <= bound, together with the primes dividing (c).
struct CRep {
    FieldElement c;
    double c1 = 0, c2 = 0;
    std::vector<FractionalIdeal> primes;
};

std::vector<CRep> c_window(const QuadraticField& F, double bound) {
    const FieldElement eps = F.fund_unit();
    const FieldElement one = fe_int(1);
    const double eps1 = F.embed(eps, 0);
    const double w1 = F.embed(F.omega(), 0);
    const double w2 = F.embed(F.omega(), 1);
    const double sqrtD = std::sqrt(static_cast<double>(F.disc()));

    std::vector<CRep> reps;
    const long blo = static_cast<long>(std::floor((1.0 - bound) / sqrtD)) - 2;
    const long bhi = static_cast<long>(std::ceil((eps1 + bound) / sqrtD)) + 2;
    for (long b = blo; b <= bhi; ++b) {
        const double alo = std::max(1.0 - b * w1, -bound - b * w2) - 2.0;
        const double ahi = std::min(eps1 - b * w1, bound - b * w2) + 2.0;
        for (long a = static_cast<long>(std::floor(alo));
             a <= static_cast<long>(std::ceil(ahi)); ++a) {
            if (a == 0 && b == 0) continue;
            FieldElement c = fe_int(a, b);
            if (F.sign_embed(c - one, 0) < 0) continue;    // sigma1 >= 1, exactly
            if (F.sign_embed(c - eps, 0) >= 0) continue;   // sigma1 < eps1, exactly
            if (std::fabs(F.embed(c, 1)) > bound) continue;
            CRep r;
            r.c = c;
            r.c1 = F.embed(c, 0);
            r.c2 = F.embed(c, 1);
            for (const auto& pf : factor_ideal(F, principal_ideal(F, c)))
                r.primes.push_back(pf.prime);
            reps.push_back(std::move(r));
        }
    }
    return reps;
}

bool coprime_to_all(const QuadraticField& F, const std::vector<FractionalIdeal>& primes,
                    const FieldElement& d) {
    for (const auto& P : primes)
        if (ideal_contains(F, P, d)) return false;
    return true;
}

void check_eis_domain(const QuadraticField& F, double y1, double y2, double s) {
    if (F.class_number() != 1)
        throw Error(errkind::ClassNumberNotOne,
                    "single-cusp lattice sum needs class number one");
    if (!(y1 > 0) || !(y2 > 0))
        throw Error(errkind::BadInput, "evaluation point must lie in the upper half planes");
    if (!(s > 1))
        throw Error(errkind::NotInConvergenceRegion, "lattice sum requires s > 1");
}

}  // namespace

std::vector<OrbitRep> enumerate_primitive_orbit_reps(const QuadraticField& F,
                                                     const EisPoint& z, double bound) {
    check_eis_domain(F, z.y1, z.y2, 2.0);
    if (!(bound >= 2)) throw Error(errkind::BadInput, "enumeration bound too small");

    std::vector<OrbitRep> out;
    out.push_back({fe_int(0), fe_int(1)});

    const double w1 = F.embed(F.omega(), 0);
    const double w2 = F.embed(F.omega(), 1);
    const double sqrtD = std::sqrt(static_cast<double>(F.disc()));

    for (const CRep& r : c_window(F, bound)) {
        // box |d_i + c_i x_i| <= bound in both embeddings
        const double lo1 = -bound - r.c1 * z.x1, hi1 = bound - r.c1 * z.x1;
        const double lo2 = -bound - r.c2 * z.x2, hi2 = bound - r.c2 * z.x2;
        const long blo = static_cast<long>(std::floor((lo1 - hi2) / sqrtD)) - 1;
        const long bhi = static_cast<long>(std::ceil((hi1 - lo2) / sqrtD)) + 1;
        for (long b = blo; b <= bhi; ++b) {
            const double alo = std::max(lo1 - b * w1, lo2 - b * w2) - 1.0;
            const double ahi = std::min(hi1 - b * w1, hi2 - b * w2) + 1.0;
            for (long a = static_cast<long>(std::floor(alo));
                 a <= static_cast<long>(std::ceil(ahi)); ++a) {
                FieldElement d = fe_int(a, b);
                const double d1 = F.embed(d, 0), d2 = F.embed(d, 1);
                if (std::fabs(d1 + r.c1 * z.x1) > bound) continue;
                if (std::fabs(d2 + r.c2 * z.x2) > bound) continue;
                if (!coprime_to_all(F, r.primes, d)) continue;
                out.push_back({r.c, d});
            }
        }
    }
    return out;
}

double lattice_eis_partial(const QuadraticField& F, const EisPoint& z, double s,
                           double bound) {
    check_eis_domain(F, z.y1, z.y2, s);
    const double ny_s = std::pow(z.y1 * z.y2, s);
    double acc = 0;
    for (const OrbitRep& rep : enumerate_primitive_orbit_reps(F, z, bound)) {
        const double c1 = F.embed(rep.c, 0), c2 = F.embed(rep.c, 1);
        const double d1 = F.embed(rep.d, 0), d2 = F.embed(rep.d, 1);
        const double n1 = (c1 * z.x1 + d1) * (c1 * z.x1 + d1) + c1 * c1 * z.y1 * z.y1;
        const double n2 = (c2 * z.x2 + d2) * (c2 * z.x2 + d2) + c2 * c2 * z.y2 * z.y2;
        acc += std::pow(n1 * n2, -s);
    }
    return ny_s * acc;
}

ConstantTermReport constant_term_numeric(const QuadraticField& F, double y1, double y2,
                                         double s, double bound, int quadrature) {
    check_eis_domain(F, y1, y2, s);
    if (quadrature < 2) throw Error(errkind::BadInput, "quadrature order too small");
    if (!(bound >= 2)) throw Error(errkind::BadInput, "enumeration bound too small");

    const int Q = quadrature;
    const double w1 = F.embed(F.omega(), 0);
    const double w2 = F.embed(F.omega(), 1);
    const double sqrtD = std::sqrt(static_cast<double>(F.disc()));

    // midpoint grid x = u * 1 + v * omega, u, v in (0, 1)
    std::vector<double> xs1(Q * Q), xs2(Q * Q);
    for (int i = 0; i < Q; ++i)
        for (int j = 0; j < Q; ++j) {
            const double u = (i + 0.5) / Q, v = (j + 0.5) / Q;
            xs1[i * Q + j] = u + v * w1;
            xs2[i * Q + j] = u + v * w2;
        }
    const double xmax1 = 1.0 + std::fabs(w1);
    const double xmax2 = 1.0 + std::fabs(w2);

    std::vector<double> partial(Q * Q, 1.0);  // the (0, 1) orbit contributes exactly 1
    for (const CRep& r : c_window(F, bound)) {
        // one d-box covering every grid point at once
        const double hi1 = bound + std::fabs(r.c1) * xmax1;
        const double hi2 = bound + std::fabs(r.c2) * xmax2;
        const long blo = static_cast<long>(std::floor((-hi1 - hi2) / sqrtD)) - 1;
        const long bhi = static_cast<long>(std::ceil((hi1 + hi2) / sqrtD)) + 1;
        for (long b = blo; b <= bhi; ++b) {
            const double alo = std::max(-hi1 - b * w1, -hi2 - b * w2) - 1.0;
            const double ahi = std::min(hi1 - b * w1, hi2 - b * w2) + 1.0;
            for (long a = static_cast<long>(std::floor(alo));
                 a <= static_cast<long>(std::ceil(ahi)); ++a) {
                FieldElement d = fe_int(a, b);
                const double d1 = F.embed(d, 0), d2 = F.embed(d, 1);
                if (std::fabs(d1) > hi1 || std::fabs(d2) > hi2) continue;
                if (!coprime_to_all(F, r.primes, d)) continue;
                for (int k = 0; k < Q * Q; ++k) {
                    const double t1 = r.c1 * xs1[k] + d1;
                    const double t2 = r.c2 * xs2[k] + d2;
                    if (std::fabs(t1) > bound || std::fabs(t2) > bound) continue;
                    const double n1 = t1 * t1 + r.c1 * r.c1 * y1 * y1;
                    const double n2 = t2 * t2 + r.c2 * r.c2 * y2 * y2;
                    partial[k] += std::pow(n1 * n2, -s);
                }
            }
        }
    }

    const double ny = y1 * y2;
    double mean = 0;
    for (double v : partial) mean += v;
    mean = std::pow(ny, s) * mean / (Q * Q);

    ConstantTermReport rep;
    rep.measured = mean;
    rep.leading = std::pow(ny, s);
    const double ratio = completed_xi(F, 2 * s - 1) / completed_xi(F, 2 * s);
    rep.reflected = ratio * std::pow(ny, 1 - s);
    rep.predicted = rep.leading + rep.reflected;
    rep.abs_err = std::fabs(rep.measured - rep.predicted);
    return rep;
}

}  // namespace hmcusp
