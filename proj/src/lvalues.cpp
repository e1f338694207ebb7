#include "hmcusp/lvalues.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "hmcusp/error.hpp"

namespace hmcusp {

Rat zeta_minus1_exact(const QuadraticField& F) {
    long D = F.disc();
    Int total = 0;
    for (long b = (D % 2 == 0) ? 0 : 1; b * b < D; b += 2) {
        long n = (D - b * b) / 4;
        // sigma_1(n) over ordinary integers
        Int s = 0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            s += d;
            if (d != n / d) s += n / d;
        }
        total += (b == 0) ? s : 2 * s;
    }
    return Rat(total, Int(60));
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_50;

// Euler-Maclaurin evaluation of sum_{k>=0} (a+k)^{-s}, continued to s > 0.
// The truncation error is bounded by the first omitted correction term.
// With fp_at_one set, an argument at s = 1 yields the finite part (the limit
// with the 1/(s-1) pole removed, i.e. -digamma(a)); the pole terms of the
// partial-fraction pieces of a character L-function cancel, so summing finite
// parts gives the L-value at 1.
template <class Real>
Real hurwitz_zeta_em(Real s, const Real& a, double rel_tol, bool fp_at_one = false) {
    using std::abs;
    using std::log;
    using std::pow;
    bool at_pole = abs(s - 1) < 1e-12;
    if (at_pole && !fp_at_one)
        throw Error(errkind::PoleAtOne, "zeta evaluation at the pole s = 1");
    if (at_pole) s = 1;
    if (s <= 0)
        throw Error(errkind::BadInput, "zeta evaluation requires s > 0");

    const int M = 9;  // correction terms use B_2 .. B_18
    long N = 24;
    for (;;) {
        Real base = a + N;
        // first omitted term: B_{2M+2}/(2M+2)! * s(s+1)...(s+2M) * base^{-s-2M-1}
        Real poch = 1;
        for (int i = 0; i <= 2 * M; ++i) poch *= (s + i);
        Real fact = 1;
        for (int i = 2; i <= 2 * M + 2; ++i) fact *= i;
        Real bound = abs(boost::math::bernoulli_b2n<Real>(M + 1) / fact * poch) *
                     pow(base, -s - (2 * M + 1));
        if (bound < rel_tol || N >= (1L << 22)) {
            if (N >= (1L << 22) && bound >= rel_tol)
                throw Error(errkind::AccuracyNotReached,
                            "Euler-Maclaurin truncation did not reach tolerance");
            break;
        }
        N *= 2;
    }

    Real sum = 0;
    for (long k = N - 1; k >= 0; --k) sum += pow(a + k, -s);
    Real base = a + N;
    sum += at_pole ? -log(base) : pow(base, 1 - s) / (s - 1);
    sum += pow(base, -s) / 2;

    Real poch = s;                       // s(s+1)...(s+2j-2), starts at j=1
    Real fact = 2;                       // (2j)!
    Real bpow = pow(base, -s - 1);       // base^{-s-2j+1}
    Real inv2 = Real(1) / (base * base);
    for (int j = 1; j <= M; ++j) {
        sum += boost::math::bernoulli_b2n<Real>(j) / fact * poch * bpow;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
        bpow *= inv2;
    }
    return sum;
}

template <class Real>
Real riemann_zeta_t(const Real& s, double rel_tol) {
    return hurwitz_zeta_em<Real>(s, Real(1), rel_tol);
}

template <class Real>
Real dirichlet_l_t(const QuadraticField& F, const Real& s, double rel_tol) {
    long D = F.disc();
    // L(s) = D^{-s} sum_{r=1}^{D-1} chi(r) zeta(s, r/D); the character sums to
    // zero over a period, so the pole terms cancel and the result is analytic.
    Real acc = 0;
    for (long r = 1; r < D; ++r) {
        int chi = kronecker(D, r);
        if (chi == 0) continue;
        Real h = hurwitz_zeta_em<Real>(s, Real(r) / Real(static_cast<int>(D)), rel_tol,
                                       /*fp_at_one=*/true);
        acc += chi > 0 ? h : -h;
    }
    using std::pow;
    return acc * pow(Real(static_cast<int>(D)), -s);
}

template <class Real>
Real dedekind_zeta_t(const QuadraticField& F, const Real& s, double rel_tol) {
    return riemann_zeta_t<Real>(s, rel_tol) * dirichlet_l_t<Real>(F, s, rel_tol);
}

template <class Real>
Real completed_xi_t(const QuadraticField& F, const Real& s, double rel_tol) {
    using std::pow;
    const Real pi = boost::math::constants::pi<Real>();
    Real gam = boost::math::tgamma(s / 2);
    Real arch = pow(pi, -s / 2) * gam;
    return pow(Real(static_cast<int>(F.disc())), s / 2) * arch * arch *
           dedekind_zeta_t<Real>(F, s, rel_tol);
}

}  // namespace

double riemann_zeta(double s, const NumericOptions& opts) {
    if (opts.high_precision)
        return static_cast<double>(riemann_zeta_t<Quad>(Quad(s), opts.rel_tol));
    return riemann_zeta_t<double>(s, opts.rel_tol);
}

double dirichlet_l(const QuadraticField& F, double s, const NumericOptions& opts) {
    if (opts.high_precision)
        return static_cast<double>(dirichlet_l_t<Quad>(F, Quad(s), opts.rel_tol));
    return dirichlet_l_t<double>(F, s, opts.rel_tol);
}

double dedekind_zeta(const QuadraticField& F, double s, const NumericOptions& opts) {
    if (opts.high_precision)
        return static_cast<double>(dedekind_zeta_t<Quad>(F, Quad(s), opts.rel_tol));
    return dedekind_zeta_t<double>(F, s, opts.rel_tol);
}

double completed_xi(const QuadraticField& F, double s, const NumericOptions& opts) {
    if (opts.high_precision)
        return static_cast<double>(completed_xi_t<Quad>(F, Quad(s), opts.rel_tol));
    return completed_xi_t<double>(F, s, opts.rel_tol);
}

double completed_xi_at_minus1(const QuadraticField& F) {
    const double pi = boost::math::constants::pi<double>();
    return 4 * pi * pi / std::sqrt(static_cast<double>(F.disc())) *
           rat_to_double(zeta_minus1_exact(F));
}

double volume_interior(const QuadraticField& F) {
    const double pi = boost::math::constants::pi<double>();
    return 2 * std::abs(rat_to_double(zeta_minus1_exact(F))) * (2 * pi) * (2 * pi);
}

double volume_boundary(const QuadraticField& F) {
    // covolume of (1, omega) under the embeddings, via the Gram determinant
    double w1 = F.embed(F.omega(), 0), w2 = F.embed(F.omega(), 1);
    double g11 = 2, g12 = w1 + w2, g22 = w1 * w1 + w2 * w2;
    double covol = std::sqrt(g11 * g22 - g12 * g12);
    // flow period: log of the square-unit generator in the first embedding
    Quad u1 = 0;
    {
        FieldElement t = F.tp_generator();
        double da = rat_to_double(t.a), db = rat_to_double(t.b);
        if (!std::isfinite(da) || !std::isfinite(db))
            throw Error(errkind::AccuracyNotReached,
                        "unit too large for direct volume evaluation");
        Quad c = Quad(da) + Quad(db) *
                     (Quad(F.par()) + sqrt(Quad(static_cast<int>(F.disc())))) / 2;
        u1 = log(c);
    }
    long h = F.class_number();
    double direct = h * covol * static_cast<double>(u1);
    double closed = h * 2.0 * F.regulator() * std::sqrt(static_cast<double>(F.disc()));
    if (std::abs(direct - closed) > 1e-9 * std::abs(closed))
        throw Error(errkind::NormalizationMismatch,
                    "boundary volume: direct and closed forms disagree");
    return direct;
}

ResidueIdentityReport verify_residue_identity(const QuadraticField& F, double tol) {
    ResidueIdentityReport rep;
    rep.lhs = F.class_number() * F.regulator() / completed_xi(F, 2.0);
    rep.rhs = volume_boundary(F) / volume_interior(F);
    rep.abs_err = std::abs(rep.lhs - rep.rhs);
    rep.pass = rep.abs_err <= tol * std::max(1.0, std::abs(rep.rhs));
    return rep;
}

}  // namespace hmcusp
