#include "hmcusp/field.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "hmcusp/error.hpp"
#include "hmcusp/ideal.hpp"

namespace hmcusp {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    if (x.b.numerator() == 0) return os << rat_to_string(x.a);
    if (x.a.numerator() != 0) {
        os << rat_to_string(x.a);
        os << (x.b > Rat(0) ? " + " : " - ");
        Rat babs = x.b > Rat(0) ? x.b : -x.b;
        if (babs != Rat(1)) os << rat_to_string(babs) << "*";
        return os << "w";
    }
    if (x.b == Rat(-1)) return os << "-w";
    if (x.b == Rat(1)) return os << "w";
    return os << rat_to_string(x.b) << "*w";
}

bool QuadraticField::is_fundamental(long disc) {
    try {
        validate(disc);
    } catch (const Error&) {
        return false;
    }
    return true;
}

static bool squarefree(long n) {
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

void QuadraticField::validate(long disc) {
    if (disc <= 0)
        throw Error(errkind::NotRealQuadratic,
                    "discriminant must be positive, got " + std::to_string(disc));
    long m4 = disc % 4;
    if (disc == 1 || m4 == 2 || m4 == 3)
        throw Error(errkind::NonFundamentalDiscriminant,
                    std::to_string(disc) + " is not a fundamental discriminant");
    if (m4 == 1) {
        if (!squarefree(disc))
            throw Error(errkind::NonFundamentalDiscriminant,
                        std::to_string(disc) + " is not squarefree");
    } else {
        long m = disc / 4;
        if (!squarefree(m) || m % 4 == 1 || m % 4 == 0)
            throw Error(errkind::NonFundamentalDiscriminant,
                        std::to_string(disc) + "/4 must be squarefree and 2 or 3 mod 4");
    }
}

QuadraticField::QuadraticField(long disc) : disc_(disc), par_(static_cast<int>(disc % 2)) {
    validate(disc);
    find_fundamental_unit();
    compute_class_number();
}

Rat QuadraticField::trace(const FieldElement& x) const {
    return x.a * Rat(2) + x.b * Rat(par_);
}

Rat QuadraticField::norm(const FieldElement& x) const {
    // N(a + b*w) = a^2 + a*b*tr(w) + b^2*N(w), tr(w) = par, N(w) = (par^2 - D)/4
    Rat nw(Int(par_ * par_ - disc_), Int(4));
    return x.a * x.a + x.a * x.b * Rat(par_) + x.b * x.b * nw;
}

FieldElement QuadraticField::conj(const FieldElement& x) const {
    // conj(w) = par - w
    return {x.a + x.b * Rat(par_), -x.b};
}

FieldElement QuadraticField::mul(const FieldElement& x, const FieldElement& y) const {
    // w^2 = par*w + (D - par^2)/4
    Rat w2c(Int(disc_ - par_ * par_), Int(4));
    return {x.a * y.a + x.b * y.b * w2c,
            x.a * y.b + x.b * y.a + x.b * y.b * Rat(par_)};
}

FieldElement QuadraticField::inv(const FieldElement& x) const {
    Rat n = norm(x);
    if (n.numerator() == 0)
        throw Error(errkind::BadInput, "division by zero field element");
    FieldElement c = conj(x);
    return {c.a / n, c.b / n};
}

FieldElement QuadraticField::unit_pow(long k) const {
    FieldElement base = fund_unit_;
    if (k < 0) {
        // eps^-1 = N(eps) * conj(eps)
        base = conj(fund_unit_);
        if (unit_norm_ == -1) base = -base;
        k = -k;
    }
    FieldElement result = fe_int(1);
    FieldElement sq = base;
    while (k > 0) {
        if (k & 1) result = mul(result, sq);
        sq = mul(sq, sq);
        k >>= 1;
    }
    return result;
}

FieldElement QuadraticField::tp_generator() const { return unit_pow(2); }

bool QuadraticField::is_integral(const FieldElement& x) const {
    return x.a.denominator() == 1 && x.b.denominator() == 1;
}

bool QuadraticField::is_unit(const FieldElement& x) const {
    if (!is_integral(x)) return false;
    Rat n = norm(x);
    return n == Rat(1) || n == Rat(-1);
}

void QuadraticField::sqrt_coords(const FieldElement& x, Rat& c, Rat& e) const {
    c = x.a + x.b * Rat(Int(par_), Int(2));
    e = x.b / Rat(2);
}

double QuadraticField::embed(const FieldElement& x, int which) const {
    double root = std::sqrt(static_cast<double>(disc_));
    double w = (par_ + (which == 0 ? root : -root)) / 2.0;
    return rat_to_double(x.a) + rat_to_double(x.b) * w;
}

int QuadraticField::sign_embed(const FieldElement& x, int which) const {
    Rat c, e;
    sqrt_coords(x, c, e);
    if (which == 1) e = -e;
    int sc = c.numerator() == 0 ? 0 : (c > Rat(0) ? 1 : -1);
    int se = e.numerator() == 0 ? 0 : (e > Rat(0) ? 1 : -1);
    if (se == 0) return sc;
    if (sc == 0) return se;
    if (sc == se) return sc;
    // opposite signs: compare c^2 against e^2 * D
    Rat c2 = c * c, e2d = e * e * Rat(disc_);
    if (c2 == e2d) return 0;  // cannot happen for irrational sqrt(D), kept for safety
    return c2 > e2d ? sc : se;
}

bool QuadraticField::totally_positive(const FieldElement& x) const {
    return sign_embed(x, 0) > 0 && sign_embed(x, 1) > 0;
}

int QuadraticField::cross_sign(const FieldElement& x, const FieldElement& y) const {
    // (c_x + e_x r)(c_y - e_y r) - (c_x - e_x r)(c_y + e_y r) = 2r(e_x c_y - c_x e_y)
    Rat cx, ex, cy, ey;
    sqrt_coords(x, cx, ex);
    sqrt_coords(y, cy, ey);
    Rat t = ex * cy - cx * ey;
    if (t.numerator() == 0) return 0;
    return t > Rat(0) ? 1 : -1;
}

Int QuadraticField::floor_embed1(const FieldElement& x) const {
    Int k(static_cast<long long>(std::floor(embed(x, 0))));
    // fix up the floating point estimate exactly
    while (sign_embed(x - FieldElement{Rat(k), Rat(0)}, 0) < 0) --k;
    while (sign_embed(x - FieldElement{Rat(k + 1), Rat(0)}, 0) >= 0) ++k;
    return k;
}

Int QuadraticField::ceil_embed1(const FieldElement& x) const {
    return -floor_embed1(-x);
}

void QuadraticField::find_fundamental_unit() {
    // Continued fraction of the reduced surd alpha = omega + m,
    // chosen so alpha > 1 and conj(alpha) in (-1, 0). One period of the
    // expansion yields the fundamental automorphism, i.e. the fundamental unit.
    Int s = boost::multiprecision::sqrt(Int(disc_));  // floor(sqrt(D))
    Int m = (s - par_) / 2;
    Int P0 = par_ + 2 * m, Q0 = 2;

    Int P = P0, Q = Q0;
    // convergent matrix [[p1, p0], [q1, q0]]
    Int p1 = 1, p0 = 0, q1 = 0, q0 = 1;
    int period = 0;
    do {
        Int a = (P + s) / Q;
        Int Pn = a * Q - P;
        Int Qn = (Int(disc_) - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
        Int np1 = a * p1 + p0, nq1 = a * q1 + q0;
        p0 = p1; p1 = np1;
        q0 = q1; q1 = nq1;
        ++period;
        if (period > 10000000)
            throw Error(errkind::AccuracyNotReached, "continued fraction period too long");
    } while (!(P == P0 && Q == Q0));

    // fixed point: eps = q1 * alpha + q0 with alpha = m + omega
    fund_unit_ = FieldElement{Rat(q1 * m + q0), Rat(q1)};
    unit_norm_ = (period % 2 == 0) ? 1 : -1;

    Rat n = norm(fund_unit_);
    if (!((n == Rat(1) && unit_norm_ == 1) || (n == Rat(-1) && unit_norm_ == -1)) ||
        sign_embed(fund_unit_ - fe_int(1), 0) <= 0)
        throw Error(errkind::AccuracyNotReached, "fundamental unit search failed internal check");

    BigFloat root = sqrt(BigFloat(disc_));
    BigFloat w1 = (BigFloat(par_) + root) / 2;
    BigFloat v = BigFloat(fund_unit_.a.numerator()) / BigFloat(fund_unit_.a.denominator()) +
                 BigFloat(fund_unit_.b.numerator()) / BigFloat(fund_unit_.b.denominator()) * w1;
    regulator_ = static_cast<double>(log(v));
}

namespace {
struct Form {  // indefinite binary quadratic form a*x^2 + b*xy + c*y^2
    long a, b, c;
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};
}  // namespace

void QuadraticField::compute_class_number() {
    // SL2(Z)-classes of primitive forms of discriminant D form the narrow
    // class group; count them as cycles of reduced forms under the Gauss
    // reduction operator. Avoids any dependence on the size of the unit.
    long D = disc_;
    long s = static_cast<long>(std::sqrt(static_cast<double>(D)));
    while (s * s > D) --s;
    while ((s + 1) * (s + 1) <= D) ++s;  // s = floor(sqrt(D)), D not a square

    std::set<Form> reduced;
    for (long b = (D % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        long ac4 = b * b - D;  // = 4ac < 0
        long acm = -ac4 / 4;
        for (long a = 1; a <= acm; ++a) {
            if (acm % a != 0) continue;
            // reduced iff sqrt(D) - b < 2|a| < sqrt(D) + b; exact integer tests
            long t = 2 * a;
            bool lo = (t - b <= 0) || (t - b) * (t - b) < D;
            bool hi = (t + b) * (t + b) > D;
            long c = -acm / a;
            if (lo && hi) {
                reduced.insert({a, b, c});
                reduced.insert({-a, b, -c});
            }
        }
    }

    auto rho = [&](const Form& f) -> Form {
        long m = 2 * std::abs(f.c);
        long r = s - ((s + f.b) % m + m) % m;  // r ≡ -b (mod m), maximal with r <= s
        long c2 = (r * r - D) / (4 * f.c);
        return {f.c, r, c2};
    };

    long cycles = 0;
    std::set<Form> seen;
    for (const auto& f0 : reduced) {
        if (seen.count(f0)) continue;
        ++cycles;
        Form f = f0;
        do {
            seen.insert(f);
            f = rho(f);
        } while (!(f.a == f0.a && f.b == f0.b && f.c == f0.c));
    }

    narrow_class_number_ = cycles;
    if (unit_norm_ == -1) {
        class_number_ = cycles;
    } else {
        if (cycles % 2 != 0)
            throw Error(errkind::AccuracyNotReached, "form cycle count parity check failed");
        class_number_ = cycles / 2;
    }
}

int kronecker(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // strip factors of two from n with the (a|2) rule; this needs the true
    // residue of a modulo 8, so no reduction of a may happen before this point
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) result = -result;
    }
    if (n == 1) return result;
    if (a < 0) {
        a = -a;
        if (n % 4 == 3) result = -result;  // (-1 | n) for odd n
    }
    a %= n;
    // Jacobi symbol by quadratic reciprocity
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace hmcusp
