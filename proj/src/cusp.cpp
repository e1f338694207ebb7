#include "hmcusp/cusp.hpp"

#include <cmath>
#include <string>

#include "hmcusp/error.hpp"
#include "hmcusp/smith.hpp"

namespace hmcusp {

bool is_reduced_surd(const QuadraticField& F, const FieldElement& w) {
    FieldElement one = fe_int(1);
    return F.sign_embed(w - one, 0) > 0 && F.sign_embed(w, 1) > 0 &&
           F.sign_embed(w - one, 1) < 0;
}

std::vector<long> minus_cf(const QuadraticField& F, const FieldElement& w) {
    if (!is_reduced_surd(F, w))
        throw Error(errkind::NotReduced, "expansion needs w > 1 > w' > 0");
    std::vector<long> digits;
    FieldElement cur = w;
    do {
        Int b = F.floor_embed1(cur) + 1;  // the value is irrational: ceil = floor + 1
        digits.push_back(static_cast<long>(b));
        cur = F.inv(FieldElement{Rat(b), Rat(0)} - cur);
        if (digits.size() > 1000000)
            throw Error(errkind::AccuracyNotReached, "expansion period too long");
    } while (cur != w);
    return digits;
}

namespace {

// determinant of (x, y) in the integral basis; +-1 for adjacent rays
Rat basis_det(const FieldElement& x, const FieldElement& y) {
    return x.a * y.b - x.b * y.a;
}

}  // namespace

CuspFan build_cusp_fan(const QuadraticField& F) {
    CuspFan fan;
    FieldElement w = F.omega();
    Int m0 = F.floor_embed1(-F.conj(w)) + 1;
    fan.seed = w + FieldElement{Rat(m0), Rat(0)};
    fan.primitive_cycle = minus_cf(F, fan.seed);
    fan.closure = F.tp_generator();

    // one expansion period lands on the fundamental unit if its norm is +1,
    // on the square if the norm is -1; always close up at the square
    fan.cycle = fan.primitive_cycle;
    int rounds = F.unit_norm() == 1 ? 2 : 1;
    if (rounds == 2)
        fan.cycle.insert(fan.cycle.end(), fan.primitive_cycle.begin(),
                         fan.primitive_cycle.end());

    const long n = static_cast<long>(fan.cycle.size());
    fan.rays.resize(n + 1);
    fan.rays[0] = fe_int(1);
    fan.rays[1] = fan.seed;
    for (long k = 1; k < n; ++k)
        fan.rays[k + 1] =
            fan.rays[k] * Rat(Int(fan.cycle[k % n])) - fan.rays[k - 1];

    // structural validation
    auto fail = [](const std::string& what) {
        throw Error(errkind::BadInput, "fan invariant failed (internal): " + what);
    };
    if (fan.rays[n] != fan.closure) fail("closure ray");
    FieldElement next = fan.rays[n] * Rat(Int(fan.cycle[0])) - fan.rays[n - 1];
    if (next != F.mul(fan.closure, fan.rays[1])) fail("periodicity");
    for (long k = 0; k <= n; ++k) {
        const FieldElement& A = fan.rays[k];
        if (!F.is_integral(A)) fail("integrality");
        if (!F.totally_positive(A)) fail("positivity");
        if (k < n) {
            if (basis_det(fan.rays[k], fan.rays[k + 1]) != Rat(1)) fail("adjacent determinant");
            if (F.cross_sign(fan.rays[k], fan.rays[k + 1]) != -1) fail("orientation");
            if (fan.cycle[k] < 2) fail("digit bound");
        }
    }
    return fan;
}

bool check_free_action(const QuadraticField& F, const CuspFan& fan, const FieldElement& u) {
    for (const auto& A : fan.rays)
        if (F.mul(u, A) == A) return false;
    return true;
}

ConeLocation locate_cone(const QuadraticField& F, const CuspFan& fan, const FieldElement& x) {
    if (x.is_zero() || !F.totally_positive(x))
        throw Error(errkind::BadInput, "cone location requires a totally positive input");
    const long n = static_cast<long>(fan.cycle.size());
    const FieldElement& A0 = fan.rays[0];
    const FieldElement& An = fan.rays[n];

    // initial translate estimate from logarithms, then exact fixup
    double th = std::log(F.embed(x, 0) / F.embed(x, 1));
    double period = 4.0 * F.regulator();
    long t = static_cast<long>(std::floor(th / period));
    FieldElement y = F.mul(x, F.unit_pow(-2 * t));
    while (F.cross_sign(A0, y) > 0) {  // before the window: move forward
        y = F.mul(y, fan.closure);
        t -= 1;
    }
    while (F.cross_sign(An, y) <= 0) {  // at or past the window end: move back
        y = F.mul(y, F.unit_pow(-2));
        t += 1;
    }
    for (long k = 0; k < n; ++k)
        if (F.cross_sign(fan.rays[k], y) <= 0 && F.cross_sign(fan.rays[k + 1], y) > 0)
            return ConeLocation{k, t};
    throw Error(errkind::BadInput, "cone scan exhausted (internal)");
}

CellComplex boundary_complex(const CuspFan& fan) {
    CellComplex C;
    const long n = static_cast<long>(fan.cycle.size());
    C.vertices = n;
    C.d1.assign(n, std::vector<Int>(n, 0));
    for (long e = 0; e < n; ++e) {
        C.d1[e][e] += 1;                 // head
        C.d1[(e + n - 1) % n][e] -= 1;   // tail
    }
    C.d2.assign(n, std::vector<Int>(n, 0));
    return C;
}

ComplexHomology homology(const CellComplex& C) {
    ComplexHomology H;
    const long V = C.vertices;
    const long E = C.d1.empty() ? 0 : static_cast<long>(C.d1[0].size());
    const long T = C.d2.empty() ? 0 : static_cast<long>(C.d2[0].size());
    SmithResult s1 = smith_normal_form(C.d1);
    SmithResult s2 = smith_normal_form(C.d2);
    H.betti[0] = V - s1.rank;
    H.betti[1] = E - s1.rank - s2.rank;
    H.betti[2] = T - s2.rank;
    for (const Int& d : s1.invariants)
        if (d > 1) H.torsion0.push_back(d);
    for (const Int& d : s2.invariants)
        if (d > 1) H.torsion1.push_back(d);
    return H;
}

LinkHomology link_homology(const QuadraticField& F) {
    LinkHomology L;
    FieldElement u = F.tp_generator();
    // matrix of multiplication by u on the basis (1, omega)
    Int a = u.a.numerator(), b = u.b.numerator();
    Int wn = (Int(F.par()) * F.par() - F.disc()) / 4;  // norm of omega... omega^2 = par*omega - wn
    L.monodromy = {{a, -b * wn}, {b, a + b * F.par()}};
    L.monodromy_trace = 2 * a + b * F.par();

    std::vector<std::vector<Int>> MI = L.monodromy;
    MI[0][0] -= 1;
    MI[1][1] -= 1;
    Int det = MI[0][0] * MI[1][1] - MI[0][1] * MI[1][0];
    if (det != 2 - L.monodromy_trace || det == 0)
        throw Error(errkind::BadInput, "monodromy determinant check failed (internal)");
    SmithResult s = smith_normal_form(MI);
    for (const Int& d : s.invariants)
        if (d > 1) L.h1_torsion.push_back(d);
    L.betti = {1, 1, 1, 1};
    return L;
}

CircleClass extract_circle(const QuadraticField& F, const CuspFan& fan, const FieldElement& u) {
    if (u.is_zero() || !F.is_unit(u))
        throw Error(errkind::NotAUnitPower, "not a unit");
    FieldElement v = F.sign_embed(u, 0) > 0 ? u : -u;
    double step = 2.0 * F.regulator();
    double lv = std::log(F.embed(v, 0));
    long m = static_cast<long>(std::llround(lv / step));
    if (F.unit_pow(2 * m) != v)
        throw Error(errkind::NotAUnitPower, "not a power of the closure unit");
    CircleClass c;
    c.class_coefficient = m;
    c.edge_count = std::labs(m) * static_cast<long>(fan.cycle.size());
    return c;
}

}  // namespace hmcusp
