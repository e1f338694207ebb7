#pragma once

#include <array>
#include <vector>

#include "hmcusp/field.hpp"

namespace hmcusp {

// A surd w is reduced when w > 1 and 0 < w' < 1 (primes denote the second
// embedding); exactly these have purely periodic minus (ceiling) expansions.
bool is_reduced_surd(const QuadraticField& F, const FieldElement& w);

// One period of the minus continued fraction w = b - 1/w', digits b >= 2.
// Throws NotReduced unless the input is a reduced surd.
std::vector<long> minus_cf(const QuadraticField& F, const FieldElement& w);

// Boundary fan of the standard cusp: rays A_0 = 1, A_1 = seed and
// A_{k+1} = b_k A_k - A_{k-1}, closing up at A_n = closure * A_0 where
// closure is the square of the fundamental unit.  When one expansion period
// ends at the fundamental unit itself (unit norm +1) the cycle is traversed
// twice so that the closure is always the square.
struct CuspFan {
    std::vector<long> primitive_cycle;  // one expansion period
    std::vector<long> cycle;            // geometric cycle; length n below
    std::vector<FieldElement> rays;     // A_0 .. A_n inclusive, size n + 1
    FieldElement seed;                  // the reduced surd A_1
    FieldElement closure;               // square of the fundamental unit
};

CuspFan build_cusp_fan(const QuadraticField& F);

// Multiplication by u permutes the rays without fixed points; returns false
// when some ray is fixed (e.g. u = 1).
bool check_free_action(const QuadraticField& F, const CuspFan& fan, const FieldElement& u);

// Which cone contains x: x lies in the span of rays A_index, A_index+1 after
// dividing by closure^translate.  Input must be totally positive.
struct ConeLocation {
    long index = 0;
    long translate = 0;
};
ConeLocation locate_cone(const QuadraticField& F, const CuspFan& fan, const FieldElement& x);

// Cell structure of the cusp cross-section boundary: n vertices, n edges
// (edge k runs from vertex k-1 to vertex k cyclically), n two-cells whose
// attaching maps collapse, so the degree-two boundary matrix vanishes.
struct CellComplex {
    long vertices = 0;
    std::vector<std::vector<Int>> d1;  // vertices x edges
    std::vector<std::vector<Int>> d2;  // edges x cells
};

CellComplex boundary_complex(const CuspFan& fan);

struct ComplexHomology {
    std::array<long, 3> betti{};
    std::vector<Int> torsion0;  // invariant factors > 1 in degree 0
    std::vector<Int> torsion1;  // and in degree 1
};

ComplexHomology homology(const CellComplex& C);

// Homology of the cusp cross-section (a torus bundle over the circle with
// monodromy the closure unit acting on the order lattice):
//   H_0 = Z, H_1 = Z + coker(M - I), H_2 = Z, H_3 = Z,
// where M is the 2x2 matrix of the closure on the basis (1, omega).
// det(M - I) = 2 - trace(closure), never zero.
struct LinkHomology {
    std::array<long, 4> betti{};
    std::vector<Int> h1_torsion;              // invariant factors > 1 of M - I
    Int monodromy_trace;
    std::vector<std::vector<Int>> monodromy;  // the matrix M
};

LinkHomology link_homology(const QuadraticField& F);

// The circle traced by a power of the closure unit inside the boundary
// complex: its degree-one class is that power times the generator.  Throws
// NotAUnitPower if u is not +-(closure^m).
struct CircleClass {
    long class_coefficient = 0;  // the power m
    long edge_count = 0;         // |m| * cycle length
};

CircleClass extract_circle(const QuadraticField& F, const CuspFan& fan, const FieldElement& u);

}  // namespace hmcusp
