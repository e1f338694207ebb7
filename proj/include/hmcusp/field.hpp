#pragma once

#include <iosfwd>
#include <vector>

#include "hmcusp/rational.hpp"

namespace hmcusp {

// Element a + b*omega of a real quadratic field, coordinates in the integral
// basis {1, omega}. Which field it lives in is supplied by the operations.
struct FieldElement {
    Rat a{Int(0), Int(1)};
    Rat b{Int(0), Int(1)};

    bool operator==(const FieldElement& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // lex order on (b, a); element ordering used for deterministic containers
    bool operator<(const FieldElement& o) const {
        if (b != o.b) return b < o.b;
        return a < o.a;
    }
    FieldElement operator+(const FieldElement& o) const { return {a + o.a, b + o.b}; }
    FieldElement operator-(const FieldElement& o) const { return {a - o.a, b - o.b}; }
    FieldElement operator-() const { return {-a, -b}; }
    FieldElement operator*(const Rat& c) const { return {a * c, b * c}; }
    bool is_zero() const { return a.numerator() == 0 && b.numerator() == 0; }
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

inline FieldElement fe_int(long a, long b = 0) { return {make_rat(a), make_rat(b)}; }

// Real quadratic field of fundamental discriminant D, integral basis {1, omega}
// with omega = (par + sqrt(D))/2, par = D mod 2. Construction computes the
// fundamental unit, regulator and (wide) class number; throws hmcusp::Error on
// invalid input.
class QuadraticField {
public:
    explicit QuadraticField(long disc);

    static bool is_fundamental(long disc);
    static void validate(long disc);  // throws with the precise error kind

    long disc() const { return disc_; }
    int par() const { return par_; }
    FieldElement omega() const { return fe_int(0, 1); }

    // fundamental unit with sigma1 > 1 minimal among units > 1
    const FieldElement& fund_unit() const { return fund_unit_; }
    int unit_norm() const { return unit_norm_; }
    double regulator() const { return regulator_; }
    long class_number() const { return class_number_; }
    long narrow_class_number() const { return narrow_class_number_; }
    // narrow class number one: wide h = 1 and the fundamental unit has norm -1
    bool narrow_h1() const { return class_number_ == 1 && unit_norm_ == -1; }
    // every totally positive unit is a square (equivalent to unit_norm = -1)
    bool totally_positive_units_are_squares() const { return unit_norm_ == -1; }

    Rat trace(const FieldElement& x) const;
    Rat norm(const FieldElement& x) const;
    FieldElement conj(const FieldElement& x) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;
    FieldElement inv(const FieldElement& x) const;
    FieldElement unit_pow(long k) const;      // fund_unit^k, any sign of k
    FieldElement tp_generator() const;        // fund_unit^2, generates squares of units

    bool is_integral(const FieldElement& x) const;
    bool is_unit(const FieldElement& x) const;

    // coordinates c + e*sqrt(D) of x (c = a + b*par/2, e = b/2)
    void sqrt_coords(const FieldElement& x, Rat& c, Rat& e) const;

    // embeddings: which = 0 sends sqrt(D) to +sqrt(D), which = 1 to -sqrt(D)
    double embed(const FieldElement& x, int which) const;
    int sign_embed(const FieldElement& x, int which) const;  // exact sign in {-1,0,1}
    bool totally_positive(const FieldElement& x) const;
    // exact sign of sigma1(x)*sigma2(y) - sigma2(x)*sigma1(y)
    int cross_sign(const FieldElement& x, const FieldElement& y) const;

    // exact floor of sigma1(x)
    Int floor_embed1(const FieldElement& x) const;
    Int ceil_embed1(const FieldElement& x) const;

private:
    long disc_ = 0;
    int par_ = 0;
    FieldElement fund_unit_;
    int unit_norm_ = 0;
    double regulator_ = 0.0;
    long class_number_ = 0;
    long narrow_class_number_ = 0;

    void find_fundamental_unit();
    void compute_class_number();
};

// Kronecker symbol (a|n) for n >= 0
int kronecker(long a, long n);

}  // namespace hmcusp
