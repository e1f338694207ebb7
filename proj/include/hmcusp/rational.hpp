#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>

#include "hmcusp/error.hpp"

namespace hmcusp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Rat make_rat(long n, long d = 1) { return Rat(Int(n), Int(d)); }

// floor of p/q for q > 0 (boost::rational keeps the denominator positive)
inline Int rat_floor(const Rat& x) {
    Int q = x.numerator() / x.denominator();
    if (x.numerator() < 0 && q * x.denominator() != x.numerator()) --q;
    return q;
}

inline Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

inline double rat_to_double(const Rat& x) {
    namespace mp = boost::multiprecision;
    return static_cast<double>(mp::cpp_rational(x.numerator(), x.denominator()));
}

// serialization used throughout the CLI: "p" or "p/q"
inline std::string rat_to_string(const Rat& x) {
    std::string s = x.numerator().str();
    if (x.denominator() != 1) s += "/" + x.denominator().str();
    return s;
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s), Int(1));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error(errkind::BadInput, "zero denominator in rational: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw Error(errkind::BadInput, "cannot parse rational: " + s);
    }
}

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// g = gcd(a,b) together with x,y such that a*x + b*y = g
inline Int int_ext_gcd(Int a, Int b, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, xx = 0;
    Int old_y = 0, yy = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x;
    y = old_y;
    return old_r;
}

// nonnegative residue a mod m, m > 0
inline Int int_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

}  // namespace hmcusp
