#pragma once

#include <variant>

#include "ecprime/numtheory.hpp"

// Arithmetic on y^2 = x^3 - m*x over Z/NZ, N odd and possibly composite.
// Every division goes through an explicit inverse, so a denominator that
// shares a proper factor with N surfaces as a Factor outcome instead of
// being hidden.

namespace ecprime {

class Curve {
public:
    Curve(Int N, Int m);

    const Int& modulus() const noexcept { return N_; }
    const Int& m() const noexcept { return m_; }

private:
    Int N_;
    Int m_;
};

struct Infinity {
    friend bool operator==(const Infinity&, const Infinity&) = default;
};

struct Affine {
    Int x;
    Int y;
    friend bool operator==(const Affine& a, const Affine& b) { return a.x == b.x && a.y == b.y; }
};

using Point = std::variant<Infinity, Affine>;

inline bool is_infinity(const Point& P) { return std::holds_alternative<Infinity>(P); }

struct Factor {
    Int value;
    friend bool operator==(const Factor& a, const Factor& b) { return a.value == b.value; }
};

/// A point, or a proper divisor of N found in a denominator.
using CurveOpOutcome = std::variant<Point, Factor>;

inline bool is_factor(const CurveOpOutcome& o) { return std::holds_alternative<Factor>(o); }

bool on_curve(const Curve& C, const Point& P);

/// Reduces both coordinates of an affine point into [0, N).
Point normalize(const Curve& C, const Point& P);

CurveOpOutcome negate(const Curve& C, const Point& P);
CurveOpOutcome dbl(const Curve& C, const Point& P);
CurveOpOutcome add(const Curve& C, const Point& P, const Point& Q);

/// Left-to-right double-and-add. Stops at the first factor.
CurveOpOutcome scalar_mul(const Curve& C, const Int& s, const Point& P);

struct XOnlyInfinity {};
struct XOnly {
    Int x;
};

using XDoubleOutcome = std::variant<XOnly, XOnlyInfinity, Factor>;

/// x(2P) = (x^2 + m)^2 / (4(x^3 - m x)).
XDoubleOutcome double_x_only(const Curve& C, const Int& x);

}  // namespace ecprime
