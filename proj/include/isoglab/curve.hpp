#pragma once

#include <string>
#include <vector>

#include "isoglab/poly.hpp"

namespace isoglab {

class CurvePoint;

// Short-Weierstrass curve y^2 = x^3 + ax + b over a finite field of
// characteristic > 3, with 4a^3 + 27b^2 != 0. Immutable value type; curves
// compare equal iff (field, a, b) coincide.
class Curve {
public:
    Curve(const Field& f, const Fel& a, const Fel& b);
    static Curve from_ints(const Field& f, long long a, long long b);

    const Field& field() const { return *f_; }
    const Fel& a() const { return a_; }
    const Fel& b() const { return b_; }

    Fel j_invariant() const;
    Fel discriminant() const;  // 4a^3 + 27b^2

    // y^2 = x^3 + d^2 a x + d^3 b for the smallest canonical non-square d.
    Curve quadratic_twist() const;

    // The curve with the same (a, b) read in an extension of the base field.
    Curve base_change(const Field& ext) const;

    // Right-hand side x^3 + ax + b as a polynomial and evaluated.
    Poly rhs_poly() const;
    Fel rhs(const Fel& x) const;

    CurvePoint infinity() const;
    CurvePoint point(const Fel& x, const Fel& y) const;
    // (x, smaller root) if x is an abscissa of a rational point.
    std::optional<CurvePoint> lift_x(const Fel& x) const;

    // Uniform affine point: sample x until the rhs is a square. Never
    // returns the point at infinity; throws SamplingFailure after 10^6 draws.
    CurvePoint random_point(SeededRng& rng) const;

    bool operator==(const Curve& o) const { return f_ == o.f_ && a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const Curve& o) const { return !(*this == o); }

    // "y^2=x^3+{a}x+{b} over GF({p}^{k})"
    std::string str() const;

private:
    const Field* f_;
    Fel a_, b_;
};

// A point of E: the distinguished infinity (group identity) or an affine
// pair satisfying the curve equation exactly.
class CurvePoint {
public:
    CurvePoint() = default;

    const Curve& curve() const { return curve_; }
    bool is_infinity() const { return infinity_; }
    const Fel& x() const;
    const Fel& y() const;

    CurvePoint operator+(const CurvePoint& o) const;
    CurvePoint operator-() const;
    CurvePoint operator-(const CurvePoint& o) const { return *this + (-o); }

    bool operator==(const CurvePoint& o) const;
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
    bool operator<(const CurvePoint& o) const;  // canonical order, infinity first

    std::string str() const;  // "({x},{y})" or "O"

private:
    friend class Curve;
    CurvePoint(const Curve& c) : curve_(c), infinity_(true) {}
    CurvePoint(const Curve& c, Fel x, Fel y)
        : curve_(c), infinity_(false), x_(std::move(x)), y_(std::move(y)) {}

    Curve curve_{Field::prime(5), Field::prime(5).zero(), Field::prime(5).one()};
    bool infinity_ = true;
    Fel x_, y_;
};

// Double-and-add scalar multiple; negative n multiplies by the inverse.
CurvePoint scalar_mul(long long n, const CurvePoint& p);
CurvePoint scalar_mul_u(u64 n, const CurvePoint& p);

// Exact order of P given a verified multiple of it (throws BadGroupOrder
// when [group_order]P != O).
u64 point_order(const CurvePoint& p, u64 group_order);

// Trial-division factorization (n < 2^62); pairs (prime, exponent).
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

// Isomorphism over the base field: equal j-invariants and a scalar u in
// the field with (u^4 a2, u^6 b2) = (a1, b1). Curve equality itself stays
// strictly (field, a, b).
bool isomorphic(const Curve& e1, const Curve& e2);

}  // namespace isoglab
