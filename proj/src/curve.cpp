#include "isoglab/curve.hpp"

#include <sstream>

namespace isoglab {

Curve::Curve(const Field& f, const Fel& a, const Fel& b) : f_(&f), a_(a), b_(b) {
    if (f.p() == 2 || f.p() == 3)
        throw BadInput("short Weierstrass form needs characteristic > 3");
    if (&a.field() != &f || &b.field() != &f)
        throw FieldMismatch("curve coefficients must live in the base field");
    if (discriminant().is_zero()) throw BadInput("singular curve: 4a^3 + 27b^2 = 0");
}

Curve Curve::from_ints(const Field& f, long long a, long long b) {
    return Curve(f, f.from_signed(a), f.from_signed(b));
}

Fel Curve::discriminant() const {
    return f_->from_int(4) * a_ * a_ * a_ + f_->from_int(27) * b_ * b_;
}

Fel Curve::j_invariant() const {
    Fel a3 = f_->from_int(4) * a_ * a_ * a_;
    return f_->from_int(1728) * a3 / discriminant();
}

Curve Curve::quadratic_twist() const {
    Fel d = f_->canonical_nonsquare();
    return Curve(*f_, d * d * a_, d * d * d * b_);
}

Curve Curve::base_change(const Field& ext) const {
    return Curve(ext, embed(a_, ext), embed(b_, ext));
}

Poly Curve::rhs_poly() const { return Poly(*f_, {b_, a_, f_->zero(), f_->one()}); }

Fel Curve::rhs(const Fel& x) const { return (x.square() + a_) * x + b_; }

CurvePoint Curve::infinity() const { return CurvePoint(*this); }

CurvePoint Curve::point(const Fel& x, const Fel& y) const {
    if (&x.field() != f_ || &y.field() != f_)
        throw FieldMismatch("point coordinates must live in the curve field");
    if (y.square() != rhs(x)) throw BadInput("point is not on the curve");
    return CurvePoint(*this, x, y);
}

std::optional<CurvePoint> Curve::lift_x(const Fel& x) const {
    auto y = rhs(x).sqrt();
    if (!y) return std::nullopt;
    return CurvePoint(*this, x, *y);
}

CurvePoint Curve::random_point(SeededRng& rng) const {
    for (int attempt = 0; attempt < 1000000; ++attempt) {
        Fel x = f_->sample(rng);
        Fel r = rhs(x);
        if (r.is_zero()) return CurvePoint(*this, x, f_->zero());
        auto y = r.sqrt();
        if (!y) continue;
        // a fair coin picks between the two ordinates
        return CurvePoint(*this, x, rng.coin() ? -*y : *y);
    }
    throw SamplingFailure("no curve point found within 10^6 draws");
}

std::string Curve::str() const {
    std::ostringstream os;
    os << "y^2=x^3+" << a_.label() << "x+" << b_.label() << " over GF(" << f_->p() << "^"
       << f_->degree() << ")";
    return os.str();
}

const Fel& CurvePoint::x() const {
    if (infinity_) throw BadInput("the point at infinity has no affine coordinates");
    return x_;
}

const Fel& CurvePoint::y() const {
    if (infinity_) throw BadInput("the point at infinity has no affine coordinates");
    return y_;
}

CurvePoint CurvePoint::operator+(const CurvePoint& o) const {
    if (curve_ != o.curve_) throw CurveMismatch("points on different curves");
    if (infinity_) return o;
    if (o.infinity_) return *this;
    const Fel &x1 = x_, &y1 = y_, &x2 = o.x_, &y2 = o.y_;
    if (x1 == x2 && y1 == -y2) return CurvePoint(curve_);
    Fel lambda = (x1 == x2)
                     ? (curve_.field().from_int(3) * x1.square() + curve_.a()) / (y1 + y1)
                     : (y2 - y1) / (x2 - x1);
    Fel x3 = lambda.square() - x1 - x2;
    Fel y3 = -lambda * x3 - y1 + lambda * x1;
    return CurvePoint(curve_, x3, y3);
}

CurvePoint CurvePoint::operator-() const {
    if (infinity_) return *this;
    return CurvePoint(curve_, x_, -y_);
}

bool CurvePoint::operator==(const CurvePoint& o) const {
    if (curve_ != o.curve_) return false;
    if (infinity_ || o.infinity_) return infinity_ == o.infinity_;
    return x_ == o.x_ && y_ == o.y_;
}

bool CurvePoint::operator<(const CurvePoint& o) const {
    if (infinity_ != o.infinity_) return infinity_;
    if (infinity_) return false;
    if (x_ != o.x_) return x_ < o.x_;
    return y_ < o.y_;
}

std::string CurvePoint::str() const {
    if (infinity_) return "O";
    return "(" + x_.label() + "," + y_.label() + ")";
}

CurvePoint scalar_mul_u(u64 n, const CurvePoint& p) {
    CurvePoint acc = p.curve().infinity();
    CurvePoint base = p;
    while (n) {
        if (n & 1) acc = acc + base;
        base = base + base;
        n >>= 1;
    }
    return acc;
}

CurvePoint scalar_mul(long long n, const CurvePoint& p) {
    if (n < 0) return scalar_mul_u((u64)(-n), -p);
    return scalar_mul_u((u64)n, p);
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; (u128)d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned e = 0;
        while (n % d == 0) n /= d, ++e;
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

bool isomorphic(const Curve& e1, const Curve& e2) {
    if (&e1.field() != &e2.field()) return false;
    if (e1.j_invariant() != e2.j_invariant()) return false;
    const Field& f = e1.field();
    if (!f.size()) throw FieldTooLarge("isomorphism scan needs an enumerable field");
    for (u64 i = 1; i < *f.size(); ++i) {
        Fel u = f.element_at(i);
        Fel u2 = u * u, u4 = u2.square();
        if (u4 * e2.a() == e1.a() && u4 * u2 * e2.b() == e1.b()) return true;
    }
    return false;
}

u64 point_order(const CurvePoint& p, u64 group_order) {
    if (!scalar_mul_u(group_order, p).is_infinity())
        throw BadGroupOrder("[group_order]P is not the identity");
    u64 order = group_order;
    for (auto [q, e] : factorize(group_order)) {
        for (unsigned i = 0; i < e; ++i) {
            if (scalar_mul_u(order / q, p).is_infinity()) order /= q;
            else break;
        }
    }
    return order;
}

}  // namespace isoglab
