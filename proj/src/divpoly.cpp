#include "isoglab/divpoly.hpp"

#include <algorithm>
#include <cstdlib>

namespace isoglab {

// Even parts P_m with psi_m = P_m(x) * y^(m even). Recurrences, with
// F = x^3 + ax + b standing in for y^2:
//   P_{2m+1} = F^2 P_{m+2} P_m^3 - P_{m-1} P_{m+1}^3   (m even)
//            = P_{m+2} P_m^3 - F^2 P_{m-1} P_{m+1}^3   (m odd)
//   P_{2m}   = P_m (P_{m+2} P_{m-1}^2 - P_{m-2} P_{m+1}^2) / 2
std::vector<Poly> division_poly_table(const Curve& e, unsigned m) {
    if (m < 1 || m > 200) throw BadInput("division polynomial index out of range [1, 200]");
    const Field& f = e.field();
    const Fel& a = e.a();
    const Fel& b = e.b();
    Fel a2 = a * a;
    std::vector<Poly> t(std::max(m, 4u) + 1, Poly(f));
    t[0] = Poly(f);                          // psi_0 = 0
    t[1] = Poly::from_ints(f, {1});          // psi_1 = 1
    t[2] = Poly::from_ints(f, {2});          // psi_2 = 2y
    t[3] = Poly(f, {-a2, f.from_int(12) * b, f.from_int(6) * a, f.zero(), f.from_int(3)});
    t[4] = Poly(f, {-(a2 * a + f.from_int(8) * b * b) * f.from_int(4), -f.from_int(16) * a * b,
                    -f.from_int(20) * a2, f.from_int(80) * b, f.from_int(20) * a, f.zero(),
                    f.from_int(4)});
    Poly F = e.rhs_poly();
    Poly F2 = F * F;
    Fel inv2 = f.from_int(2).inv();
    for (unsigned n = 5; n <= m; ++n) {
        unsigned h = n / 2;
        if (n & 1) {
            Poly lead = t[h + 2] * t[h] * t[h] * t[h];
            Poly tail = t[h - 1] * t[h + 1] * t[h + 1] * t[h + 1];
            t[n] = (h % 2 == 0) ? F2 * lead - tail : lead - F2 * tail;
        } else {
            Poly bracket = t[h + 2] * t[h - 1] * t[h - 1] - t[h - 2] * t[h + 1] * t[h + 1];
            t[n] = t[h] * bracket * inv2;
        }
    }
    t.resize(m + 1, Poly(f));
    return t;
}

DivisionPolynomial division_poly(const Curve& e, unsigned m) {
    auto t = division_poly_table(e, m);
    return DivisionPolynomial{m, t[m], (int)(m % 2 == 0)};
}

std::vector<Fel> vanishing_abscissas(const Curve& e, unsigned m, const Field& in_field) {
    Curve ext = (&e.field() == &in_field) ? e : e.base_change(in_field);
    auto dp = division_poly(e, m);
    Poly even = map_into(dp.even_part, in_field);
    std::vector<Fel> xs = roots_unchecked(even);
    if (m % 2 == 0) {
        for (const Fel& r : roots_unchecked(ext.rhs_poly())) xs.push_back(r);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

MulByMMaps mul_by_m_maps(const Curve& e, unsigned m) {
    if (m < 2 || m > 50) throw BadInput("mul-by-m maps support 2 <= m <= 50");
    const Field& f = e.field();
    auto t = division_poly_table(e, m + 2);
    Poly F = e.rhs_poly();
    // phi_m = x psi_m^2 - psi_{m+1} psi_{m-1}, with parities folded in
    Poly phi = (m % 2 == 1) ? Poly::x(f) * t[m] * t[m] - F * t[m + 1] * t[m - 1]
                            : Poly::x(f) * F * t[m] * t[m] - t[m + 1] * t[m - 1];
    // omega_m = (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / 4y
    Poly w = (t[m + 2] * t[m - 1] * t[m - 1] - t[m - 2] * t[m + 1] * t[m + 1]) *
             f.from_int(4).inv();
    return MulByMMaps{m, phi, w, (int)(m % 2 == 1), DivisionPolynomial{m, t[m], (int)(m % 2 == 0)}};
}

Fel MulByMMaps::eval_x(const Fel& x0, const Curve& e) const {
    Fel pm = psi.even_part.eval(x0);
    Fel den = pm.square();
    if (psi.y_parity) den = den * e.rhs(x0);
    if (den.is_zero()) throw BadInput("point is m-torsion; x-map undefined");
    return phi.eval(x0) / den;
}

CurvePoint MulByMMaps::eval(const CurvePoint& p) const {
    const Curve& e = p.curve();
    if (p.is_infinity()) return p;
    const Fel& x0 = p.x();
    const Fel& y0 = p.y();
    Fel fx = e.rhs(x0);
    Fel pm = psi.even_part.eval(x0);
    Fel w = omega_even_part.eval(x0);
    Fel pm3 = pm * pm * pm;
    if (psi.y_parity) {
        // even m: psi^2 = F P^2, psi^3 = y F P^3, omega = W
        if (pm.is_zero() || y0.is_zero()) throw BadInput("point is m-torsion; maps undefined");
        Fel xx = phi.eval(x0) / (fx * pm.square());
        Fel yy = w * y0 / (fx.square() * pm3);
        return e.point(xx, yy);
    }
    // odd m: psi^2 = P^2, psi^3 = P^3, omega = W y
    if (pm.is_zero()) throw BadInput("point is m-torsion; maps undefined");
    Fel xx = phi.eval(x0) / pm.square();
    Fel yy = w * y0 / pm3;
    return e.point(xx, yy);
}

std::optional<Fel> scalar_x_map(const Curve& e, unsigned k, const Fel& x0) {
    if (k == 1) return x0;
    const Field& fx = x0.field();
    Curve ec = (&e.field() == &fx) ? e : e.base_change(fx);
    auto maps = mul_by_m_maps(ec, k);
    Fel pm = maps.psi.even_part.eval(x0);
    Fel den = pm.square();
    if (maps.psi.y_parity) den = den * ec.rhs(x0);
    if (den.is_zero()) return std::nullopt;
    return maps.phi.eval(x0) / den;
}

u64 max_ext_elements() {
    if (const char* env = std::getenv("ISOGLAB_MAX_EXT")) {
        char* end = nullptr;
        u64 v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v >= 2) return v;
    }
    return 1ull << 22;
}

TorsionData torsion_points(const Curve& e, unsigned m, unsigned max_ext_degree) {
    const Field& base = e.field();
    u64 p = base.p();
    if (m == 0 || m % p == 0) throw BadInput("torsion index must be coprime to p");
    unsigned s = base.degree();
    u64 expected = (m % 2 == 1) ? (u64)(m - 1) * (m + 1) / 2 : ((u64)m * m + 2) / 2;
    if (m == 1) expected = 0;

    u64 cap = max_ext_elements();
    auto fits = [&](unsigned deg) {
        u128 sz = 1;
        for (unsigned i = 0; i < deg; ++i) {
            sz *= p;
            if (sz > cap) return false;
        }
        return true;
    };

    for (unsigned d = 1; d <= max_ext_degree; ++d) {
        if (!fits(s * d)) break;
        const Field& F = s * d == 1 ? Field::prime(p) : Field::extension(p, s * d);
        std::vector<Fel> xs = vanishing_abscissas(e, m, F);
        if ((u64)xs.size() != expected) continue;
        Curve ec = e.base_change(F);
        bool all_square = true;
        for (const Fel& x : xs)
            if (ec.rhs(x).chi() == -1) {
                all_square = false;
                break;
            }
        unsigned K = d;
        if (!all_square) {
            K = 2 * d;
            if (K > max_ext_degree || !fits(s * K)) break;
            const Field& F2 = Field::extension(p, s * K);
            std::vector<Fel> xs2;
            xs2.reserve(xs.size());
            for (const Fel& x : xs) xs2.push_back(embed(x, F2));
            xs = std::move(xs2);
            ec = e.base_change(F2);
        }
        TorsionData out{ec, K, {}};
        out.points.push_back({ec.infinity(), 1});
        for (const Fel& x : xs) {
            Fel r = ec.rhs(x);
            auto y = r.sqrt();
            if (!y) throw InternalError("ordinate must be a square in the splitting field");
            std::vector<Fel> ys = y->is_zero() ? std::vector<Fel>{*y} : std::vector<Fel>{*y, -*y};
            for (const Fel& yy : ys) {
                unsigned tag = K;
                for (unsigned t = 1; t < K; ++t) {
                    if (K % t) continue;
                    if (in_subfield(x, s * t) && in_subfield(yy, s * t)) {
                        tag = t;
                        break;
                    }
                }
                out.points.push_back({ec.point(x, yy), tag});
            }
        }
        if (out.points.size() != (size_t)m * m)
            throw InternalError("torsion point count mismatch");
        std::sort(out.points.begin(), out.points.end(),
                  [](const TorsionPoint& a, const TorsionPoint& b) { return a.point < b.point; });
        return out;
    }
    throw ExtensionTooLarge("E[m] is not rational within the extension cap");
}

}  // namespace isoglab
