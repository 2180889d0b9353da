#include "isoglab/clpoly.hpp"

#include "isoglab/counting.hpp"

namespace isoglab {

namespace {

// Generator of the rational ell-torsion E[ell] cap E(F_q); cyclic of order
// ell exactly because ell does not divide q - 1.
CurvePoint rational_ell_point(const Curve& e, unsigned ell, u64 order, SeededRng& rng) {
    u64 cof = order;
    unsigned v = 0;
    while (cof % ell == 0) cof /= ell, ++v;
    for (int i = 0; i < 200000; ++i) {
        CurvePoint t = scalar_mul_u(cof, e.random_point(rng));
        if (t.is_infinity()) continue;
        while (!scalar_mul_u(ell, t).is_infinity()) t = scalar_mul_u(ell, t);
        return t;
    }
    throw InternalError("no rational ell-torsion point found");
}

}  // namespace

Poly couveignes_lercier(u64 q, unsigned ell, unsigned e, SeededRng& rng) {
    if (!is_prime_u64(q)) throw BadInput("q must be prime at desk scale");
    if (ell < 3 || !is_prime_u64(ell)) throw BadInput("ell must be an odd prime");
    if ((q - 1) % ell == 0) throw BadInput("ell must not divide q - 1");
    u64 degree = 1;
    for (unsigned i = 0; i < e; ++i) {
        degree *= ell;
        if (degree > 3000) throw BadInput("ell^e capped at 3000");
    }
    const Field& f = Field::prime(q);

    // random curves until ell | #E
    std::optional<Curve> e0;
    u64 order = 0;
    for (int attempt = 0; attempt < 200000; ++attempt) {
        Fel a = f.sample(rng), b = f.sample(rng);
        if ((f.from_int(4) * a * a * a + f.from_int(27) * b * b).is_zero()) continue;
        Curve cand(f, a, b);
        u64 n = count_naive(cand);
        if (n % ell == 0) {
            e0 = cand;
            order = n;
            break;
        }
    }
    if (!e0) throw CurveSearchExhausted("no curve with ell | #E found");

    // chain of e rational ell-isogenies; every codomain keeps the order
    std::vector<Isogeny> chain;
    Curve cur = *e0;
    for (unsigned i = 0; i < e; ++i) {
        CurvePoint gen = rational_ell_point(cur, ell, order, rng);
        std::vector<CurvePoint> kernel{cur.infinity()};
        CurvePoint acc = gen;
        while (!acc.is_infinity()) {
            kernel.push_back(acc);
            acc = acc + gen;
        }
        Isogeny phi = velu_from_kernel(cur, kernel);
        chain.push_back(phi);
        cur = phi.codomain();
    }

    // point P outside [ell] E_e(F_q): the ell-Sylow is cyclic, so the test
    // is [#E / ell] P != O
    CurvePoint target = cur.infinity();
    for (int attempt = 0; attempt < 200000; ++attempt) {
        CurvePoint cand = cur.random_point(rng);
        if (!scalar_mul_u(order / ell, cand).is_infinity()) {
            target = cand;
            break;
        }
    }
    if (target.is_infinity()) throw CurveSearchExhausted("no point outside [ell]E found");

    // pull the fiber polynomial back through the chain:
    // f_e(X) = X - x(P); f_{i-1}(X) = monic( f_i applied to g_i/h_i )
    Poly fiber = Poly(f, {-target.x(), f.one()});
    for (size_t i = chain.size(); i-- > 0;) {
        const Poly& num = chain[i].num();
        const Poly& den = chain[i].den();
        Poly acc(f);
        Poly den_pow = Poly::from_ints(f, {1});
        // sum_j c_j num^j den^{d-j}, degrees low to high
        std::vector<Poly> num_pows{Poly::from_ints(f, {1})};
        for (int j = 1; j <= fiber.degree(); ++j) num_pows.push_back(num_pows.back() * num);
        for (int j = fiber.degree(); j >= 0; --j) {
            acc = acc + Poly::constant(fiber.coeff((size_t)j)) * num_pows[(size_t)j] * den_pow;
            den_pow = den_pow * den;
        }
        fiber = acc.monic();
    }
    if (fiber.degree() != (int)degree) throw InternalError("fiber polynomial degree mismatch");
    if (!is_irreducible(fiber))
        throw IrreducibilityCheckFailed("fiber polynomial is reducible");
    return fiber;
}

}  // namespace isoglab
