#include "isoglab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

namespace isoglab {

namespace {

u64 isqrt_u64(u64 n) {
    u64 r = (u64)std::sqrt((double)n);
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

u64 count_naive(const Curve& e) {
    const Field& f = e.field();
    if (!f.size() || *f.size() > (1ull << 22))
        throw FieldTooLarge("naive counting is limited to fields of size <= 2^22");
    u64 n = *f.size();
    u64 total = 1;
    for (u64 i = 0; i < n; ++i) {
        Fel x = f.element_at(i);
        total += 1 + e.rhs(x).chi();
    }
    return total;
}

namespace {

// All n in [lo, hi] with [n]P = O, by baby-step giant-step over the window.
std::vector<u64> window_kills(const CurvePoint& p, u64 lo, u64 hi) {
    u64 width = hi - lo + 1;
    u64 m = isqrt_u64(width) + 1;
    std::unordered_map<std::string, u64> baby;  // point text -> smallest j
    CurvePoint pj = p.curve().infinity();
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(pj.str(), j);
        pj = pj + p;
    }
    CurvePoint giant = scalar_mul_u(m, p);
    CurvePoint r = -scalar_mul_u(lo, p);  // [k]P = r at k = 0
    std::vector<u64> out;
    for (u64 i = 0; i * m <= width; ++i) {
        auto it = baby.find(r.str());
        if (it != baby.end()) {
            u64 k = i * m + it->second;
            if (k <= width) out.push_back(lo + k);
        }
        r = r - giant;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

u64 count_bsgs(const Curve& e, SeededRng& rng) {
    const Field& f = e.field();
    if (!f.size() || *f.size() > (1ull << 48))
        throw FieldTooLarge("bsgs counting is limited to fields of size <= 2^48");
    u64 q = *f.size();
    u64 s = isqrt_u64(4 * q);
    u64 lo = q + 1 - s, hi = q + 1 + s;
    // The lcm of point orders converges to the group exponent, which can
    // admit several multiples in the Hasse window. Sampling the quadratic
    // twist as well (#E + #E' = 2q + 2) discriminates between them.
    Curve tw = e.quadratic_twist();
    u64 lcm_e = 1, lcm_t = 1;
    for (int sample = 0; sample < 40; ++sample) {
        for (int side = 0; side < 2; ++side) {
            const Curve& c = side ? tw : e;
            u64& l = side ? lcm_t : lcm_e;
            CurvePoint p = c.random_point(rng);
            auto kills = window_kills(p, lo, hi);
            if (kills.empty()) throw InternalError("no annihilator in the Hasse window");
            u64 ord = point_order(p, kills.front());
            l = l / gcd_u64(l, ord) * ord;
        }
        std::vector<u64> candidates;
        for (u64 n = (lo + lcm_e - 1) / lcm_e * lcm_e; n <= hi; n += lcm_e)
            if ((2 * q + 2 - n) % lcm_t == 0) candidates.push_back(n);
        if (candidates.empty()) throw InternalError("no candidate consistent with the twist");
        if (candidates.size() == 1) return candidates[0];
    }
    if (*f.size() <= (1ull << 22)) return count_naive(e);
    throw Ambiguous("group order not pinned down after 40 twin samples");
}

// --------------------------------------------------------------- Schoof ---

namespace {

// Signals that the working modulus splits; carries a proper factor.
struct ModulusSplit {
    Poly factor;
};

// Inverse mod m, or throw ModulusSplit when gcd(a, m) is proper.
Poly inv_mod_or_split(const Poly& a, const Poly& m) {
    const Field& f = m.field();
    Poly r0 = m, r1 = a % m;
    Poly s0(f), s1 = Poly::from_ints(f, {1});
    if (r1.is_zero()) throw ModulusSplit{m};
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw ModulusSplit{r0.monic()};
    return (s0 * r0.coeff(0).inv()) % m;
}

// Point (u(x), v(x)*y) on E over F_p[x]/(m, y^2 - F); infinity flagged.
struct SymPoint {
    Poly u, v;
    bool inf = false;
};

struct SymContext {
    const Curve& e;
    Poly m;
    Poly F;  // x^3 + ax + b reduced mod m
};

SymPoint sym_add(const SymContext& c, const SymPoint& p, const SymPoint& q) {
    if (p.inf) return q;
    if (q.inf) return p;
    const Field& f = c.m.field();
    Poly du = (p.u - q.u) % c.m;
    Poly lambda(f);  // slope = lambda(x) * y
    if (du.is_zero()) {
        if (((p.v + q.v) % c.m).is_zero()) return SymPoint{Poly(f), Poly(f), true};
        if (!((p.v - q.v) % c.m).is_zero())
            throw ModulusSplit{poly_gcd((p.v + q.v) % c.m, c.m)};  // mixed signs
        Poly num = (Poly::from_ints(f, {3}) * p.u * p.u + Poly::constant(c.e.a())) % c.m;
        Poly den = (Poly::from_ints(f, {2}) * p.v * c.F) % c.m;
        lambda = (num * inv_mod_or_split(den, c.m)) % c.m;
    } else {
        Poly dv = (p.v - q.v) % c.m;
        lambda = (dv * inv_mod_or_split(du, c.m)) % c.m;
    }
    Poly x3 = (lambda * lambda * c.F - p.u - q.u) % c.m;
    Poly v3 = (lambda * (p.u - x3) - p.v) % c.m;
    return SymPoint{x3, v3, false};
}

SymPoint sym_scalar(const SymContext& c, u64 n, const SymPoint& p) {
    SymPoint acc{Poly(c.m.field()), Poly(c.m.field()), true};
    SymPoint base = p;
    while (n) {
        if (n & 1) acc = sym_add(c, acc, base);
        base = sym_add(c, base, base);
        n >>= 1;
    }
    return acc;
}

// Trace mod an odd prime ell from pi^2 + [q mod ell] = [t] pi on E[ell].
unsigned schoof_t_mod_ell(const Curve& e, unsigned ell) {
    const Field& f = e.field();
    u64 p = f.p();
    Poly m = division_poly(e, ell).even_part.monic();
    for (;;) {
        try {
            SymContext c{e, m, e.rhs_poly() % m};
            Poly xq = poly_modexp(Poly::x(f), p, m);
            Poly yq = poly_modexp(e.rhs_poly(), (p - 1) / 2, m);
            auto frob = [&](const SymPoint& pt) {
                if (pt.inf) return pt;
                return SymPoint{poly_compose_mod(pt.u, xq, m),
                                (poly_compose_mod(pt.v, xq, m) * yq) % m, false};
            };
            SymPoint generic{Poly::x(f) % m, Poly::from_ints(f, {1}), false};
            SymPoint pi2 = frob(frob(generic));
            SymPoint qbar = sym_scalar(c, p % ell, generic);
            SymPoint lhs = sym_add(c, pi2, qbar);
            if (lhs.inf) return 0;
            SymPoint pj = generic;
            for (unsigned j = 1; 2 * j <= ell; ++j) {
                if (j > 1) pj = sym_add(c, pj, generic);
                SymPoint rhs = frob(pj);
                if (((lhs.u - rhs.u) % m).is_zero()) {
                    if (((lhs.v - rhs.v) % m).is_zero()) return j;
                    if (((lhs.v + rhs.v) % m).is_zero()) return ell - j;
                    throw ModulusSplit{poly_gcd(lhs.v - rhs.v, m)};
                }
            }
            throw InternalError("no trace residue matched the Frobenius identity");
        } catch (const ModulusSplit& split) {
            Poly g = poly_gcd(split.factor, m);
            if (g.degree() < 1 || g.degree() >= m.degree())
                throw InternalError("modulus split produced no proper factor");
            m = g;  // restart in the smaller quotient ring
        }
    }
}

}  // namespace

long long schoof_trace(const Curve& e) {
    const Field& f = e.field();
    if (!f.is_prime_field()) throw BadInput("schoof_trace expects a prime field");
    u64 p = f.p();
    if (p <= 3 || p > 10000) throw BadInput("schoof_trace expects 3 < p <= 10^4");
    u64 s = isqrt_u64(4 * p);

    std::vector<std::pair<u64, u64>> residues;
    {
        // ell = 2: t is even iff the curve cubic has a rational root
        Poly cubic = e.rhs_poly();
        Poly xq = poly_modexp(Poly::x(f), p, cubic);
        Poly g = poly_gcd(xq - (Poly::x(f) % cubic), cubic);
        residues.push_back({2, g.degree() >= 1 ? 0u : 1u});
    }
    u128 prod = 2;
    for (u64 ell = 3; prod <= (u128)2 * s + 1; ell += 2) {
        if (!is_prime_u64(ell) || ell == p) continue;
        residues.push_back({ell, schoof_t_mod_ell(e, (unsigned)ell)});
        prod *= ell;
    }
    u128 mod = 1, t = 0;
    for (auto [ell, r] : residues) {
        u64 m1_mod_ell = (u64)(mod % ell);
        u64 inv = 1;
        {
            u64 a = m1_mod_ell % ell, e2 = ell - 2, acc = 1;
            while (e2) {
                if (e2 & 1) acc = acc * a % ell;
                a = a * a % ell;
                e2 >>= 1;
            }
            inv = acc;
        }
        u64 diff = (r + ell - (u64)(t % ell)) % ell;
        t = t + mod * (diff * inv % ell);
        mod = mod * ell;
    }
    long long tt = (long long)(u64)(t % mod);
    if ((u128)tt > mod / 2) tt -= (long long)(u64)mod;
    if (tt > (long long)s || tt < -(long long)s)
        throw InternalError("CRT trace fell outside the Hasse interval");
    SeededRng check(0xC0FFEE);
    for (int i = 0; i < 3; ++i) {
        CurvePoint pt = e.random_point(check);
        if (!scalar_mul((long long)(p + 1) - tt, pt).is_infinity())
            throw InternalError("schoof trace failed the annihilation check");
    }
    return tt;
}

FrobeniusData frobenius_data(const Curve& e, SeededRng& rng) {
    const Field& f = e.field();
    if (!f.size()) throw FieldTooLarge("counting needs an enumerable field");
    u64 q = *f.size();
    u64 n = q <= (1ull << 16) ? count_naive(e) : count_bsgs(e, rng);
    return FrobeniusData{q, n, (long long)(q + 1) - (long long)n};
}

u64 extension_order(const FrobeniusData& base, unsigned n) {
    if (n < 1) throw BadInput("extension degree must be >= 1");
    using i128 = __int128;
    i128 q = base.q, t = base.trace;
    i128 s_prev = 2, s_cur = t;
    for (unsigned k = 1; k < n; ++k) {
        i128 s_next = t * s_cur - q * s_prev;
        s_prev = s_cur;
        s_cur = s_next;
    }
    u128 qn = 1;
    for (unsigned k = 0; k < n; ++k) {
        qn *= base.q;
        if (qn > ((u128)1 << 62)) throw FieldTooLarge("q^n exceeds the supported range");
    }
    i128 result = (i128)qn + 1 - s_cur;
    return (u64)result;
}

bool is_supersingular(const Curve& e, SeededRng& rng) {
    FrobeniusData fd = frobenius_data(e, rng);
    return fd.trace % (long long)e.field().p() == 0;
}

std::map<u64, std::set<std::string>> isogeny_class_partition(u64 p) {
    if (p > 200) throw BadInput("partition enumeration is limited to p <= 200");
    const Field& f = Field::prime(p);
    std::map<u64, std::set<std::string>> buckets;
    for (u64 ai = 0; ai < p; ++ai)
        for (u64 bi = 0; bi < p; ++bi) {
            Fel a = f.from_int(ai), b = f.from_int(bi);
            if ((f.from_int(4) * a * a * a + f.from_int(27) * b * b).is_zero()) continue;
            Curve e(f, a, b);
            buckets[count_naive(e)].insert(e.j_invariant().label());
        }
    return buckets;
}

FrobeniusOrderData conductor_of_frobenius_order(long long disc) {
    if (disc >= 0) throw BadInput("ordinary Frobenius discriminant must be negative");
    u64 m = (u64)(-disc);
    u64 square_part = 1;
    u64 rest = m;
    for (u64 d = 2; d * d <= rest; ++d) {
        while (rest % (d * d) == 0) {
            rest /= d * d;
            square_part *= d;
        }
    }
    long long d0 = -(long long)rest;  // squarefree core, negative
    long long d_k;
    u64 cond;
    if (((d0 % 4) + 4) % 4 == 1) {
        d_k = d0;
        cond = square_part;
    } else {
        d_k = 4 * d0;
        if (square_part % 2 != 0) throw InternalError("conductor parity violated");
        cond = square_part / 2;
    }
    if ((long long)cond * (long long)cond * d_k != disc)
        throw InternalError("conductor decomposition failed");
    return FrobeniusOrderData{d_k, cond};
}

}  // namespace isoglab
