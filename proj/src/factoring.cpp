#include "isoglab/factoring.hpp"

#include <cmath>
#include <numeric>

namespace isoglab {

namespace {

u64 mulmod_n(u64 a, u64 b, u64 n) { return (u64)((u128)a * b % n); }

u64 addmod_n(u64 a, u64 b, u64 n) {
    u64 s = a + b;
    return s >= n ? s - n : s;
}

u64 submod_n(u64 a, u64 b, u64 n) { return a >= b ? a - b : a + n - b; }

u64 powmod_n(u64 a, u64 e, u64 n) {
    u64 r = 1 % n;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_n(r, a, n);
        a = mulmod_n(a, a, n);
        e >>= 1;
    }
    return r;
}

FactorResult split_from(u64 n, u64 d, unsigned attempts,
                        std::chrono::steady_clock::time_point start) {
    FactorResult out;
    out.split = true;
    out.p = std::min(d, n / d);
    out.q = std::max(d, n / d);
    out.attempts = attempts;
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

FactorResult fail_result(unsigned attempts, std::chrono::steady_clock::time_point start) {
    FactorResult out;
    out.attempts = attempts;
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

}  // namespace

std::vector<std::pair<u64, unsigned>> smoothness_exponent(u64 n, u64 bound) {
    // e = prod_{r prime < B} r^{floor(log_r sqrt(N))}
    std::vector<std::pair<u64, unsigned>> steps;
    double half_log = 0.5 * std::log((double)n);
    for (u64 r = 2; r < bound; ++r) {
        if (!is_prime_u64(r)) continue;
        unsigned k = (unsigned)(half_log / std::log((double)r));
        if (k > 0) steps.push_back({r, k});
    }
    return steps;
}

FactorResult pollard_pminus1(u64 n, u64 bound, SeededRng& rng) {
    if (n < 3 || n % 2 == 0) throw BadInput("N must be an odd composite >= 3");
    if (n >= (1ull << 62)) throw BadInput("N must be below 2^62");
    if (bound > 100000) throw BadInput("smoothness bound capped at 10^5");
    auto start = std::chrono::steady_clock::now();
    u64 x = 2 + rng.below(n - 3);  // random 1 < x < N
    u64 g0 = std::gcd(x, n);
    if (g0 != 1 && g0 != n) return split_from(n, g0, 1, start);  // lucky draw
    u64 y = x % n;
    for (auto [r, k] : smoothness_exponent(n, bound))
        for (unsigned i = 0; i < k; ++i) y = powmod_n(y, r, n);
    u64 g = std::gcd(submod_n(y, 1, n), n);
    if (g != 1 && g != n) return split_from(n, g, 1, start);
    return fail_result(1, start);
}

namespace {

// Projective short-Weierstrass arithmetic over Z/NZ, derived from the
// affine law by clearing denominators. A non-invertible denominator shows
// up as a factor of Z in the result; the gcd probe finds it afterwards.
struct SplitInAdd {
    u64 factor;
};

struct ModNCurve {
    u64 n, a, b;

    ModNPoint dbl(const ModNPoint& p) const {
        // W = 3X^2 + a Z^2;  S = Y Z;  B = X Y S;  H = W^2 - 8B
        u64 xx = mulmod_n(p.x, p.x, n);
        u64 zz = mulmod_n(p.z, p.z, n);
        u64 w = addmod_n(mulmod_n(3, xx, n), mulmod_n(a, zz, n), n);
        u64 s = mulmod_n(p.y, p.z, n);
        u64 bb = mulmod_n(p.x, mulmod_n(p.y, s, n), n);
        u64 h = submod_n(mulmod_n(w, w, n), mulmod_n(8, bb, n), n);
        u64 x3 = mulmod_n(2, mulmod_n(h, s, n), n);
        u64 y2 = mulmod_n(p.y, p.y, n);
        u64 s2 = mulmod_n(s, s, n);
        u64 y3 = submod_n(mulmod_n(w, submod_n(mulmod_n(4, bb, n), h, n), n),
                          mulmod_n(8, mulmod_n(y2, s2, n), n), n);
        u64 z3 = mulmod_n(8, mulmod_n(s2, s, n), n);
        return {x3, y3, z3};
    }

    ModNPoint add(const ModNPoint& p, const ModNPoint& q) const {
        if (p.z == 0) return q;
        if (q.z == 0) return p;
        // U = Y2 Z1 - Y1 Z2;  V = X2 Z1 - X1 Z2
        u64 u = submod_n(mulmod_n(q.y, p.z, n), mulmod_n(p.y, q.z, n), n);
        u64 v = submod_n(mulmod_n(q.x, p.z, n), mulmod_n(p.x, q.z, n), n);
        if (v == 0) {
            // matching abscissas componentwise; the ordinate gcd tells the
            // doubling components apart from the inverse ones
            u64 g = std::gcd(u, n);
            if (g == n) return dbl(p);
            if (g == 1) return {0, 1 % n, 0};
            throw SplitInAdd{g};
        }
        u64 v2 = mulmod_n(v, v, n);
        u64 v3 = mulmod_n(v2, v, n);
        u64 z1z2 = mulmod_n(p.z, q.z, n);
        u64 v2x1z2 = mulmod_n(v2, mulmod_n(p.x, q.z, n), n);
        // A = U^2 Z1 Z2 - V^3 - 2 V^2 X1 Z2
        u64 aa = submod_n(submod_n(mulmod_n(mulmod_n(u, u, n), z1z2, n), v3, n),
                          mulmod_n(2, v2x1z2, n), n);
        u64 x3 = mulmod_n(v, aa, n);
        u64 y3 = submod_n(mulmod_n(u, submod_n(v2x1z2, aa, n), n),
                          mulmod_n(v3, mulmod_n(p.y, q.z, n), n), n);
        u64 z3 = mulmod_n(v3, z1z2, n);
        return {x3, y3, z3};
    }

    ModNPoint mul(u64 k, ModNPoint p) const {
        ModNPoint acc{0, 1 % n, 0};
        while (k) {
            if (k & 1) acc = add(acc, p);
            p = dbl(p);
            k >>= 1;
        }
        return acc;
    }
};

}  // namespace

ModNPoint modn_scalar_mul(u64 n, u64 a, const ModNPoint& p, u64 k) {
    ModNCurve curve{n, a, 0};
    return curve.mul(k, p);
}

FactorResult ecm(u64 n, u64 bound, SeededRng& rng, unsigned max_curves) {
    if (n < 5 || std::gcd(n, (u64)6) != 1) throw BadInput("N must be coprime to 6");
    if (n >= (1ull << 62)) throw BadInput("N must be below 2^62");
    auto start = std::chrono::steady_clock::now();
    auto steps = smoothness_exponent(n, bound);
    for (unsigned attempt = 1; attempt <= max_curves; ++attempt) {
        // random point first, curve deduced from it
        u64 a = rng.below(n), x = rng.below(n), y = rng.below(n);
        u64 b = submod_n(submod_n(mulmod_n(y, y, n), mulmod_n(x, mulmod_n(x, x, n), n), n),
                         mulmod_n(a, x, n), n);
        // singular curves leak a factor through the discriminant
        u64 disc = addmod_n(mulmod_n(4, mulmod_n(a, mulmod_n(a, a, n), n), n),
                            mulmod_n(27, mulmod_n(b, b, n), n), n);
        u64 gd = std::gcd(disc, n);
        if (gd == n) continue;  // discriminant vanished wholesale; next curve
        if (gd != 1) return split_from(n, gd, attempt, start);

        ModNCurve curve{n, a, b};
        ModNPoint p{x, y, 1};
        bool next_curve = false;
        try {
            for (auto [r, k] : steps) {
                for (unsigned i = 0; i < k; ++i) {
                    p = curve.mul(r, p);
                    u64 g = std::gcd(p.z, n);
                    if (g == n) {
                        next_curve = true;  // order smooth in every component at once
                        break;
                    }
                    if (g != 1) return split_from(n, g, attempt, start);
                }
                if (next_curve) break;
            }
        } catch (const SplitInAdd& s) {
            return split_from(n, s.factor, attempt, start);
        }
    }
    return fail_result(max_curves, start);
}

}  // namespace isoglab
