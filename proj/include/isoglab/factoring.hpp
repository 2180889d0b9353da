#pragma once

#include <chrono>

#include "isoglab/fields.hpp"

namespace isoglab {

// Projective point over Z/NZ for the elliptic curve method: the implicit
// group is the product over the prime factors; a vanishing Z coordinate
// modulo one factor only is exactly the event that splits N.
struct ModNPoint {
    u64 x, y, z;
};

struct FactorResult {
    bool split = false;
    u64 p = 0, q = 0;  // split: p * q = N, 1 < p <= q < N
    unsigned attempts = 0;
    std::chrono::milliseconds elapsed{0};
};

// Pollard's p-1 with e = prod_{r prime < B} r^{floor(log_r sqrt(N))};
// Fail is a value, not a fault. N odd composite below 2^62, B <= 10^5.
FactorResult pollard_pminus1(u64 n, u64 bound, SeededRng& rng);

// Lenstra's ECM: random (a, X, Y) per curve, b deduced, projective
// double-and-add over Z/NZ, gcd probes on Z and on non-invertible
// denominators. gcd(N, 6) = 1 required.
FactorResult ecm(u64 n, u64 bound, SeededRng& rng, unsigned max_curves);

// The shared smoothness exponent of both figures, as prime-power steps.
std::vector<std::pair<u64, unsigned>> smoothness_exponent(u64 n, u64 bound);

// The ECM projective ladder on y^2 = x^3 + ax + b over Z/NZ (the curve
// coefficient b never enters the formulas). Exposed for cross-validation
// against the affine group law when N is prime.
ModNPoint modn_scalar_mul(u64 n, u64 a, const ModNPoint& p, u64 k);

}  // namespace isoglab
