#pragma once

#include <map>
#include <set>

#include "isoglab/divpoly.hpp"

namespace isoglab {

// Frobenius data of E/F_q: order, trace t = q + 1 - #E, and the
// discriminant t^2 - 4q of the characteristic polynomial of Frobenius.
struct FrobeniusData {
    u64 q = 0;
    u64 order = 0;
    long long trace = 0;
    long long disc() const { return trace * trace - 4 * (long long)q; }
};

// Ground-truth oracle: 1 + sum_x (1 + chi(x^3 + ax + b)). Field size <= 2^22.
u64 count_naive(const Curve& e);

// Point order statistics in the Hasse window; agrees with count_naive.
// Field size <= 2^48.
u64 count_bsgs(const Curve& e, SeededRng& rng);

// Schoof's algorithm over a prime field, 3 < p <= 10^4: t mod ell for small
// primes ell, CRT-combined inside the Hasse interval.
long long schoof_trace(const Curve& e);

FrobeniusData frobenius_data(const Curve& e, SeededRng& rng);

// #E(F_{q^n}) from the base data through the Lucas-style recurrence
// s_{k+1} = t s_k - q s_{k-1}, s_0 = 2, s_1 = t.
u64 extension_order(const FrobeniusData& base, unsigned n);

// trace = 0 mod p.
bool is_supersingular(const Curve& e, SeededRng& rng);

// Every curve over F_p (p <= 200) bucketed by group order; the buckets are
// the isogeny classes. Values are sets of canonical j-labels.
std::map<u64, std::set<std::string>> isogeny_class_partition(u64 p);

// Conductor data of Z[pi]: disc = f^2 d_K with d_K fundamental.
struct FrobeniusOrderData {
    long long d_k;  // fundamental discriminant (< 0 for ordinary curves)
    u64 conductor;  // f_pi
};
FrobeniusOrderData conductor_of_frobenius_order(long long disc);

}  // namespace isoglab
