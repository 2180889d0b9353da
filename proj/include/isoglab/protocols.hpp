#pragma once

#include "isoglab/graphs.hpp"

namespace isoglab {

// ------------------------------------------------------------------ ECDH ---

struct EcdhParams {
    Curve curve;
    CurvePoint generator;
    u64 order;  // prime order of the generator
};

// Locate a prime-order generator: the largest prime factor of #E and a
// cofactor multiple. Throws BadGenerator when no fit exists.
EcdhParams ecdh_params(const Curve& e, SeededRng& rng);

struct EcdhTranscript {
    u64 secret_a, secret_b;
    CurvePoint public_a, public_b, shared;
};

EcdhTranscript ecdh_run(const EcdhParams& params, SeededRng& rng);

// Discrete log of a in base gen, gen of order n (trial-division factored):
// Pohlig-Hellman digits with baby-step giant-step in each prime subgroup.
u64 dlp_solve(const CurvePoint& gen, const CurvePoint& a, u64 n);

// ------------------------------------------------------------------- CGL ---

// Walk the 2-isogeny supersingular graph at p without backtracking, one
// message bit per step after a 2-bit first step (selector 3 re-reads).
// Bits are consumed most-significant-first from `bits`.
std::string cgl_hash(const IsogenyGraph& graph, const std::string& j0,
                     const std::vector<int>& bits);
std::string cgl_hash(u64 p, const std::string& j0, const std::vector<int>& bits);

// The full walk (vertices visited after j0); the hash is its last entry.
std::vector<std::string> cgl_walk(const IsogenyGraph& graph, const std::string& j0,
                                  const std::vector<int>& bits);

// Shared per-process graph cache (graphs are immutable).
const IsogenyGraph& cached_supersingular_graph(u64 p, unsigned ell);

// ---------------------------------------------------- Rostovtsev-Stolbunov ---

struct RsParams {
    Curve curve;
    long long trace;
    std::vector<unsigned> ells;         // Elkies primes for the curve
    std::vector<unsigned> eigenvalues;  // chosen positive direction per ell
    unsigned max_ext_degree;
};

// Validates that each ell splits X^2 - tX + q and fixes the smaller root
// as the positive direction. Throws EigenvalueNotFound otherwise.
RsParams rs_params(const Curve& e, const std::vector<unsigned>& ells,
                   unsigned max_ext_degree);

// One positive-direction step: quotient by E[ell] cap ker(pi - lambda).
Curve rs_step(const RsParams& params, const Curve& from, unsigned ell);
// Apply a full route (multiset of indices into params.ells).
Curve rs_apply(const RsParams& params, Curve from, const std::vector<unsigned>& route);

struct RsTranscript {
    std::vector<unsigned> route_a, route_b;  // ell values, in application order
    std::string public_a, public_b;          // curve text forms
    std::string shared_a, shared_b;          // shared j labels from each side
};

RsTranscript rs_keyexchange(const RsParams& params, SeededRng& rng, unsigned steps_per_ell);

// ------------------------------------------------------------------ SIDH ---

struct SidhParams {
    unsigned la, ea, lb, eb, cofactor;
    u64 p;
    int twist_sign;  // -1: p = N f - 1 and #E0 = (p+1)^2; +1: p = N f + 1
    Curve e0;
    CurvePoint pa, qa, pb, qb;  // torsion bases of E0[la^ea], E0[lb^eb]
};

SidhParams sidh_setup(unsigned la, unsigned ea, unsigned lb, unsigned eb, unsigned cofactor,
                      SeededRng& rng);

struct SidhSecret {
    u64 m, n;
};

struct SidhPublic {
    Curve curve;             // E / <A>
    CurvePoint img_p, img_q;  // images of the other side's basis
};

// side: 'A' walks la-isogenies, 'B' walks lb-isogenies.
std::pair<SidhSecret, SidhPublic> sidh_keygen(const SidhParams& params, char side,
                                              SeededRng& rng);

// Shared j-invariant label from one side's secret and the other's public.
std::string sidh_shared(const SidhParams& params, char side, const SidhSecret& secret,
                        const SidhPublic& other);

// Kernel-generator chain of degree ell^e; pushes `carry` through each step.
struct ChainResult {
    Curve codomain;
    std::vector<CurvePoint> carried;
    u64 degree;
};
ChainResult isogeny_chain_from_generator(const Curve& start, const CurvePoint& gen,
                                         unsigned ell, unsigned e,
                                         const std::vector<CurvePoint>& carry);

// El Gamal-style hybrid: mask = byte expansion of the shared j label.
struct SidhCiphertext {
    SidhPublic ephemeral;
    std::vector<uint8_t> masked;
};

SidhCiphertext sidh_encrypt(const SidhParams& params, const SidhPublic& pk_a,
                            const std::vector<uint8_t>& message, SeededRng& rng);
std::vector<uint8_t> sidh_decrypt(const SidhParams& params, const SidhSecret& sk_a,
                                  const SidhCiphertext& ct);

// Public fixed-constant byte expansion of a label (keystream for the OTP).
std::vector<uint8_t> expand_mask(const std::string& label, size_t len);

// -------------------------------------------------------------------- ZK ---

struct ZkRound {
    std::string commit_eb, commit_eab;  // j labels of E/<B> and E/<A,B>
    int challenge;
    bool accepted;
};

struct ZkTranscript {
    std::vector<ZkRound> rounds;
    bool all_accepted;
};

// Identification protocol rounds; with cheat = true the prover guesses the
// challenge and prepares only that branch.
ZkTranscript zk_identify(const SidhParams& params, const SidhSecret& sk_a,
                         const SidhPublic& pk_a, unsigned rounds, SeededRng& rng, bool cheat);

// ------------------------------------------------- Schreier-graph walk DH ---

struct WalkDhTranscript {
    u64 n;
    std::vector<u64> directions;          // D, validated
    std::vector<u64> route_a, route_b;    // sigma sequences
    u64 g, g_a, g_b, g_ab_a, g_ab_b;      // exponents of the generator
};

// Key exchange on the Schreier exponentiation graph; routes applied as
// literal iterated exponentiation. D must not contain inverses of itself.
WalkDhTranscript schreier_walk_dh(u64 n, const std::vector<u64>& d, SeededRng& rng,
                                  unsigned route_len);

}  // namespace isoglab
