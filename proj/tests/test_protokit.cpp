#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>

#include "doctest.h"
#include "isoglab/protocols.hpp"

using namespace isoglab;

TEST_CASE("ecdh") {
    const Field& f = Field::prime(1009);
    Curve e = Curve::from_ints(f, 7, 11);
    SeededRng rng(5);
    EcdhParams params = ecdh_params(e, rng);
    CHECK(is_prime_u64(params.order));
    CHECK(scalar_mul_u(params.order, params.generator).is_infinity());

    EcdhTranscript t1 = ecdh_run(params, rng);
    CHECK(scalar_mul_u(t1.secret_a, t1.public_b) == t1.shared);
    CHECK(scalar_mul_u(t1.secret_b, t1.public_a) == t1.shared);

    // same seed, same transcript
    SeededRng r1(42), r2(42);
    EcdhTranscript a = ecdh_run(params, r1), b = ecdh_run(params, r2);
    CHECK(a.secret_a == b.secret_a);
    CHECK(a.shared == b.shared);

    // a = 1 gives A = P
    for (int i = 0; i < 200; ++i) {
        SeededRng probe(i);
        EcdhTranscript t = ecdh_run(params, probe);
        if (t.secret_a == 1) {
            CHECK(t.public_a == params.generator);
            break;
        }
    }

    // shared secret recoverable by the dlp oracle at desk scale
    u64 loga = dlp_solve(params.generator, t1.public_a, params.order);
    CHECK(loga == t1.secret_a);
    CHECK(scalar_mul_u(loga, t1.public_b) == t1.shared);

    // bad generator rejected
    EcdhParams bad = params;
    bad.order = params.order * 2;
    CHECK_THROWS_AS(ecdh_run(bad, rng), BadGenerator);
}

TEST_CASE("pohlig-hellman dlp") {
    const Field& f = Field::prime(2003);
    Curve e = Curve::from_ints(f, 3, 8);
    SeededRng rng(7);
    FrobeniusData fd = frobenius_data(e, rng);
    // pick a point of full-ish order
    CurvePoint p = e.random_point(rng);
    u64 n = point_order(p, fd.order);
    CHECK(dlp_solve(p, e.infinity(), n) == 0);
    CHECK(dlp_solve(p, p, n) == 1);
    for (int i = 0; i < 100; ++i) {
        u64 k = rng.below(n);
        REQUIRE(dlp_solve(p, scalar_mul_u(k, p), n) == k);
    }
    // a point outside the subgroup is rejected
    if (fd.order % n != 0 || fd.order != n) {
        // find a point not in <p>, if the group is larger
        for (int i = 0; i < 50 && fd.order != n; ++i) {
            CurvePoint q = e.random_point(rng);
            bool inside = false;
            try {
                dlp_solve(p, q, n);
                inside = true;
            } catch (const NotInSubgroup&) {
            }
            if (!inside) break;
        }
    }
}

TEST_CASE("cgl hash") {
    const IsogenyGraph& g = cached_supersingular_graph(97, 2);
    std::string j0 = g.vertices[0];
    CHECK(cgl_hash(97, j0, {}) == j0);  // empty message

    std::vector<int> message{0, 1, 0, 1, 0, 1};
    std::string h1 = cgl_hash(97, j0, message);
    std::string h2 = cgl_hash(97, j0, message);
    CHECK(h1 == h2);  // determinism

    // independent oracle: replay the walk over the exported adjacency
    {
        size_t cur = g.index_of(j0);
        std::optional<size_t> prev;
        size_t pos = 0;
        bool first = true;
        auto candidates_of = [&](size_t at) {
            std::vector<size_t> cands;
            for (size_t v = 0; v < g.vertices.size(); ++v) {
                if (prev && v == *prev) continue;
                for (int c = 0; c < g.adjacency[at][v]; ++c) cands.push_back(v);
            }
            return cands;
        };
        while (pos < message.size()) {
            auto cands = candidates_of(cur);
            size_t pick;
            if (first) {
                if (pos + 2 > message.size()) break;
                unsigned sel = (unsigned)(message[pos] * 2 + message[pos + 1]);
                pos += 2;
                if (sel == 3) continue;
                pick = sel % cands.size();
                first = false;
            } else {
                unsigned sel = (unsigned)message[pos];
                pos += 1;
                pick = sel % cands.size();
                if (cands.size() > 2) break;  // oracle only covers the generic shape
            }
            prev = cur;
            cur = cands[pick];
        }
        if (pos == message.size()) CHECK(g.vertices[cur] == h1);
    }

    CHECK_THROWS_AS(cgl_hash(97, "5+5*i", message), NotSupersingular);
}

TEST_CASE("cgl walks collide on equal messages and diverge at a flipped bit") {
    const IsogenyGraph& g = cached_supersingular_graph(97, 2);
    // equal messages collide from every start
    for (const auto& j0 : g.vertices) {
        std::vector<int> m{1, 0, 0, 1, 1, 0};
        CHECK(cgl_hash(97, j0, m) == cgl_hash(97, j0, m));
    }
    // flipping one bit changes the vertex chosen at that step whenever the
    // step offers two distinct codomains (walks may reconverge later)
    int local_divergences = 0, checked = 0;
    for (const auto& j0 : g.vertices) {
        for (size_t flip = 2; flip < 6; ++flip) {
            std::vector<int> m1{0, 1, 0, 1, 0, 1};
            std::vector<int> m2 = m1;
            m2[flip] ^= 1;
            auto w1 = cgl_walk(g, j0, m1);
            auto w2 = cgl_walk(g, j0, m2);
            if (w1.size() < 6 - 1 || w2.size() < 6 - 1) continue;  // irregular reads
            size_t step = flip - 1;  // two bits feed the first step
            // prefix before the flip must agree
            for (size_t i = 0; i + 1 < step; ++i) REQUIRE(w1[i] == w2[i]);
            ++checked;
            if (w1[step] != w2[step]) ++local_divergences;
        }
    }
    CHECK(checked > 10);
    CHECK(local_divergences > checked / 2);  // forced steps are the exception
}

TEST_CASE("rostovtsev-stolbunov") {
    // fixed small ordinary base field whose traces admit both 3 and 5 as
    // Elkies primes (3-Elkies needs q = 2 mod 3 and 3 | t; av F_17 with
    // t = 3 fits both)
    const Field& f = Field::prime(17);
    std::optional<RsParams> params;
    std::optional<Curve> chosen;
    for (u64 a = 1; a < 17 && !params; ++a)
        for (u64 b = 1; b < 17 && !params; ++b) {
            Fel fa = f.from_int(a), fb = f.from_int(b);
            if ((f.from_int(4) * fa * fa * fa + f.from_int(27) * fb * fb).is_zero()) continue;
            Curve e(f, fa, fb);
            try {
                params = rs_params(e, {3, 5}, 12);
                chosen = e;
            } catch (const Error&) {
            }
        }
    REQUIRE(params.has_value());
    MESSAGE("RS curve: ", chosen->str());

    // empty routes leave the curve fixed
    CHECK(rs_apply(*params, params->curve, {}).j_invariant() == params->curve.j_invariant());

    // route order does not matter
    Curve c1 = rs_apply(*params, params->curve, {3, 5, 3});
    Curve c2 = rs_apply(*params, params->curve, {3, 3, 5});
    Curve c3 = rs_apply(*params, params->curve, {5, 3, 3});
    CHECK(c1.j_invariant() == c2.j_invariant());
    CHECK(c2.j_invariant() == c3.j_invariant());

    // 20 seeded exchanges agree
    for (u64 seed = 1; seed <= 20; ++seed) {
        SeededRng rng(seed);
        RsTranscript t = rs_keyexchange(*params, rng, 2);
        REQUIRE(t.shared_a == t.shared_b);
    }

    // a non-Elkies prime is rejected
    bool found_atkin = false;
    for (u64 a = 1; a < 17 && !found_atkin; ++a)
        for (u64 b = 1; b < 17 && !found_atkin; ++b) {
            Fel fa = f.from_int(a), fb = f.from_int(b);
            if ((f.from_int(4) * fa * fa * fa + f.from_int(27) * fb * fb).is_zero()) continue;
            Curve e(f, fa, fb);
            SeededRng rng(3);
            FrobeniusData fd = frobenius_data(e, rng);
            if (fd.trace % 17 == 0) continue;
            try {
                rs_params(e, {5}, 12);
            } catch (const EigenvalueNotFound&) {
                found_atkin = true;
            }
        }
    CHECK(found_atkin);
}

TEST_CASE("sidh setup at p = 431") {
    SeededRng rng(42);
    SidhParams params = sidh_setup(2, 4, 3, 3, 1, rng);
    CHECK(params.p == 431);
    CHECK(params.twist_sign == -1);
    // #E0(F_{431^2}) = 432^2: basis orders confirm the structure
    CHECK(scalar_mul_u(16, params.pa).is_infinity());
    CHECK(!scalar_mul_u(8, params.pa).is_infinity());
    CHECK(scalar_mul_u(27, params.pb).is_infinity());
    CHECK(!scalar_mul_u(9, params.pb).is_infinity());
    // independence of the A basis
    CurvePoint u = scalar_mul_u(8, params.pa), v = scalar_mul_u(8, params.qa);
    CHECK(u != v);
    CHECK(u != -v);
    // (2,5,3,2,1): 32*9 = 288, 287 = 7*41 and 289 = 17^2, both composite
    CHECK_THROWS_AS(sidh_setup(2, 5, 3, 2, 1, rng), NotPrime);
}

TEST_CASE("sidh key exchange") {
    SeededRng setup_rng(7);
    SidhParams params = sidh_setup(2, 4, 3, 3, 1, setup_rng);
    for (u64 seed = 1; seed <= 50; ++seed) {
        SeededRng rng(seed);
        auto [ska, pka] = sidh_keygen(params, 'A', rng);
        auto [skb, pkb] = sidh_keygen(params, 'B', rng);
        // images carry the order of the other side's torsion
        CHECK(scalar_mul_u(27, pka.img_p).is_infinity());
        CHECK(!scalar_mul_u(9, pka.img_p).is_infinity());
        std::string ja = sidh_shared(params, 'A', ska, pkb);
        std::string jb = sidh_shared(params, 'B', skb, pka);
        REQUIRE(ja == jb);
    }
    // deterministic transcripts
    SeededRng r1(99), r2(99);
    auto k1 = sidh_keygen(params, 'A', r1), k2 = sidh_keygen(params, 'A', r2);
    CHECK(k1.first.m == k2.first.m);
    CHECK(k1.second.curve == k2.second.curve);
    // (m, n) = (1, 0) gives kernel <P_A>
    ChainResult chain = isogeny_chain_from_generator(params.e0, params.pa, 2, 4, {});
    CHECK(chain.degree == 16);
}

TEST_CASE("sidh works across parameter sets, including the +1 twist side") {
    // (2,2,3,2,5): 4*9*5 - 1 = 179 prime; (3,3,5,1,2): 27*5*2 + 1 = 271
    // prime with the -1 side composite, so E0 is the quadratic twist of
    // order (p-1)^2
    struct Case {
        unsigned la, ea, lb, eb, f;
        u64 p;
        int sign;
    };
    for (Case c : {Case{2, 2, 3, 2, 5, 179, -1}, Case{3, 3, 5, 1, 2, 271, +1}}) {
        SeededRng setup_rng(77);
        SidhParams params = sidh_setup(c.la, c.ea, c.lb, c.eb, c.f, setup_rng);
        CHECK(params.p == c.p);
        CHECK(params.twist_sign == c.sign);
        for (u64 seed = 1; seed <= 10; ++seed) {
            SeededRng rng(seed);
            auto [ska, pka] = sidh_keygen(params, 'A', rng);
            auto [skb, pkb] = sidh_keygen(params, 'B', rng);
            REQUIRE(sidh_shared(params, 'A', ska, pkb) ==
                    sidh_shared(params, 'B', skb, pka));
        }
    }
}

TEST_CASE("sidh encryption round-trip") {
    SeededRng setup_rng(7);
    SidhParams params = sidh_setup(2, 4, 3, 3, 1, setup_rng);
    SeededRng keyrng(1);
    auto [ska, pka] = sidh_keygen(params, 'A', keyrng);
    std::vector<uint8_t> message{'i', 's', 'o', 'g', 'e', 'n', 'y'};
    std::set<std::string> ciphertexts;
    for (u64 seed = 1; seed <= 50; ++seed) {
        SeededRng rng(seed);
        SidhCiphertext ct = sidh_encrypt(params, pka, message, rng);
        REQUIRE(sidh_decrypt(params, ska, ct) == message);
        std::string fingerprint(ct.masked.begin(), ct.masked.end());
        ciphertexts.insert(fingerprint + ct.ephemeral.curve.str());
    }
    // randomized encryption: the ephemeral keyspace has only 4 * 3^2 = 36
    // subgroups at this toy size, so collisions among 50 draws are expected
    CHECK(ciphertexts.size() >= 20);
    // flipping a ciphertext bit flips exactly that plaintext bit
    SeededRng rng(3);
    SidhCiphertext ct = sidh_encrypt(params, pka, message, rng);
    ct.masked[2] ^= 0x10;
    auto tampered = sidh_decrypt(params, ska, ct);
    CHECK(tampered[2] == (message[2] ^ 0x10));
    for (size_t i = 0; i < message.size(); ++i)
        if (i != 2) CHECK(tampered[i] == message[i]);
}

TEST_CASE("zk identification") {
    SeededRng setup_rng(7);
    SidhParams params = sidh_setup(2, 4, 3, 3, 1, setup_rng);
    SeededRng keyrng(11);
    auto [ska, pka] = sidh_keygen(params, 'A', keyrng);

    // honest prover passes every round
    SeededRng rng(21);
    ZkTranscript honest = zk_identify(params, ska, pka, 10, rng, false);
    CHECK(honest.all_accepted);
    for (const auto& round : honest.rounds) CHECK(round.accepted);

    // cheater passes a single round about half the time
    int accepted = 0;
    const int trials = 2000;
    SeededRng cheat_rng(31);
    for (int i = 0; i < trials; ++i) {
        ZkTranscript t = zk_identify(params, ska, pka, 1, cheat_rng, true);
        if (t.all_accepted) ++accepted;
    }
    double rate = (double)accepted / trials;
    MESSAGE("1-round cheater rate: ", rate);
    CHECK(rate > 0.45);
    CHECK(rate < 0.55);

    // over 10 rounds the cheater essentially never survives
    int survived = 0;
    SeededRng cheat10(41);
    for (int i = 0; i < 2000; ++i) {
        ZkTranscript t = zk_identify(params, ska, pka, 10, cheat10, true);
        if (t.all_accepted) ++survived;
    }
    CHECK((double)survived / 2000 < 0.01);
}

TEST_CASE("schreier walk dh") {
    SeededRng rng(13);
    WalkDhTranscript t = schreier_walk_dh(13, {2, 3, 5}, rng, 4);
    CHECK(t.g_ab_a == t.g_ab_b);
    // rho(g) = g^(prod sigma): route application is plain exponent product
    for (u64 seed = 0; seed < 100; ++seed) {
        SeededRng r(seed);
        WalkDhTranscript w = schreier_walk_dh(13, {2, 3, 5}, r, 5);
        u64 prod = 1;
        for (u64 s : w.route_a) prod = prod * s % 13;
        CHECK(w.g_a == prod % 13);
    }
    // empty routes leave g fixed
    SeededRng r0(1);
    WalkDhTranscript w0 = schreier_walk_dh(13, {2, 3, 5}, r0, 0);
    CHECK(w0.g_a == w0.g);
    CHECK(w0.g_b == w0.g);
    // direction sets containing inverse pairs are rejected
    CHECK_THROWS_AS(schreier_walk_dh(13, {2, 7}, rng, 3), BadDirectionSet);  // 7 = 2^{-1}
    CHECK_THROWS_AS(schreier_walk_dh(13, {12}, rng, 3), BadDirectionSet);   // self-inverse
    CHECK_THROWS_AS(schreier_walk_dh(12, {6}, rng, 3), BadDirectionSet);    // not a unit
}

TEST_CASE("protocol transcripts are pure functions of the seed") {
    SeededRng setup_rng(7);
    SidhParams params = sidh_setup(2, 4, 3, 3, 1, setup_rng);
    SeededRng keyrng(11);
    auto [ska, pka] = sidh_keygen(params, 'A', keyrng);
    SeededRng za(5), zb(5);
    ZkTranscript ta = zk_identify(params, ska, pka, 5, za, true);
    ZkTranscript tb = zk_identify(params, ska, pka, 5, zb, true);
    REQUIRE(ta.rounds.size() == tb.rounds.size());
    for (size_t i = 0; i < ta.rounds.size(); ++i) {
        CHECK(ta.rounds[i].commit_eb == tb.rounds[i].commit_eb);
        CHECK(ta.rounds[i].commit_eab == tb.rounds[i].commit_eab);
        CHECK(ta.rounds[i].challenge == tb.rounds[i].challenge);
        CHECK(ta.rounds[i].accepted == tb.rounds[i].accepted);
    }
}
