#include "isoglab/cli.hpp"

#include <chrono>

#include "CLI11.hpp"
#include "isoglab/clpoly.hpp"
#include "isoglab/factoring.hpp"
#include "isoglab/protocols.hpp"
#include "json.hpp"

namespace isoglab::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::vector<int> hex_to_bits(const std::string& hex) {
    std::vector<int> bits;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw BadInput("message must be hexadecimal");
        for (int i = 3; i >= 0; --i) bits.push_back((v >> i) & 1);
    }
    return bits;
}

std::vector<u64> parse_csv_u64(const std::string& csv) {
    std::vector<u64> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoull(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

Curve parse_curve(u64 p, long long a, long long b) {
    return Curve::from_ints(Field::prime(p), a, b);
}

json point_json(const CurvePoint& pt) { return pt.str(); }

struct Report {
    json body;
    Clock::time_point start = Clock::now();
    bool timing = false;

    std::string finish() {
        if (timing) {
            auto ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
            body["elapsed_ms"] = (long long)ms.count();
        }
        return body.dump() + "\n";
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"isoglab: an isogeny and elliptic-curve workbench over small fields"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "include elapsed_ms in the report");

    // ---- count
    auto* count_cmd = app.add_subcommand("count", "point counting: order, trace, disc");
    u64 count_p = 0;
    long long count_a = 0, count_b = 0;
    std::string count_method = "naive";
    u64 count_seed = 0;
    bool count_has_seed = false;
    count_cmd->add_option("--p", count_p)->required();
    count_cmd->add_option("--a", count_a)->required();
    count_cmd->add_option("--b", count_b)->required();
    count_cmd->add_option("--method", count_method)
        ->check(CLI::IsMember({"naive", "bsgs", "schoof"}));
    count_cmd->add_option("--seed", count_seed)->each([&](const std::string&) {
        count_has_seed = true;
    });

    // ---- graph
    auto* graph_cmd = app.add_subcommand("graph", "supersingular ell-isogeny graph export");
    u64 graph_p = 0;
    unsigned graph_ell = 2;
    std::string graph_format = "json";
    graph_cmd->add_option("--p", graph_p)->required();
    graph_cmd->add_option("--ell", graph_ell)->required();
    graph_cmd->add_option("--format", graph_format)->check(CLI::IsMember({"json", "dot"}));

    // ---- volcano
    auto* volcano_cmd = app.add_subcommand("volcano", "ordinary ell-isogeny volcano");
    u64 vol_p = 0;
    long long vol_a = 0, vol_b = 0;
    unsigned vol_ell = 2;
    volcano_cmd->add_option("--p", vol_p)->required();
    volcano_cmd->add_option("--a", vol_a)->required();
    volcano_cmd->add_option("--b", vol_b)->required();
    volcano_cmd->add_option("--ell", vol_ell);

    // ---- spectral
    auto* spectral_cmd = app.add_subcommand("spectral", "eigenvalues and expansion flags");
    u64 spec_p = 0;
    unsigned spec_ell = 2;
    u64 spec_n = 0;
    std::string spec_s;
    spectral_cmd->add_option("--p", spec_p);
    spectral_cmd->add_option("--ell", spec_ell);
    spectral_cmd->add_option("--schreier-n", spec_n);
    spectral_cmd->add_option("--s", spec_s);

    // ---- cgl
    auto* cgl_cmd = app.add_subcommand(
        "cgl",
        "CGL hash walk on the 2-isogeny graph. The first step consumes two "
        "message bits (selector values 0-2 pick the edge in codomain-label "
        "order; 3 re-reads), every later step consumes one bit with 0 = "
        "smaller label, backtracking excluded.");
    u64 cgl_p = 0;
    std::string cgl_start, cgl_message;
    cgl_cmd->add_option("--p", cgl_p)->required();
    cgl_cmd->add_option("--start", cgl_start)->required();
    cgl_cmd->add_option("--message", cgl_message)->required();

    // ---- ecdh
    auto* ecdh_cmd = app.add_subcommand("ecdh", "Diffie-Hellman over a prime-order subgroup");
    u64 ecdh_p = 101;
    long long ecdh_a = 2, ecdh_b = 3;
    u64 ecdh_seed = 0;
    ecdh_cmd->add_option("--p", ecdh_p);
    ecdh_cmd->add_option("--a", ecdh_a);
    ecdh_cmd->add_option("--b", ecdh_b);
    ecdh_cmd->add_option("--seed", ecdh_seed)->required();

    // ---- rs demo
    auto* rs_cmd = app.add_subcommand("rs", "Rostovtsev-Stolbunov key exchange");
    auto* rs_demo = rs_cmd->add_subcommand("demo", "run a seeded exchange");
    u64 rs_q = 17;
    long long rs_a = 1, rs_b = 5;
    std::string rs_ells = "3,5";
    u64 rs_seed = 0;
    rs_demo->add_option("--q", rs_q);
    rs_demo->add_option("--a", rs_a);
    rs_demo->add_option("--b", rs_b);
    rs_demo->add_option("--ells", rs_ells);
    rs_demo->add_option("--seed", rs_seed)->required();

    // ---- sidh demo
    auto* sidh_cmd = app.add_subcommand("sidh", "supersingular isogeny Diffie-Hellman");
    auto* sidh_demo = sidh_cmd->add_subcommand("demo", "run a seeded exchange");
    unsigned sidh_la = 2, sidh_ea = 4, sidh_lb = 3, sidh_eb = 3, sidh_f = 1;
    u64 sidh_seed = 0;
    bool sidh_json = false;
    sidh_demo->add_option("--lA", sidh_la);
    sidh_demo->add_option("--eA", sidh_ea);
    sidh_demo->add_option("--lB", sidh_lb);
    sidh_demo->add_option("--eB", sidh_eb);
    sidh_demo->add_option("--f", sidh_f);
    sidh_demo->add_option("--seed", sidh_seed)->required();
    sidh_demo->add_flag("--json", sidh_json);

    // ---- zk demo
    auto* zk_cmd = app.add_subcommand("zk", "SIDH zero-knowledge identification");
    auto* zk_demo = zk_cmd->add_subcommand("demo", "run seeded rounds");
    unsigned zk_rounds = 10;
    bool zk_cheat = false;
    unsigned zk_ea = 4, zk_eb = 3, zk_f = 1;
    u64 zk_seed = 0;
    zk_demo->add_option("--rounds", zk_rounds);
    zk_demo->add_flag("--cheat", zk_cheat);
    zk_demo->add_option("--eA", zk_ea);
    zk_demo->add_option("--eB", zk_eb);
    zk_demo->add_option("--f", zk_f);
    zk_demo->add_option("--seed", zk_seed)->required();

    // ---- ecm / pminus1
    auto* ecm_cmd = app.add_subcommand("ecm", "Lenstra elliptic curve factoring");
    u64 ecm_n = 0, ecm_bound = 12, ecm_seed = 0;
    unsigned ecm_curves = 200;
    ecm_cmd->add_option("--n", ecm_n)->required();
    ecm_cmd->add_option("--bound", ecm_bound);
    ecm_cmd->add_option("--seed", ecm_seed)->required();
    ecm_cmd->add_option("--max-curves", ecm_curves);

    auto* pm1_cmd = app.add_subcommand("pminus1", "Pollard p-1 factoring");
    u64 pm1_n = 0, pm1_bound = 4, pm1_seed = 0;
    pm1_cmd->add_option("--n", pm1_n)->required();
    pm1_cmd->add_option("--bound", pm1_bound);
    pm1_cmd->add_option("--seed", pm1_seed)->required();

    // ---- irred
    auto* irred_cmd = app.add_subcommand("irred", "Couveignes-Lercier irreducible polynomial");
    u64 irred_q = 7, irred_seed = 0;
    unsigned irred_ell = 5, irred_e = 1;
    irred_cmd->add_option("--q", irred_q);
    irred_cmd->add_option("--ell", irred_ell);
    irred_cmd->add_option("--e", irred_e);
    irred_cmd->add_option("--seed", irred_seed)->required();

    // ---- mitm
    auto* mitm_cmd = app.add_subcommand("mitm", "meet-in-the-middle isogeny path");
    u64 mitm_p = 0, mitm_seed = 0;
    unsigned mitm_ell = 2;
    std::string mitm_start, mitm_end;
    mitm_cmd->add_option("--p", mitm_p)->required();
    mitm_cmd->add_option("--ell", mitm_ell);
    mitm_cmd->add_option("--start", mitm_start);
    mitm_cmd->add_option("--end", mitm_end);
    mitm_cmd->add_option("--seed", mitm_seed)->required();

    // ---- isogeny enumerate
    auto* isog_cmd = app.add_subcommand("isogeny", "isogeny enumeration");
    auto* isog_enum = isog_cmd->add_subcommand("enumerate", "rational ell-isogenies from a curve");
    u64 isog_p = 0;
    long long isog_a = 0, isog_b = 0;
    unsigned isog_ell = 2;
    isog_enum->add_option("--p", isog_p)->required();
    isog_enum->add_option("--a", isog_a)->required();
    isog_enum->add_option("--b", isog_b)->required();
    isog_enum->add_option("--ell", isog_ell);

    // ---- schreier
    auto* schreier_cmd = app.add_subcommand("schreier", "Schreier exponentiation graph");
    u64 sch_n = 13;
    std::string sch_s = "2,3,5";
    std::string sch_format = "json";
    schreier_cmd->add_option("--n", sch_n);
    schreier_cmd->add_option("--s", sch_s);
    schreier_cmd->add_option("--format", sch_format)->check(CLI::IsMember({"json", "dot"}));

    // parent-level flags (--timing) may trail the subcommand
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
        sc->fallthrough();
        for (CLI::App* sub : sc->get_subcommands([](const CLI::App*) { return true; }))
            sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        Report report;
        report.timing = timing;

        if (*count_cmd) {
            Curve e = parse_curve(count_p, count_a, count_b);
            u64 order;
            if (count_method == "naive") {
                order = count_naive(e);
            } else if (count_method == "bsgs") {
                if (!count_has_seed) throw BadInput("--seed required for bsgs");
                SeededRng rng(count_seed);
                order = count_bsgs(e, rng);
            } else {
                order = (u64)((long long)(count_p + 1) - schoof_trace(e));
            }
            long long trace = (long long)(count_p + 1) - (long long)order;
            report.body = {{"command", "count"},
                           {"curve", e.str()},
                           {"method", count_method},
                           {"order", order},
                           {"trace", trace},
                           {"disc", trace * trace - 4 * (long long)count_p}};
            out << report.finish();
            return 0;
        }
        if (*graph_cmd) {
            const IsogenyGraph& g = cached_supersingular_graph(graph_p, graph_ell);
            out << export_graph(g, graph_ell,
                                graph_format == "dot" ? ExportFormat::Dot : ExportFormat::Json);
            if (graph_format == "json") out << "\n";
            return 0;
        }
        if (*volcano_cmd) {
            Curve e = parse_curve(vol_p, vol_a, vol_b);
            auto [g, rep] = build_volcano(e, vol_ell, 12);
            json levels = json::object();
            for (const auto& [label, level] : rep.levels) levels[label] = level;
            report.body = {{"command", "volcano"},  {"curve", e.str()},
                           {"ell", vol_ell},        {"height", rep.height},
                           {"crater", rep.crater},  {"levels", levels},
                           {"vertices", g.vertices}};
            out << report.finish();
            return 0;
        }
        if (*spectral_cmd) {
            SpectralReport sr;
            json source;
            if (spec_n != 0) {
                std::vector<u64> s;
                for (u64 v : parse_csv_u64(spec_s)) s.push_back(v);
                SchreierGraph g = build_schreier_exponentiation_graph(spec_n, s);
                sr = spectral_analysis(g.adjacency);
                source = {{"kind", "schreier"}, {"n", spec_n}};
            } else {
                const IsogenyGraph& g = cached_supersingular_graph(spec_p, spec_ell);
                sr = isogeny_graph_spectrum(g);
                source = {{"kind", "supersingular"}, {"p", spec_p}, {"ell", spec_ell}};
            }
            report.body = {{"command", "spectral"},
                           {"source", source},
                           {"eigenvalues", sr.eigenvalues},
                           {"ramanujan", sr.ramanujan}};
            if (sr.k) report.body["k"] = *sr.k;
            if (sr.epsilon) report.body["epsilon"] = *sr.epsilon;
            if (sr.epsilon_one) report.body["epsilon_one"] = *sr.epsilon_one;
            out << report.finish();
            return 0;
        }
        if (*cgl_cmd) {
            const IsogenyGraph& g = cached_supersingular_graph(cgl_p, 2);
            auto bits = hex_to_bits(cgl_message);
            auto walk = cgl_walk(g, cgl_start, bits);
            report.body = {{"command", "cgl"},
                           {"p", cgl_p},
                           {"start", cgl_start},
                           {"message", cgl_message},
                           {"walk", walk},
                           {"hash", walk.empty() ? cgl_start : walk.back()}};
            out << report.finish();
            return 0;
        }
        if (*ecdh_cmd) {
            Curve e = parse_curve(ecdh_p, ecdh_a, ecdh_b);
            SeededRng rng(ecdh_seed);
            EcdhParams params = ecdh_params(e, rng);
            EcdhTranscript t = ecdh_run(params, rng);
            report.body = {{"command", "ecdh"},
                           {"curve", e.str()},
                           {"generator", point_json(params.generator)},
                           {"order", params.order},
                           {"public_a", point_json(t.public_a)},
                           {"public_b", point_json(t.public_b)},
                           {"shared", point_json(t.shared)},
                           {"seed", ecdh_seed}};
            out << report.finish();
            return 0;
        }
        if (*rs_cmd) {
            if (!*rs_demo) throw BadInput("usage: rs demo --seed <s> [...]");
            Curve e = parse_curve(rs_q, rs_a, rs_b);
            std::vector<unsigned> ells;
            for (u64 v : parse_csv_u64(rs_ells)) ells.push_back((unsigned)v);
            RsParams params = rs_params(e, ells, 12);
            SeededRng rng(rs_seed);
            RsTranscript t = rs_keyexchange(params, rng, 2);
            report.body = {{"command", "rs"},
                           {"curve", e.str()},
                           {"ells", params.ells},
                           {"eigenvalues", params.eigenvalues},
                           {"route_a", t.route_a},
                           {"route_b", t.route_b},
                           {"public_a", t.public_a},
                           {"public_b", t.public_b},
                           {"shared", t.shared_a},
                           {"agreed", t.shared_a == t.shared_b},
                           {"seed", rs_seed}};
            out << report.finish();
            return 0;
        }
        if (*sidh_cmd) {
            if (!*sidh_demo) throw BadInput("usage: sidh demo --seed <s> [...]");
            SeededRng rng(sidh_seed);
            SidhParams params = sidh_setup(sidh_la, sidh_ea, sidh_lb, sidh_eb, sidh_f, rng);
            auto [ska, pka] = sidh_keygen(params, 'A', rng);
            auto [skb, pkb] = sidh_keygen(params, 'B', rng);
            std::string ja = sidh_shared(params, 'A', ska, pkb);
            std::string jb = sidh_shared(params, 'B', skb, pka);
            report.body = {{"command", "sidh"},
                           {"p", params.p},
                           {"e0", params.e0.str()},
                           {"basis_a", {point_json(params.pa), point_json(params.qa)}},
                           {"basis_b", {point_json(params.pb), point_json(params.qb)}},
                           {"secret_a", {{"m", ska.m}, {"n", ska.n}}},
                           {"secret_b", {{"m", skb.m}, {"n", skb.n}}},
                           {"public_a",
                            {{"curve", pka.curve.str()},
                             {"img_p", point_json(pka.img_p)},
                             {"img_q", point_json(pka.img_q)}}},
                           {"public_b",
                            {{"curve", pkb.curve.str()},
                             {"img_p", point_json(pkb.img_p)},
                             {"img_q", point_json(pkb.img_q)}}},
                           {"shared_a", ja},
                           {"shared_b", jb},
                           {"agreed", ja == jb},
                           {"seed", sidh_seed}};
            out << report.finish();
            return 0;
        }
        if (*zk_cmd) {
            if (!*zk_demo) throw BadInput("usage: zk demo --seed <s> [...]");
            SeededRng rng(zk_seed);
            SidhParams params = sidh_setup(2, zk_ea, 3, zk_eb, zk_f, rng);
            auto [ska, pka] = sidh_keygen(params, 'A', rng);
            ZkTranscript t = zk_identify(params, ska, pka, zk_rounds, rng, zk_cheat);
            json rounds = json::array();
            for (const auto& r : t.rounds)
                rounds.push_back({{"commit_eb", r.commit_eb},
                                  {"commit_eab", r.commit_eab},
                                  {"challenge", r.challenge},
                                  {"accepted", r.accepted}});
            report.body = {{"command", "zk"},     {"p", params.p},
                           {"rounds", rounds},    {"cheat", zk_cheat},
                           {"accepted", t.all_accepted}, {"seed", zk_seed}};
            out << report.finish();
            return 0;
        }
        if (*ecm_cmd) {
            SeededRng rng(ecm_seed);
            FactorResult r = ecm(ecm_n, ecm_bound, rng, ecm_curves);
            report.body = {{"command", "ecm"},   {"n", ecm_n},
                           {"bound", ecm_bound}, {"max_curves", ecm_curves},
                           {"split", r.split},   {"attempts", r.attempts},
                           {"seed", ecm_seed}};
            if (r.split) {
                report.body["p"] = r.p;
                report.body["q"] = r.q;
            }
            out << report.finish();
            return 0;
        }
        if (*pm1_cmd) {
            SeededRng rng(pm1_seed);
            FactorResult r = pollard_pminus1(pm1_n, pm1_bound, rng);
            report.body = {{"command", "pminus1"}, {"n", pm1_n},   {"bound", pm1_bound},
                           {"split", r.split},     {"seed", pm1_seed}};
            if (r.split) {
                report.body["p"] = r.p;
                report.body["q"] = r.q;
            }
            out << report.finish();
            return 0;
        }
        if (*irred_cmd) {
            SeededRng rng(irred_seed);
            Poly f = couveignes_lercier(irred_q, irred_ell, irred_e, rng);
            std::vector<u64> coeffs;
            for (const Fel& c : f.coeffs()) coeffs.push_back(c.lift());
            report.body = {{"command", "irred"},
                           {"q", irred_q},
                           {"ell", irred_ell},
                           {"e", irred_e},
                           {"degree", f.degree()},
                           {"coefficients", coeffs},
                           {"seed", irred_seed}};
            out << report.finish();
            return 0;
        }
        if (*mitm_cmd) {
            const IsogenyGraph& g = cached_supersingular_graph(mitm_p, mitm_ell);
            SeededRng rng(mitm_seed);
            std::string s = mitm_start.empty()
                                ? g.vertices[rng.below(g.vertices.size())]
                                : mitm_start;
            std::string t = mitm_end.empty() ? g.vertices[rng.below(g.vertices.size())]
                                             : mitm_end;
            auto path = mitm_path(g, s, t, rng);
            report.body = {{"command", "mitm"}, {"p", mitm_p},   {"ell", mitm_ell},
                           {"start", s},        {"end", t},      {"path", path},
                           {"length", path.size()},              {"seed", mitm_seed}};
            out << report.finish();
            return 0;
        }
        if (*isog_cmd) {
            if (!*isog_enum) throw BadInput("usage: isogeny enumerate --p <p> --a <a> --b <b>");
            Curve e = parse_curve(isog_p, isog_a, isog_b);
            auto isogenies = enumerate_ell_isogenies(e, isog_ell, 24);
            json list = json::array();
            for (const auto& phi : isogenies) {
                std::vector<u64> kc;
                for (const Fel& c : phi.kernel_poly().coeffs()) kc.push_back(c.lift());
                list.push_back({{"domain", phi.domain().str()},
                                {"codomain", phi.codomain().str()},
                                {"degree", phi.degree()},
                                {"kernel", kc}});
            }
            report.body = {{"command", "isogeny"},
                           {"curve", e.str()},
                           {"ell", isog_ell},
                           {"count", isogenies.size()},
                           {"isogenies", list}};
            out << report.finish();
            return 0;
        }
        if (*schreier_cmd) {
            std::vector<u64> s = parse_csv_u64(sch_s);
            SchreierGraph g = build_schreier_exponentiation_graph(sch_n, s);
            out << export_graph(g, 0,
                                sch_format == "dot" ? ExportFormat::Dot : ExportFormat::Json);
            if (sch_format == "json") out << "\n";
            return 0;
        }
        err << "no subcommand selected\n";
        return 2;
    } catch (const InternalError& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 3;
    }
}

}  // namespace isoglab::cli
