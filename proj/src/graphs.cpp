#include "isoglab/graphs.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <cmath>
#include <mutex>
#include <sstream>

namespace isoglab {

size_t LabeledGraph::index_of(const std::string& label) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), label);
    if (it == vertices.end() || *it != label) throw BadInput("label not in graph: " + label);
    return (size_t)(it - vertices.begin());
}

u64 LabeledGraph::edge_count() const {
    u64 twice = 0;
    for (size_t i = 0; i < adjacency.size(); ++i)
        for (size_t j = 0; j < adjacency.size(); ++j) twice += (u64)adjacency[i][j];
    return twice / 2;
}

namespace {

// Model curve with a prescribed j-invariant; standard models at 0 and 1728.
Curve curve_with_j(const Field& f, const Fel& j) {
    if (j.is_zero()) return Curve(f, f.zero(), f.one());
    if (j == f.from_int(1728)) return Curve(f, f.one(), f.zero());
    Fel c = j / (f.from_int(1728) - j);
    return Curve(f, f.from_int(3) * c, f.from_int(2) * c);
}

bool kills(const Curve& e, u64 n, SeededRng& rng, int samples) {
    for (int i = 0; i < samples; ++i)
        if (!scalar_mul_u(n, e.random_point(rng)).is_infinity()) return false;
    return true;
}

// Raw F_{p^2} arithmetic on coefficient pairs mod x^2 + m1 x + m0. Used by
// the j-line scan, which visits every element of F_{p^2}; going through the
// generic element layer there costs an order of magnitude.
struct RawFp2 {
    u64 p, m0, m1;
    const std::vector<uint8_t>* squares;

    struct E {
        u64 a, b;
        bool operator==(const E& o) const { return a == o.a && b == o.b; }
    };

    u64 addp(u64 x, u64 y) const {
        u64 s = x + y;
        return s >= p ? s - p : s;
    }
    u64 subp(u64 x, u64 y) const { return x >= y ? x - y : x + p - y; }
    u64 mulp(u64 x, u64 y) const { return x * y % p; }  // p <= 2000

    E add(E x, E y) const { return {addp(x.a, y.a), addp(x.b, y.b)}; }
    E sub(E x, E y) const { return {subp(x.a, y.a), subp(x.b, y.b)}; }
    E neg(E x) const { return {x.a ? p - x.a : 0, x.b ? p - x.b : 0}; }
    E mul(E x, E y) const {
        u64 t0 = mulp(x.a, y.a), t2 = mulp(x.b, y.b);
        u64 t1 = addp(mulp(x.a, y.b), mulp(x.b, y.a));
        return {subp(t0, mulp(m0, t2)), subp(t1, mulp(m1, t2))};
    }
    E square(E x) const { return mul(x, x); }
    bool is_zero(E x) const { return x.a == 0 && x.b == 0; }
    u64 invp(u64 x) const {
        long long t = 0, nt = 1, r = (long long)p, nr = (long long)x;
        while (nr) {
            long long q = r / nr, tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return (u64)(t < 0 ? t + (long long)p : t);
    }
    E inv(E x) const {
        // conjugate / norm with t-bar = -m1 - t
        E conj{addp(x.a, p - mulp(m1, x.b) % p), x.b ? p - x.b : 0};
        u64 norm = subp(addp(mulp(x.a, x.a), mulp(m0, mulp(x.b, x.b))), mulp(m1, mulp(x.a, x.b)));
        u64 ninv = invp(norm);
        return {mulp(conj.a, ninv), mulp(conj.b, ninv)};
    }
    bool is_square(E x) const { return (*squares)[x.a + x.b * p] != 0; }
};

// Affine point arithmetic over RawFp2 tracking infinity explicitly.
struct RawPoint {
    RawFp2::E x, y;
    bool inf;
};

struct RawCurve {
    const RawFp2& f;
    RawFp2::E a, b;

    RawPoint add(const RawPoint& pp, const RawPoint& qq) const {
        if (pp.inf) return qq;
        if (qq.inf) return pp;
        if (pp.x == qq.x) {
            if (f.is_zero(f.add(pp.y, qq.y))) return {pp.x, pp.y, true};
            RawFp2::E num = f.add(f.mul({3, 0}, f.square(pp.x)), a);
            RawFp2::E lambda = f.mul(num, f.inv(f.add(pp.y, pp.y)));
            RawFp2::E x3 = f.sub(f.sub(f.square(lambda), pp.x), qq.x);
            return {x3, f.sub(f.mul(lambda, f.sub(pp.x, x3)), pp.y), false};
        }
        RawFp2::E lambda = f.mul(f.sub(qq.y, pp.y), f.inv(f.sub(qq.x, pp.x)));
        RawFp2::E x3 = f.sub(f.sub(f.square(lambda), pp.x), qq.x);
        return {x3, f.sub(f.mul(lambda, f.sub(pp.x, x3)), pp.y), false};
    }
    RawPoint mul(u64 n, RawPoint base) const {
        RawPoint acc{{0, 0}, {0, 0}, true};
        while (n) {
            if (n & 1) acc = add(acc, base);
            base = add(base, base);
            n >>= 1;
        }
        return acc;
    }
    RawFp2::E rhs(RawFp2::E x) const { return f.add(f.mul(f.add(f.square(x), a), x), b); }
};

// Square root in F_{p^2} by Tonelli-Shanks on raw pairs.
struct RawSqrt {
    const RawFp2& f;
    u64 s;
    u64 t;        // q - 1 = 2^s t
    RawFp2::E z;  // non-square^t

    explicit RawSqrt(const RawFp2& fp2, RawFp2::E nonsquare) : f(fp2) {
        u64 q1 = fp2.p * fp2.p - 1;
        s = 0;
        t = q1;
        while ((t & 1) == 0) t >>= 1, ++s;
        z = pow(nonsquare, t);
    }
    RawFp2::E pow(RawFp2::E x, u64 e) const {
        RawFp2::E r{1, 0};
        while (e) {
            if (e & 1) r = f.mul(r, x);
            x = f.square(x);
            e >>= 1;
        }
        return r;
    }
    RawFp2::E sqrt(RawFp2::E a) const {
        if (f.is_zero(a)) return a;
        RawFp2::E zz = z, x = pow(a, (t + 1) / 2), b = pow(a, t);
        u64 m = s;
        while (!(b.a == 1 && b.b == 0)) {
            RawFp2::E b2 = b;
            u64 i = 0;
            while (!(b2.a == 1 && b2.b == 0)) b2 = f.square(b2), ++i;
            RawFp2::E g = zz;
            for (u64 j = 0; j + i + 1 < m; ++j) g = f.square(g);
            x = f.mul(x, g);
            zz = f.square(g);
            b = f.mul(b, zz);
            m = i;
        }
        return x;
    }
};

// Decide supersingularity of a curve over F_{p^2}: cheap candidate-trace
// rejection on raw pairs, exact trace confirmation behind it.
bool supersingular_over_p2(const RawCurve& e, const RawSqrt& ts, u64 p, SeededRng& rng) {
    const RawFp2& f = e.f;
    for (int round = 0; round < 2; ++round) {
        RawPoint r{{0, 0}, {0, 0}, true};
        for (;;) {
            RawFp2::E x{rng.below(p), rng.below(p)};
            RawFp2::E fx = e.rhs(x);
            if (f.is_zero(fx)) {
                r = {x, {0, 0}, false};
                break;
            }
            if (!f.is_square(fx)) continue;
            r = {x, ts.sqrt(fx), false};
            break;
        }
        RawPoint r1 = e.mul(p + 1, r);
        RawPoint s2 = e.mul(p + 1, r1);  // [(p+1)^2] R
        RawPoint t1 = e.add(r1, {r.x, f.neg(r.y), r.inf});  // [p] R
        RawPoint nt = {t1.x, t1.inf ? t1.y : f.neg(t1.y), t1.inf};
        // candidates (p+1)^2 - k p for k = 0..4, i.e. traces -2p..2p
        RawPoint u = s2;
        bool candidate = false;
        for (int k = 0; k <= 4 && !candidate; ++k) {
            candidate = u.inf;
            u = e.add(u, nt);
        }
        if (!candidate) return false;  // definitively ordinary
    }
    return true;  // near-certain; caller confirms exactly
}

// Normalize a supersingular model to trace -2p, i.e. order (p+1)^2.
Curve maximal_model(const Curve& e, u64 p, SeededRng& rng) {
    u64 target = (p + 1) * (p + 1);
    if (kills(e, target, rng, 4)) return e;
    Curve tw = e.quadratic_twist();
    if (kills(tw, target, rng, 4)) return tw;
    throw InternalError("no twist has order (p+1)^2");
}

}  // namespace

std::vector<std::string> supersingular_j_labels(u64 p) {
    if (!is_prime_u64(p) || p < 5) throw UnsupportedPrime("p must be a prime >= 5");
    if (p > 2000) throw BadInput("supersingular scan is limited to p <= 2000");
    const Field& f = Field::extension(p, 2);
    const std::vector<uint8_t>* table = nullptr;
    {
        // force the square table into existence through the public surface
        Fel probe = f.from_int(1);
        (void)probe.chi();
    }
    RawFp2 raw{p, 0, 0, nullptr};
    raw.m0 = f.modulus()[0];
    raw.m1 = f.modulus()[1];
    // rebuild the table locally; cheap and keeps RawFp2 self-contained
    static std::map<u64, std::vector<uint8_t>> table_cache;
    static std::mutex table_mu;
    {
        std::scoped_lock lock(table_mu);
        auto it = table_cache.find(p);
        if (it == table_cache.end()) {
            std::vector<uint8_t> tb(p * p, 0);
            for (u64 i = 0; i < p * p; ++i) {
                RawFp2::E x{i % p, i / p};
                RawFp2::E sq = raw.mul(x, x);
                tb[sq.a + sq.b * p] = 1;
            }
            it = table_cache.emplace(p, std::move(tb)).first;
        }
        table = &it->second;
    }
    raw.squares = table;
    Fel ns = f.canonical_nonsquare();
    RawSqrt ts(raw, RawFp2::E{ns.coeff(0), ns.coeff(1)});

    SeededRng rng(0x5C0Full ^ p);
    SeededRng confirm_rng(0xC04F ^ p);
    const Fel j1728 = f.from_int(1728);
    std::vector<std::string> labels;
    for (u64 idx = 0; idx < p * p; ++idx) {
        Fel j = f.element_at(idx);
        RawCurve rc{raw, {0, 0}, {1, 0}};
        if (j.is_zero()) {
            // y^2 = x^3 + 1
        } else if (j == j1728) {
            rc.a = {1, 0};
            rc.b = {0, 0};
        } else {
            Fel c = j / (j1728 - j);
            Fel a = f.from_int(3) * c, b = f.from_int(2) * c;
            rc.a = {a.coeff(0), a.coeff(1)};
            rc.b = {b.coeff(0), b.coeff(1)};
        }
        if (!supersingular_over_p2(rc, ts, p, rng)) continue;
        Curve e = curve_with_j(f, j);
        FrobeniusData fd = frobenius_data(e, confirm_rng);
        if (fd.trace % (long long)p == 0) labels.push_back(j.label());
    }
    std::sort(labels.begin(), labels.end());
    return labels;
}

IsogenyGraph build_supersingular_graph(u64 p, unsigned ell) {
    if (ell != 2 && ell != 3 && ell != 5 && ell != 7)
        throw BadInput("supersingular graphs support ell in {2, 3, 5, 7}");
    if (ell == p) throw UnsupportedPrime("ell must differ from p");
    IsogenyGraph g;
    g.ell = ell;
    g.supersingular = true;
    g.p = p;
    g.vertices = supersingular_j_labels(p);
    const Field& f = Field::extension(p, 2);
    SeededRng rng(0xE11ull ^ p);
    size_t n = g.vertices.size();
    g.adjacency.assign(n, std::vector<int>(n, 0));
    g.models.reserve(n);
    for (const std::string& label : g.vertices) {
        // labels enumerate as "c0+c1*i"
        size_t plus = label.find('+');
        u64 c0 = std::stoull(label.substr(0, plus));
        u64 c1 = std::stoull(label.substr(plus + 1, label.find('*') - plus - 1));
        Fel j = f.make({c0, c1});
        g.models.push_back(maximal_model(curve_with_j(f, j), p, rng));
    }
    for (size_t u = 0; u < n; ++u) {
        auto isogenies = enumerate_ell_isogenies(g.models[u], ell, 8);
        if (isogenies.size() != ell + 1)
            throw InternalError("supersingular vertex is not (ell+1)-regular");
        for (const auto& phi : isogenies) {
            size_t v = g.index_of(phi.codomain().j_invariant().label());
            g.adjacency[u][v] += 1;
        }
    }
    g.order_bucket = (p + 1) * (p + 1);
    return g;
}

std::pair<IsogenyGraph, VolcanoReport> build_volcano(const Curve& e, unsigned ell,
                                                     unsigned max_ext_degree) {
    const Field& base = e.field();
    u64 p = base.p();
    SeededRng rng(0x70AD ^ p);
    FrobeniusData fd = frobenius_data(e, rng);
    if (fd.trace % (long long)p == 0) throw BadInput("volcano construction expects an ordinary curve");
    auto cond = conductor_of_frobenius_order(fd.disc());
    unsigned height = 0;
    u64 fpi = cond.conductor;
    while (fpi % ell == 0) fpi /= ell, ++height;

    // breadth-first component over j-labels, keeping one model per vertex
    std::map<std::string, Curve> models;
    std::map<std::string, std::map<std::string, int>> adj;
    std::deque<std::string> queue;
    std::string start = e.j_invariant().label();
    models.emplace(start, e);
    queue.push_back(start);
    while (!queue.empty()) {
        std::string u = queue.front();
        queue.pop_front();
        if (adj.count(u)) continue;
        auto& row = adj[u];
        for (const auto& phi : enumerate_ell_isogenies(models.at(u), ell, max_ext_degree)) {
            std::string v = phi.codomain().j_invariant().label();
            ++row[v];
            if (!models.count(v)) {
                models.emplace(v, phi.codomain());
                queue.push_back(v);
            }
        }
    }

    IsogenyGraph g;
    g.ell = ell;
    g.supersingular = false;
    g.p = p;
    g.order_bucket = fd.order;
    for (const auto& [label, model] : models) g.vertices.push_back(label);
    std::sort(g.vertices.begin(), g.vertices.end());
    size_t n = g.vertices.size();
    g.adjacency.assign(n, std::vector<int>(n, 0));
    for (size_t u = 0; u < n; ++u) {
        g.models.push_back(models.at(g.vertices[u]));
        for (const auto& [v, count] : adj[g.vertices[u]]) g.adjacency[u][g.index_of(v)] = count;
    }

    // levels: peel the floors height times; what remains is the crater
    VolcanoReport report;
    report.height = height;
    std::vector<bool> removed(n, false);
    std::vector<unsigned> level(n, 0);
    for (unsigned depth = height; depth >= 1; --depth) {
        std::vector<size_t> floor;
        for (size_t u = 0; u < n; ++u) {
            if (removed[u]) continue;
            long long degree = 0;
            for (size_t v = 0; v < n; ++v)
                if (!removed[v]) degree += g.adjacency[u][v];
            if (degree <= 1) floor.push_back(u);
        }
        for (size_t u : floor) {
            removed[u] = true;
            level[u] = depth;
        }
        if (floor.empty()) throw InternalError("volcano floor peeling found no leaves");
    }
    for (size_t u = 0; u < n; ++u) {
        report.levels[g.vertices[u]] = level[u];
        if (!removed[u]) report.crater.push_back(g.vertices[u]);
    }
    // order the crater as a cycle anchored at its smallest label
    if (report.crater.size() > 2) {
        std::vector<std::string> cyc;
        std::set<std::string> crater_set(report.crater.begin(), report.crater.end());
        std::string cur = report.crater.front();  // lexicographically smallest
        std::string prev;
        cyc.push_back(cur);
        while (cyc.size() < report.crater.size()) {
            std::vector<std::string> next;
            size_t ui = g.index_of(cur);
            for (size_t v = 0; v < n; ++v) {
                if (g.adjacency[ui][v] == 0) continue;
                const std::string& lv = g.vertices[v];
                if (!crater_set.count(lv) || lv == prev || lv == cur) continue;
                next.push_back(lv);
            }
            if (next.empty()) throw InternalError("crater walk broke off");
            std::sort(next.begin(), next.end());
            prev = cur;
            cur = next.front();
            cyc.push_back(cur);
        }
        report.crater = cyc;
    }
    return {g, report};
}

SchreierGraph build_schreier_exponentiation_graph(u64 n, const std::vector<u64>& s) {
    if (n < 2) throw BadInput("group order must be at least 2");
    SchreierGraph g;
    g.n = n;
    std::set<u64> closure;
    for (u64 sigma : s) {
        u64 v = sigma % n;
        if (v == 0 || std::gcd(v, n) != 1) throw BadActionElement("action element not a unit");
        if (v == 1) throw BadActionElement("the identity cannot act");
        // inverse mod n
        long long t = 0, nt = 1, r = (long long)n, nr = (long long)v;
        while (nr) {
            long long qu = r / nr;
            std::swap(t -= qu * nt, nt);
            std::swap(r -= qu * nr, nr);
        }
        if (t < 0) t += (long long)n;
        closure.insert(v);
        closure.insert((u64)t);
    }
    g.action.assign(closure.begin(), closure.end());

    std::vector<u64> units;
    for (u64 k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) units.push_back(k);
    for (u64 k : units) g.vertices.push_back("g^" + std::to_string(k));
    size_t m = units.size();
    g.adjacency.assign(m, std::vector<int>(m, 0));
    std::map<u64, size_t> pos;
    for (size_t i = 0; i < m; ++i) pos[units[i]] = i;
    for (size_t i = 0; i < m; ++i)
        for (u64 sigma : g.action) g.adjacency[i][pos[units[i] * sigma % n]] += 1;
    return g;
}

std::vector<std::string> mitm_path(const IsogenyGraph& g, const std::string& j_start,
                                   const std::string& j_end, SeededRng& rng) {
    (void)rng;  // ball growth is canonical; the interface keeps the seed slot
    size_t s = g.index_of(j_start), t = g.index_of(j_end);
    size_t n = g.vertices.size();
    if (s == t) return {};
    // bidirectional breadth-first balls
    std::vector<int> side(n, -1), parent(n, -1);
    std::deque<size_t> qs{s}, qt{t};
    side[s] = 0;
    side[t] = 1;
    std::optional<std::pair<size_t, size_t>> meet;  // (from side 0, from side 1)
    while (!meet && (!qs.empty() || !qt.empty())) {
        for (int which = 0; which < 2 && !meet; ++which) {
            auto& q = which == 0 ? qs : qt;
            std::deque<size_t> next;
            while (!q.empty() && !meet) {
                size_t u = q.front();
                q.pop_front();
                for (size_t v = 0; v < n && !meet; ++v) {
                    if (g.adjacency[u][v] == 0) continue;
                    if (side[v] == -1) {
                        side[v] = which;
                        parent[v] = (int)u;
                        next.push_back(v);
                    } else if (side[v] != which) {
                        meet = which == 0 ? std::make_pair(u, v) : std::make_pair(v, u);
                    }
                }
            }
            q = std::move(next);
        }
    }
    if (!meet) throw NoPath("supersingular graph unexpectedly disconnected");
    // stitch: s .. meet->first  then meet->second .. t
    std::vector<size_t> left{meet->first};
    while (left.back() != s) left.push_back((size_t)parent[left.back()]);
    std::reverse(left.begin(), left.end());
    std::vector<size_t> right{meet->second};
    while (right.back() != t) right.push_back((size_t)parent[right.back()]);
    std::vector<size_t> walk = left;
    walk.insert(walk.end(), right.begin(), right.end());
    // verify each step by re-deriving the edge from the vertex model
    std::vector<std::string> out;
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        bool found = false;
        for (const auto& phi : enumerate_ell_isogenies(g.models[walk[i]], g.ell, 8))
            if (phi.codomain().j_invariant().label() == g.vertices[walk[i + 1]]) found = true;
        if (!found) throw InternalError("path edge failed re-derivation");
        out.push_back(g.vertices[walk[i + 1]]);
    }
    return out;
}

std::string export_graph(const LabeledGraph& g, unsigned ell, ExportFormat format) {
    size_t n = g.vertices.size();
    if (format == ExportFormat::Dot) {
        std::ostringstream os;
        os << "graph G {\n";
        for (const auto& v : g.vertices) os << "  \"" << v << "\";\n";
        for (size_t i = 0; i < n; ++i) {
            int loops = (g.adjacency[i][i] + 1) / 2;
            for (int c = 0; c < loops; ++c)
                os << "  \"" << g.vertices[i] << "\" -- \"" << g.vertices[i] << "\" [label=\"l="
                   << ell << "\"];\n";
            for (size_t j = i + 1; j < n; ++j)
                for (int c = 0; c < g.adjacency[i][j]; ++c)
                    os << "  \"" << g.vertices[i] << "\" -- \"" << g.vertices[j]
                       << "\" [label=\"l=" << ell << "\"];\n";
        }
        os << "}\n";
        return os.str();
    }
    std::ostringstream os;
    os << "{\"vertices\":[";
    for (size_t i = 0; i < n; ++i) os << (i ? "," : "") << "\"" << g.vertices[i] << "\"";
    os << "],\"edges\":[";
    bool first = true;
    for (size_t i = 0; i < n; ++i) {
        int loops = (g.adjacency[i][i] + 1) / 2;
        for (int c = 0; c < loops; ++c) {
            os << (first ? "" : ",") << "[" << i << "," << i << "," << ell << "]";
            first = false;
        }
        for (size_t j = i + 1; j < n; ++j)
            for (int c = 0; c < g.adjacency[i][j]; ++c) {
                os << (first ? "" : ",") << "[" << i << "," << j << "," << ell << "]";
                first = false;
            }
    }
    os << "]}";
    return os.str();
}

SpectralReport isogeny_graph_spectrum(const IsogenyGraph& g) {
    size_t n = g.vertices.size();
    const Field& f = Field::extension(g.p, 2);
    std::string j0 = g.supersingular ? f.zero().label() : Field::prime(g.p).zero().label();
    std::string j1728 = g.supersingular ? f.from_int(1728).label()
                                        : Field::prime(g.p).from_int(1728).label();
    std::vector<double> w(n, 1.0);
    for (size_t i = 0; i < n; ++i) {
        if (g.vertices[i] == j0) w[i] = 3.0;
        else if (g.vertices[i] == j1728) w[i] = 2.0;
    }
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            m[u][v] = g.adjacency[u][v] * std::sqrt(w[v] / w[u]);
    for (size_t u = 0; u < n; ++u)
        for (size_t v = u + 1; v < n; ++v)
            if (std::fabs(m[u][v] - m[v][u]) > 1e-9)
                throw InternalError("weighted adjacency failed to symmetrize");
    SpectralReport report;
    report.eigenvalues = jacobi_eigenvalues_d(std::move(m));
    long long degree = 0;
    bool regular = true;
    for (size_t u = 0; u < n; ++u) {
        long long row = 0;
        for (size_t v = 0; v < n; ++v) row += g.adjacency[u][v];
        if (u == 0) degree = row;
        else if (row != degree) regular = false;
    }
    if (!regular || degree == 0 || n == 0) return report;
    report.k = (int)degree;
    double k = (double)degree;
    if (n >= 2) {
        double l2 = report.eigenvalues[1];
        double ln = report.eigenvalues.back();
        report.epsilon = 1.0 - std::max(l2, -ln) / k;
        report.epsilon_one = 1.0 - l2 / k;
        report.ramanujan = std::max(std::fabs(l2), std::fabs(ln)) <= 2 * std::sqrt(k - 1) + 1e-8;
    } else {
        report.epsilon = 1.0;
        report.epsilon_one = 1.0;
        report.ramanujan = true;
    }
    return report;
}

size_t random_walk(const LabeledGraph& g, size_t start, unsigned steps, SeededRng& rng) {
    size_t cur = start;
    size_t n = g.vertices.size();
    for (unsigned i = 0; i < steps; ++i) {
        long long total = 0;
        for (size_t v = 0; v < n; ++v) total += g.adjacency[cur][v];
        if (total == 0) return cur;
        long long pick = (long long)rng.below((u64)total);
        for (size_t v = 0; v < n; ++v) {
            pick -= g.adjacency[cur][v];
            if (pick < 0) {
                cur = v;
                break;
            }
        }
    }
    return cur;
}

}  // namespace isoglab
