#include "isoglab/isogeny.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace isoglab {

CurvePoint Isogeny::evaluate(const CurvePoint& p) const {
    const Field& pf = p.is_infinity() ? p.curve().field() : p.x().field();
    bool extended = &pf != &domain_.field();
    Curve dom = extended ? domain_.base_change(pf) : domain_;
    if (p.curve() != dom) throw CurveMismatch("point is not on the isogeny domain");
    Curve cod = extended ? codomain_.base_change(pf) : codomain_;
    if (p.is_infinity()) return cod.infinity();
    if (frobenius_) {
        u64 ch = domain_.field().p();
        return cod.point(p.x().pow(ch), p.y().pow(ch));
    }
    Poly n = extended ? map_into(num_, pf) : num_;
    Poly d = extended ? map_into(den_, pf) : den_;
    Fel dv = d.eval(p.x());
    if (dv.is_zero()) return cod.infinity();  // kernel point
    Fel nv = n.eval(p.x());
    Fel ndv = n.derivative().eval(p.x());
    Fel ddv = d.derivative().eval(p.x());
    Fel xx = nv / dv;
    Fel yy = p.y() * (ndv * dv - nv * ddv) / dv.square();
    if (aut_u_.valid()) {
        Fel u = extended ? embed(aut_u_, pf) : aut_u_;
        xx = u * u * xx;
        yy = u * u * u * yy;
    }
    return cod.point(xx, yy);
}

Isogeny Isogeny::post_isomorphism(const Fel& u) const {
    const Field& f = codomain_.field();
    if (u.is_zero()) throw BadInput("isomorphism scalar must be nonzero");
    Fel u2 = u * u, u4 = u2.square(), u6 = u4 * u2;
    Isogeny phi = *this;
    phi.codomain_ = Curve(f, u4 * codomain_.a(), u6 * codomain_.b());
    phi.aut_u_ = aut_u_.valid() ? aut_u_ * u : u;
    return phi;
}

std::optional<Fel> Isogeny::x_map(const Fel& x) const {
    const Field& pf = x.field();
    bool extended = &pf != &domain_.field();
    if (frobenius_) return x.pow(domain_.field().p());
    Poly n = extended ? map_into(num_, pf) : num_;
    Poly d = extended ? map_into(den_, pf) : den_;
    Fel dv = d.eval(x);
    if (dv.is_zero()) return std::nullopt;
    Fel out = n.eval(x) / dv;
    if (aut_u_.valid()) {
        Fel u = extended ? embed(aut_u_, pf) : aut_u_;
        out = u * u * out;
    }
    return out;
}

bool Isogeny::operator==(const Isogeny& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_ && kernel_poly_ == o.kernel_poly_ &&
           frobenius_ == o.frobenius_;
}

std::string Isogeny::key() const {
    return domain_.str() + "|" + codomain_.str() + "|" + kernel_poly_.str() +
           (frobenius_ ? "|frob" : "");
}

Isogeny identity_isogeny(const Curve& e) {
    Isogeny phi;
    phi.domain_ = e;
    phi.codomain_ = e;
    phi.degree_ = 1;
    phi.kernel_poly_ = Poly::from_ints(e.field(), {1});
    phi.num_ = Poly::x(e.field());
    phi.den_ = Poly::from_ints(e.field(), {1});
    return phi;
}

Isogeny frobenius_isogeny(const Curve& e) {
    const Field& f = e.field();
    u64 p = f.p();
    Isogeny phi;
    phi.domain_ = e;
    phi.codomain_ = Curve(f, e.a().pow(p), e.b().pow(p));
    phi.degree_ = p;
    phi.kernel_poly_ = Poly::from_ints(f, {1});
    phi.frobenius_ = true;
    return phi;
}

Isogeny velu_from_abscissas(const Curve& e, const Field& ext,
                            const std::vector<std::pair<Fel, int>>& xs) {
    const Field& base = e.field();
    Curve ec = (&ext == &base) ? e : e.base_change(ext);
    const Fel& a = ec.a();
    const Fel& b = ec.b();

    if (xs.empty()) return identity_isogeny(e);

    // Velu sums over all kernel points; each abscissa contributes with its
    // point multiplicity.
    Fel T = ext.zero(), W = ext.zero();
    u64 degree = 1;
    for (const auto& [x, mult] : xs) {
        Fel t = ext.from_int(3) * x.square() + a;
        Fel w = (ext.from_int(5) * x.square() + ext.from_int(3) * a) * x + b + b;
        T = T + ext.from_int((u64)mult) * t;
        W = W + ext.from_int((u64)mult) * w;
        degree += (u64)mult;
    }
    Fel a2 = a - ext.from_int(5) * T;
    Fel b2 = b - ext.from_int(7) * W;

    // x-map N/D with D = prod (X - x)^mult and
    // N/D = X + sum [ t_x / (X - x) + u_x / (X - x)^2 ],
    // t_x = 3x^2 + a (2-torsion) or 6x^2 + 2a (paired), u_x = 4 F(x).
    Poly D = Poly::from_ints(ext, {1});
    Poly kpoly = Poly::from_ints(ext, {1});
    for (const auto& [x, mult] : xs) {
        Poly lin = Poly(ext, {-x, ext.one()});
        kpoly = kpoly * lin;
        D = D * (mult == 2 ? lin * lin : lin);
    }
    Poly N = Poly::x(ext) * D;
    for (const auto& [x, mult] : xs) {
        Poly lin = Poly(ext, {-x, ext.one()});
        Fel t = (mult == 2) ? ext.from_int(6) * x.square() + a + a
                            : ext.from_int(3) * x.square() + a;
        N = N + Poly::constant(t) * (D / lin);
        if (mult == 2) {
            Fel u = ext.from_int(4) * ec.rhs(x);
            N = N + Poly::constant(u) * (D / (lin * lin));
        }
    }

    Isogeny phi;
    phi.domain_ = e;
    phi.degree_ = degree;
    try {
        phi.codomain_ = Curve(base, descend(a2, base), descend(b2, base));
        phi.kernel_poly_ = descend_poly(kpoly, base);
        phi.num_ = descend_poly(N, base);
        phi.den_ = descend_poly(D, base);
    } catch (const FieldMismatch&) {
        throw KernelNotGaloisStable("kernel data does not descend to the base field");
    }
    return phi;
}

Isogeny velu_from_kernel(const Curve& e, const std::vector<CurvePoint>& kernel) {
    if (kernel.empty()) return identity_isogeny(e);
    // locate the working field from the points
    const Field* ext = nullptr;
    for (const auto& p : kernel) {
        if (p.is_infinity()) continue;
        const Field& pf = p.x().field();
        if (!ext || pf.degree() > ext->degree()) ext = &pf;
    }
    if (!ext) return identity_isogeny(e);
    if (ext->p() != e.field().p() || ext->degree() % e.field().degree() != 0)
        throw FieldMismatch("kernel points live in an incompatible field");
    Curve ec = (ext == &e.field()) ? e : e.base_change(*ext);

    std::vector<CurvePoint> pts;
    for (const auto& p : kernel) {
        if (p.is_infinity()) continue;
        CurvePoint q = p;
        if (&p.x().field() != ext) q = ec.point(embed(p.x(), *ext), embed(p.y(), *ext));
        if (q.curve() != ec) throw CurveMismatch("kernel point is not on the given curve");
        pts.push_back(q);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    u64 n = pts.size() + 1;
    if (n % e.field().p() == 0) throw NotASubgroup("kernel order divisible by the characteristic");
    auto contains = [&](const CurvePoint& q) {
        return q.is_infinity() || std::binary_search(pts.begin(), pts.end(), q);
    };
    for (const auto& p : pts) {
        if (!contains(-p)) throw NotASubgroup("kernel not closed under negation");
        for (const auto& q : pts)
            if (!contains(p + q)) throw NotASubgroup("kernel not closed under addition");
    }

    std::vector<std::pair<Fel, int>> xs;
    std::set<std::string> seen;
    for (const auto& p : pts) {
        if (!seen.insert(p.x().label()).second) continue;
        xs.push_back({p.x(), p.y().is_zero() ? 1 : 2});
    }
    return velu_from_abscissas(e, *ext, xs);
}

namespace {

// Splitting degree of f over its coefficient field: lcm of the irreducible
// factor degrees, read off a distinct-degree pass.
unsigned splitting_degree(const Poly& f) {
    Poly rem = f.monic();
    const Field& F = f.field();
    u64 p = F.p();
    unsigned lcm = 1;
    Poly x = Poly::x(F);
    unsigned d = 0;
    Poly xq = x % rem;
    while (rem.degree() > 0) {
        ++d;
        if ((int)d > f.degree()) throw InternalError("distinct-degree pass ran away");
        for (unsigned i = 0; i < F.degree(); ++i) xq = poly_modexp(xq, p, rem);
        Poly g = poly_gcd(xq - (x % rem), rem);
        if (g.degree() > 0) {
            lcm = std::lcm(lcm, d);
            rem = (rem / g).monic();
            xq = xq % rem;
        }
    }
    return lcm;
}

// The abscissa orbit of the subgroup through x0: {x([k]Q)}, k = 1..(ell-1)/2.
// All values stay inside x0's field.
std::vector<Fel> subgroup_orbit(const Curve& ec, unsigned ell, const Fel& x0) {
    std::vector<Fel> orbit{x0};
    std::set<std::string> seen{x0.label()};
    for (unsigned k = 2; 2 * k <= ell; ++k) {
        auto xk = scalar_x_map(ec, k, x0);
        if (!xk) throw InternalError("scalar x-map undefined on an ell-torsion abscissa");
        if (seen.insert(xk->label()).second) orbit.push_back(*xk);
    }
    if (orbit.size() != ell / 2) throw InternalError("kernel orbit has unexpected size");
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

void check_ell(const Curve& e, unsigned ell) {
    if (ell == e.field().p()) throw BadInput("ell must differ from the characteristic");
    if (!is_prime_u64(ell) || ell > 13) throw BadInput("ell must be a prime <= 13");
}

}  // namespace

std::vector<Isogeny> enumerate_ell_isogenies(const Curve& e, unsigned ell,
                                             unsigned max_ext_degree) {
    check_ell(e, ell);
    const Field& base = e.field();
    u64 p = base.p();
    unsigned s = base.degree();
    Poly locus = (ell == 2) ? e.rhs_poly() : division_poly(e, ell).even_part.monic();
    std::vector<Poly> factors = factor_squarefree(locus);

    std::vector<Isogeny> out;
    std::set<std::string> seen_kernels;
    unsigned half = (ell == 2) ? 1 : ell / 2;
    for (const Poly& g : factors) {
        if ((unsigned)g.degree() > half) continue;  // cannot sit inside a rational kernel
        if ((unsigned)g.degree() > max_ext_degree) throw ExtensionTooLarge("kernel factor too large");
        const Field& F = g.degree() == 1 ? base : Field::extension(p, s * (unsigned)g.degree());
        Fel x0 = g.degree() == 1 ? -g.coeff(0) : roots_unchecked(map_into(g, F)).front();
        std::vector<std::pair<Fel, int>> xs;
        if (ell == 2) {
            xs.push_back({x0, 1});
        } else {
            Curve ec = (&F == &base) ? e : e.base_change(F);
            for (const Fel& x : subgroup_orbit(ec, ell, x0)) xs.push_back({x, 2});
        }
        try {
            Isogeny phi = velu_from_abscissas(e, F, xs);
            if (seen_kernels.insert(phi.kernel_poly().str()).second)
                out.push_back(std::move(phi));
        } catch (const KernelNotGaloisStable&) {
            // subgroup not stable under Galois: no rational isogeny here
        }
    }
    std::sort(out.begin(), out.end(), [](const Isogeny& a, const Isogeny& b) {
        return a.kernel_poly().lex_less(b.kernel_poly());
    });
    return out;
}

unsigned count_ell_isogenies_over_closure(const Curve& e, unsigned ell,
                                          unsigned max_ext_degree) {
    check_ell(e, ell);
    const Field& base = e.field();
    u64 p = base.p();
    unsigned s = base.degree();
    if (ell == 2) {
        Poly cubic = e.rhs_poly();
        unsigned d = splitting_degree(cubic);
        if (d > max_ext_degree) throw ExtensionTooLarge("2-torsion field too large");
        const Field& F = (d == 1) ? base : Field::extension(p, s * d);
        return (unsigned)roots_unchecked(d == 1 ? cubic : map_into(cubic, F)).size();
    }
    Poly psi = division_poly(e, ell).even_part.monic();
    unsigned d = splitting_degree(psi);
    if (d > max_ext_degree) throw ExtensionTooLarge("ell-torsion abscissa field too large");
    const Field& F = (d == 1) ? base : Field::extension(p, s * d);
    std::vector<Fel> roots = roots_unchecked(d == 1 ? psi : map_into(psi, F));
    if (roots.size() != (size_t)(ell * ell - 1) / 2)
        throw InternalError("division polynomial did not split in its splitting field");
    Curve ec = (d == 1) ? e : e.base_change(F);
    std::set<std::string> used;
    unsigned orbits = 0;
    for (const Fel& x0 : roots) {
        if (used.count(x0.label())) continue;
        for (const Fel& x : subgroup_orbit(ec, ell, x0)) used.insert(x.label());
        ++orbits;
    }
    return orbits;
}

Isogeny dual(const Isogeny& phi, unsigned max_ext_degree) {
    if (phi.is_frobenius()) throw BadInput("dual of the Frobenius is not separable");
    u64 d = phi.degree();
    if (d == 1) return identity_isogeny(phi.codomain());
    if (d > 13) throw BadInput("dual supports degree <= 13");
    if (d % phi.domain().field().p() == 0) throw BadInput("degree must be coprime to p");

    // ker(dual) = phi(E[d]); its abscissas are the x-map images of the
    // E[d] abscissas, so no ordinate field is ever needed.
    const Curve& dom = phi.domain();
    const Field& base = dom.field();
    Poly locus = division_poly(dom, (unsigned)d).even_part.monic();
    if (d % 2 == 0) locus = (locus * dom.rhs_poly()).monic();
    unsigned ext_deg = splitting_degree(locus);
    if (ext_deg > max_ext_degree) throw ExtensionTooLarge("E[d] abscissa field too large");
    const Field& F = ext_deg == 1 ? base
                                  : Field::extension(base.p(), base.degree() * ext_deg);
    std::vector<Fel> xs = roots_unchecked(ext_deg == 1 ? locus : map_into(locus, F));
    Curve cod_ext = ext_deg == 1 ? phi.codomain() : phi.codomain().base_change(F);
    std::vector<std::pair<Fel, int>> image_xs;
    std::set<std::string> seen;
    for (const Fel& x : xs) {
        auto img = phi.x_map(x);
        if (!img) continue;  // kernel of phi maps to infinity
        if (!seen.insert(img->label()).second) continue;
        image_xs.push_back({*img, cod_ext.rhs(*img).is_zero() ? 1 : 2});
    }
    Isogeny hat = velu_from_abscissas(phi.codomain(), F, image_xs);
    if (hat.degree() != d) throw InternalError("dual kernel has the wrong size");

    // The kernel pins hat down only up to post-isomorphism: Velu's model of
    // E'/phi(E[d]) is isomorphic to the domain but need not equal it. Find
    // the scalar u with (u^4 a_M, u^6 b_M) = (a_E, b_E) that also realizes
    // hat(phi(P)) = [d] P; the +-1 automorphism freedom is part of the
    // candidate set.
    const Curve& mod = hat.codomain();
    const Field& f = dom.field();
    std::vector<Fel> candidates;
    if (!mod.a().is_zero()) {
        Poly quartic(f, {-dom.a() / mod.a(), f.zero(), f.zero(), f.zero(), f.one()});
        for (const Fel& u : roots_unchecked(quartic)) {
            Fel u6 = u.pow(6);
            if (u6 * mod.b() == dom.b()) candidates.push_back(u);
        }
    } else {
        Poly sextic(f, {-dom.b() / mod.b(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero(),
                        f.one()});
        for (const Fel& u : roots_unchecked(sextic)) candidates.push_back(u);
    }
    for (const Fel& u : candidates) {
        Isogeny cand = hat.post_isomorphism(u);
        if (cand.codomain() != dom) continue;
        bool ok = true;
        SeededRng probe_rng(0xD0A2);
        for (int i = 0; i < 8 && ok; ++i) {
            CurvePoint p = dom.random_point(probe_rng);
            ok = cand.evaluate(phi.evaluate(p)) == scalar_mul_u(d, p);
        }
        if (ok) return cand;
    }
    throw InternalError("no model isomorphism realizes the dual");
}

IsogenyChain::IsogenyChain(std::vector<Isogeny> steps) {
    for (auto& s : steps) push(std::move(s));
}

void IsogenyChain::push(Isogeny step) {
    if (!steps_.empty() && steps_.back().codomain() != step.domain())
        throw LinkMismatch("chain step domain does not match the previous codomain");
    steps_.push_back(std::move(step));
}

const Curve& IsogenyChain::domain() const {
    if (steps_.empty()) throw BadInput("empty chain has no domain");
    return steps_.front().domain();
}

const Curve& IsogenyChain::codomain() const {
    if (steps_.empty()) throw BadInput("empty chain has no codomain");
    return steps_.back().codomain();
}

u64 IsogenyChain::total_degree() const {
    u64 d = 1;
    for (const auto& s : steps_) d *= s.degree();
    return d;
}

CurvePoint IsogenyChain::evaluate(const CurvePoint& p) const {
    CurvePoint q = p;
    for (const auto& s : steps_) q = s.evaluate(q);
    return q;
}

}  // namespace isoglab
