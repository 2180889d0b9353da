#pragma once

#include "isoglab/divpoly.hpp"

namespace isoglab {

// A separable isogeny between short-Weierstrass curves, stored through its
// kernel data: kernel_poly is the monic squarefree polynomial on the kernel
// abscissas, and the x-map is num/den with den the full denominator
// (each non-2-torsion abscissa squared, 2-torsion ones to the first power).
// The y-map is y * (num/den)', following Velu's normalization. The
// p-power Frobenius is carried as a purely inseparable special case.
class Isogeny {
public:
    const Curve& domain() const { return domain_; }
    const Curve& codomain() const { return codomain_; }
    u64 degree() const { return degree_; }
    const Poly& kernel_poly() const { return kernel_poly_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_frobenius() const { return frobenius_; }
    bool is_identity() const { return degree_ == 1 && !frobenius_; }

    // Image of a point on the domain (or on a base change of it; the image
    // then lives on the matching base change of the codomain). Kernel
    // points and infinity map to infinity.
    CurvePoint evaluate(const CurvePoint& p) const;
    CurvePoint operator()(const CurvePoint& p) const { return evaluate(p); }

    // The x-coordinate map at an abscissa, post-isomorphism scaling
    // included; nullopt on kernel abscissas.
    std::optional<Fel> x_map(const Fel& x) const;

    // Isogenies compare by (domain, codomain, kernel polynomial).
    bool operator==(const Isogeny& o) const;
    std::string key() const;

    // Post-composition with the isomorphism (x, y) -> (u^2 x, u^3 y) out of
    // the codomain; the codomain model changes to (u^4 a, u^6 b) and the
    // kernel is unchanged. Used to normalize duals onto a required model.
    Isogeny post_isomorphism(const Fel& u) const;

private:
    friend Isogeny identity_isogeny(const Curve&);
    friend Isogeny frobenius_isogeny(const Curve&);
    friend Isogeny velu_from_abscissas(const Curve&, const Field&,
                                       const std::vector<std::pair<Fel, int>>&);
    Isogeny() = default;

    Curve domain_{Field::prime(5), Field::prime(5).zero(), Field::prime(5).one()};
    Curve codomain_ = domain_;
    u64 degree_ = 1;
    Poly kernel_poly_, num_, den_;
    Fel aut_u_;  // invalid = identity automorphism
    bool frobenius_ = false;
};

Isogeny identity_isogeny(const Curve& e);

// (x, y) -> (x^p, y^p), degree p, kernel {O}; codomain y^2 = x^3 + a^p x + b^p.
Isogeny frobenius_isogeny(const Curve& e);

// Velu from explicit abscissa data (multiplicity 1 for 2-torsion abscissas,
// 2 for +-Q pairs), given over ext which extends e's base field. The result
// is defined over the base field; throws KernelNotGaloisStable otherwise.
Isogeny velu_from_abscissas(const Curve& e, const Field& ext,
                            const std::vector<std::pair<Fel, int>>& xs);

// Velu's formulas from a finite subgroup given as explicit points (with or
// without the identity), possibly over an extension of e's base field.
// Verifies closure under negation and addition; gcd(#kernel, p) = 1.
Isogeny velu_from_kernel(const Curve& e, const std::vector<CurvePoint>& kernel);

// All degree-ell isogenies defined over e's base field, ell prime != p,
// ell <= 13. Kernel subgroups of E[ell] are grouped through the rational
// scalar x-maps, so no ordinate extensions are ever required.
std::vector<Isogeny> enumerate_ell_isogenies(const Curve& e, unsigned ell,
                                             unsigned max_ext_degree);

// The count of degree-ell isogenies over the algebraic closure (always
// ell + 1): rational and irrational kernel orbits together.
unsigned count_ell_isogenies_over_closure(const Curve& e, unsigned ell,
                                          unsigned max_ext_degree);

// Dual isogeny: kernel = phi(E[deg phi]); validated against
// dual(phi)(phi(P)) = [deg]P on sample points.
Isogeny dual(const Isogeny& phi, unsigned max_ext_degree);

// Composable chain of isogenies; evaluation-only (rational maps are never
// multiplied out).
class IsogenyChain {
public:
    IsogenyChain() = default;
    explicit IsogenyChain(std::vector<Isogeny> steps);

    void push(Isogeny step);  // throws LinkMismatch on a broken link
    bool empty() const { return steps_.empty(); }
    size_t length() const { return steps_.size(); }
    const std::vector<Isogeny>& steps() const { return steps_; }
    const Curve& domain() const;
    const Curve& codomain() const;
    u64 total_degree() const;

    CurvePoint evaluate(const CurvePoint& p) const;
    CurvePoint operator()(const CurvePoint& p) const { return evaluate(p); }

private:
    std::vector<Isogeny> steps_;
};

}  // namespace isoglab
