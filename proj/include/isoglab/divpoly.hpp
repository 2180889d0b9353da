#pragma once

#include "isoglab/curve.hpp"

namespace isoglab {

// The m-th division polynomial of a curve, stored as its y-reduced even
// part: psi_m(x, y) = even_part(x) * y^y_parity after reducing y^2 through
// the curve equation. y_parity is 1 exactly when m is even.
struct DivisionPolynomial {
    unsigned m = 0;
    Poly even_part;
    int y_parity = 0;
};

// Division polynomials psi_1 .. psi_m by the standard recurrences
// (psi_2 = 2y convention), 1 <= m <= 200.
DivisionPolynomial division_poly(const Curve& e, unsigned m);

// Internal table of even parts P_1..P_m (index 0 holds P_0 = 0).
std::vector<Poly> division_poly_table(const Curve& e, unsigned m);

// Abscissas where the bivariate psi_m vanishes on the curve: roots of the
// even part, plus the 2-torsion abscissas when m is even.
std::vector<Fel> vanishing_abscissas(const Curve& e, unsigned m, const Field& in_field);

// Multiplication-by-m maps: [m]P = (phi_m / psi_m^2, omega_m / psi_m^3),
// with phi_m a plain polynomial in x and omega_m parity-tracked like psi.
struct MulByMMaps {
    unsigned m;
    Poly phi;              // monic, degree m^2
    Poly omega_even_part;  // omega_m = omega_even_part(x) * y^omega_parity
    int omega_parity;
    DivisionPolynomial psi;

    // Evaluate at an affine point P not in E[m].
    CurvePoint eval(const CurvePoint& p) const;
    // The x-coordinate of [m](x0, *) as a value, for P outside E[m].
    Fel eval_x(const Fel& x0, const Curve& e) const;
};

MulByMMaps mul_by_m_maps(const Curve& e, unsigned m);

// x([k]P) as a rational map evaluated at an abscissa; nullopt when the
// denominator vanishes (P in E[k] or a smaller torsion obstruction).
std::optional<Fel> scalar_x_map(const Curve& e, unsigned k, const Fel& x0);

struct TorsionPoint {
    CurvePoint point;
    unsigned min_degree;  // degree over the curve's base field
};

struct TorsionData {
    Curve ext_curve;        // base change of E to the splitting field
    unsigned ext_degree;    // its degree over the base field
    std::vector<TorsionPoint> points;  // all m^2 points, infinity first
};

// Full m-torsion E[m] with each point tagged by its minimal field of
// definition, found by splitting the division polynomial over increasing
// extensions and lifting ordinates. Requires gcd(m, p) = 1; throws
// ExtensionTooLarge when E[m] is not rational within max_ext_degree (also
// capped by the ISOGLAB_MAX_EXT element budget).
TorsionData torsion_points(const Curve& e, unsigned m, unsigned max_ext_degree);

// Element budget for extension enumeration: ISOGLAB_MAX_EXT or 2^22.
u64 max_ext_elements();

}  // namespace isoglab
