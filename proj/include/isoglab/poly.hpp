#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "isoglab/fields.hpp"

namespace isoglab {

// Dense univariate polynomial over a finite field. Coefficient i is the
// coefficient of x^i. Always normalized: the leading coefficient is nonzero
// or the coefficient sequence is empty (the zero polynomial), whose degree
// is the sentinel -1.
class Poly {
public:
    Poly() : f_(nullptr) {}
    explicit Poly(const Field& f) : f_(&f) {}
    Poly(const Field& f, std::vector<Fel> coeffs);
    // Convenience: coefficients as integers, low-to-high.
    static Poly from_ints(const Field& f, const std::vector<long long>& coeffs);
    static Poly x(const Field& f);
    static Poly constant(const Fel& c);

    const Field& field() const { return *f_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    const Fel& leading() const { return c_.back(); }
    Fel coeff(size_t i) const;
    const std::vector<Fel>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Fel& c) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Quotient and remainder; deg r < deg divisor. Divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator%(const Poly& m) const { return divmod(m).second; }
    Poly operator/(const Poly& m) const { return divmod(m).first; }

    Poly monic() const;
    Poly derivative() const;
    Fel eval(const Fel& x) const;
    Poly shift_up(size_t n) const;  // multiply by x^n

    // Canonical order on polynomials: by degree, then coefficients from the
    // top down. Used to make enumeration outputs deterministic.
    bool lex_less(const Poly& o) const;

    std::string str(const std::string& var = "x") const;

private:
    void normalize();
    const Field* f_;
    std::vector<Fel> c_;
};

// Monic greatest common divisor.
Poly poly_gcd(Poly a, Poly b);

// f^e mod m by binary exponentiation.
Poly poly_modexp(const Poly& f, u128 e, const Poly& m);

// g(h) mod m.
Poly poly_compose_mod(const Poly& g, const Poly& h, const Poly& m);

// Irreducibility over the coefficient field: x^{q^d} = x mod f plus
// gcd(x^{q^{d/r}} - x, f) = 1 for each prime r | d.
bool is_irreducible(const Poly& f);

// All roots of f in its coefficient field, in ascending canonical order.
// Exhaustive-scan contract: fields up to 2^22 elements.
std::vector<Fel> enumerate_roots(const Poly& f);
std::optional<Fel> find_root(const Poly& f);

// Root finding without the field-size gate (gcd splitting, no scan); for
// internal use on large arithmetic-only extensions.
std::vector<Fel> roots_unchecked(const Poly& f);

// Monic irreducible factors of a squarefree monic polynomial, canonically
// sorted. Distinct-degree then equal-degree splitting; odd characteristic.
std::vector<Poly> factor_squarefree(const Poly& f);

// Lift a polynomial coefficient-wise into an extension of its field.
Poly map_into(const Poly& f, const Field& dst);
// Descend coefficient-wise; throws FieldMismatch if any coefficient fails.
Poly descend_poly(const Poly& f, const Field& dst);

}  // namespace isoglab
