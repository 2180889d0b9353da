#include "isoglab/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace isoglab {

namespace detail {
std::mutex& registry_mutex();
std::map<std::pair<const Field*, const Field*>, Fel>& embedding_cache();
}  // namespace detail

Poly::Poly(const Field& f, std::vector<Fel> coeffs) : f_(&f), c_(std::move(coeffs)) {
    for (const Fel& c : c_)
        if (&c.field() != &f) throw FieldMismatch("coefficient from a different field");
    normalize();
}

Poly Poly::from_ints(const Field& f, const std::vector<long long>& coeffs) {
    std::vector<Fel> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.push_back(f.from_signed(v));
    return Poly(f, std::move(c));
}

Poly Poly::x(const Field& f) { return from_ints(f, {0, 1}); }

Poly Poly::constant(const Fel& c) { return Poly(c.field(), {c}); }

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

Fel Poly::coeff(size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }

Poly Poly::operator+(const Poly& o) const {
    if (f_ != o.f_) throw FieldMismatch("polynomials over different fields");
    Poly r(*f_);
    size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
    r.normalize();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (f_ != o.f_) throw FieldMismatch("polynomials over different fields");
    Poly r(*f_);
    size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) - o.coeff(i));
    r.normalize();
    return r;
}

Poly Poly::operator-() const {
    Poly r(*f_);
    r.c_.reserve(c_.size());
    for (const Fel& c : c_) r.c_.push_back(-c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (f_ != o.f_) throw FieldMismatch("polynomials over different fields");
    if (is_zero() || o.is_zero()) return Poly(*f_);
    Poly r(*f_);
    r.c_.assign(c_.size() + o.c_.size() - 1, f_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.normalize();
    return r;
}

Poly Poly::operator*(const Fel& s) const {
    Poly r(*f_);
    r.c_.reserve(c_.size());
    for (const Fel& c : c_) r.c_.push_back(c * s);
    r.normalize();
    return r;
}

bool Poly::operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (f_ != divisor.f_) throw FieldMismatch("polynomials over different fields");
    if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly q(*f_), r = *this;
    if (r.c_.size() < divisor.c_.size()) return {q, r};
    Fel inv_lead = divisor.leading().inv();
    q.c_.assign(r.c_.size() - divisor.c_.size() + 1, f_->zero());
    while ((int)r.c_.size() >= (int)divisor.c_.size() && !r.is_zero()) {
        size_t shift = r.c_.size() - divisor.c_.size();
        Fel c = r.c_.back() * inv_lead;
        q.c_[shift] = c;
        for (size_t i = 0; i < divisor.c_.size(); ++i)
            r.c_[shift + i] = r.c_[shift + i] - c * divisor.c_[i];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

Poly Poly::monic() const {
    if (is_zero() || leading().is_one()) return *this;
    return *this * leading().inv();
}

Poly Poly::derivative() const {
    Poly r(*f_);
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(f_->from_int(i) * c_[i]);
    r.normalize();
    return r;
}

Fel Poly::eval(const Fel& x) const {
    Fel acc = f_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::shift_up(size_t n) const {
    if (is_zero()) return *this;
    Poly r(*f_);
    r.c_.assign(c_.size() + n, f_->zero());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + n] = c_[i];
    return r;
}

bool Poly::lex_less(const Poly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = c_.size(); i-- > 0;) {
        auto c = c_[i] <=> o.c_[i];
        if (c != 0) return c < 0;
    }
    return false;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || !c_[i].is_one()) os << c_[i].label();
        if (i > 0) {
            if (!c_[i].is_one()) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly poly_modexp(const Poly& f, u128 e, const Poly& m) {
    Poly r = Poly::from_ints(f.field(), {1});
    Poly b = f % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

Poly poly_compose_mod(const Poly& g, const Poly& h, const Poly& m) {
    Poly acc(g.field());
    Poly hm = h % m;
    for (size_t i = g.coeffs().size(); i-- > 0;)
        acc = (acc * hm + Poly::constant(g.coeff(i))) % m;
    return acc;
}

namespace {

// x^{q^d} mod f where q is the size of the coefficient field.
Poly frobenius_power_mod(const Poly& f, size_t d) {
    const Field& F = f.field();
    Poly t = Poly::x(F) % f;
    u64 p = F.p();
    size_t steps = d * F.degree();
    for (size_t i = 0; i < steps; ++i) t = poly_modexp(t, p, f);
    return t;
}

void collect_roots(const Poly& f, std::vector<Fel>& out, SeededRng& rng) {
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(-(f.coeff(0) / f.coeff(1)));
        return;
    }
    const Field& F = f.field();
    u64 p = F.p();
    u128 q = 1;
    for (unsigned i = 0; i < F.degree(); ++i) q *= p;
    // Equal-degree splitting on a product of linears: gcd((x+d)^{(q-1)/2}-1, f).
    for (;;) {
        Fel delta = F.sample(rng);
        Poly shifted = Poly(F, {delta, F.one()});
        Poly g = poly_modexp(shifted, (q - 1) / 2, f) - Poly::from_ints(F, {1});
        Poly h = poly_gcd(g, f);
        if (h.degree() > 0 && h.degree() < f.degree()) {
            collect_roots(h, out, rng);
            collect_roots((f / h).monic(), out, rng);
            return;
        }
    }
}

}  // namespace

std::vector<Fel> roots_unchecked(const Poly& f) {
    std::vector<Fel> out;
    if (f.degree() <= 0) return out;
    const Field& F = f.field();
    Poly fsq = f.monic();
    // keep only distinct rational roots: gcd with x^q - x
    Poly xq = frobenius_power_mod(fsq, 1);
    Poly lin = poly_gcd(xq - (Poly::x(F) % fsq), fsq);
    if (lin.degree() <= 0) {
        // fsq may have degree <= the Frobenius reduction; check the linear case
        if (fsq.degree() == 1) lin = fsq;
        else return out;
    }
    SeededRng rng(0x15091765);  // fixed seed: root extraction is deterministic per input
    if (F.p() == 2) {
        // tiny characteristic: fall back to scanning (only used in tests)
        u64 n = *F.size();
        for (u64 i = 0; i < n; ++i) {
            Fel a = F.element_at(i);
            if (f.eval(a).is_zero()) out.push_back(a);
        }
        return out;
    }
    collect_roots(lin, out, rng);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Equal-degree splitting of a product of degree-d irreducibles. The norm
// w = r^{1 + q + ... + q^{d-1}} keeps exponents inside 64 bits.
void edf(const Poly& f, size_t d, std::vector<Poly>& out, SeededRng& rng) {
    if (f.degree() == (int)d) {
        out.push_back(f.monic());
        return;
    }
    const Field& F = f.field();
    u64 q = *F.size();
    Poly xq = poly_modexp(Poly::x(F), q, f);
    for (;;) {
        std::vector<Fel> rc;
        for (int i = 0; i < f.degree(); ++i) rc.push_back(F.sample(rng));
        Poly r(F, rc);
        if (r.degree() < 1) continue;
        Poly w = r % f;
        for (size_t i = 1; i < d; ++i) w = (poly_compose_mod(w, xq, f) * r) % f;
        Poly g = poly_modexp(w, (q - 1) / 2, f) - Poly::from_ints(F, {1});
        Poly h = poly_gcd(g, f);
        if (h.degree() > 0 && h.degree() < f.degree()) {
            edf(h, d, out, rng);
            edf((f / h).monic(), d, out, rng);
            return;
        }
    }
}

}  // namespace

std::vector<Poly> factor_squarefree(const Poly& f) {
    const Field& F = f.field();
    if (F.p() == 2) throw BadInput("factorization requires odd characteristic");
    if (!F.size()) throw FieldTooLarge("factorization needs a 64-bit enumerable field");
    std::vector<Poly> out;
    Poly rem = f.monic();
    if (rem.degree() < 1) return out;
    SeededRng rng(0x5EEDF00D);
    u64 p = F.p();
    Poly x = Poly::x(F);
    Poly xqi = x % rem;
    size_t d = 0;
    while (rem.degree() > 0) {
        ++d;
        if ((int)d > f.degree()) throw InternalError("distinct-degree pass ran away");
        if (2 * (int)d > rem.degree()) {
            // whatever remains is irreducible
            out.push_back(rem.monic());
            break;
        }
        for (unsigned i = 0; i < F.degree(); ++i) xqi = poly_modexp(xqi, p, rem);
        Poly g = poly_gcd(xqi - (x % rem), rem);
        if (g.degree() > 0) {
            edf(g, d, out, rng);
            rem = (rem / g).monic();
            xqi = xqi % rem;
        }
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.lex_less(b); });
    return out;
}

std::vector<Fel> enumerate_roots(const Poly& f) {
    const Field& F = f.field();
    if (!F.size() || *F.size() > (1ull << 22))
        throw FieldTooLarge("root enumeration is limited to fields of size <= 2^22");
    return roots_unchecked(f);
}

std::optional<Fel> find_root(const Poly& f) {
    auto roots = enumerate_roots(f);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    Poly g = f.monic();
    size_t d = (size_t)g.degree();
    Poly x = Poly::x(g.field()) % g;
    if (frobenius_power_mod(g, d) != x) return false;
    size_t dd = d;
    std::vector<size_t> primes;
    for (size_t r = 2; r * r <= dd; ++r)
        if (dd % r == 0) {
            primes.push_back(r);
            while (dd % r == 0) dd /= r;
        }
    if (dd > 1) primes.push_back(dd);
    for (size_t r : primes) {
        Poly u = frobenius_power_mod(g, d / r);
        if (poly_gcd(u - x, g).degree() != 0) return false;
    }
    return true;
}

// ------------------------------------------------- embeddings & descent ---

Fel embed(const Fel& a, const Field& dst) {
    const Field& src = a.field();
    if (&src == &dst) return a;
    if (src.p() != dst.p() || dst.degree() % src.degree() != 0)
        throw FieldMismatch("no embedding between these fields");
    if (src.is_prime_field()) {
        return dst.from_int(a.coeff(0));
    }
    Fel gen_image = dst.zero();
    {
        std::scoped_lock lock(detail::registry_mutex());
        auto& cache = detail::embedding_cache();
        auto it = cache.find({&src, &dst});
        if (it != cache.end()) gen_image = it->second;
    }
    if (gen_image.is_zero()) {
        // image of x mod src.modulus: smallest root of the modulus in dst
        std::vector<Fel> mc;
        for (u64 c : src.modulus()) mc.push_back(dst.from_int(c));
        Poly m(dst, std::move(mc));
        auto roots = roots_unchecked(m);
        if (roots.empty()) throw InternalError("modulus has no root in extension");
        gen_image = roots.front();
        std::scoped_lock lock(detail::registry_mutex());
        detail::embedding_cache().insert({{&src, &dst}, gen_image});
    }
    Fel acc = dst.zero();
    for (size_t i = src.degree(); i-- > 0;) acc = acc * gen_image + dst.from_int(a.coeff(i));
    return acc;
}

Fel descend(const Fel& a, const Field& src) {
    const Field& dst = a.field();
    if (&src == &dst) return a;
    if (src.p() != dst.p() || dst.degree() % src.degree() != 0)
        throw FieldMismatch("no descent between these fields");
    if (src.is_prime_field()) {
        for (size_t i = 1; i < dst.degree(); ++i)
            if (a.coeff(i) != 0) throw FieldMismatch("element does not descend to the prime field");
        return src.from_int(a.coeff(0));
    }
    // Solve a = sum b_i r^i over F_p, where r is the embedded generator.
    Fel r = embed(src.make({0, 1}), dst);
    unsigned kd = dst.degree(), ks = src.degree();
    u64 p = dst.p();
    // columns: coords of r^i; last column: coords of a
    std::vector<std::vector<u64>> m(kd, std::vector<u64>(ks + 1, 0));
    Fel ri = dst.one();
    for (unsigned j = 0; j < ks; ++j) {
        for (unsigned i = 0; i < kd; ++i) m[i][j] = ri.coeff(i);
        ri = ri * r;
    }
    for (unsigned i = 0; i < kd; ++i) m[i][ks] = a.coeff(i);
    // Gaussian elimination over F_p
    auto mulp = [p](u64 x, u64 y) { return (u64)((u128)x * y % p); };
    unsigned row = 0;
    std::vector<int> pivot_col(ks, -1);
    for (unsigned col = 0; col < ks && row < kd; ++col) {
        unsigned sel = row;
        while (sel < kd && m[sel][col] == 0) ++sel;
        if (sel == kd) continue;
        std::swap(m[sel], m[row]);
        u64 inv = 1;
        {  // modular inverse via Fermat (p prime)
            u64 b = m[row][col], e = p - 2, acc = 1;
            while (e) {
                if (e & 1) acc = mulp(acc, b);
                b = mulp(b, b);
                e >>= 1;
            }
            inv = acc;
        }
        for (unsigned j = col; j <= ks; ++j) m[row][j] = mulp(m[row][j], inv);
        for (unsigned i = 0; i < kd; ++i) {
            if (i == row || m[i][col] == 0) continue;
            u64 c = m[i][col];
            for (unsigned j = col; j <= ks; ++j) {
                u64 sub = mulp(c, m[row][j]);
                m[i][j] = m[i][j] >= sub ? m[i][j] - sub : m[i][j] + p - sub;
            }
        }
        pivot_col[col] = (int)row;
        ++row;
    }
    std::vector<u64> b(ks, 0);
    for (unsigned col = 0; col < ks; ++col)
        if (pivot_col[col] >= 0) b[col] = m[pivot_col[col]][ks];
    // consistency: rows without pivots must have zero rhs
    for (unsigned i = row; i < kd; ++i)
        if (m[i][ks] != 0) throw FieldMismatch("element does not descend to subfield");
    Fel candidate = src.make(b);
    if (embed(candidate, dst) != a) throw FieldMismatch("element does not descend to subfield");
    return candidate;
}

Poly map_into(const Poly& f, const Field& dst) {
    std::vector<Fel> c;
    c.reserve(f.coeffs().size());
    for (const Fel& v : f.coeffs()) c.push_back(embed(v, dst));
    return Poly(dst, std::move(c));
}

Poly descend_poly(const Poly& f, const Field& dst) {
    std::vector<Fel> c;
    c.reserve(f.coeffs().size());
    for (const Fel& v : f.coeffs()) c.push_back(descend(v, dst));
    return Poly(dst, std::move(c));
}

}  // namespace isoglab
