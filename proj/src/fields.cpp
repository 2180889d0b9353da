#include "isoglab/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace isoglab {

namespace {

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;  // p < 2^62, no overflow
    return s >= p ? s - p : s;
}

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 powmod_u64(u64 a, u128 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    if (a == 0) throw DivisionByZero("inverse of zero");
    long long t = 0, nt = 1;
    long long r = (long long)p, nr = (long long)(a % p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw DivisionByZero("element not invertible");
    if (t < 0) t += (long long)p;
    return (u64)t;
}

// --- dense polynomials over F_p as raw coefficient vectors (low-to-high) ---

using RawPoly = std::vector<u64>;

void raw_norm(RawPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

RawPoly raw_mul(const RawPoly& a, const RawPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    RawPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
    }
    raw_norm(c);
    return c;
}

// Remainder modulo a monic divisor.
RawPoly raw_mod(RawPoly a, const RawPoly& m, u64 p) {
    size_t dm = m.size() - 1;
    while (a.size() > dm) {
        u64 lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0)
            for (size_t i = 0; i < dm; ++i)
                a[shift + i] = submod(a[shift + i], mulmod(lead, m[i], p), p);
        a.pop_back();
        raw_norm(a);
        if (a.size() <= dm) break;
    }
    return a;
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& m, u64 p) {
    return raw_mod(raw_mul(a, b, p), m, p);
}

RawPoly raw_powmod(RawPoly base, u128 e, const RawPoly& m, u64 p) {
    RawPoly r{1};
    base = raw_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = raw_mulmod(r, base, m, p);
        base = raw_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

RawPoly raw_scale(RawPoly f, u64 c, u64 p) {
    for (auto& x : f) x = mulmod(x, c, p);
    raw_norm(f);
    return f;
}

RawPoly raw_sub(RawPoly a, const RawPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = submod(a[i], b[i], p);
    raw_norm(a);
    return a;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, u64 p) {
    raw_norm(a);
    raw_norm(b);
    while (!b.empty()) {
        RawPoly monic = raw_scale(b, invmod(b.back(), p), p);
        RawPoly r = raw_mod(std::move(a), monic, p);
        a = std::move(monic);
        b = std::move(r);
    }
    if (!a.empty()) a = raw_scale(a, invmod(a.back(), p), p);
    return a;
}

// Inverse of a modulo monic m, if coprime.
RawPoly raw_invmod(const RawPoly& a, const RawPoly& m, u64 p) {
    RawPoly r0 = m, r1 = raw_mod(a, m, p);
    RawPoly t0{}, t1{1};
    if (r1.empty()) throw DivisionByZero("inverse of zero element");
    while (!r1.empty()) {
        // divide r0 by r1
        RawPoly q;
        RawPoly rem = r0;
        u64 inv_lead = invmod(r1.back(), p);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                u64 c = mulmod(rem.back(), inv_lead, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = submod(rem[shift + i], mulmod(c, r1[i], p), p);
                raw_norm(rem);
            }
        }
        raw_norm(q);
        RawPoly nt = raw_sub(t0, raw_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (r0.size() != 1) throw DivisionByZero("element not invertible in extension");
    return raw_scale(t0, invmod(r0[0], p), p);
}

bool raw_is_irreducible(const RawPoly& f, u64 p) {
    size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    RawPoly x{0, 1};
    // x^{p^k} = x (mod f)
    RawPoly t = raw_mod(x, f, p);
    for (size_t i = 0; i < k; ++i) t = raw_powmod(t, p, f, p);
    if (raw_sub(t, raw_mod(x, f, p), p) != RawPoly{}) return false;
    // gcd(x^{p^{k/r}} - x, f) = 1 for each prime r | k
    size_t kk = k;
    std::vector<size_t> prime_divisors;
    for (size_t r = 2; r * r <= kk; ++r) {
        if (kk % r == 0) {
            prime_divisors.push_back(r);
            while (kk % r == 0) kk /= r;
        }
    }
    if (kk > 1) prime_divisors.push_back(kk);
    for (size_t r : prime_divisors) {
        RawPoly u = raw_mod(x, f, p);
        for (size_t i = 0; i < k / r; ++i) u = raw_powmod(u, p, f, p);
        RawPoly g = raw_gcd(raw_sub(u, raw_mod(x, f, p), p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

struct Registry {
    std::mutex mu;
    std::map<std::pair<u64, std::vector<u64>>, std::unique_ptr<Field>> fields;
    std::map<std::pair<u64, unsigned>, const Field*> canonical;
    std::map<std::pair<const Field*, const Field*>, Fel> embeddings;
};

Registry& registry() {
    static Registry* r = new Registry;  // immortal
    return *r;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// ---------------------------------------------------------------- Field ---

Field::Field(u64 p, std::vector<u64> modulus) : p_(p), modulus_(std::move(modulus)) {
    k_ = modulus_.empty() ? 1 : (unsigned)(modulus_.size() - 1);
    u128 sz = 1;
    bool fits = true;
    for (unsigned i = 0; i < k_; ++i) {
        sz *= p_;
        if (sz > (u128)UINT64_MAX) {
            fits = false;
            break;
        }
    }
    if (fits) size_ = (u64)sz;
}

const Field& Field::prime(u64 p) {
    if (p >= (1ull << 62)) throw FieldTooLarge("modulus must be below 2^62");
    if (!is_prime_u64(p)) throw BadInput("field characteristic is not prime");
    auto& reg = registry();
    std::scoped_lock lock(reg.mu);
    auto key = std::make_pair(p, std::vector<u64>{});
    auto it = reg.fields.find(key);
    if (it == reg.fields.end())
        it = reg.fields.emplace(key, std::unique_ptr<Field>(new Field(p, {}))).first;
    return *it->second;
}

const Field& Field::extension(u64 p, const std::vector<u64>& modulus) {
    if (p >= (1ull << 62)) throw FieldTooLarge("modulus must be below 2^62");
    if (!is_prime_u64(p)) throw BadInput("field characteristic is not prime");
    std::vector<u64> m = modulus;
    for (auto& c : m) c %= p;
    raw_norm(m);
    if (m.size() < 3 || m.back() != 1)
        throw BadInput("extension modulus must be monic of degree >= 2");
    if (!raw_is_irreducible(m, p)) throw BadInput("extension modulus is reducible");
    auto& reg = registry();
    std::scoped_lock lock(reg.mu);
    auto key = std::make_pair(p, m);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end())
        it = reg.fields.emplace(key, std::unique_ptr<Field>(new Field(p, m))).first;
    return *it->second;
}

const Field& Field::extension(u64 p, unsigned k) {
    if (k == 1) return prime(p);
    {
        auto& reg = registry();
        std::scoped_lock lock(reg.mu);
        auto it = reg.canonical.find({p, k});
        if (it != reg.canonical.end()) return *it->second;
    }
    if (!is_prime_u64(p)) throw BadInput("field characteristic is not prime");
    // Ordered scan in canonical index order (constant coefficient least
    // significant) for the first monic irreducible of degree k. Gives
    // x^2+1 for k = 2, p = 3 mod 4. Tuples with zero constant term are
    // divisible by x and skipped wholesale.
    std::vector<u64> m(k + 1, 0);
    m[k] = 1;
    std::vector<u64> c(k, 0);
    c[0] = 1;
    for (;;) {
        for (unsigned i = 0; i < k; ++i) m[i] = c[i];
        if (raw_is_irreducible(m, p)) break;
        unsigned i = 0;
        while (i < k && c[i] == p - 1) c[i++] = 0;
        if (i >= k) throw InternalError("no irreducible modulus found");
        ++c[i];
        if (c[0] == 0) c[0] = 1;  // skip the x-divisible block
    }
    const Field& f = extension(p, m);
    auto& reg = registry();
    std::scoped_lock lock(reg.mu);
    reg.canonical[{p, k}] = &f;
    return f;
}

Fel Field::zero() const { return Fel(this, CoeffVec(k_)); }

Fel Field::one() const {
    CoeffVec c(k_);
    c[0] = 1 % p_;
    return Fel(this, c);
}

Fel Field::from_int(u64 v) const {
    CoeffVec c(k_);
    c[0] = v % p_;
    return Fel(this, c);
}

Fel Field::from_signed(long long v) const {
    long long r = v % (long long)p_;
    if (r < 0) r += (long long)p_;
    return from_int((u64)r);
}

Fel Field::make(const std::vector<u64>& coeffs) const {
    if (coeffs.size() > k_) throw BadInput("too many coefficients for field degree");
    CoeffVec c(k_);
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % p_;
    return Fel(this, c);
}

Fel Field::element_at(u64 index) const {
    if (!size_) throw FieldTooLarge("field has no 64-bit enumeration");
    CoeffVec c(k_);
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = index % p_;
        index /= p_;
    }
    return Fel(this, c);
}

u64 Field::index_of(const Fel& a) const {
    u64 idx = 0;
    for (unsigned i = k_; i-- > 0;) idx = idx * p_ + a.coeff(i);
    return idx;
}

Fel Field::sample(SeededRng& rng) const {
    CoeffVec c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = rng.below(p_);
    return Fel(this, c);
}

const std::vector<uint8_t>* Field::square_table() const {
    if (!size_ || *size_ > (1ull << 18)) return nullptr;
    auto& reg = registry();
    std::scoped_lock lock(reg.mu);
    if (!squares_) {
        auto table = std::make_unique<std::vector<uint8_t>>(*size_, 0);
        for (u64 i = 0; i < *size_; ++i) {
            Fel a = element_at(i);
            (*table)[index_of(a * a)] = 1;
        }
        squares_ = std::move(table);
    }
    return squares_.get();
}

const Fel& Field::canonical_nonsquare() const {
    auto& reg = registry();
    {
        std::scoped_lock lock(reg.mu);
        if (nonsquare_) return *nonsquare_;
    }
    if (!size_) throw FieldTooLarge("non-square scan needs an enumerable field");
    std::unique_ptr<Fel> found;
    for (u64 i = 2; i < *size_; ++i) {
        Fel a = element_at(i);
        if (a.chi() == -1) {
            found = std::make_unique<Fel>(a);
            break;
        }
    }
    if (!found) throw InternalError("no non-square found");
    std::scoped_lock lock(reg.mu);
    if (!nonsquare_) nonsquare_ = std::move(found);
    return *nonsquare_;
}

// ------------------------------------------------------------------ Fel ---

bool Fel::is_zero() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool Fel::is_one() const {
    if (c_[0] != 1 % f_->p_) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

u64 Fel::lift() const {
    if (!f_->is_prime_field()) throw FieldMismatch("lift needs a prime-field element");
    return c_[0];
}

Fel Fel::operator+(const Fel& o) const {
    check_same(o);
    CoeffVec r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = addmod(c_[i], o.c_[i], f_->p_);
    return Fel(f_, r);
}

Fel Fel::operator-(const Fel& o) const {
    check_same(o);
    CoeffVec r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = submod(c_[i], o.c_[i], f_->p_);
    return Fel(f_, r);
}

Fel Fel::operator-() const {
    CoeffVec r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? f_->p_ - c_[i] : 0;
    return Fel(f_, r);
}

Fel Fel::operator*(const Fel& o) const {
    check_same(o);
    u64 p = f_->p_;
    size_t k = c_.size();
    if (k == 1) {
        CoeffVec r(1);
        r[0] = mulmod(c_[0], o.c_[0], p);
        return Fel(f_, r);
    }
    // schoolbook product then reduction by the monic modulus
    std::array<u64, 32> buf{};
    std::vector<u64> heap;
    u64* prod;
    size_t plen = 2 * k - 1;
    if (plen <= 32) {
        prod = buf.data();
    } else {
        heap.assign(plen, 0);
        prod = heap.data();
    }
    for (size_t i = 0; i < k; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < k; ++j)
            prod[i + j] = addmod(prod[i + j], mulmod(c_[i], o.c_[j], p), p);
    }
    const auto& m = f_->modulus_;
    for (size_t d = plen; d-- > k;) {
        u64 lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        size_t shift = d - k;
        for (size_t i = 0; i < k; ++i)
            prod[shift + i] = submod(prod[shift + i], mulmod(lead, m[i], p), p);
    }
    CoeffVec r(k);
    for (size_t i = 0; i < k; ++i) r[i] = prod[i];
    return Fel(f_, r);
}

Fel Fel::inv() const {
    u64 p = f_->p_;
    if (c_.size() == 1) {
        CoeffVec r(1);
        r[0] = invmod(c_[0], p);
        return Fel(f_, r);
    }
    RawPoly a(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) a[i] = c_[i];
    raw_norm(a);
    RawPoly r = raw_invmod(a, f_->modulus_, p);
    CoeffVec out(c_.size());
    for (size_t i = 0; i < r.size(); ++i) out[i] = r[i];
    return Fel(f_, out);
}

Fel Fel::operator/(const Fel& o) const { return *this * o.inv(); }

Fel Fel::pow(u128 e) const {
    Fel r = f_->one();
    Fel b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Fel Fel::frobenius() const { return pow(f_->p_); }

bool Fel::operator==(const Fel& o) const {
    if (f_ != o.f_) return false;
    return c_ == o.c_;
}

std::strong_ordering Fel::operator<=>(const Fel& o) const {
    check_same(o);
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
    }
    return std::strong_ordering::equal;
}

int Fel::chi() const {
    if (is_zero()) return 0;
    u64 p = f_->p_;
    if (c_.size() > 1) {
        if (const auto* table = f_->square_table())
            return (*table)[f_->index_of(*this)] ? 1 : -1;
    }
    if (c_.size() == 1) {
        // Jacobi symbol; p is prime so this is the Legendre symbol.
        u64 a = c_[0], n = p;
        int t = 1;
        while (a != 0) {
            while ((a & 1) == 0) {
                a >>= 1;
                u64 r = n & 7;
                if (r == 3 || r == 5) t = -t;
            }
            std::swap(a, n);
            if ((a & 3) == 3 && (n & 3) == 3) t = -t;
            a %= n;
        }
        return n == 1 ? t : 0;
    }
    u128 q = 1;
    for (unsigned i = 0; i < f_->k_; ++i) {
        if (q > ((u128)1 << 126) / p) throw FieldTooLarge("field too large for chi");
        q *= p;
    }
    Fel r = pow((q - 1) / 2);
    if (r.is_one()) return 1;
    return -1;
}

std::optional<Fel> Fel::sqrt() const {
    if (is_zero()) return *this;
    if (chi() != 1) return std::nullopt;
    u64 p = f_->p_;
    u128 q = 1;
    for (unsigned i = 0; i < f_->k_; ++i) q *= p;
    Fel r = f_->zero();
    if (q % 4 == 3) {
        r = pow((q + 1) / 4);
    } else {
        // Tonelli-Shanks with the canonical non-square as generator of the
        // 2-Sylow of the multiplicative group.
        u128 t = q - 1;
        int s = 0;
        while ((t & 1) == 0) t >>= 1, ++s;
        Fel z = f_->canonical_nonsquare().pow(t);
        Fel x = pow((t + 1) / 2);
        Fel b = pow(t);
        int m = s;
        while (!b.is_one()) {
            Fel b2 = b;
            int i = 0;
            while (!b2.is_one()) {
                b2 = b2.square();
                ++i;
            }
            Fel g = z;
            for (int j = 0; j < m - i - 1; ++j) g = g.square();
            x = x * g;
            z = g.square();
            b = b * z;
            m = i;
        }
        r = x;
    }
    Fel other = -r;
    return std::min(r, other);
}

std::string Fel::label() const {
    std::ostringstream os;
    if (c_.size() == 1) {
        os << c_[0];
    } else if (c_.size() == 2) {
        os << c_[0] << "+" << c_[1] << "*i";
    } else {
        os << c_[0];
        for (size_t i = 1; i < c_.size(); ++i) {
            os << "+" << c_[i] << "*t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

bool in_subfield(const Fel& a, unsigned d) {
    if (a.field().degree() % d != 0) return false;
    Fel t = a;
    for (unsigned i = 0; i < d; ++i) t = t.frobenius();
    return t == a;
}

namespace detail {
// Access to the embedding cache for poly.cpp.
std::mutex& registry_mutex() { return registry().mu; }
std::map<std::pair<const Field*, const Field*>, Fel>& embedding_cache() {
    return registry().embeddings;
}
}  // namespace detail

}  // namespace isoglab
