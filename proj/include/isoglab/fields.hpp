#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isoglab/errors.hpp"
#include "isoglab/rng.hpp"

namespace isoglab {

using u64 = uint64_t;
using u128 = unsigned __int128;

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

// Coefficient storage for field elements: inline up to 4 limbs, heap beyond.
// F_p and F_{p^2} arithmetic (the hot paths) never allocates.
class CoeffVec {
public:
    CoeffVec() : size_(0) {}
    explicit CoeffVec(size_t n) : size_(n) {
        if (n > kInline) heap_.assign(n, 0);
        else inline_.fill(0);
    }

    size_t size() const { return size_; }
    u64 operator[](size_t i) const { return size_ <= kInline ? inline_[i] : heap_[i]; }
    u64& operator[](size_t i) { return size_ <= kInline ? inline_[i] : heap_[i]; }

    bool operator==(const CoeffVec& o) const {
        if (size_ != o.size_) return false;
        for (size_t i = 0; i < size_; ++i)
            if ((*this)[i] != o[i]) return false;
        return true;
    }

private:
    static constexpr size_t kInline = 4;
    size_t size_;
    std::array<u64, kInline> inline_{};
    std::vector<u64> heap_;
};

class Fel;

// A finite field F_{p^k}: a prime field when k = 1, otherwise
// F_p[x]/(modulus) with a monic irreducible modulus of degree k built
// directly over F_p (no towers). Instances are interned: pointer equality
// is field equality. All state is immutable after construction.
class Field {
public:
    static const Field& prime(u64 p);
    // Canonical extension of degree k: modulus is the first monic
    // irreducible in canonical index order over the coefficient tuples,
    // which is x^2+1 whenever p = 3 mod 4 and k = 2.
    static const Field& extension(u64 p, unsigned k);
    // Extension with an explicit monic modulus (degree k, coeffs low-to-high
    // including the leading 1). Irreducibility is verified.
    static const Field& extension(u64 p, const std::vector<u64>& modulus);

    u64 p() const { return p_; }
    unsigned degree() const { return k_; }
    bool is_prime_field() const { return k_ == 1; }
    // p^k, or nullopt if it does not fit in 64 bits.
    std::optional<u64> size() const { return size_; }
    const std::vector<u64>& modulus() const { return modulus_; }

    Fel zero() const;
    Fel one() const;
    Fel from_int(u64 v) const;          // embeds v mod p as a constant
    Fel from_signed(long long v) const;
    Fel make(const std::vector<u64>& coeffs) const;  // coeffs low-to-high, reduced mod p
    // Canonical enumeration: index = sum c_i p^i. Requires the field size
    // to fit in 64 bits.
    Fel element_at(u64 index) const;
    u64 index_of(const Fel& a) const;

    Fel sample(SeededRng& rng) const;

    // Smallest non-square in canonical order; cached after first use.
    const Fel& canonical_nonsquare() const;

    bool operator==(const Field& o) const { return this == &o; }

private:
    Field(u64 p, std::vector<u64> modulus);
    friend class Fel;

    const std::vector<uint8_t>* square_table() const;  // lazy, small fields only

    u64 p_;
    unsigned k_;
    std::vector<u64> modulus_;  // size k+1, monic; empty for k = 1
    std::optional<u64> size_;
    mutable std::unique_ptr<Fel> nonsquare_;             // lazy, guarded by registry mutex
    mutable std::unique_ptr<std::vector<uint8_t>> squares_;  // idem
};

// An element of a Field. Immutable value type; elements of distinct fields
// never mix in one operation (checked, throws FieldMismatch).
class Fel {
public:
    Fel() : f_(nullptr) {}

    const Field& field() const { return *f_; }
    bool valid() const { return f_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;
    u64 coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    // Value as an integer for prime-field elements.
    u64 lift() const;

    Fel operator+(const Fel& o) const;
    Fel operator-(const Fel& o) const;
    Fel operator*(const Fel& o) const;
    Fel operator/(const Fel& o) const;
    Fel operator-() const;
    Fel inv() const;
    Fel pow(u128 e) const;  // exponents up to 2^127
    Fel square() const { return *this * *this; }
    // x -> x^p, the absolute Frobenius.
    Fel frobenius() const;

    bool operator==(const Fel& o) const;
    bool operator!=(const Fel& o) const { return !(*this == o); }

    // Canonical order: by enumeration index (lowest coefficient least
    // significant). Total order within one field.
    std::strong_ordering operator<=>(const Fel& o) const;

    // Legendre-style quadratic character: 0, +1, -1.
    int chi() const;
    bool is_square() const { return chi() >= 0; }
    // Square root, canonically the smaller of the two; nullopt if none.
    std::optional<Fel> sqrt() const;

    // Canonical text: "c0" for prime fields, "c0+c1*i" for degree 2,
    // "c0+c1*t+..." beyond.
    std::string label() const;

    friend Fel operator*(u64 n, const Fel& a) { return a.field().from_int(n) * a; }

private:
    friend class Field;
    Fel(const Field* f, CoeffVec c) : f_(f), c_(std::move(c)) {}
    void check_same(const Fel& o) const {
        if (f_ != o.f_) throw FieldMismatch("operands belong to different fields");
    }

    const Field* f_;
    CoeffVec c_;
};

// True iff a is fixed by the p^d-power Frobenius, i.e. lies in the image of
// F_{p^d} inside a's field.
bool in_subfield(const Fel& a, unsigned d);

// Embedding of src-field elements into dst (both over the same prime, with
// src degree dividing dst degree). The image of the src generator is the
// canonically smallest root of the src modulus in dst; results are cached.
Fel embed(const Fel& a, const Field& dst);

// Inverse of embed: expresses a (which must be fixed by Frobenius^d for
// d = src.degree()) as an element of src. Throws FieldMismatch when a does
// not descend.
Fel descend(const Fel& a, const Field& src);

}  // namespace isoglab
