#pragma once

#include <cstdint>
#include <vector>

#include "flagopp/errors.hpp"

namespace flagopp {

// Element of GF(q), encoded as an integer in 0..q-1. The code is the base-p
// digit vector of the element's polynomial coefficients, low degree first.
// Code 0 is the additive identity, code 1 the multiplicative identity.
using FieldElement = std::uint8_t;

// Arithmetic tables of GF(q) for a prime power q = p^e, q <= 16. Immutable
// after construction; safe for unrestricted concurrent reads.
class Field {
public:
    // Builds GF(q). The modulus is the lexicographically smallest monic
    // irreducible polynomial of degree e over GF(p), coefficients compared
    // low-degree-first.
    explicit Field(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int e() const { return e_; }

    // Coefficient vector (c0, ..., c_e) of the modulus, c_e = 1.
    const std::vector<int>& modulus() const { return modulus_; }

    FieldElement add(FieldElement a, FieldElement b) const { return add_[idx(a, b)]; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const { return mul_[idx(a, b)]; }
    FieldElement neg(FieldElement a) const { return neg_[a]; }

    FieldElement inv(FieldElement a) const {
        if (a == 0) throw DivisionByZeroError("inv(0) in GF(" + std::to_string(q_) + ")");
        return inv_[a];
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    FieldElement pow(FieldElement a, long n) const;

    // True when q is a supported prime power (2 <= q <= 16).
    static bool is_supported(int q);

private:
    std::size_t idx(FieldElement a, FieldElement b) const {
        return std::size_t(a) * q_ + b;
    }

    int q_ = 0, p_ = 0, e_ = 0;
    std::vector<int> modulus_;
    std::vector<FieldElement> add_, mul_, neg_, inv_;
};

// Shared immutable instance per q; built once, then reused.
const Field& field(int q);

} // namespace flagopp
