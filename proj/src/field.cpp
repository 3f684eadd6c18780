#include "flagopp/field.hpp"

#include <map>
#include <mutex>

namespace flagopp {

namespace {

// Factors q as p^e with p prime. Returns false if q is not a prime power.
bool factor_prime_power(int q, int& p, int& e) {
    if (q < 2) return false;
    int m = q;
    int d = 2;
    while (d * d <= m && m % d != 0) ++d;
    p = (d * d <= m) ? d : m;
    e = 0;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    return m == 1;
}

// Polynomials over GF(p) as coefficient vectors, low degree first.
using Poly = std::vector<int>;

Poly poly_mod(Poly a, const Poly& m, int p) {
    const int dm = int(m.size()) - 1;
    while (int(a.size()) - 1 >= dm) {
        int da = int(a.size()) - 1;
        int lead = a[da];
        if (lead != 0) {
            // m is monic: subtract lead * x^(da-dm) * m
            for (int i = 0; i <= dm; ++i) {
                int& c = a[da - dm + i];
                c = ((c - lead * m[i]) % p + p) % p;
            }
        }
        a.pop_back();
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(prod), m, p);
}

// Trial check: f (monic, degree e >= 1) has no monic factor of degree
// 1..e/2. Candidate divisors are enumerated by coefficient odometer.
bool is_irreducible(const Poly& f, int p) {
    const int e = int(f.size()) - 1;
    if (e == 1) return true;
    for (int d = 1; 2 * d <= e; ++d) {
        std::vector<int> c(d, 0); // low coefficients of a monic degree-d divisor
        while (true) {
            Poly g(c.begin(), c.end());
            g.push_back(1);
            Poly r = poly_mod(f, g, p);
            bool zero = true;
            for (int x : r)
                if (x != 0) { zero = false; break; }
            if (zero) return false;
            int k = 0;
            while (k < d && ++c[k] == p) c[k++] = 0;
            if (k == d) break;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible polynomial of degree e over
// GF(p); coefficient vectors (c0, ..., c_{e-1}) compared low-degree-first.
Poly smallest_irreducible(int p, int e) {
    std::vector<int> c(e, 0);
    while (true) {
        Poly f(c.begin(), c.end());
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
        int k = e - 1;
        while (k >= 0 && ++c[k] == p) c[k--] = 0; // c0 is most significant
        if (k < 0) break;
    }
    throw Error("no irreducible polynomial found"); // unreachable for valid p, e
}

Poly decode(int code, int p, int e) {
    Poly a(e, 0);
    for (int i = 0; i < e; ++i) {
        a[i] = code % p;
        code /= p;
    }
    return a;
}

int encode(const Poly& a, int p, int e) {
    int code = 0;
    for (int i = e - 1; i >= 0; --i) code = code * p + (i < int(a.size()) ? a[i] : 0);
    return code;
}

} // namespace

bool Field::is_supported(int q) {
    int p, e;
    return q >= 2 && q <= 16 && factor_prime_power(q, p, e);
}

Field::Field(int q) : q_(q) {
    if (q > 16)
        throw UnsupportedError("GF(" + std::to_string(q) + "): only q <= 16 is supported");
    if (!factor_prime_power(q, p_, e_))
        throw NotPrimePowerError(std::to_string(q) + " is not a prime power");

    modulus_ = smallest_irreducible(p_, e_);

    add_.assign(std::size_t(q) * q, 0);
    mul_.assign(std::size_t(q) * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);

    for (int a = 0; a < q; ++a) {
        Poly pa = decode(a, p_, e_);
        for (int b = 0; b < q; ++b) {
            Poly pb = decode(b, p_, e_);
            Poly s(e_, 0);
            for (int i = 0; i < e_; ++i) s[i] = (pa[i] + pb[i]) % p_;
            add_[idx(FieldElement(a), FieldElement(b))] = FieldElement(encode(s, p_, e_));
            Poly m = poly_mulmod(pa, pb, modulus_, p_);
            mul_[idx(FieldElement(a), FieldElement(b))] = FieldElement(encode(m, p_, e_));
        }
        Poly n(e_, 0);
        for (int i = 0; i < e_; ++i) n[i] = (p_ - pa[i]) % p_;
        neg_[a] = FieldElement(encode(n, p_, e_));
    }

    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[idx(FieldElement(a), FieldElement(b))] == 1) {
                inv_[a] = FieldElement(b);
                break;
            }
}

FieldElement Field::pow(FieldElement a, long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    FieldElement r = 1, base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

const Field& field(int q) {
    static std::mutex mu;
    static std::map<int, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, Field(q)).first;
    return it->second;
}

} // namespace flagopp
