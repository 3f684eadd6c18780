#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace flagopp {

// Fixed-size dynamic bitset. All sets participating in an operation must
// have the same size; trailing bits of the last word are kept zero so that
// popcounts and comparisons are exact.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    std::size_t words() const { return w_.size(); }
    const std::uint64_t* data() const { return w_.data(); }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    void clear() { for (auto& w : w_) w = 0; }

    void set_all() {
        for (auto& w : w_) w = ~std::uint64_t(0);
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Index of the lowest set bit, or size() when empty.
    std::size_t first() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
        return n_;
    }

    // Lowest set bit strictly greater than i, or size().
    std::size_t next(std::size_t i) const {
        ++i;
        if (i >= n_) return n_;
        std::size_t k = i >> 6;
        std::uint64_t w = w_[k] & (~std::uint64_t(0) << (i & 63));
        while (true) {
            if (w) return k * 64 + std::countr_zero(w);
            if (++k == w_.size()) return n_;
            w = w_[k];
        }
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    // this &= ~o
    Bitset& and_not(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool intersects(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    std::size_t count_and(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t k = 0; k < w_.size(); ++k)
            c += std::popcount(w_[k] & o.w_[k]);
        return c;
    }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        for (std::size_t i = first(); i < n_; i = next(i)) out.push_back(int(i));
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                f(k * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (~std::uint64_t(0)) >> (64 - (n_ & 63));
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace flagopp
