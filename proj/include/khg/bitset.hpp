#pragma once

// Fixed-universe dynamic bitset over 64-bit words. Counting goes through the
// runtime-dispatched kernels.

#include "khg/kernels.hpp"

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace khg {

class BitSet {
public:
    BitSet() : nbits_(0) {}
    explicit BitSet(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    static BitSet of(std::size_t nbits, std::initializer_list<int> bits) {
        BitSet s(nbits);
        for (int b : bits) s.set(static_cast<std::size_t>(b));
        return s;
    }

    std::size_t size() const { return nbits_; }
    std::size_t words() const { return w_.size(); }
    const std::uint64_t* data() const { return w_.data(); }

    void set(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    }
    void reset(std::size_t i) {
        assert(i < nbits_);
        w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (w_[i >> 6] >> (i & 63)) & 1;
    }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    std::size_t count() const { return kernels::count(w_.data(), w_.size()); }

    std::size_t count_and(const BitSet& o) const {
        assert(nbits_ == o.nbits_);
        return kernels::count_and(w_.data(), o.w_.data(), w_.size());
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const BitSet& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool subset_of(const BitSet& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    BitSet& operator&=(const BitSet& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    BitSet& operator|=(const BitSet& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // Set difference.
    BitSet& operator-=(const BitSet& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
    friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
    friend BitSet operator-(BitSet a, const BitSet& b) { return a -= b; }

    bool operator==(const BitSet& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
        return out;
    }

private:
    std::size_t nbits_;
    std::vector<std::uint64_t> w_;
};

} // namespace khg
