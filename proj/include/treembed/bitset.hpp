#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace treembed {

/// Fixed-size bitset sized at runtime. Rows of the Φ tables are stored this
/// way so that a parallel writer can own whole 64-bit words.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    static constexpr std::size_t kWordBits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const noexcept { return bits_; }
    std::size_t word_count() const noexcept { return words_.size(); }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i) noexcept { words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits); }
    void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits)); }

    std::uint64_t& word(std::size_t w) noexcept { return words_[w]; }
    std::uint64_t word(std::size_t w) const noexcept { return words_[w]; }

    bool any() const noexcept {
        for (auto w : words_)
            if (w != 0) return true;
        return false;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Number of set bits in [first, last).
    std::size_t count_range(std::size_t first, std::size_t last) const noexcept {
        if (last > bits_) last = bits_;
        if (first >= last) return 0;
        std::size_t fw = first / kWordBits;
        std::size_t lw = (last - 1) / kWordBits;
        std::uint64_t lo_mask = ~std::uint64_t{0} << (first % kWordBits);
        std::uint64_t hi_mask = ~std::uint64_t{0} >> (kWordBits - 1 - (last - 1) % kWordBits);
        if (fw == lw) return static_cast<std::size_t>(std::popcount(words_[fw] & lo_mask & hi_mask));
        std::size_t c = static_cast<std::size_t>(std::popcount(words_[fw] & lo_mask));
        for (std::size_t w = fw + 1; w < lw; ++w) c += static_cast<std::size_t>(std::popcount(words_[w]));
        return c + static_cast<std::size_t>(std::popcount(words_[lw] & hi_mask));
    }

    /// Smallest set index >= from, or npos.
    std::size_t find_next(std::size_t from) const noexcept {
        if (from >= bits_) return npos;
        std::size_t w = from / kWordBits;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from % kWordBits));
        while (true) {
            if (cur != 0) {
                std::size_t idx = w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
                return idx < bits_ ? idx : npos;
            }
            if (++w == words_.size()) return npos;
            cur = words_[w];
        }
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace treembed
