#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eue {

// Fixed-size bit vector. Trailing bits of the last word are kept zero so
// equality, hashing and popcounts can work word-wise.
class DynamicBitset {
public:
    DynamicBitset() = default;
    explicit DynamicBitset(std::size_t size, bool ones = false)
        : size_(size), words_((size + 63) / 64, ones ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool value) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool all() const { return count() == size_; }
    bool none() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const DynamicBitset&, const DynamicBitset&) = default;

    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::uint64_t w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return h ^ size_;
    }

    // Lowest word first, e.g. "0x5" for bits {0,2}.
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out = "0x";
        bool leading = true;
        for (std::size_t wi = words_.size(); wi-- > 0;) {
            for (int shift = 60; shift >= 0; shift -= 4) {
                unsigned d = (words_[wi] >> shift) & 0xf;
                if (leading && d == 0 && !(wi == 0 && shift == 0)) continue;
                leading = false;
                out.push_back(digits[d]);
            }
        }
        if (leading) out.push_back('0');
        return out;
    }

private:
    void trim() {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace eue
