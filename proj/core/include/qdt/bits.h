// Copyright 2026 The QDT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDT_BITS_H
#define QDT_BITS_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdt {

/// Thrown whenever two objects that must share a qubit count do not.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Fixed-length bit vector packed into 64-bit words.
///
/// Bits past `size()` in the last word are always zero, so word-level
/// equality, hashing and popcount are exact.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    /// Parses a string of '0'/'1' characters, index 0 first.
    static BitVector from_string(std::string_view text);

    std::size_t size() const { return num_bits_; }
    std::size_t num_words() const { return words_.size(); }

    bool get(std::size_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
    void set(std::size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(std::size_t k) { words_[k >> 6] ^= uint64_t{1} << (k & 63); }

    uint64_t word(std::size_t w) const { return words_[w]; }
    uint64_t &word(std::size_t w) { return words_[w]; }
    const std::vector<uint64_t> &words() const { return words_; }

    std::size_t popcount() const {
        std::size_t total = 0;
        for (uint64_t w : words_) {
            total += std::popcount(w);
        }
        return total;
    }
    bool none() const {
        for (uint64_t w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    BitVector &operator|=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector &b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector &b) { return a |= b; }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    bool dot(const BitVector &other) const;

    /// Low 64 bits as an integer; bit k of the result is bit k of the vector.
    uint64_t to_u64() const { return words_.empty() ? 0 : words_[0]; }

    std::string str() const;

    friend bool operator==(const BitVector &a, const BitVector &b) = default;
    /// Lexicographic by bit index (bit 0 most significant).
    friend bool operator<(const BitVector &a, const BitVector &b);

   private:
    void require_same_size(const BitVector &other) const {
        if (num_bits_ != other.num_bits_) {
            throw DimensionError("bit vector length mismatch: " + std::to_string(num_bits_) + " vs " +
                                 std::to_string(other.num_bits_));
        }
    }

    std::size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace qdt

template <>
struct std::hash<qdt::BitVector> {
    std::size_t operator()(const qdt::BitVector &v) const noexcept {
        uint64_t h = 0x9E3779B97F4A7C15ULL ^ v.size();
        for (uint64_t w : v.words()) {
            h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

#endif  // QDT_BITS_H
