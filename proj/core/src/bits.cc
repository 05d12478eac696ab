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

#include "qdt/bits.h"

namespace qdt {

BitVector BitVector::from_string(std::string_view text) {
    BitVector out(text.size());
    for (std::size_t k = 0; k < text.size(); k++) {
        if (text[k] == '1') {
            out.set(k, true);
        } else if (text[k] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1': " + std::string(text));
        }
    }
    return out;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

BitVector &BitVector::operator|=(const BitVector &other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

bool BitVector::dot(const BitVector &other) const {
    require_same_size(other);
    uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::string BitVector::str() const {
    std::string out(num_bits_, '0');
    for (std::size_t k = 0; k < num_bits_; k++) {
        if (get(k)) {
            out[k] = '1';
        }
    }
    return out;
}

bool operator<(const BitVector &a, const BitVector &b) {
    if (a.num_bits_ != b.num_bits_) {
        return a.num_bits_ < b.num_bits_;
    }
    for (std::size_t w = 0; w < a.words_.size(); w++) {
        uint64_t diff = a.words_[w] ^ b.words_[w];
        if (diff) {
            uint64_t lowest = diff & (~diff + 1);
            return (a.words_[w] & lowest) == 0;
        }
    }
    return false;
}

}  // namespace qdt
