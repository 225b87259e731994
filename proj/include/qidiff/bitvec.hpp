#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qidiff/common.hpp"

namespace qidiff::gf2 {

// Fixed-width bit vector over GF(2). Position 1 is the leftmost symbol of
// tuple notation, i.e. the most significant bit of the serialized value, so
// a width-4 vector "1100" parses from hex "c". Widths up to 4096.
class BitVec {
public:
    BitVec() : width_(1), words_(1, 0) {}

    static BitVec zeros(int width);
    // From an integer value, width <= 64. Bit (width - p) of `value` is
    // position p.
    static BitVec from_value(int width, uint64_t value);
    static BitVec from_hex(int width, const std::string& hex);
    // Positions given as a 1-based list.
    static BitVec unit(int width, int pos);

    int width() const { return width_; }
    bool get(int pos) const;          // pos in [1, width]
    void set(int pos, bool bit);
    bool is_zero() const;
    uint64_t value() const;           // width <= 64
    std::string to_hex() const;

    int dot(const BitVec& other) const;  // parity of AND; widths must match
    BitVec operator^(const BitVec& other) const;
    BitVec& operator^=(const BitVec& other);
    bool operator==(const BitVec& other) const = default;
    // Lexicographic in position order == numeric order of the value.
    std::strong_ordering operator<=>(const BitVec& other) const;

    // Position of the first (leftmost) set bit, or 0 if zero.
    int leading_pos() const;

    // Extracts positions [from, from+len-1] as a new width-len vector.
    BitVec slice(int from, int len) const;
    static BitVec concat(const BitVec& high, const BitVec& low);

    const std::vector<uint64_t>& words() const { return words_; }

private:
    void check_pos(int pos) const;
    int width_;
    std::vector<uint64_t> words_;  // little-endian limbs of the value
};

}  // namespace qidiff::gf2
