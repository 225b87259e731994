#include "qidiff/bitvec.hpp"

#include <algorithm>

namespace qidiff::gf2 {

namespace {
constexpr int kMaxWidth = 4096;

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace

BitVec BitVec::zeros(int width) {
    if (width < 1 || width > kMaxWidth) throw BadParams("BitVec width " + std::to_string(width) + " out of range");
    BitVec v;
    v.width_ = width;
    v.words_.assign((width + 63) / 64, 0);
    return v;
}

BitVec BitVec::from_value(int width, uint64_t value) {
    if (width < 1 || width > 64) throw BadParams("from_value needs width in [1, 64]");
    if (width < 64 && (value >> width) != 0) throw BadParams("value does not fit in width");
    BitVec v = zeros(width);
    v.words_[0] = value;
    return v;
}

BitVec BitVec::from_hex(int width, const std::string& hex) {
    BitVec v = zeros(width);
    int nd = (width + 3) / 4;
    if (static_cast<int>(hex.size()) != nd)
        throw ConfigError("hex string '" + hex + "' has wrong length for width " + std::to_string(width));
    for (int i = 0; i < nd; ++i) {
        int d = hex_digit(hex[nd - 1 - i]);  // i-th nibble of the value
        if (d < 0) throw ConfigError("bad hex digit in '" + hex + "'");
        for (int b = 0; b < 4; ++b) {
            int bit_index = 4 * i + b;
            if ((d >> b) & 1) {
                if (bit_index >= width) throw ConfigError("hex '" + hex + "' overflows width " + std::to_string(width));
                v.words_[bit_index / 64] |= 1ull << (bit_index % 64);
            }
        }
    }
    return v;
}

BitVec BitVec::unit(int width, int pos) {
    BitVec v = zeros(width);
    v.set(pos, true);
    return v;
}

void BitVec::check_pos(int pos) const {
    if (pos < 1 || pos > width_) throw BadParams("bit position " + std::to_string(pos) + " out of range");
}

bool BitVec::get(int pos) const {
    check_pos(pos);
    int b = width_ - pos;
    return (words_[b / 64] >> (b % 64)) & 1;
}

void BitVec::set(int pos, bool bit) {
    check_pos(pos);
    int b = width_ - pos;
    uint64_t mask = 1ull << (b % 64);
    if (bit)
        words_[b / 64] |= mask;
    else
        words_[b / 64] &= ~mask;
}

bool BitVec::is_zero() const {
    for (uint64_t w : words_)
        if (w) return false;
    return true;
}

uint64_t BitVec::value() const {
    if (width_ > 64) throw BadParams("value() needs width <= 64");
    return words_[0];
}

std::string BitVec::to_hex() const {
    int nd = (width_ + 3) / 4;
    std::string out(nd, '0');
    for (int i = 0; i < nd; ++i) {
        int d = 0;
        for (int b = 0; b < 4; ++b) {
            int bit_index = 4 * i + b;
            if (bit_index < width_ && ((words_[bit_index / 64] >> (bit_index % 64)) & 1)) d |= 1 << b;
        }
        out[nd - 1 - i] = "0123456789abcdef"[d];
    }
    return out;
}

int BitVec::dot(const BitVec& other) const {
    if (width_ != other.width_) throw BadParams("dot on mismatched widths");
    uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return parity64(acc);
}

BitVec BitVec::operator^(const BitVec& other) const {
    BitVec out = *this;
    out ^= other;
    return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    if (width_ != other.width_) throw BadParams("xor on mismatched widths");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::strong_ordering BitVec::operator<=>(const BitVec& other) const {
    if (width_ != other.width_) return width_ <=> other.width_;
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i] != other.words_[i]) return words_[i] <=> other.words_[i];
    }
    return std::strong_ordering::equal;
}

int BitVec::leading_pos() const {
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i]) {
            int b = 63 - __builtin_clzll(words_[i]) + static_cast<int>(i) * 64;
            return width_ - b;
        }
    }
    return 0;
}

BitVec BitVec::slice(int from, int len) const {
    if (from < 1 || len < 1 || from + len - 1 > width_) throw BadParams("bad slice range");
    BitVec out = zeros(len);
    for (int p = 0; p < len; ++p) out.set(p + 1, get(from + p));
    return out;
}

BitVec BitVec::concat(const BitVec& high, const BitVec& low) {
    BitVec out = zeros(high.width_ + low.width_);
    for (int p = 1; p <= high.width_; ++p) out.set(p, high.get(p));
    for (int p = 1; p <= low.width_; ++p) out.set(high.width_ + p, low.get(p));
    return out;
}

}  // namespace qidiff::gf2
