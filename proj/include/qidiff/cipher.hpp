#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qidiff/bitvec.hpp"

namespace qidiff::cipher {

enum class Family { feistel, spn };

// A toy r-round keyed permutation. Definitions are data: the JSON schema is
//   { "name": str, "n": int, "m": int, "r": int, "family": "feistel"|"spn",
//     "sbox": [16 hex strings], "perm": [n 1-based targets, spn only],
//     "schedule": int rotation amount }
// Feistel: n = 8 split into 4-bit halves, round (L,R) -> (R, L ^ S(R ^ k_i))
// with k_i = top 4 bits of rotl_m(K, i*schedule). SPN: m = n, round
// x -> perm(S(x ^ k_i)) with k_i = rotl_n(K, i*schedule) and S applied to
// each nibble.
struct CipherSpec {
    std::string name;
    int n = 0;
    int m = 0;
    int r = 0;
    Family family = Family::spn;
    std::array<uint8_t, 16> sbox{};
    std::array<uint8_t, 16> sbox_inv{};  // spn only
    std::vector<int> perm;               // spn only; perm[j-1] = target of position j
    std::vector<int> perm_inv;
    int schedule = 1;
};

CipherSpec load_cipher_json(const std::string& json_text);
CipherSpec load_cipher_file(const std::string& path);

uint64_t round_key(const CipherSpec& spec, uint64_t master, int round);
uint64_t encrypt_round(const CipherSpec& spec, uint64_t rk, uint64_t x);
uint64_t decrypt_round(const CipherSpec& spec, uint64_t rk, uint64_t x);
// Rounds [from, to] of the r-round schedule, 1-based inclusive.
uint64_t encrypt_rounds(const CipherSpec& spec, uint64_t master, uint64_t x, int from, int to);
uint64_t decrypt_rounds(const CipherSpec& spec, uint64_t master, uint64_t y, int from, int to);
uint64_t encrypt(const CipherSpec& spec, uint64_t master, uint64_t x);
uint64_t decrypt(const CipherSpec& spec, uint64_t master, uint64_t y);

// Total map F_2^N -> F_2^M, input packed with position 1 as the most
// significant bit. Views with N <= 24 carry a full truth table.
struct FunctionView {
    int N = 1;
    int M = 1;
    std::function<uint64_t(uint64_t)> f;
    std::shared_ptr<const std::vector<uint32_t>> table;
    std::string fingerprint;
    int round_cost = 0;  // single-round evaluations per call, for gate tallies

    uint64_t eval(uint64_t x) const { return table ? (*table)[x] : f(x); }
};

FunctionView make_view(int N, int M, std::function<uint64_t(uint64_t)> f, std::string fingerprint,
                       int round_cost = 0);

// (k, x) -> E_k^(r1)(x) over rounds 1..r1 of the full schedule.
FunctionView prefix_view(const CipherSpec& spec, int r1);
// (k, y) -> inverse of rounds r-r2+1..r applied to y.
FunctionView suffix_inverse_view(const CipherSpec& spec, int r2);
// Output bit i (1-based, leftmost first) of `view`.
FunctionView component_view(const FunctionView& view, int i);

}  // namespace qidiff::cipher
