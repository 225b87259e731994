#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qidiff/cipher.hpp"
#include "qidiff/gf2.hpp"

namespace qidiff::oracle {

using cipher::CipherSpec;
using cipher::FunctionView;
using gf2::BitVec;
using gf2::StructureSpace;

// Exact dyadic rational num / 2^log2_den.
struct Rational {
    uint64_t num = 0;
    int log2_den = 0;
    double value() const;
    std::string str() const;
    bool operator==(const Rational& other) const;
};

struct ThetaReport {
    Rational theta;
    BitVec a;  // attaining pair, lexicographically first
    BitVec b;
    uint64_t match_count = 0;
};

enum class Direction { forward, backward };

// Pattern over {0,1,*}^n: `mask` marks determined positions, `value` holds
// their bits (zero elsewhere).
struct TruncatedDiff {
    BitVec mask;
    BitVec value;
    std::string str() const;  // e.g. "00*1"
    int determined_bits() const;
};

bool contradicts(const TruncatedDiff& p, const TruncatedDiff& q);

struct Prob1TruncatedDiff {
    BitVec input_diff;
    TruncatedDiff output_pattern;
    Direction direction = Direction::forward;
    int rounds = 0;
};

// Basis of {(a, b) | F(x) ^ F(x ^ a) = b for all x}. N <= 20.
StructureSpace brute_linear_structures(const FunctionView& view, int workers = 0);

// Exact theta: the largest match fraction over pairs outside the structure
// space, with a lexicographically-first attaining pair. N <= 18, M <= 18.
ThetaReport brute_theta(const FunctionView& view, int workers = 0);

// |{x : F(x) ^ F(x ^ a) = b}|, the match count of one candidate pair.
uint64_t match_count(const FunctionView& view, uint64_t a, uint64_t b);

// For every nonzero input difference, the per-bit constancy of the output
// difference over all keys and plaintexts; entries with at least one
// determined bit are returned. `rounds` counts from the input end (forward)
// or from the output end (backward) of the r-round schedule. n + m <= 20.
std::vector<Prob1TruncatedDiff> brute_prob1_truncated(const CipherSpec& spec, int rounds, Direction direction,
                                                      int workers = 0);

// Exact set of (din, dout), both nonzero, unreachable for every key and
// plaintext. Each reported pair is re-verified by a second scan with an
// independent loop order. 2n + m <= 26.
std::vector<std::pair<BitVec, BitVec>> brute_impossible_differentials(const CipherSpec& spec, int workers = 0);

// Targeted reachability scan for one candidate pair.
bool differential_reachable(const CipherSpec& spec, uint64_t din, uint64_t dout);

// Full-codebook reachability checks, for verifying many candidates against
// one cipher. n + m <= 20.
class ReachabilityOracle {
public:
    explicit ReachabilityOracle(const CipherSpec& spec, int workers = 0);
    bool reachable(uint64_t din, uint64_t dout) const;

private:
    uint64_t nx_;
    uint64_t nk_;
    std::vector<uint32_t> codebooks_;  // [k * nx + x]
};

}  // namespace qidiff::oracle
