#pragma once

#include <cstdint>
#include <string>

namespace qidiff::resources {

enum class Algorithm { full, truncated };

using u128 = unsigned __int128;

std::string u128_str(u128 v);

// Closed-form gate and qubit counts. Gate counts are exact integers; inputs
// up to 2^20 are supported without overflow.
struct ResourceEstimate {
    Algorithm algorithm = Algorithm::full;
    uint64_t n = 0, m = 0, r = 0, c = 0;
    uint64_t tau = 0;  // c * (r - 1)
    u128 cnot = 0;
    u128 hadamard = 0;
    u128 ue_calls = 0;  // full-cipher circuit equivalents
    uint64_t qubits = 0;
    // Informational classical-side cost of the linear solves (full algorithm
    // only): 2 c (r-1) n^2 (m + 2n).
    u128 classical_gf2_ops = 0;
};

ResourceEstimate estimate(Algorithm algorithm, uint64_t n, uint64_t m, uint64_t r, uint64_t c);

// Same counts accumulated split by split (and bit by bit for the truncated
// algorithm) from the per-run gate costs, as an independent route to the
// closed forms.
ResourceEstimate estimate_by_summation(Algorithm algorithm, uint64_t n, uint64_t m, uint64_t r, uint64_t c);

}  // namespace qidiff::resources
