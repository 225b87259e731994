#include "qidiff/resources.hpp"

#include <algorithm>

#include "qidiff/common.hpp"

namespace qidiff::resources {

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

void check_params(uint64_t n, uint64_t m, uint64_t r, uint64_t c) {
    const uint64_t limit = 1ull << 20;
    if (n < 1 || m < 1 || r < 1 || c < 1) throw BadParams("n, m, r, c must all be >= 1");
    if (n > limit || m > limit || r > limit || c > limit) throw BadParams("parameters above 2^20 are not supported");
}

}  // namespace

ResourceEstimate estimate(Algorithm algorithm, uint64_t n, uint64_t m, uint64_t r, uint64_t c) {
    check_params(n, m, r, c);
    ResourceEstimate est;
    est.algorithm = algorithm;
    est.n = n;
    est.m = m;
    est.r = r;
    est.c = c;
    est.tau = c * (r - 1);
    u128 tau = est.tau;
    u128 N = n, K = m;
    if (algorithm == Algorithm::full) {
        est.cnot = 2 * tau * (2 * N * N + N * K);
        est.hadamard = 4 * tau * (K * K + 4 * N * N + 4 * K * N);
        est.ue_calls = tau * (K + 2 * N);
        est.qubits = m + 3 * n;
        est.classical_gf2_ops = 2 * tau * N * N * (K + 2 * N);
    } else {
        est.cnot = 2 * tau * (N * N + N * K + N);
        est.hadamard = 4 * tau * N * (N + K + 1) * (N + K + 1);
        est.ue_calls = tau * (1 + N + K);
        est.qubits = m + n + 2;
    }
    return est;
}

ResourceEstimate estimate_by_summation(Algorithm algorithm, uint64_t n, uint64_t m, uint64_t r, uint64_t c) {
    check_params(n, m, r, c);
    ResourceEstimate est;
    est.algorithm = algorithm;
    est.n = n;
    est.m = m;
    est.r = r;
    est.c = c;
    est.tau = c * (r - 1);
    est.qubits = algorithm == Algorithm::full ? m + 3 * n : m + n + 2;
    u128 N = n, K = m, C = c;
    for (uint64_t r1 = 1; r1 + 1 <= r; ++r1) {
        if (algorithm == Algorithm::full) {
            // Two runs of the subroutine batch per split: c(m+2n) executions
            // each with 2m+4n Hadamard and n CNOT gates; the prefix and
            // suffix circuits together cost one full-cipher circuit.
            u128 runs = C * (K + 2 * N);
            est.hadamard += 2 * runs * (2 * K + 4 * N);
            est.cnot += 2 * runs * N;
            est.ue_calls += runs;
            est.classical_gf2_ops += 2 * C * N * N * (K + 2 * N);
        } else {
            for (uint64_t i = 1; i <= n; ++i) {
                // Two component runs batches per (split, bit): c(1+n+m)
                // executions each with 2(1+n+m) Hadamard and 1 CNOT gate.
                u128 runs = C * (1 + N + K);
                est.hadamard += 2 * runs * 2 * (1 + N + K);
                est.cnot += 2 * runs;
            }
            // The n component circuits of a view cost one view circuit in
            // total, so each split contributes c(1+n+m) full equivalents.
            est.ue_calls += C * (1 + N + K);
        }
    }
    return est;
}

}  // namespace qidiff::resources
