#include "doctest.h"
#include "qidiff/finder.hpp"
#include "qidiff/resources.hpp"

using namespace qidiff;
using resources::Algorithm;
using resources::estimate;
using resources::estimate_by_summation;
using resources::u128_str;

namespace {
const std::string kConfigDir = QIDIFF_CONFIG_DIR;
}

TEST_CASE("table row for the full algorithm at cipher-like parameters") {
    auto est = estimate(Algorithm::full, 64, 80, 25, 3);
    CHECK(est.tau == 72);
    CHECK(u128_str(est.cnot) == "1916928");
    CHECK(u128_str(est.hadamard) == "12460032");
    CHECK(u128_str(est.ue_calls) == "14976");
    CHECK(est.qubits == 272);
}

TEST_CASE("table row for the truncated algorithm at toy parameters") {
    auto est = estimate(Algorithm::truncated, 8, 8, 4, 3);
    CHECK(est.tau == 9);
    CHECK(u128_str(est.cnot) == "2448");
    CHECK(u128_str(est.hadamard) == "83232");
    CHECK(u128_str(est.ue_calls) == "153");
    CHECK(est.qubits == 18);
}

TEST_CASE("one round means no splits and zero gate counts") {
    for (auto algo : {Algorithm::full, Algorithm::truncated}) {
        auto est = estimate(algo, 16, 16, 1, 5);
        CHECK(est.tau == 0);
        CHECK(u128_str(est.cnot) == "0");
        CHECK(u128_str(est.hadamard) == "0");
        CHECK(u128_str(est.ue_calls) == "0");
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(estimate(Algorithm::full, 0, 8, 4, 3), BadParams);
    CHECK_THROWS_AS(estimate(Algorithm::full, 8, 8, 4, 0), BadParams);
    CHECK_THROWS_AS(estimate(Algorithm::full, (1ull << 20) + 1, 8, 4, 3), BadParams);
    CHECK_NOTHROW(estimate(Algorithm::full, 1ull << 20, 1ull << 20, 1ull << 20, 1ull << 20));
}

TEST_CASE("closed forms equal per-split summation on a round grid") {
    for (uint64_t r = 1; r <= 64; ++r) {
        for (auto algo : {Algorithm::full, Algorithm::truncated}) {
            for (auto [n, m, c] : {std::tuple<uint64_t, uint64_t, uint64_t>{8, 8, 3},
                                   {64, 80, 3},
                                   {16, 24, 7},
                                   {4, 4, 1}}) {
                auto closed = estimate(algo, n, m, r, c);
                auto summed = estimate_by_summation(algo, n, m, r, c);
                CHECK(closed.cnot == summed.cnot);
                CHECK(closed.hadamard == summed.hadamard);
                CHECK(closed.ue_calls == summed.ue_calls);
                CHECK(closed.qubits == summed.qubits);
                if (algo == Algorithm::full) CHECK(closed.classical_gf2_ops == summed.classical_gf2_ops);
            }
        }
    }
}

TEST_CASE("no overflow at the parameter bound") {
    auto est = estimate(Algorithm::truncated, 1ull << 20, 1ull << 20, 1ull << 20, 1ull << 20);
    // 4 tau n (n+m+1)^2 with every input at 2^20 exceeds 2^100
    CHECK(u128_str(est.hadamard).size() >= 31);
    CHECK(est.hadamard > est.cnot);
}

TEST_CASE("simulator gate tallies aggregate to the closed-form estimate") {
    auto spec = cipher::load_cipher_file(kConfigDir + "/minispn4.json");
    finder::SearchParams params;
    params.c = 2;
    params.seed = 3;
    params.backend = qsim::Backend::statevector;

    auto full = finder::find_impo_diff(spec, params);
    auto est_full = estimate(Algorithm::full, spec.n, spec.m, spec.r, params.c);
    CHECK(resources::u128(full.tally.hadamard) == est_full.hadamard);
    CHECK(resources::u128(full.tally.cnot) == est_full.cnot);
    // Executed single-round evaluations equal ue_calls full-cipher circuits.
    CHECK(resources::u128(full.tally.round_units) == est_full.ue_calls * spec.r);

    auto trunc = finder::find_impo_diff2(spec, params);
    auto est_trunc = estimate(Algorithm::truncated, spec.n, spec.m, spec.r, params.c);
    CHECK(resources::u128(trunc.tally.hadamard) == est_trunc.hadamard);
    CHECK(resources::u128(trunc.tally.cnot) == est_trunc.cnot);
    // A component circuit costs 1/n of its view circuit in the accounting,
    // while the simulator evaluates the full view per component call.
    CHECK(resources::u128(trunc.tally.round_units) == est_trunc.ue_calls * spec.n * spec.r);
}
