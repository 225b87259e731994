#pragma once

#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "qidiff/cipher.hpp"
#include "qidiff/gf2.hpp"

namespace qidiff::qsim {

using cipher::FunctionView;
using gf2::BitVec;

enum class Backend { fourier, statevector };

// Abstract circuit cost of the subroutine runs actually executed. Each run
// applies 2(N+M) Hadamard gates, M CNOT gates and one evaluation operator;
// round_units counts single-round cipher evaluations behind those operator
// calls.
struct GateTally {
    uint64_t hadamard = 0;
    uint64_t cnot = 0;
    uint64_t view_calls = 0;
    uint64_t round_units = 0;

    GateTally& operator+=(const GateTally& other) {
        hadamard += other.hadamard;
        cnot += other.cnot;
        view_calls += other.view_calls;
        round_units += other.round_units;
        return *this;
    }
    bool operator==(const GateTally&) const = default;
};

struct SimonSample {
    BitVec gamma;  // width N+M, split as gamma1 (N) then gamma2 (M)
    Backend backend = Backend::fourier;
    uint64_t seed = 0;  // derived per-sample seed, sufficient for exact replay
};

// Exact measurement law of one subroutine run; pmf indexed by
// (gamma1 << M) | gamma2. Probabilities are dyadic rationals held exactly in
// doubles (integer numerators over a power-of-two denominator).
struct DistributionTable {
    int N = 1;
    int M = 1;
    std::vector<double> pmf;
};

// Walsh coefficients W[g] = sum_x (-1)^(x.g ^ f(x)) for an M = 1 view,
// computed by the in-place fast transform. N <= 24.
std::vector<int64_t> walsh_spectrum(const FunctionView& f);

void fwht_inplace(std::vector<int64_t>& a);

// Per-(view, gamma2) inverse-CDF slices for the Fourier sampler, LRU-bounded
// by total bytes. Safe to share across runs and threads. A slice holds the
// exclusive prefix sums of the squared Walsh coefficients.
class SliceCache {
public:
    explicit SliceCache(std::size_t budget_bytes = 512ull << 20) : budget_(budget_bytes) {}
    std::shared_ptr<const std::vector<uint64_t>> get_or_build(const FunctionView& view, uint64_t gamma2);

private:
    struct Entry {
        std::shared_ptr<const std::vector<uint64_t>> slice;
        std::list<std::string>::iterator lru_it;
    };
    std::mutex mu_;
    std::size_t budget_;
    std::size_t bytes_ = 0;
    std::unordered_map<std::string, Entry> map_;
    std::list<std::string> lru_;
};

// One subroutine run sampled through squared Walsh coefficients:
// gamma2 uniform, then gamma1 with probability W(gamma1)^2 / 2^(2N).
SimonSample simon_sample_fourier(const FunctionView& view, Rng rng, SliceCache* cache = nullptr,
                                 GateTally* tally = nullptr);

// Literal register simulation |x>|y>|F(x)^y| with the intermediate
// measurement. N + 2M <= 22.
SimonSample simon_sample_statevector(const FunctionView& view, Rng rng, GateTally* tally = nullptr);

struct StatevectorTrace {
    uint64_t z = 0;
    // Unnormalized integer amplitudes over (x, y) right after the rightmost
    // register collapsed to z.
    std::vector<int64_t> post_collapse;
    BitVec gamma;
};

StatevectorTrace simon_statevector_trace(const FunctionView& view, Rng rng, int forced_z = -1);

// Full joint law computed one Walsh transform per gamma2. N + M <= 24.
DistributionTable exact_distribution(const FunctionView& view);

// Same layout with integer numerators: pmf = w2 / 2^(2N+M).
std::vector<uint64_t> exact_distribution_sq(const FunctionView& view);

// Pre-measurement law of the literal circuit with every measurement deferred
// to the end. N + 2M <= 22.
DistributionTable statevector_distribution(const FunctionView& view);

double total_variation(const DistributionTable& a, const DistributionTable& b);

}  // namespace qidiff::qsim
