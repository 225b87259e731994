#include "qidiff/qsim.hpp"

#include <algorithm>
#include <cmath>

namespace qidiff::qsim {

namespace {

void require_tabulated(const FunctionView& view, const char* who) {
    if (view.N > 24 || !view.table) throw TooLarge(std::string(who) + " needs a tabulated view (N <= 24)");
}

// Sign table of x -> gamma2 . F(x), as +-1 entries ready for the transform.
std::vector<int64_t> sign_table(const FunctionView& view, uint64_t gamma2) {
    const auto& table = *view.table;
    std::vector<int64_t> a(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) a[x] = parity64(table[x] & gamma2) ? -1 : 1;
    return a;
}

}  // namespace

void fwht_inplace(std::vector<int64_t>& a) {
    for (std::size_t h = 1; h < a.size(); h <<= 1) {
        for (std::size_t i = 0; i < a.size(); i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                int64_t u = a[j], v = a[j + h];
                a[j] = u + v;
                a[j + h] = u - v;
            }
        }
    }
}

std::vector<int64_t> walsh_spectrum(const FunctionView& f) {
    if (f.M != 1) throw BadParams("walsh_spectrum expects a single-bit view");
    require_tabulated(f, "walsh_spectrum");
    std::vector<int64_t> a = sign_table(f, 1);
    fwht_inplace(a);
    return a;
}

std::shared_ptr<const std::vector<uint64_t>> SliceCache::get_or_build(const FunctionView& view,
                                                                      uint64_t gamma2) {
    std::string key = view.fingerprint + ":" + std::to_string(gamma2);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        if (it != map_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second.lru_it);
            return it->second.slice;
        }
    }
    // Build outside the lock; duplicated effort on a race is harmless.
    std::vector<int64_t> w = sign_table(view, gamma2);
    fwht_inplace(w);
    auto slice = std::make_shared<std::vector<uint64_t>>(w.size());
    uint64_t acc = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        (*slice)[i] = acc;
        acc += static_cast<uint64_t>(w[i] * w[i]);
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second.slice;
    lru_.push_front(key);
    map_[key] = Entry{slice, lru_.begin()};
    bytes_ += slice->size() * sizeof(uint64_t);
    while (bytes_ > budget_ && map_.size() > 1) {
        const std::string& victim = lru_.back();
        auto vit = map_.find(victim);
        bytes_ -= vit->second.slice->size() * sizeof(uint64_t);
        map_.erase(vit);
        lru_.pop_back();
    }
    return slice;
}

SimonSample simon_sample_fourier(const FunctionView& view, Rng rng, SliceCache* cache, GateTally* tally) {
    require_tabulated(view, "fourier sampler");
    if (tally) {
        tally->hadamard += 2ull * (view.N + view.M);
        tally->cnot += view.M;
        tally->view_calls += 1;
        tally->round_units += view.round_cost;
    }
    uint64_t gamma2 = rng.bits(view.M);
    uint64_t u = rng.bits(2 * view.N);

    SliceCache local(1ull << 30);
    SliceCache* c = cache ? cache : &local;
    auto slice = c->get_or_build(view, gamma2);
    // Largest index whose exclusive prefix sum is <= u.
    auto it = std::upper_bound(slice->begin(), slice->end(), u);
    uint64_t gamma1 = static_cast<uint64_t>(it - slice->begin()) - 1;

    SimonSample s;
    s.backend = Backend::fourier;
    s.seed = rng.seed();
    s.gamma = BitVec::zeros(view.N + view.M);
    uint64_t packed = (gamma1 << view.M) | gamma2;
    for (int p = 1; p <= view.N + view.M; ++p)
        if ((packed >> (view.N + view.M - p)) & 1) s.gamma.set(p, true);
    return s;
}

namespace {

struct DenseRun {
    int N, M, total;
    std::vector<int64_t> amp;

    explicit DenseRun(const FunctionView& view) : N(view.N), M(view.M), total(view.N + 2 * view.M) {
        if (total > 22) throw TooLarge("statevector needs N + 2M <= 22 qubits");
        amp.assign(1ull << total, 0);
    }

    // One Hadamard gate, unnormalized butterfly. q is the 1-based qubit
    // position counted from the left of (x, y, w).
    void hadamard(int q) {
        uint64_t stride = 1ull << (total - q);
        for (uint64_t base = 0; base < amp.size(); base += stride << 1) {
            for (uint64_t j = base; j < base + stride; ++j) {
                int64_t a = amp[j], b = amp[j + stride];
                amp[j] = a + b;
                amp[j + stride] = a - b;
            }
        }
    }

    void hadamard_front(GateTally* tally) {
        for (int q = 1; q <= N + M; ++q) hadamard(q);
        if (tally) tally->hadamard += N + M;
    }

    void apply_uf(const FunctionView& view, GateTally* tally) {
        std::vector<int64_t> out(amp.size(), 0);
        uint64_t ym = (1ull << M) - 1;
        for (uint64_t s = 0; s < amp.size(); ++s) {
            if (!amp[s]) continue;
            uint64_t x = s >> (2 * M);
            uint64_t y = (s >> M) & ym;
            uint64_t w = s & ym;
            out[(x << (2 * M)) | (y << M) | (w ^ view.eval(x))] += amp[s];
        }
        amp.swap(out);
        if (tally) {
            tally->view_calls += 1;
            tally->round_units += view.round_cost;
        }
    }

    // CNOT from y_j into w_j for every j: w ^= y.
    void cnots(GateTally* tally) {
        std::vector<int64_t> out(amp.size(), 0);
        uint64_t ym = (1ull << M) - 1;
        for (uint64_t s = 0; s < amp.size(); ++s) {
            if (!amp[s]) continue;
            uint64_t y = (s >> M) & ym;
            out[s ^ (y & ym)] += amp[s];
        }
        amp.swap(out);
        if (tally) tally->cnot += M;
    }

    uint64_t measure_w(Rng& rng, int forced_z) {
        uint64_t ym = (1ull << M) - 1;
        std::vector<uint64_t> weight(1ull << M, 0);
        uint64_t totw = 0;
        for (uint64_t s = 0; s < amp.size(); ++s) {
            uint64_t sq = static_cast<uint64_t>(amp[s] * amp[s]);
            weight[s & ym] += sq;
            totw += sq;
        }
        uint64_t z;
        if (forced_z >= 0) {
            z = static_cast<uint64_t>(forced_z);
            if (z >= weight.size() || weight[z] == 0) throw BadParams("forced z has zero probability");
        } else {
            // totw is a power of two, so a masked draw is exact.
            int bits = 63 - __builtin_clzll(totw);
            uint64_t u = rng.bits(bits);
            z = 0;
            uint64_t acc = 0;
            for (uint64_t cand = 0; cand < weight.size(); ++cand) {
                acc += weight[cand];
                if (u < acc) {
                    z = cand;
                    break;
                }
            }
        }
        for (uint64_t s = 0; s < amp.size(); ++s)
            if ((s & ym) != z) amp[s] = 0;
        return z;
    }

    void hadamard_back(GateTally* tally) {
        for (int q = 1; q <= N + M; ++q) hadamard(q);
        if (tally) tally->hadamard += N + M;
    }

    // Squared-amplitude draw over (x, y), the w register being fixed.
    uint64_t measure_xy(Rng& rng) {
        uint64_t totw = 0;
        for (int64_t a : amp) totw += static_cast<uint64_t>(a * a);
        int bits = 63 - __builtin_clzll(totw);
        uint64_t u = rng.bits(bits);
        uint64_t acc = 0;
        for (uint64_t s = 0; s < amp.size(); ++s) {
            acc += static_cast<uint64_t>(amp[s] * amp[s]);
            if (u < acc) return s >> M;
        }
        return amp.size() - 1;
    }
};

}  // namespace

SimonSample simon_sample_statevector(const FunctionView& view, Rng rng, GateTally* tally) {
    DenseRun run(view);
    run.amp[0] = 1;
    run.hadamard_front(tally);
    run.apply_uf(view, tally);
    run.cnots(tally);
    run.measure_w(rng, -1);
    run.hadamard_back(tally);
    uint64_t packed = run.measure_xy(rng);

    SimonSample s;
    s.backend = Backend::statevector;
    s.seed = rng.seed();
    s.gamma = BitVec::zeros(view.N + view.M);
    for (int p = 1; p <= view.N + view.M; ++p)
        if ((packed >> (view.N + view.M - p)) & 1) s.gamma.set(p, true);
    return s;
}

StatevectorTrace simon_statevector_trace(const FunctionView& view, Rng rng, int forced_z) {
    DenseRun run(view);
    run.amp[0] = 1;
    run.hadamard_front(nullptr);
    run.apply_uf(view, nullptr);
    run.cnots(nullptr);
    StatevectorTrace trace;
    trace.z = run.measure_w(rng, forced_z);

    trace.post_collapse.assign(1ull << (view.N + view.M), 0);
    for (uint64_t s = 0; s < run.amp.size(); ++s)
        if (run.amp[s]) trace.post_collapse[s >> view.M] = run.amp[s];

    run.hadamard_back(nullptr);
    uint64_t packed = run.measure_xy(rng);
    trace.gamma = BitVec::zeros(view.N + view.M);
    for (int p = 1; p <= view.N + view.M; ++p)
        if ((packed >> (view.N + view.M - p)) & 1) trace.gamma.set(p, true);
    return trace;
}

std::vector<uint64_t> exact_distribution_sq(const FunctionView& view) {
    if (view.N + view.M > 24) throw TooLarge("exact distribution needs N + M <= 24");
    require_tabulated(view, "exact_distribution");
    std::vector<uint64_t> w2(1ull << (view.N + view.M));
    for (uint64_t gamma2 = 0; gamma2 < (1ull << view.M); ++gamma2) {
        std::vector<int64_t> w = sign_table(view, gamma2);
        fwht_inplace(w);
        for (uint64_t gamma1 = 0; gamma1 < w.size(); ++gamma1)
            w2[(gamma1 << view.M) | gamma2] = static_cast<uint64_t>(w[gamma1] * w[gamma1]);
    }
    return w2;
}

DistributionTable exact_distribution(const FunctionView& view) {
    std::vector<uint64_t> w2 = exact_distribution_sq(view);
    DistributionTable table;
    table.N = view.N;
    table.M = view.M;
    table.pmf.resize(w2.size());
    double denom = std::ldexp(1.0, 2 * view.N + view.M);
    for (std::size_t g = 0; g < w2.size(); ++g) table.pmf[g] = static_cast<double>(w2[g]) / denom;
    return table;
}

DistributionTable statevector_distribution(const FunctionView& view) {
    DenseRun run(view);
    run.amp[0] = 1;
    run.hadamard_front(nullptr);
    run.apply_uf(view, nullptr);
    run.cnots(nullptr);
    run.hadamard_back(nullptr);  // measurements deferred past the final transform

    DistributionTable table;
    table.N = view.N;
    table.M = view.M;
    table.pmf.assign(1ull << (view.N + view.M), 0.0);
    uint64_t tot = 0;
    for (int64_t a : run.amp) tot += static_cast<uint64_t>(a * a);
    for (uint64_t s = 0; s < run.amp.size(); ++s) {
        if (!run.amp[s]) continue;
        table.pmf[s >> view.M] +=
            static_cast<double>(static_cast<uint64_t>(run.amp[s] * run.amp[s])) / static_cast<double>(tot);
    }
    return table;
}

double total_variation(const DistributionTable& a, const DistributionTable& b) {
    if (a.pmf.size() != b.pmf.size()) throw BadParams("distribution size mismatch");
    double tv = 0;
    for (std::size_t g = 0; g < a.pmf.size(); ++g) tv += std::abs(a.pmf[g] - b.pmf[g]);
    return tv / 2;
}

}  // namespace qidiff::qsim
