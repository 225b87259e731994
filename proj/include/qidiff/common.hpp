#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qidiff {

// Error kinds map to CLI exit codes: config -> 1, feasibility -> 2.
enum class ErrorKind { config, feasibility };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

class BadSplit : public ConfigError {
public:
    BadSplit(int r1, int r) : ConfigError("split " + std::to_string(r1) + " outside [1, " + std::to_string(r - 1) + "]") {}
};

class BadIndex : public ConfigError {
public:
    BadIndex(int i, int max) : ConfigError("bit index " + std::to_string(i) + " outside [1, " + std::to_string(max) + "]") {}
};

class BadParams : public ConfigError {
public:
    explicit BadParams(const std::string& msg) : ConfigError(msg) {}
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& msg) : Error(ErrorKind::feasibility, msg) {}
};

class SpaceTooLarge : public TooLarge {
public:
    SpaceTooLarge(int dim, uint64_t cap)
        : TooLarge("space of dimension " + std::to_string(dim) + " exceeds enumeration cap " + std::to_string(cap)),
          dim(dim),
          cap(cap) {}
    int dim;
    uint64_t cap;
};

inline int parity64(uint64_t v) { return __builtin_parityll(v); }

inline uint64_t rotl_bits(uint64_t v, int s, int width) {
    s %= width;
    if (s == 0) return v & (width == 64 ? ~0ull : ((1ull << width) - 1));
    uint64_t mask = width == 64 ? ~0ull : ((1ull << width) - 1);
    v &= mask;
    return ((v << s) | (v >> (width - s))) & mask;
}

// Counter-based splittable generator (splitmix64 core). Streams derived from
// the base seed are independent of draw order, which keeps parallel sampling
// deterministic.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform k-bit value, 0 <= k <= 63.
    uint64_t bits(int k) {
        if (k <= 0) return 0;
        return next() >> (64 - k);
    }

    Rng derive(uint64_t stream) const {
        uint64_t z = seed_ + (stream + 1) * 0xD1B54A32D192ED03ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return Rng(z ^ (z >> 31));
    }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    uint64_t state_;
};

// Resolves a worker count: explicit request, else QIDIFF_WORKERS, else
// hardware concurrency.
int resolve_workers(int requested);

// Index-parallel loop. Work units must write to disjoint slots; the unit
// order in memory is what makes results worker-count independent.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace qidiff
