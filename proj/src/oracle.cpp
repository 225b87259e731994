#include "qidiff/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qidiff::oracle {

double Rational::value() const { return std::ldexp(static_cast<double>(num), -log2_den); }

std::string Rational::str() const { return std::to_string(num) + "/2^" + std::to_string(log2_den); }

bool Rational::operator==(const Rational& other) const {
    unsigned __int128 lhs = static_cast<unsigned __int128>(num) << other.log2_den;
    unsigned __int128 rhs = static_cast<unsigned __int128>(other.num) << log2_den;
    return lhs == rhs;
}

std::string TruncatedDiff::str() const {
    std::string out(mask.width(), '*');
    for (int p = 1; p <= mask.width(); ++p)
        if (mask.get(p)) out[p - 1] = value.get(p) ? '1' : '0';
    return out;
}

int TruncatedDiff::determined_bits() const {
    int count = 0;
    for (int p = 1; p <= mask.width(); ++p) count += mask.get(p);
    return count;
}

bool contradicts(const TruncatedDiff& p, const TruncatedDiff& q) {
    if (p.mask.width() != q.mask.width()) throw BadParams("pattern width mismatch");
    for (int i = 1; i <= p.mask.width(); ++i)
        if (p.mask.get(i) && q.mask.get(i) && p.value.get(i) != q.value.get(i)) return true;
    return false;
}

namespace {

// One packed bitset per output bit, over all 2^N inputs.
std::vector<std::vector<uint64_t>> bit_tables_from_view(const FunctionView& view, int workers) {
    const uint64_t inputs = 1ull << view.N;
    const std::size_t words = (inputs + 63) / 64;
    std::vector<std::vector<uint64_t>> tables(view.M, std::vector<uint64_t>(words, 0));
    parallel_for(words, workers, [&](std::size_t wi) {
        uint64_t lanes = std::min<uint64_t>(64, inputs - wi * 64);
        for (uint64_t lane = 0; lane < lanes; ++lane) {
            uint64_t out = view.eval(wi * 64 + lane);
            for (int j = 0; j < view.M; ++j)
                if ((out >> (view.M - 1 - j)) & 1) tables[j][wi] |= 1ull << lane;
        }
    });
    return tables;
}

// Output bit v of the result equals input bit v ^ c. Strides below a word are
// delta swaps, larger ones permute whole words.
void xor_shuffle_into(const std::vector<uint64_t>& in, uint64_t c, std::vector<uint64_t>& out) {
    static const uint64_t kMask[6] = {0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
                                      0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
    uint64_t word_xor = c >> 6;
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i ^ word_xor] = in[i];
    for (int bit = 0; bit < 6; ++bit) {
        if (!((c >> bit) & 1)) continue;
        int s = 1 << bit;
        for (uint64_t& w : out) w = ((w & kMask[bit]) << s) | ((w >> s) & kMask[bit]);
    }
}

enum class Constancy { zero, one, varies };

Constancy diff_constancy(const std::vector<uint64_t>& table, const std::vector<uint64_t>& shuffled,
                         uint64_t valid) {
    uint64_t last_mask = (valid % 64 == 0) ? ~0ull : ((1ull << (valid % 64)) - 1);
    bool all0 = true, all1 = true;
    for (std::size_t i = 0; i < table.size(); ++i) {
        uint64_t diff = table[i] ^ shuffled[i];
        uint64_t mask = (i + 1 == table.size()) ? last_mask : ~0ull;
        if (diff & mask) all0 = false;
        if (~diff & mask) all1 = false;
        if (!all0 && !all1) return Constancy::varies;
    }
    return all0 ? Constancy::zero : Constancy::one;
}

}  // namespace

StructureSpace brute_linear_structures(const FunctionView& view, int workers) {
    if (view.N > 20) throw TooLarge("brute_linear_structures needs N <= 20");
    const uint64_t size = 1ull << view.N;
    auto tables = bit_tables_from_view(view, workers);

    int chunks = static_cast<int>(std::min<uint64_t>(size, 64));
    std::vector<std::vector<uint64_t>> found(chunks);  // packed (a << M) | b
    uint64_t per = (size + chunks - 1) / chunks;
    parallel_for(chunks, workers, [&](std::size_t ci) {
        std::vector<uint64_t> shuffled;
        for (uint64_t a = std::max<uint64_t>(ci * per, 1); a < std::min(size, (ci + 1) * per); ++a) {
            uint64_t b = 0;
            bool duad = true;
            for (int j = 0; j < view.M && duad; ++j) {
                xor_shuffle_into(tables[j], a, shuffled);
                switch (diff_constancy(tables[j], shuffled, size)) {
                    case Constancy::zero:
                        break;
                    case Constancy::one:
                        b |= 1ull << (view.M - 1 - j);
                        break;
                    case Constancy::varies:
                        duad = false;
                        break;
                }
            }
            if (duad) found[ci].push_back((a << view.M) | b);
        }
    });

    std::vector<BitVec> vecs;
    for (const auto& chunk : found)
        for (uint64_t packed : chunk) vecs.push_back(BitVec::from_value(view.N + view.M, packed));
    return gf2::make_space(view.N + view.M, std::move(vecs));
}

ThetaReport brute_theta(const FunctionView& view, int workers) {
    if (view.N > 18 || view.M > 18) throw TooLarge("brute_theta needs N <= 18 and M <= 18");
    const uint64_t size = 1ull << view.N;
    const uint64_t out_size = 1ull << view.M;
    if (!view.table) throw TooLarge("brute_theta needs a tabulated view");
    const uint32_t* table = view.table->data();

    struct Best {
        uint64_t count = 0;
        uint64_t a = 0, b = 0;
        bool set = false;
    };
    int chunks = static_cast<int>(std::min<uint64_t>(size, 256));
    std::vector<Best> best(chunks);
    uint64_t per = (size + chunks - 1) / chunks;
    parallel_for(chunks, workers, [&](std::size_t ci) {
        std::vector<uint32_t> hist(out_size);
        Best local;
        for (uint64_t a = ci * per; a < std::min(size, (ci + 1) * per); ++a) {
            std::fill(hist.begin(), hist.end(), 0);
            if (a == 0) {
                hist[0] = static_cast<uint32_t>(size);  // only the trivial duad matches
            } else {
                for (uint64_t x = 0; x < size; ++x) ++hist[table[x] ^ table[x ^ a]];
            }
            for (uint64_t b = 0; b < out_size; ++b) {
                uint64_t c = hist[b];
                if (c == size) continue;  // linear structure duad, excluded
                if (!local.set || c > local.count) local = Best{c, a, b, true};
            }
        }
        best[ci] = local;
    });

    Best overall;
    for (const Best& cand : best) {
        if (!cand.set) continue;
        if (!overall.set || cand.count > overall.count ||
            (cand.count == overall.count && (cand.a < overall.a || (cand.a == overall.a && cand.b < overall.b))))
            overall = cand;
    }
    if (!overall.set) throw BadParams("theta undefined: every pair is a linear structure");

    ThetaReport report;
    report.theta = Rational{overall.count, view.N};
    report.a = BitVec::from_value(view.N, overall.a);
    report.b = BitVec::from_value(view.M, overall.b);
    report.match_count = overall.count;
    return report;
}

uint64_t match_count(const FunctionView& view, uint64_t a, uint64_t b) {
    if (view.N > 20) throw TooLarge("match_count needs N <= 20");
    uint64_t count = 0;
    for (uint64_t x = 0; x < (1ull << view.N); ++x)
        if ((view.eval(x) ^ view.eval(x ^ a)) == b) ++count;
    return count;
}

std::vector<Prob1TruncatedDiff> brute_prob1_truncated(const CipherSpec& spec, int rounds, Direction direction,
                                                      int workers) {
    if (spec.n + spec.m > 20) throw TooLarge("brute_prob1_truncated needs n + m <= 20");
    if (rounds < 1 || rounds > spec.r) throw BadParams("rounds outside [1, r]");
    const int n = spec.n;
    const uint64_t inputs = 1ull << (spec.m + n);
    const uint64_t xmask = (1ull << n) - 1;

    cipher::FunctionView view = cipher::make_view(
        spec.m + n, n,
        [&spec, rounds, direction, xmask, n](uint64_t in) {
            uint64_t k = in >> n, x = in & xmask;
            return direction == Direction::forward ? cipher::encrypt_rounds(spec, k, x, 1, rounds)
                                                   : cipher::decrypt_rounds(spec, k, x, spec.r, spec.r - rounds + 1);
        },
        spec.name + (direction == Direction::forward ? "/fwd/" : "/bwd/") + std::to_string(rounds), rounds);
    auto tables = bit_tables_from_view(view, workers);

    std::vector<std::optional<Prob1TruncatedDiff>> slots(xmask);
    parallel_for(xmask, workers, [&](std::size_t di) {
        uint64_t dx = di + 1;  // difference applies to the plaintext half only
        std::vector<uint64_t> shuffled;
        BitVec pmask = BitVec::zeros(n);
        BitVec pvalue = BitVec::zeros(n);
        int determined = 0;
        for (int j = 0; j < n; ++j) {
            xor_shuffle_into(tables[j], dx, shuffled);
            switch (diff_constancy(tables[j], shuffled, inputs)) {
                case Constancy::zero:
                    pmask.set(j + 1, true);
                    ++determined;
                    break;
                case Constancy::one:
                    pmask.set(j + 1, true);
                    pvalue.set(j + 1, true);
                    ++determined;
                    break;
                case Constancy::varies:
                    break;
            }
        }
        if (determined > 0) {
            Prob1TruncatedDiff entry;
            entry.input_diff = BitVec::from_value(n, dx);
            entry.output_pattern = TruncatedDiff{pmask, pvalue};
            entry.direction = direction;
            entry.rounds = rounds;
            slots[di] = std::move(entry);
        }
    });

    std::vector<Prob1TruncatedDiff> result;
    for (auto& slot : slots)
        if (slot) result.push_back(std::move(*slot));
    return result;
}

std::vector<std::pair<BitVec, BitVec>> brute_impossible_differentials(const CipherSpec& spec, int workers) {
    if (2 * spec.n + spec.m > 26) throw TooLarge("brute_impossible_differentials needs 2n + m <= 26");
    const int n = spec.n;
    const uint64_t nx = 1ull << n;
    const uint64_t nk = 1ull << spec.m;
    const std::size_t row_words = std::max<uint64_t>(nx / 64, 1);

    // Scan 1: key-major, per-key codebooks.
    int chunks = static_cast<int>(std::min<uint64_t>(nk, 64));
    uint64_t per = (nk + chunks - 1) / chunks;
    std::vector<std::vector<std::vector<uint64_t>>> partial(chunks);
    parallel_for(chunks, workers, [&](std::size_t ci) {
        std::vector<std::vector<uint64_t>> local(nx, std::vector<uint64_t>(row_words, 0));
        std::vector<uint32_t> codebook(nx);
        for (uint64_t k = ci * per; k < std::min(nk, (ci + 1) * per); ++k) {
            for (uint64_t x = 0; x < nx; ++x) codebook[x] = static_cast<uint32_t>(cipher::encrypt(spec, k, x));
            for (uint64_t din = 1; din < nx; ++din) {
                auto& row = local[din];
                for (uint64_t x = 0; x < nx; ++x) {
                    uint64_t dout = codebook[x] ^ codebook[x ^ din];
                    row[dout / 64] |= 1ull << (dout % 64);
                }
            }
        }
        partial[ci] = std::move(local);
    });
    std::vector<std::vector<uint64_t>> reach(nx, std::vector<uint64_t>(row_words, 0));
    for (const auto& local : partial)
        for (uint64_t din = 1; din < nx; ++din)
            for (std::size_t w = 0; w < row_words; ++w) reach[din][w] |= local[din][w];

    // Scan 2: plaintext-major, direct encryptions, no codebook reuse.
    std::vector<std::vector<std::vector<uint64_t>>> partial2(chunks);
    uint64_t per_x = (nx + chunks - 1) / chunks;
    parallel_for(chunks, workers, [&](std::size_t ci) {
        std::vector<std::vector<uint64_t>> local(nx, std::vector<uint64_t>(row_words, 0));
        for (uint64_t x = ci * per_x; x < std::min(nx, (ci + 1) * per_x); ++x) {
            for (uint64_t k = 0; k < nk; ++k) {
                uint64_t base = cipher::encrypt(spec, k, x);
                for (uint64_t din = 1; din < nx; ++din) {
                    uint64_t dout = base ^ cipher::encrypt(spec, k, x ^ din);
                    local[din][dout / 64] |= 1ull << (dout % 64);
                }
            }
        }
        partial2[ci] = std::move(local);
    });
    std::vector<std::vector<uint64_t>> reach2(nx, std::vector<uint64_t>(row_words, 0));
    for (const auto& local : partial2)
        for (uint64_t din = 1; din < nx; ++din)
            for (std::size_t w = 0; w < row_words; ++w) reach2[din][w] |= local[din][w];
    for (uint64_t din = 1; din < nx; ++din)
        if (reach[din] != reach2[din]) throw BadParams("impossible-differential scans disagree");

    std::vector<std::pair<BitVec, BitVec>> ids;
    for (uint64_t din = 1; din < nx; ++din) {
        for (uint64_t dout = 1; dout < nx; ++dout) {
            if ((reach[din][dout / 64] >> (dout % 64)) & 1) continue;
            ids.emplace_back(BitVec::from_value(n, din), BitVec::from_value(n, dout));
        }
    }
    return ids;
}

bool differential_reachable(const CipherSpec& spec, uint64_t din, uint64_t dout) {
    const uint64_t nx = 1ull << spec.n;
    const uint64_t nk = 1ull << spec.m;
    for (uint64_t k = 0; k < nk; ++k) {
        for (uint64_t x = 0; x < nx; ++x) {
            if ((cipher::encrypt(spec, k, x) ^ cipher::encrypt(spec, k, x ^ din)) == dout) return true;
        }
    }
    return false;
}

ReachabilityOracle::ReachabilityOracle(const CipherSpec& spec, int workers)
    : nx_(1ull << spec.n), nk_(1ull << spec.m) {
    if (spec.n + spec.m > 20) throw TooLarge("reachability oracle needs n + m <= 20");
    codebooks_.resize(nx_ * nk_);
    parallel_for(nk_, workers, [&](std::size_t k) {
        for (uint64_t x = 0; x < nx_; ++x)
            codebooks_[k * nx_ + x] = static_cast<uint32_t>(cipher::encrypt(spec, k, x));
    });
}

bool ReachabilityOracle::reachable(uint64_t din, uint64_t dout) const {
    for (uint64_t k = 0; k < nk_; ++k) {
        const uint32_t* row = codebooks_.data() + k * nx_;
        for (uint64_t x = 0; x < nx_; ++x) {
            if ((row[x] ^ row[x ^ din]) == dout) return true;
        }
    }
    return false;
}

}  // namespace qidiff::oracle
