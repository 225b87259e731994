#include "qidiff/finder.hpp"

#include <cmath>
#include <sstream>

namespace qidiff::finder {

std::string SearchParams::c_warning() const {
    if (!e0) return "theta bound e0 unknown; the correctness guarantees presuppose theta <= e0 < 1";
    if (*e0 < 0.0 || *e0 >= 1.0) throw BadParams("e0 must lie in [0, 1)");
    double needed = 3.0 / (1.0 - *e0);
    if (static_cast<double>(c) <= needed) {
        std::ostringstream os;
        os << "c = " << c << " does not exceed 3/(1-e0) = " << needed;
        return os.str();
    }
    return {};
}

namespace {

void check_backend_feasible(const FunctionView& view, Backend backend) {
    if (backend == Backend::fourier) {
        if (view.N > 24) throw TooLarge("fourier backend needs N <= 24");
    } else {
        if (view.N + 2 * view.M > 22) throw TooLarge("statevector backend needs N + 2M <= 22");
    }
}

}  // namespace

StructResult find_struct(const FunctionView& view, const SearchParams& params, GateTally* tally,
                         uint64_t stream) {
    if (params.c < 1) throw BadParams("repetition constant c must be >= 1");
    check_backend_feasible(view, params.backend);

    const std::size_t count = static_cast<std::size_t>(params.c) * (view.N + view.M);
    std::shared_ptr<qsim::SliceCache> cache = params.cache;
    if (!cache && params.backend == Backend::fourier) cache = std::make_shared<qsim::SliceCache>();

    Rng base = Rng(params.seed).derive(stream);
    std::vector<SimonSample> samples(count);
    parallel_for(count, params.workers, [&](std::size_t i) {
        Rng rng = base.derive(i);
        samples[i] = params.backend == Backend::fourier
                         ? qsim::simon_sample_fourier(view, rng, cache.get())
                         : qsim::simon_sample_statevector(view, rng);
    });
    if (tally) {
        tally->hadamard += count * 2ull * (view.N + view.M);
        tally->cnot += count * static_cast<uint64_t>(view.M);
        tally->view_calls += count;
        tally->round_units += count * static_cast<uint64_t>(view.round_cost);
    }

    gf2::GF2Matrix system;
    system.width = view.N + view.M;
    system.rows.reserve(count);
    for (const auto& s : samples) system.rows.push_back(s.gamma);

    StructResult result;
    result.space = gf2::solve_nullspace(system);
    result.samples_used = count;
    result.gammas = std::move(samples);
    return result;
}

namespace {

struct PairingElement {
    BitVec dx;
    BitVec dy;
};

// Splits enumerated (0^m, dx, dy) solutions into pairing elements, dropping
// everything with dx = 0 (the trivial solution and pure output-difference
// vectors encode collision structure, not differentials).
std::vector<PairingElement> pairing_elements(const std::vector<BitVec>& elements, int m, int n, int dy_width) {
    std::vector<PairingElement> out;
    out.reserve(elements.size());
    for (const auto& v : elements) {
        BitVec dx = v.slice(m + 1, n);
        if (dx.is_zero()) continue;
        out.push_back(PairingElement{std::move(dx), v.slice(m + n + 1, dy_width)});
    }
    return out;
}

struct RecordBuilder {
    Algorithm algorithm;
    std::map<std::pair<BitVec, BitVec>, ImpossibleDifferentialRecord> records;

    void add(const BitVec& dx1, const BitVec& dx2, Provenance prov) {
        auto key = std::make_pair(dx1, dx2);
        auto it = records.find(key);
        if (it == records.end()) {
            ImpossibleDifferentialRecord rec;
            rec.dx1 = dx1;
            rec.dx2 = dx2;
            rec.algorithm = algorithm;
            rec.provenance.push_back(std::move(prov));
            records.emplace(std::move(key), std::move(rec));
        } else {
            it->second.provenance.push_back(std::move(prov));
        }
    }
};

FinderResult run_finder(const CipherSpec& spec, const SearchParams& params, Algorithm algorithm) {
    if (params.c < 1) throw BadParams("repetition constant c must be >= 1");
    FinderResult result;
    result.algorithm = algorithm;
    std::string warn = params.c_warning();
    if (!warn.empty()) result.warnings.push_back(warn);
    if (params.e0) {
        int w = algorithm == Algorithm::full ? 2 * spec.n + spec.m : spec.m + spec.n + 1;
        result.per_record_error_bound = 2.0 * std::pow(2.0 * std::pow((1.0 + *params.e0) / 2.0, params.c), w);
    }

    SearchParams local = params;
    if (!local.cache && local.backend == Backend::fourier) local.cache = std::make_shared<qsim::SliceCache>();

    RecordBuilder builder{algorithm, {}};
    const int n = spec.n, m = spec.m;
    const int bits_per_split = algorithm == Algorithm::full ? 1 : n;

    for (int r1 = 1; r1 <= spec.r - 1; ++r1) {
        int r2 = spec.r - r1;
        FunctionView prefix = cipher::prefix_view(spec, r1);
        FunctionView suffix = cipher::suffix_inverse_view(spec, r2);
        for (int bit = 1; bit <= bits_per_split; ++bit) {
            FunctionView view_a = algorithm == Algorithm::full ? prefix : cipher::component_view(prefix, bit);
            FunctionView view_b = algorithm == Algorithm::full ? suffix : cipher::component_view(suffix, bit);
            int bit_index = algorithm == Algorithm::full ? -1 : bit;
            uint64_t base_stream =
                algorithm == Algorithm::full ? 2ull * r1 : 2ull * (static_cast<uint64_t>(r1) * (n + 1) + bit);

            StructResult res_a = find_struct(view_a, local, &result.tally, base_stream);
            StructResult res_b = find_struct(view_b, local, &result.tally, base_stream + 1);
            StructureSpace a_space = gf2::constrain_prefix_zero(res_a.space, m);
            StructureSpace b_space = gf2::constrain_prefix_zero(res_b.space, m);

            UnitResult unit_a{r1, bit_index, false, res_a.space, a_space, true};
            UnitResult unit_b{r1, bit_index, true, res_b.space, b_space, true};

            // Oversized spaces degrade to a capped Gray-prefix scan; the
            // report then carries the basis and flags the truncation.
            auto enumerate_unit = [&](const StructureSpace& space, UnitResult& unit, const char* side) {
                try {
                    return gf2::enumerate_space(space, params.enumeration_cap);
                } catch (const SpaceTooLarge& e) {
                    unit.enumerated = false;
                    result.warnings.push_back("split r1=" + std::to_string(r1) +
                                              (bit_index > 0 ? " bit " + std::to_string(bit_index) : "") + ": " +
                                              side + " space scanned only partially, basis reported (" + e.what() +
                                              ")");
                    return gf2::enumerate_space_prefix(space, params.enumeration_cap);
                }
            };
            std::vector<PairingElement> elems_a =
                pairing_elements(enumerate_unit(a_space, unit_a, "forward"), m, n, view_a.M);
            std::vector<PairingElement> elems_b =
                pairing_elements(enumerate_unit(b_space, unit_b, "backward"), m, n, view_b.M);
            result.units.push_back(std::move(unit_a));
            result.units.push_back(std::move(unit_b));

            for (const auto& ea : elems_a) {
                for (const auto& eb : elems_b) {
                    if (ea.dy == eb.dy) continue;
                    builder.add(ea.dx, eb.dx, Provenance{r1, bit_index, ea.dy, eb.dy});
                }
            }
        }
    }

    result.records.reserve(builder.records.size());
    for (auto& [key, rec] : builder.records) result.records.push_back(std::move(rec));

    if (params.verify_with_oracle && !result.records.empty()) {
        if (spec.n + spec.m > 20) {
            result.warnings.push_back("oracle verification skipped: n + m exceeds the exhaustive-scan range");
        } else {
            oracle::ReachabilityOracle reach(spec, params.workers);
            parallel_for(result.records.size(), params.workers, [&](std::size_t i) {
                auto& rec = result.records[i];
                rec.verified = reach.reachable(rec.dx1.value(), rec.dx2.value()) ? Verified::oracle_refuted
                                                                                 : Verified::oracle_confirmed;
            });
        }
    }
    return result;
}

}  // namespace

FinderResult find_impo_diff(const CipherSpec& spec, const SearchParams& params) {
    return run_finder(spec, params, Algorithm::full);
}

FinderResult find_impo_diff2(const CipherSpec& spec, const SearchParams& params) {
    return run_finder(spec, params, Algorithm::truncated);
}

}  // namespace qidiff::finder
