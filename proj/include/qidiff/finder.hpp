#pragma once

#include <map>
#include <optional>

#include "qidiff/oracle.hpp"
#include "qidiff/qsim.hpp"

namespace qidiff::finder {

using cipher::CipherSpec;
using cipher::FunctionView;
using gf2::BitVec;
using gf2::StructureSpace;
using qsim::Backend;
using qsim::GateTally;
using qsim::SimonSample;

struct SearchParams {
    int c = 4;
    std::optional<double> e0;
    Backend backend = Backend::fourier;
    uint64_t seed = 0;
    uint64_t enumeration_cap = 1ull << 20;
    bool verify_with_oracle = false;
    int workers = 0;
    std::shared_ptr<qsim::SliceCache> cache;  // optional, shared across runs

    // The correctness guarantees want c above 3/(1-e0) when a bound e0 on
    // theta is asserted. Returns a warning string when violated, empty
    // otherwise.
    std::string c_warning() const;
};

struct StructResult {
    StructureSpace space;
    std::size_t samples_used = 0;
    std::vector<SimonSample> gammas;
};

// Collects c(N+M) subroutine samples and solves the orthogonality system.
StructResult find_struct(const FunctionView& view, const SearchParams& params, GateTally* tally = nullptr,
                         uint64_t stream = 0);

enum class Verified { unknown, oracle_confirmed, oracle_refuted };
enum class Algorithm { full, truncated };

struct Provenance {
    int split_r1 = 0;
    int bit_index = -1;  // -1 for the full-differential algorithm
    BitVec dy1;
    BitVec dy2;
};

struct ImpossibleDifferentialRecord {
    BitVec dx1;
    BitVec dx2;
    Algorithm algorithm = Algorithm::full;
    std::vector<Provenance> provenance;
    Verified verified = Verified::unknown;
};

// Raw per-unit structure spaces, kept for diagnostics and the conditional
// completeness checks.
struct UnitResult {
    int split_r1 = 0;
    int bit_index = -1;
    bool is_suffix = false;
    StructureSpace raw_space;          // solution space before the key constraint
    StructureSpace constrained_space;  // zero-key slice that feeds the pairing loop
    bool enumerated = true;
};

struct FinderResult {
    Algorithm algorithm = Algorithm::full;
    std::vector<ImpossibleDifferentialRecord> records;  // sorted by (dx1, dx2)
    std::vector<UnitResult> units;
    std::vector<std::string> warnings;
    GateTally tally;
    // Bound on the per-record error probability, available when the
    // caller asserted e0: 2 (2 ((1+e0)/2)^c)^w with w = 2n+m (full) or
    // m+n+1 (truncated). Informational.
    std::optional<double> per_record_error_bound;
};

FinderResult find_impo_diff(const CipherSpec& spec, const SearchParams& params);
FinderResult find_impo_diff2(const CipherSpec& spec, const SearchParams& params);

}  // namespace qidiff::finder
