#pragma once

#include "json.hpp"
#include "qidiff/finder.hpp"
#include "qidiff/resources.hpp"

namespace qidiff::report {

using nlohmann::json;

extern const int kSchemaVersion;

json space_json(const gf2::StructureSpace& space);
json tally_json(const qsim::GateTally& tally);
json params_json(const finder::SearchParams& params, const std::string& algo);
json record_json(const finder::ImpossibleDifferentialRecord& rec);

// Deterministic report body for a finder run: identical (config, seed) input
// gives an identical report regardless of worker count. Timing is attached
// separately by the caller and is excluded from comparisons.
json find_report(const cipher::CipherSpec& spec, const finder::SearchParams& params,
                 const finder::FinderResult& result);

json theta_report(const cipher::CipherSpec& spec, int rounds, bool suffix, const oracle::ThetaReport& theta);
json structures_report(const std::string& subject, const gf2::StructureSpace& space);
json truncated_report(const cipher::CipherSpec& spec, int rounds, oracle::Direction direction,
                      const std::vector<oracle::Prob1TruncatedDiff>& entries);
json impossible_report(const cipher::CipherSpec& spec, const std::vector<std::pair<gf2::BitVec, gf2::BitVec>>& ids);
json estimate_report(const resources::ResourceEstimate& est);

// Debug export of a measurement law as {gamma_hex: probability}.
json distribution_json(const qsim::DistributionTable& table);

std::string dump(const json& j);

}  // namespace qidiff::report
