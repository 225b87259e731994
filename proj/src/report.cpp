#include "qidiff/report.hpp"

namespace qidiff::report {

const int kSchemaVersion = 1;

json space_json(const gf2::StructureSpace& space) {
    json basis = json::array();
    for (const auto& v : space.basis) basis.push_back(v.to_hex());
    return json{{"width", space.ambient_width}, {"dim", space.dim()}, {"basis", basis}};
}

json tally_json(const qsim::GateTally& tally) {
    return json{{"hadamard", tally.hadamard},
                {"cnot", tally.cnot},
                {"view_calls", tally.view_calls},
                {"round_units", tally.round_units}};
}

json params_json(const finder::SearchParams& params, const std::string& algo) {
    json j{{"algo", algo},
           {"c", params.c},
           {"seed", params.seed},
           {"backend", params.backend == qsim::Backend::fourier ? "fourier" : "statevector"},
           {"verify", params.verify_with_oracle},
           {"enumeration_cap", params.enumeration_cap}};
    if (params.e0) j["e0"] = *params.e0;
    return j;
}

namespace {

const char* verified_str(finder::Verified v) {
    switch (v) {
        case finder::Verified::oracle_confirmed: return "oracle_confirmed";
        case finder::Verified::oracle_refuted: return "oracle_refuted";
        default: return "unknown";
    }
}

}  // namespace

json record_json(const finder::ImpossibleDifferentialRecord& rec) {
    json prov = json::array();
    for (const auto& p : rec.provenance) {
        json entry{{"split_r1", p.split_r1}, {"dy1", p.dy1.to_hex()}, {"dy2", p.dy2.to_hex()}};
        if (p.bit_index > 0) entry["bit_index"] = p.bit_index;
        prov.push_back(std::move(entry));
    }
    return json{{"dx1", rec.dx1.to_hex()},
                {"dx2", rec.dx2.to_hex()},
                {"verified", verified_str(rec.verified)},
                {"provenance", prov}};
}

json find_report(const cipher::CipherSpec& spec, const finder::SearchParams& params,
                 const finder::FinderResult& result) {
    json units = json::array();
    for (const auto& unit : result.units) {
        json u{{"split_r1", unit.split_r1},
               {"side", unit.is_suffix ? "backward" : "forward"},
               {"dim_raw", unit.raw_space.dim()},
               {"dim_zero_key", unit.constrained_space.dim()},
               {"enumerated", unit.enumerated}};
        if (unit.bit_index > 0) u["bit_index"] = unit.bit_index;
        if (!unit.enumerated) u["basis"] = space_json(unit.constrained_space);
        units.push_back(std::move(u));
    }
    json records = json::array();
    for (const auto& rec : result.records) records.push_back(record_json(rec));

    json report{{"schema_version", kSchemaVersion},
                {"command", "find"},
                {"cipher", {{"name", spec.name}, {"n", spec.n}, {"m", spec.m}, {"r", spec.r}}},
                {"params", params_json(params, result.algorithm == finder::Algorithm::full ? "full" : "truncated")},
                {"units", units},
                {"records", records},
                {"record_count", result.records.size()},
                {"warnings", result.warnings},
                {"gate_tally", tally_json(result.tally)}};
    if (result.per_record_error_bound) report["per_record_error_bound"] = *result.per_record_error_bound;
    return report;
}

json theta_report(const cipher::CipherSpec& spec, int rounds, bool suffix, const oracle::ThetaReport& theta) {
    return json{{"schema_version", kSchemaVersion},
                {"command", "oracle/theta"},
                {"cipher", spec.name},
                {"rounds", rounds},
                {"view", suffix ? "suffix_inverse" : "prefix"},
                {"theta", {{"num", theta.theta.num}, {"log2_den", theta.theta.log2_den}, {"value", theta.theta.value()}}},
                {"attaining_a", theta.a.to_hex()},
                {"attaining_b", theta.b.to_hex()},
                {"match_count", theta.match_count}};
}

json structures_report(const std::string& subject, const gf2::StructureSpace& space) {
    return json{{"schema_version", kSchemaVersion},
                {"command", "oracle/structures"},
                {"subject", subject},
                {"space", space_json(space)}};
}

json truncated_report(const cipher::CipherSpec& spec, int rounds, oracle::Direction direction,
                      const std::vector<oracle::Prob1TruncatedDiff>& entries) {
    json list = json::array();
    for (const auto& e : entries)
        list.push_back(json{{"input_diff", e.input_diff.to_hex()}, {"pattern", e.output_pattern.str()}});
    return json{{"schema_version", kSchemaVersion},
                {"command", "oracle/truncated"},
                {"cipher", spec.name},
                {"rounds", rounds},
                {"direction", direction == oracle::Direction::forward ? "forward" : "backward"},
                {"count", entries.size()},
                {"entries", list}};
}

json impossible_report(const cipher::CipherSpec& spec, const std::vector<std::pair<gf2::BitVec, gf2::BitVec>>& ids) {
    json list = json::array();
    for (const auto& [din, dout] : ids) list.push_back(json{{"din", din.to_hex()}, {"dout", dout.to_hex()}});
    return json{{"schema_version", kSchemaVersion},
                {"command", "oracle/impossible"},
                {"cipher", spec.name},
                {"count", ids.size()},
                {"pairs", list}};
}

json estimate_report(const resources::ResourceEstimate& est) {
    json j{{"schema_version", kSchemaVersion},
           {"command", "estimate"},
           {"algorithm", est.algorithm == resources::Algorithm::full ? "full" : "truncated"},
           {"n", est.n},
           {"m", est.m},
           {"r", est.r},
           {"c", est.c},
           {"tau", est.tau},
           {"cnot", resources::u128_str(est.cnot)},
           {"hadamard", resources::u128_str(est.hadamard)},
           {"ue_calls", resources::u128_str(est.ue_calls)},
           {"qubits", est.qubits}};
    if (est.algorithm == resources::Algorithm::full)
        j["classical_gf2_ops"] = resources::u128_str(est.classical_gf2_ops);
    return j;
}

json distribution_json(const qsim::DistributionTable& table) {
    json pmf = json::object();
    for (uint64_t g = 0; g < table.pmf.size(); ++g) {
        if (table.pmf[g] == 0.0) continue;
        pmf[gf2::BitVec::from_value(table.N + table.M, g).to_hex()] = table.pmf[g];
    }
    return json{{"N", table.N}, {"M", table.M}, {"pmf", pmf}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qidiff::report
