#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qidiff/common.hpp"

using nlohmann::json;

namespace {

const std::string kCli = QIDIFF_CLI_PATH;
const std::string kConfigDir = QIDIFF_CONFIG_DIR;

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    CliResult result;
    std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, got);
    int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string without_timing(const std::string& text) {
    json j = json::parse(text);
    j.erase("timing");
    return j.dump(2);
}

}  // namespace

TEST_CASE("estimate subcommand prints the exact table row") {
    auto res = run_cli("estimate --algo full --n 64 --m 80 --r 25 --c 3");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    CHECK(j["tau"] == 72);
    CHECK(j["cnot"] == "1916928");
    CHECK(j["hadamard"] == "12460032");
    CHECK(j["ue_calls"] == "14976");
    CHECK(j["qubits"] == 272);
    CHECK(j["schema_version"] == 1);
    // informational classical-side cost: 2 c (r-1) n^2 (m + 2n)
    CHECK(j["classical_gf2_ops"] == "122683392");

    res = run_cli("estimate --algo truncated --n 8 --m 8 --r 4 --c 3");
    REQUIRE(res.code == 0);
    j = json::parse(res.out);
    CHECK(j["cnot"] == "2448");
    CHECK(j["hadamard"] == "83232");
    CHECK(j["ue_calls"] == "153");
    CHECK(j["qubits"] == 18);
    CHECK(!j.contains("classical_gf2_ops"));
}

TEST_CASE("workers env fallback is honored") {
    CHECK(qidiff::resolve_workers(3) == 3);
    setenv("QIDIFF_WORKERS", "2", 1);
    CHECK(qidiff::resolve_workers(0) == 2);
    unsetenv("QIDIFF_WORKERS");
    CHECK(qidiff::resolve_workers(0) >= 1);
}

TEST_CASE("find produces the derived toyfeistel report") {
    std::string out = "/tmp/qidiff_cli_find.json";
    auto res = run_cli("find --cipher " + kConfigDir + "/toyfeistel8.json --algo truncated --c 6 --seed 42 --verify --out " +
                       out);
    REQUIRE(res.code == 0);
    json j = json::parse(slurp(out));
    CHECK(j["schema_version"] == 1);
    CHECK(j["params"]["seed"] == 42);
    CHECK(j["record_count"] == 6945);
    bool named = false;
    int refuted = 0;
    for (const auto& rec : j["records"]) {
        if (rec["verified"] != "oracle_confirmed") ++refuted;
        if (rec["dx1"] == "10" && rec["dx2"] == "20") named = true;
    }
    CHECK(named);
    CHECK(refuted == 0);
}

TEST_CASE("missing cipher file exits 1") {
    auto res = run_cli("find --cipher /nonexistent/cipher.json --algo full");
    CHECK(res.code == 1);
}

TEST_CASE("oversized cipher exits 2 as a feasibility error") {
    auto res = run_cli("find --cipher " + kConfigDir + "/bigspn64.json --algo full --backend statevector");
    CHECK(res.code == 2);
    res = run_cli("oracle impossible --cipher " + kConfigDir + "/bigspn64.json");
    CHECK(res.code == 2);
}

TEST_CASE("oracle subcommands answer on builtin and cipher subjects") {
    auto res = run_cli("oracle structures --function identity --n 4 --m 4");
    REQUIRE(res.code == 0);
    CHECK(json::parse(res.out)["space"]["dim"] == 4);

    res = run_cli("oracle theta --cipher " + kConfigDir + "/weakspn8.json --rounds 1 --workers 2");
    REQUIRE(res.code == 0);
    json theta = json::parse(res.out);
    CHECK(theta["theta"]["num"] == 16384);
    CHECK(theta["theta"]["log2_den"] == 16);

    res = run_cli("oracle truncated --cipher " + kConfigDir + "/toyfeistel8.json --rounds 2 --direction forward");
    REQUIRE(res.code == 0);
    CHECK(json::parse(res.out)["count"] == 15);
}

TEST_CASE("identical config and seed give byte-identical reports across worker counts") {
    std::string a = "/tmp/qidiff_cli_w1.json", b = "/tmp/qidiff_cli_w4.json";
    std::string base = "find --cipher " + kConfigDir + "/weakspn8.json --algo full --c 5 --seed 7 --verify ";
    REQUIRE(run_cli(base + "--workers 1 --out " + a).code == 0);
    REQUIRE(run_cli(base + "--workers 4 --out " + b).code == 0);
    CHECK(without_timing(slurp(a)) == without_timing(slurp(b)));
    CHECK(slurp(a) != "");
}

TEST_CASE("selftest passes") {
    auto res = run_cli("selftest");
    CHECK(res.code == 0);
    CHECK(res.out.find("selftest ok") != std::string::npos);
}
