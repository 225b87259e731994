// Seeded search for the frozen 4-bit S-box tables shipped in configs/.
// Candidates are uniform random bijections; acceptance criteria are checked
// with the same oracle scans the test suite uses, so re-running with the
// committed seed reproduces the committed tables.
//
//   weak:   exactly one nontrivial linear structure duad (a*, b*), with
//           wt(a*) = wt(b*) so a bit permutation can route b* back onto a*,
//           and max non-duad DDT entry <= 8. Also emits that permutation.
//   strong: no component-function linear structures at all (hence none
//           vectorially), max DDT entry <= 8, and no probability-1 truncated
//           differential survives two rounds of the assembled SPN in either
//           direction.
//   feistel: no component-function linear structures, max DDT entry <= 8.

#include <array>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qidiff/cipher.hpp"
#include "qidiff/oracle.hpp"

using namespace qidiff;

namespace {

using Table = std::array<uint8_t, 16>;

Table random_bijection(Rng& rng) {
    Table t;
    std::iota(t.begin(), t.end(), 0);
    for (int i = 15; i > 0; --i) {
        int j = static_cast<int>(rng.next() % (i + 1));
        std::swap(t[i], t[j]);
    }
    return t;
}

// Duads (a, b) with S(x ^ a) ^ S(x) = b for all x; a = 0 excluded.
std::vector<std::pair<int, int>> vectorial_duads(const Table& t) {
    std::vector<std::pair<int, int>> duads;
    for (int a = 1; a < 16; ++a) {
        int b = t[0] ^ t[a];
        bool ok = true;
        for (int x = 1; x < 16 && ok; ++x) ok = (t[x] ^ t[x ^ a]) == b;
        if (ok) duads.emplace_back(a, b);
    }
    return duads;
}

bool has_component_duad(const Table& t) {
    for (int a = 1; a < 16; ++a) {
        for (int j = 0; j < 4; ++j) {
            int first = (t[0] >> j) ^ (t[a] >> j);
            bool constant = true;
            for (int x = 1; x < 16 && constant; ++x)
                constant = (((t[x] >> j) ^ (t[x ^ a] >> j)) & 1) == (first & 1);
            if (constant) return true;
        }
    }
    return false;
}

int max_nonduad_ddt(const Table& t) {
    int best = 0;
    for (int a = 1; a < 16; ++a) {
        std::array<int, 16> row{};
        for (int x = 0; x < 16; ++x) ++row[t[x] ^ t[x ^ a]];
        for (int b = 0; b < 16; ++b)
            if (row[b] != 16) best = std::max(best, row[b]);
    }
    return best;
}

int weight(int v) { return __builtin_popcount(v); }

// Bit permutation of 8 positions sending value bstar||0 to 0||astar and
// 0||bstar to astar||0. Position j (1-based, leftmost first) maps to
// perm[j-1].
std::vector<int> weak_perm(int astar, int bstar) {
    auto positions_of = [](int v) {  // 1-based positions within a nibble
        std::vector<int> pos;
        for (int p = 1; p <= 4; ++p)
            if ((v >> (4 - p)) & 1) pos.push_back(p);
        return pos;
    };
    auto positions_not_of = [&](int v) {
        std::vector<int> pos;
        for (int p = 1; p <= 4; ++p)
            if (!((v >> (4 - p)) & 1)) pos.push_back(p);
        return pos;
    };
    std::vector<int> perm(8, 0);
    auto route = [&](int src_base, int dst_base, const std::vector<int>& from, const std::vector<int>& to) {
        for (std::size_t i = 0; i < from.size(); ++i) perm[src_base + from[i] - 1] = dst_base + to[i];
    };
    // Left half carries S(b*) bits; send them onto a*'s positions in the
    // right half, and vice versa. Complement positions fill the rest.
    route(0, 4, positions_of(bstar), positions_of(astar));
    route(0, 4, positions_not_of(bstar), positions_not_of(astar));
    route(4, 0, positions_of(bstar), positions_of(astar));
    route(4, 0, positions_not_of(bstar), positions_not_of(astar));
    return perm;
}

nlohmann::json table_json(const Table& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (uint8_t v : t) arr.push_back(std::string(1, "0123456789abcdef"[v]));
    return arr;
}

cipher::CipherSpec assemble_spn(const std::string& name, const Table& t, const std::vector<int>& perm, int r) {
    nlohmann::json j{{"name", name}, {"n", 8}, {"m", 8}, {"r", r}, {"family", "spn"},
                     {"sbox", table_json(t)}, {"perm", perm}, {"schedule", 1}};
    return cipher::load_cipher_json(j.dump());
}

bool strong_two_round_clean(const Table& t, const std::vector<int>& perm) {
    cipher::CipherSpec spec = assemble_spn("candidate", t, perm, 4);
    return oracle::brute_prob1_truncated(spec, 2, oracle::Direction::forward).empty() &&
           oracle::brute_prob1_truncated(spec, 2, oracle::Direction::backward).empty();
}

void report(const std::string& target, const Table& t, uint64_t seed, uint64_t tries,
            const std::vector<int>& perm) {
    nlohmann::json out{{"target", target}, {"seed", seed}, {"tries", tries}, {"sbox", table_json(t)}};
    if (!perm.empty()) out["perm"] = perm;
    auto duads = vectorial_duads(t);
    nlohmann::json dj = nlohmann::json::array();
    for (auto [a, b] : duads) dj.push_back({{"a", a}, {"b", b}});
    out["duads"] = dj;
    out["max_nonduad_ddt"] = max_nonduad_ddt(t);
    std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"search 4-bit S-box tables for the shipped toy ciphers"};
    std::string target = "weak";
    uint64_t seed = 1, max_tries = 50'000'000;
    std::string check_table;
    app.add_option("--target", target, "weak | strong | feistel")->check(CLI::IsMember({"weak", "strong", "feistel"}));
    app.add_option("--seed", seed, "search seed");
    app.add_option("--max-tries", max_tries, "candidate limit");
    app.add_option("--check", check_table, "verify a comma-separated table instead of searching");
    CLI11_PARSE(app, argc, argv);

    const std::vector<int> strong_perm = {1, 3, 5, 7, 2, 4, 6, 8};

    if (!check_table.empty()) {
        Table t{};
        std::size_t start = 0;
        for (int i = 0; i < 16; ++i) {
            std::size_t comma = check_table.find(',', start);
            t[i] = static_cast<uint8_t>(std::stoul(check_table.substr(start, comma - start), nullptr, 16));
            start = comma + 1;
        }
        std::cout << "component_duad_free: " << (has_component_duad(t) ? "no" : "yes") << "\n";
        auto duads = vectorial_duads(t);
        std::cout << "vectorial_duads: " << duads.size() << "\n";
        std::cout << "max_nonduad_ddt: " << max_nonduad_ddt(t) << "\n";
        return 0;
    }

    Rng rng(seed);
    for (uint64_t tries = 1; tries <= max_tries; ++tries) {
        Table t = random_bijection(rng);
        if (target == "weak") {
            auto duads = vectorial_duads(t);
            if (duads.size() != 1) continue;
            auto [a, b] = duads[0];
            if (weight(a) != weight(b)) continue;
            if (max_nonduad_ddt(t) > 8) continue;
            report(target, t, seed, tries, weak_perm(a, b));
            return 0;
        }
        if (has_component_duad(t)) continue;
        if (max_nonduad_ddt(t) > 8) continue;
        if (target == "feistel") {
            report(target, t, seed, tries, {});
            return 0;
        }
        if (!strong_two_round_clean(t, strong_perm)) continue;
        report(target, t, seed, tries, strong_perm);
        return 0;
    }
    std::cerr << "no candidate found within " << max_tries << " tries\n";
    return 1;
}
