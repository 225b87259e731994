#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "qidiff/oracle.hpp"

using namespace qidiff;
using cipher::CipherSpec;
using cipher::FunctionView;
using gf2::BitVec;
using oracle::Direction;
using oracle::TruncatedDiff;

namespace {

const std::string kConfigDir = QIDIFF_CONFIG_DIR;

CipherSpec load(const std::string& name) { return cipher::load_cipher_file(kConfigDir + "/" + name); }

FunctionView view_and2() {
    return cipher::make_view(2, 1, [](uint64_t x) { return (x >> 1) & x & 1; }, "ofix/and2", 0);
}

// y_j = parity(x & mask_j), a plain linear map.
FunctionView view_linear(std::vector<uint64_t> masks, int N) {
    return cipher::make_view(N, static_cast<int>(masks.size()),
                             [masks](uint64_t x) {
                                 uint64_t out = 0;
                                 for (uint64_t mask : masks) out = (out << 1) | parity64(x & mask);
                                 return out;
                             },
                             "ofix/linear", 0);
}

TruncatedDiff pattern(const std::string& s) {
    TruncatedDiff p{BitVec::zeros(static_cast<int>(s.size())), BitVec::zeros(static_cast<int>(s.size()))};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '*') continue;
        p.mask.set(static_cast<int>(i) + 1, true);
        p.value.set(static_cast<int>(i) + 1, s[i] == '1');
    }
    return p;
}

}  // namespace

TEST_CASE("rational equality is exact") {
    CHECK(oracle::Rational{1, 1} == oracle::Rational{2, 2});
    CHECK(oracle::Rational{16384, 16} == oracle::Rational{1, 2});
    CHECK(!(oracle::Rational{3, 3} == oracle::Rational{1, 2}));
    CHECK(oracle::Rational{1, 2}.value() == doctest::Approx(0.25));
}

TEST_CASE("truncated pattern contradiction") {
    CHECK(oracle::contradicts(pattern("00*1"), pattern("01**")));
    CHECK(oracle::contradicts(pattern("00*1"), pattern("0**0")));
    CHECK(!oracle::contradicts(pattern("01**"), pattern("0*1*")));
    CHECK(!oracle::contradicts(pattern("****"), pattern("1111")));
    CHECK(oracle::contradicts(pattern("1111"), pattern("1110")));
    CHECK(pattern("00*1").str() == "00*1");
    CHECK(pattern("00*1").determined_bits() == 3);
}

TEST_CASE("linear structures of a linear map") {
    auto view = view_linear({0b1011, 0b0110, 0b1110}, 4);
    auto space = oracle::brute_linear_structures(view);
    CHECK(space.dim() == 4);
    for (const auto& duad : space.basis) {
        uint64_t a = duad.slice(1, 4).value();
        uint64_t b = duad.slice(5, 3).value();
        CHECK(view.eval(a) == b);  // linear: F(x ^ a) ^ F(x) = F(a)
    }
}

TEST_CASE("linear structures of a constant map") {
    auto view = cipher::make_view(4, 3, [](uint64_t) { return 0b101ull; }, "ofix/const", 0);
    auto space = oracle::brute_linear_structures(view);
    CHECK(space.dim() == 4);
    for (const auto& duad : space.basis) CHECK(duad.slice(5, 3).is_zero());
}

TEST_CASE("weak sbox has exactly one nontrivial duad") {
    CipherSpec spec = load("weakspn8.json");
    auto box = spec.sbox;
    auto view = cipher::make_view(4, 4, [box](uint64_t x) { return box[x]; }, "ofix/weakbox", 0);
    auto space = oracle::brute_linear_structures(view);
    REQUIRE(space.dim() == 1);
    CHECK(space.basis[0].to_hex() == "69");  // (a, b) = (0110, 1001)
    // every basis duad certifies on all points
    for (const auto& duad : space.basis) {
        uint64_t a = duad.slice(1, 4).value(), b = duad.slice(5, 4).value();
        for (uint64_t x = 0; x < 16; ++x) CHECK((view.eval(x) ^ view.eval(x ^ a)) == b);
    }
}

TEST_CASE("strong and feistel sboxes have no structures at all") {
    for (const auto& name : {"strongspn8.json", "toyfeistel8.json"}) {
        CipherSpec spec = load(name);
        auto box = spec.sbox;
        auto view = cipher::make_view(4, 4, [box](uint64_t x) { return box[x]; }, std::string("ofix/") + name, 0);
        CHECK(oracle::brute_linear_structures(view).dim() == 0);
        for (int j = 1; j <= 4; ++j) {
            auto comp = cipher::component_view(view, j);
            CHECK(oracle::brute_linear_structures(comp).dim() == 0);
        }
    }
}

TEST_CASE("theta of the identity is zero") {
    auto view = cipher::make_view(4, 4, [](uint64_t x) { return x; }, "ofix/id4", 0);
    auto report = oracle::brute_theta(view);
    CHECK(report.theta == oracle::Rational{0, 4});
    CHECK(report.match_count == 0);
    auto structures = oracle::brute_linear_structures(view);
    CHECK(!gf2::member(structures, BitVec::concat(report.a, report.b)));
}

TEST_CASE("theta of the and function is 1/2 at (01, 0)") {
    auto report = oracle::brute_theta(view_and2());
    CHECK(report.theta == oracle::Rational{1, 1});
    CHECK(report.a.value() == 0b01);
    CHECK(report.b.value() == 0);
    // recount: the attaining pair achieves exactly its reported matches
    auto view = view_and2();
    uint64_t matches = 0;
    for (uint64_t x = 0; x < 4; ++x)
        if ((view.eval(x) ^ view.eval(x ^ report.a.value())) == report.b.value()) ++matches;
    CHECK(matches == report.match_count);
    CHECK(matches == 2);
}

TEST_CASE("theta golden value for the toyfeistel prefix view") {
    CipherSpec spec = load("toyfeistel8.json");
    auto report = oracle::brute_theta(cipher::prefix_view(spec, 1), 2);
    CHECK(report.theta == oracle::Rational{24576, 16});  // 3/8
    CHECK(report.a.to_hex() == "0005");
    CHECK(report.b.to_hex() == "52");
}

TEST_CASE("no pair outside the structure space beats theta") {
    auto view = view_and2();
    auto report = oracle::brute_theta(view);
    auto structures = oracle::brute_linear_structures(view);
    for (uint64_t a = 0; a < 4; ++a) {
        for (uint64_t b = 0; b < 2; ++b) {
            if (gf2::member(structures, BitVec::from_value(3, (a << 1) | b))) continue;
            uint64_t matches = 0;
            for (uint64_t x = 0; x < 4; ++x)
                if ((view.eval(x) ^ view.eval(x ^ a)) == b) ++matches;
            CHECK(matches <= report.match_count);
        }
    }
}

TEST_CASE("one-round feistel truncated differentials") {
    CipherSpec spec = load("toyfeistel8.json");
    auto entries = oracle::brute_prob1_truncated(spec, 1, Direction::forward);
    CHECK(entries.size() == 255);  // the left output half is always determined
    std::map<uint64_t, std::string> by_diff;
    for (const auto& e : entries) by_diff[e.input_diff.value()] = e.output_pattern.str();
    CHECK(by_diff[0x10] == "00000001");  // dx = alpha || 0000 propagates in full
    CHECK(by_diff[0xa0] == "00001010");
    CHECK(by_diff[0x12] == "0010****");  // active right half hides the new half
}

TEST_CASE("two-round feistel truncated differentials") {
    CipherSpec spec = load("toyfeistel8.json");
    auto entries = oracle::brute_prob1_truncated(spec, 2, Direction::forward);
    CHECK(entries.size() == 15);
    for (const auto& e : entries) {
        uint64_t dx = e.input_diff.value();
        CHECK((dx & 0x0F) == 0);  // only alpha || 0000 survives two rounds
        std::string expect;
        for (int b = 3; b >= 0; --b) expect += ((dx >> (4 + b)) & 1) ? '1' : '0';
        CHECK(e.output_pattern.str() == expect + "****");
    }
}

TEST_CASE("backward truncated differentials of the final feistel round") {
    CipherSpec spec = load("toyfeistel8.json");
    auto entries = oracle::brute_prob1_truncated(spec, 1, Direction::backward);
    std::map<uint64_t, std::string> by_diff;
    for (const auto& e : entries) by_diff[e.input_diff.value()] = e.output_pattern.str();
    CHECK(by_diff[0x01] == "00010000");
    CHECK(by_diff[0x10] == "****0001");
}

TEST_CASE("strong spn has no two-round truncated differentials") {
    CipherSpec spec = load("strongspn8.json");
    CHECK(oracle::brute_prob1_truncated(spec, 2, Direction::forward).empty());
    CHECK(oracle::brute_prob1_truncated(spec, 2, Direction::backward).empty());
}

TEST_CASE("fully determined truncated patterns coincide with zero-key duads") {
    CipherSpec spec = load("toyfeistel8.json");
    auto entries = oracle::brute_prob1_truncated(spec, 1, Direction::forward);
    auto zero_key =
        gf2::constrain_prefix_zero(oracle::brute_linear_structures(cipher::prefix_view(spec, 1), 2), spec.m);

    std::set<uint64_t> full_pattern_elements;  // packed (dx << n) | dy
    for (const auto& e : entries) {
        if (e.output_pattern.determined_bits() != spec.n) continue;
        full_pattern_elements.insert((e.input_diff.value() << spec.n) | e.output_pattern.value.value());
    }
    std::set<uint64_t> duad_elements;
    for (const auto& v : gf2::enumerate_space(zero_key, 1ull << 20)) {
        if (v.is_zero()) continue;
        duad_elements.insert((v.slice(spec.m + 1, spec.n).value() << spec.n) |
                             v.slice(spec.m + spec.n + 1, spec.n).value());
    }
    CHECK(full_pattern_elements == duad_elements);
}

TEST_CASE("two-round feistel impossible differentials contain the left-half family") {
    CipherSpec spec = load("toyfeistel8.json");
    auto ids = oracle::brute_impossible_differentials(spec, 2);
    std::set<std::pair<uint64_t, uint64_t>> id_set;
    for (const auto& [din, dout] : ids) id_set.insert({din.value(), dout.value()});

    for (uint64_t alpha = 1; alpha < 16; ++alpha) {
        for (uint64_t beta = 0; beta < 16; ++beta) {
            if (beta == alpha) continue;
            for (uint64_t delta = 0; delta < 16; ++delta) {
                if (beta == 0 && delta == 0) continue;
                CHECK(id_set.count({alpha << 4, (beta << 4) | delta}) == 1);
            }
        }
    }

    // reachable pairs never appear
    Rng rng(31337);
    for (int t = 0; t < 200; ++t) {
        uint64_t k = rng.bits(8), x = rng.bits(8);
        uint64_t din = rng.bits(8);
        if (din == 0) continue;
        uint64_t dout = cipher::encrypt(spec, k, x) ^ cipher::encrypt(spec, k, x ^ din);
        CHECK(id_set.count({din, dout}) == 0);
    }
}

TEST_CASE("strong spn at four rounds has no impossible differentials") {
    CipherSpec spec = load("strongspn8.json");
    CHECK(oracle::brute_impossible_differentials(spec, 2).empty());
}

TEST_CASE("oracle feasibility limits") {
    CipherSpec spec = load("bigspn64.json");
    CHECK_THROWS_AS(oracle::brute_prob1_truncated(spec, 1, Direction::forward), TooLarge);
    CHECK_THROWS_AS(oracle::brute_impossible_differentials(spec), TooLarge);
    CipherSpec toy = load("toyfeistel8.json");
    CHECK_THROWS_AS(oracle::brute_prob1_truncated(toy, 3, Direction::forward), BadParams);
    auto big = cipher::make_view(22, 1, [](uint64_t) { return 0ull; }, "ofix/too-big", 0);
    CHECK_THROWS_AS(oracle::brute_linear_structures(big), TooLarge);
}
