#include <set>

#include "doctest.h"
#include "qidiff/gf2.hpp"

using namespace qidiff;
using gf2::BitVec;
using gf2::GF2Matrix;
using gf2::StructureSpace;

namespace {

BitVec bv(int width, uint64_t value) { return BitVec::from_value(width, value); }

GF2Matrix mat(int width, std::initializer_list<uint64_t> rows) {
    GF2Matrix m;
    m.width = width;
    for (uint64_t r : rows) m.rows.push_back(bv(width, r));
    return m;
}

}  // namespace

TEST_CASE("bitvec basics and hex round trip") {
    BitVec v = BitVec::from_hex(4, "c");
    CHECK(v.get(1));
    CHECK(v.get(2));
    CHECK(!v.get(3));
    CHECK(v.to_hex() == "c");
    CHECK(v.value() == 0b1100);

    BitVec wide = BitVec::from_hex(17, "1a2b3");
    CHECK(wide.to_hex() == "1a2b3");
    CHECK(wide.get(1));  // 17-bit value 0x1a2b3 has its top bit set
    CHECK_THROWS_AS(BitVec::from_hex(17, "fa2b3"), ConfigError);  // overflows 17 bits
    CHECK_THROWS_AS(BitVec::from_hex(8, "abc"), ConfigError);

    CHECK(bv(4, 0b1100).dot(bv(4, 0b1010)) == 1);
    CHECK(bv(4, 0b1100).dot(bv(4, 0b1111)) == 0);
    CHECK_THROWS_AS(bv(4, 1).dot(bv(5, 1)), BadParams);

    CHECK(BitVec::concat(bv(4, 0xA), bv(4, 0x5)).value() == 0xA5);
    CHECK(bv(8, 0xA5).slice(1, 4).value() == 0xA);
    CHECK(bv(8, 0xA5).slice(5, 4).value() == 0x5);
}

TEST_CASE("nullspace with no constraints spans everything") {
    auto space = gf2::solve_nullspace(GF2Matrix{4, {}});
    CHECK(space.dim() == 4);
    std::vector<uint64_t> expected = {0b1000, 0b0100, 0b0010, 0b0001};
    REQUIRE(space.basis.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(space.basis[i].value() == expected[i]);
}

TEST_CASE("nullspace of the identity is trivial") {
    auto space = gf2::solve_nullspace(mat(4, {0b1000, 0b0100, 0b0010, 0b0001}));
    CHECK(space.dim() == 0);
    CHECK(space.basis.empty());
}

TEST_CASE("nullspace fixture {1100, 0110}") {
    auto space = gf2::solve_nullspace(mat(4, {0b1100, 0b0110}));
    REQUIRE(space.dim() == 2);
    CHECK(space.basis[0].value() == 0b1110);
    CHECK(space.basis[1].value() == 0b0001);
    for (uint64_t row : {0b1100ull, 0b0110ull})
        for (const auto& b : space.basis) CHECK(bv(4, row).dot(b) == 0);
}

TEST_CASE("prefix constraint examples") {
    auto full = gf2::solve_nullspace(GF2Matrix{4, {}});
    auto constrained = gf2::constrain_prefix_zero(full, 2);
    REQUIRE(constrained.dim() == 2);
    CHECK(constrained.basis[0].value() == 0b0010);
    CHECK(constrained.basis[1].value() == 0b0001);

    auto tight = gf2::make_space(4, {bv(4, 0b1001), bv(4, 0b0110)});
    CHECK(gf2::constrain_prefix_zero(tight, 2).dim() == 0);

    auto untouched = gf2::make_space(4, {bv(4, 0b0011)});
    auto same = gf2::constrain_prefix_zero(untouched, 2);
    REQUIRE(same.dim() == 1);
    CHECK(same.basis[0].value() == 0b0011);
}

TEST_CASE("enumeration in gray order") {
    StructureSpace point = gf2::make_space(3, {});
    auto only = gf2::enumerate_space(point, 8);
    REQUIRE(only.size() == 1);
    CHECK(only[0].is_zero());

    auto space = gf2::make_space(2, {bv(2, 0b01), bv(2, 0b10)});
    auto elems = gf2::enumerate_space(space, 8);
    REQUIRE(elems.size() == 4);
    CHECK(elems[0].value() == 0b00);
    CHECK(elems[1].value() == 0b01);
    CHECK(elems[2].value() == 0b11);
    CHECK(elems[3].value() == 0b10);

    StructureSpace big;
    big.ambient_width = 30;
    for (int p = 1; p <= 25; ++p) big.basis.push_back(BitVec::unit(30, p));
    CHECK_THROWS_AS(gf2::enumerate_space(big, 1ull << 20), SpaceTooLarge);
}

TEST_CASE("nullspace properties on random matrices") {
    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        int width = 1 + static_cast<int>(rng.bits(6));  // up to 64
        int nrows = static_cast<int>(rng.bits(3));
        GF2Matrix m;
        m.width = width;
        for (int r = 0; r < nrows; ++r) m.rows.push_back(bv(width, rng.bits(width)));

        auto space = gf2::solve_nullspace(m);
        CHECK(space.dim() + gf2::rank(m) == width);
        for (const auto& b : space.basis)
            for (const auto& row : m.rows) CHECK(row.dot(b) == 0);

        int prefix = static_cast<int>(rng.bits(3)) % (width + 1);
        auto constrained = gf2::constrain_prefix_zero(space, prefix);
        CHECK(constrained.dim() <= space.dim());
        for (const auto& b : constrained.basis) {
            CHECK(gf2::member(space, b));
            for (int p = 1; p <= prefix; ++p) CHECK(!b.get(p));
        }

        if (space.dim() <= 10) {
            auto elems = gf2::enumerate_space(space, 1ull << 20);
            std::set<BitVec> distinct(elems.begin(), elems.end());
            CHECK(distinct.size() == (1ull << space.dim()));
            for (const auto& e : elems) CHECK(gf2::member(space, e));
        }
    }
}

TEST_CASE("membership and subspace checks") {
    auto space = gf2::make_space(4, {bv(4, 0b1100), bv(4, 0b0011)});
    CHECK(gf2::member(space, bv(4, 0b1111)));
    CHECK(!gf2::member(space, bv(4, 0b1000)));
    auto sub = gf2::make_space(4, {bv(4, 0b1111)});
    CHECK(gf2::subspace_of(sub, space));
    CHECK(!gf2::subspace_of(space, sub));
}
