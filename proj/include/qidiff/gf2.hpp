#pragma once

#include <vector>

#include "qidiff/bitvec.hpp"

namespace qidiff::gf2 {

struct GF2Matrix {
    int width = 1;
    std::vector<BitVec> rows;
};

// Basis of a linear subspace of F_2^ambient_width. The basis is kept in
// reduced row-echelon form with pivot positions increasing, so equal spaces
// serialize identically.
struct StructureSpace {
    int ambient_width = 1;
    std::vector<BitVec> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

// In-place reduced row echelon form; returns the rank. Zero rows are dropped
// and the surviving rows are ordered by pivot position.
int rref(std::vector<BitVec>& rows);

int rank(const GF2Matrix& mat);

// Canonical space from an arbitrary spanning set.
StructureSpace make_space(int ambient_width, std::vector<BitVec> spanning);

// {v | r . v = 0 for every row r}. An empty row set is legal and yields the
// full space.
StructureSpace solve_nullspace(const GF2Matrix& mat);

// Subspace of vectors whose positions 1..m are all zero.
StructureSpace constrain_prefix_zero(const StructureSpace& space, int m);

// All 2^dim elements in Gray-code order (successive elements differ by one
// basis vector). Throws SpaceTooLarge when 2^dim > cap.
std::vector<BitVec> enumerate_space(const StructureSpace& space, uint64_t cap);

// The first min(2^dim, cap) elements of the same Gray-code sequence; never
// throws. Used for best-effort scans of oversized spaces.
std::vector<BitVec> enumerate_space_prefix(const StructureSpace& space, uint64_t cap);

bool member(const StructureSpace& space, const BitVec& v);

// subspace test: every basis vector of `inner` lies in `outer`.
bool subspace_of(const StructureSpace& inner, const StructureSpace& outer);

}  // namespace qidiff::gf2
