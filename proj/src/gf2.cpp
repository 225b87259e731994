#include "qidiff/gf2.hpp"

#include <algorithm>

namespace qidiff::gf2 {

int rref(std::vector<BitVec>& rows) {
    if (rows.empty()) return 0;
    int width = rows[0].width();
    std::size_t rank = 0;
    for (int col = 1; col <= width && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(col)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        }
        ++rank;
    }
    rows.resize(rank);
    return static_cast<int>(rank);
}

int rank(const GF2Matrix& mat) {
    std::vector<BitVec> rows = mat.rows;
    return rref(rows);
}

StructureSpace make_space(int ambient_width, std::vector<BitVec> spanning) {
    for (const auto& v : spanning)
        if (v.width() != ambient_width) throw BadParams("spanning vector width mismatch");
    rref(spanning);
    return StructureSpace{ambient_width, std::move(spanning)};
}

StructureSpace solve_nullspace(const GF2Matrix& mat) {
    if (mat.width < 1) throw BadParams("matrix width must be >= 1");
    std::vector<BitVec> rows;
    rows.reserve(mat.rows.size());
    for (const auto& r : mat.rows) {
        if (r.width() != mat.width) throw BadParams("matrix row width mismatch");
        rows.push_back(r);
    }
    int rk = rref(rows);

    std::vector<int> pivot_col(rk);
    std::vector<bool> is_pivot(mat.width + 1, false);
    for (int r = 0; r < rk; ++r) {
        pivot_col[r] = rows[r].leading_pos();
        is_pivot[pivot_col[r]] = true;
    }

    // One basis vector per free column: 1 at the free column, the pivot
    // columns copy that column of the echelon rows.
    std::vector<BitVec> basis;
    basis.reserve(mat.width - rk);
    for (int col = 1; col <= mat.width; ++col) {
        if (is_pivot[col]) continue;
        BitVec v = BitVec::zeros(mat.width);
        v.set(col, true);
        for (int r = 0; r < rk; ++r)
            if (rows[r].get(col)) v.set(pivot_col[r], true);
        basis.push_back(std::move(v));
    }
    return make_space(mat.width, std::move(basis));
}

StructureSpace constrain_prefix_zero(const StructureSpace& space, int m) {
    if (m < 0 || m > space.ambient_width) throw BadParams("prefix length out of range");
    if (m == 0 || space.dim() == 0) return make_space(space.ambient_width, space.basis);

    // Coefficient combinations of the basis whose first m positions cancel:
    // the nullspace of the dim x m prefix matrix, transposed to rows over the
    // coefficient space.
    int dim = space.dim();
    GF2Matrix prefix_rows;
    prefix_rows.width = dim;
    for (int col = 1; col <= m; ++col) {
        BitVec row = BitVec::zeros(dim);
        bool any = false;
        for (int j = 0; j < dim; ++j) {
            if (space.basis[j].get(col)) {
                row.set(j + 1, true);
                any = true;
            }
        }
        if (any) prefix_rows.rows.push_back(std::move(row));
    }
    StructureSpace coeff = solve_nullspace(prefix_rows);

    std::vector<BitVec> result;
    result.reserve(coeff.dim());
    for (const auto& combo : coeff.basis) {
        BitVec v = BitVec::zeros(space.ambient_width);
        for (int j = 0; j < dim; ++j)
            if (combo.get(j + 1)) v ^= space.basis[j];
        result.push_back(std::move(v));
    }
    return make_space(space.ambient_width, std::move(result));
}

namespace {

std::vector<BitVec> gray_walk(const StructureSpace& space, uint64_t count) {
    int dim = space.dim();
    std::vector<BitVec> out;
    out.reserve(count);
    BitVec cur = BitVec::zeros(space.ambient_width);
    out.push_back(cur);
    // Reflected Gray order over the coefficient word, with basis[0] as the
    // most significant coefficient.
    for (uint64_t t = 1; t < count; ++t) {
        cur ^= space.basis[dim - 1 - __builtin_ctzll(t)];
        out.push_back(cur);
    }
    return out;
}

}  // namespace

std::vector<BitVec> enumerate_space(const StructureSpace& space, uint64_t cap) {
    if (cap < 1) throw BadParams("enumeration cap must be >= 1");
    int dim = space.dim();
    if (dim >= 63 || (1ull << dim) > cap) throw SpaceTooLarge(dim, cap);
    return gray_walk(space, 1ull << dim);
}

std::vector<BitVec> enumerate_space_prefix(const StructureSpace& space, uint64_t cap) {
    if (cap < 1) throw BadParams("enumeration cap must be >= 1");
    int dim = space.dim();
    uint64_t total = dim >= 63 ? cap : std::min<uint64_t>(1ull << dim, cap);
    return gray_walk(space, total);
}

bool member(const StructureSpace& space, const BitVec& v) {
    if (v.width() != space.ambient_width) throw BadParams("member width mismatch");
    if (v.is_zero()) return true;
    std::vector<BitVec> rows = space.basis;
    rows.push_back(v);
    return rref(rows) == space.dim();
}

bool subspace_of(const StructureSpace& inner, const StructureSpace& outer) {
    for (const auto& v : inner.basis)
        if (!member(outer, v)) return false;
    return true;
}

}  // namespace qidiff::gf2
