#pragma once

#include <cstdint>
#include <vector>

#include "fdhom/gf.hpp"
#include "fdhom/mat.hpp"

namespace fdhom {

// Row-list sparse matrix, used for bar-complex boundaries where the dense
// representation would blow the size cap. Each row holds sorted
// (column, value) pairs with nonzero values.
struct SparseMat {
    Field f;
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, uint32_t>>> row;

    SparseMat() = default;
    SparseMat(Field field, int r, int c) : f(field), rows(r), cols(c), row(r) {}

    void add_entry(int i, int j, uint32_t v);
    void normalize();  // merge duplicate columns, drop zeros, sort
    int64_t nnz() const;
};

Mat to_dense(const SparseMat& m);
SparseMat to_sparse(const Mat& m);

// Rank by sparse elimination; pivots chosen on the shortest remaining row.
int rank_sparse(SparseMat m);

// m1 * m2 treating rows of m1 as vectors (used for the b∘b = 0 check).
SparseMat mul_sparse(const SparseMat& x, const SparseMat& y);

}  // namespace fdhom
