#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fdhom/mat.hpp"

namespace fdhom {

// Bound quiver with monomial relations. Relations are arrow-name sequences
// read left to right: ["b","a"] is the path "first b, then a", composable
// when tgt(b) = src(a).
struct QuiverPresentation {
    Field field;
    std::vector<std::string> vertices;
    struct Arrow {
        std::string name;
        std::string src;
        std::string tgt;
    };
    std::vector<Arrow> arrows;
    std::vector<std::vector<std::string>> relations;
};

// Finite-dimensional split basic algebra over GF(p), given by structure
// constants b_i * b_j = sum_k c_ijk b_k together with the unit, a complete
// set of orthogonal primitive idempotents and a basis of the radical.
struct Algebra {
    Field field;
    int dim = 0;
    std::vector<std::string> labels;
    // mult[i*dim + j] = sparse list of (k, c_ijk)
    std::vector<std::vector<std::pair<int, uint32_t>>> mult;
    Mat unit;         // 1 x dim
    Mat idempotents;  // r x dim
    Mat radical;      // dim J x dim

    int num_idempotents() const { return idempotents.rows; }
    int radical_dim() const { return radical.rows; }

    const std::vector<std::pair<int, uint32_t>>& table(int i, int j) const {
        return mult[size_t(i) * dim + j];
    }

    // v -> v * b_j as a matrix acting on coordinate rows.
    Mat right_mult(int j) const;
    // v -> b_i * v.
    Mat left_mult(int i) const;
    Mat right_mult_elem(const Mat& x) const;
    Mat left_mult_elem(const Mat& x) const;
    // product of coordinate rows x, y (1 x dim each)
    Mat mul_elems(const Mat& x, const Mat& y) const;

    int label_index(const std::string& l) const;  // -1 when absent
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

bool same_algebra(const Algebra& a, const Algebra& b);

// Path-basis algebra of an admissible monomial presentation. Throws
// std::invalid_argument naming an unbounded relation-free cycle when the
// path basis is infinite, or describing any malformed relation.
AlgebraPtr build_from_quiver(const QuiverPresentation& q);

// GF(p) itself as a one-dimensional algebra.
AlgebraPtr field_algebra(Field f);

AlgebraPtr opposite(const AlgebraPtr& a);

// a^op (x) b; envelope(a, a) is the enveloping algebra of a. Basis order is
// (i, j) -> i*dim(b) + j.
AlgebraPtr envelope(const AlgebraPtr& a, const AlgebraPtr& b);

// Upper-triangular 2x2 matrices over a. Basis blocks: top-left copy,
// top-right copy, bottom-right copy, in that order.
AlgebraPtr triangular2(const AlgebraPtr& a);

// Validated construction from raw table data (throws on inconsistent input
// shape; semantic problems are reported by validate()).
AlgebraPtr make_table_algebra(Field f, int dim, std::vector<std::string> labels,
                              std::vector<std::vector<std::pair<int, uint32_t>>> mult,
                              Mat unit, Mat idempotents, Mat radical);

struct AlgebraCertificate {
    bool ok = true;
    std::string failure;  // first violated identity, with witnesses
};

// Checks associativity on basis triples, the unit law, idempotent
// orthogonality and completeness, the radical being a nilpotent two-sided
// ideal, and the split-basic count dim(A/J) = r.
AlgebraCertificate validate(const Algebra& a);

}  // namespace fdhom
