#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdhom/gf.hpp"
#include "fdhom/rng.hpp"

namespace fdhom {

// Dense row-major matrix over GF(p). The whole engine uses the row-vector
// convention: vectors are rows and maps act on the right, v -> v*m.
struct Mat {
    Field f;
    int rows = 0;
    int cols = 0;
    std::vector<uint32_t> a;

    Mat() = default;
    Mat(Field field, int r, int c) : f(field), rows(r), cols(c), a(size_t(r) * c, 0) {}

    uint32_t& at(int i, int j) { return a[size_t(i) * cols + j]; }
    uint32_t at(int i, int j) const { return a[size_t(i) * cols + j]; }

    bool operator==(const Mat&) const = default;

    bool is_zero() const;
    bool is_identity() const;

    Mat row(int i) const;                       // 1 x cols
    Mat rows_slice(int i0, int n) const;        // n x cols
    void set_row(int i, const Mat& r);
};

Mat identity(Field f, int n);
Mat zeros(Field f, int r, int c);

Mat add(const Mat& x, const Mat& y);
Mat sub(const Mat& x, const Mat& y);
Mat neg(const Mat& x);
Mat scale(const Mat& x, uint32_t c);
Mat transpose(const Mat& x);
Mat hstack(const Mat& x, const Mat& y);
Mat vstack(const Mat& x, const Mat& y);
Mat vstack(const std::vector<Mat>& blocks, Field f, int cols);

// x*y. Dispatches to the OpenMP kernel for large products; the serial kernel
// is the reference implementation and both are exposed for tests/bench.
Mat mul(const Mat& x, const Mat& y);
Mat mul_serial(const Mat& x, const Mat& y);
Mat mul_omp(const Mat& x, const Mat& y);

// Kronecker product, (x (x) y)[(i*ry+k()), (j*cy+l)] = x(i,j)*y(k,l).
Mat kron(const Mat& x, const Mat& y);
Mat kron_serial(const Mat& x, const Mat& y);
Mat kron_omp(const Mat& x, const Mat& y);

struct RrefResult {
    Mat r;
    std::vector<int> pivots;
    int rank = 0;
};

// Reduced row-echelon form (Gauss-Jordan).
RrefResult rref(const Mat& m);
RrefResult rref_serial(const Mat& m);
RrefResult rref_omp(const Mat& m);

struct RrefTransform {
    Mat r;                    // rref of the input
    Mat e;                    // invertible, e * input = r
    std::vector<int> pivots;
    int rank = 0;
};
RrefTransform rref_with_transform(const Mat& m);

int rank_of(const Mat& m);

// Basis of { v : v*m = 0 }, one kernel vector per row; rows(m)-rank rows.
Mat kernel_basis(const Mat& m);

// Some x with x*a = b, or nullopt when the system is inconsistent.
std::optional<Mat> solve(const Mat& a, const Mat& b);

// Solve x*a = b subject to x lying in the row space of `space`
// (rows of `space` are flattened candidate solutions; a acts on each row
// of x independently). Used for constrained lifts.
std::optional<Mat> solve_in_span(const std::vector<Mat>& span, const Mat& target);

Mat random_mat(Field f, int r, int c, Rng& rng);
Mat random_invertible(Field f, int n, Rng& rng);

bool is_invertible(const Mat& m);
std::optional<Mat> inverse(const Mat& m);

// Row space utilities. `basis` returns the rref rows; `contains` tests
// membership of every row of v.
Mat row_space_basis(const Mat& m);
bool row_space_contains(const RrefResult& basis, const Mat& v);
Mat reduce_rows_mod(const RrefResult& basis, const Mat& v);

Mat flatten(const Mat& m);                       // 1 x (rows*cols)
Mat unflatten(const Mat& v, int r, int c);

// Quotient of K^n by the row space of a relation matrix. Classes are
// represented by coordinates at the non-pivot columns of the rref.
struct QuotientSpace {
    Field f;
    int ambient = 0;
    RrefResult rel;
    std::vector<int> free_cols;

    int dim() const { return static_cast<int>(free_cols.size()); }
    Mat project(const Mat& v) const;   // rows in K^ambient -> rows in K^dim
    Mat include(const Mat& c) const;   // canonical section, rows K^dim -> K^ambient
};

QuotientSpace make_quotient(Field f, int ambient, const Mat& relations);

std::string to_string(const Mat& m);

}  // namespace fdhom
