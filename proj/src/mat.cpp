#include "fdhom/mat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fdhom {

namespace {

void check_same_field(const Mat& x, const Mat& y, const char* op) {
    if (x.f.p != y.f.p)
        throw std::invalid_argument(std::string(op) + ": field mismatch");
}

// Work threshold below which the serial kernels are used even when OpenMP
// is available.
constexpr int64_t kParallelWork = 1 << 17;

}  // namespace

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](uint32_t v) { return v == 0; });
}

bool Mat::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

Mat Mat::row(int i) const {
    Mat r(f, 1, cols);
    std::copy_n(a.begin() + size_t(i) * cols, cols, r.a.begin());
    return r;
}

Mat Mat::rows_slice(int i0, int n) const {
    Mat r(f, n, cols);
    std::copy_n(a.begin() + size_t(i0) * cols, size_t(n) * cols, r.a.begin());
    return r;
}

void Mat::set_row(int i, const Mat& r) {
    if (r.cols != cols || r.rows != 1) throw std::invalid_argument("set_row: shape");
    std::copy_n(r.a.begin(), cols, a.begin() + size_t(i) * cols);
}

Mat identity(Field f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat zeros(Field f, int r, int c) { return Mat(f, r, c); }

Mat add(const Mat& x, const Mat& y) {
    check_same_field(x, y, "add");
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("add: shape");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.f.add(x.a[i], y.a[i]);
    return r;
}

Mat sub(const Mat& x, const Mat& y) {
    check_same_field(x, y, "sub");
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("sub: shape");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.f.sub(x.a[i], y.a[i]);
    return r;
}

Mat neg(const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v = x.f.neg(v);
    return r;
}

Mat scale(const Mat& x, uint32_t c) {
    Mat r = x;
    for (auto& v : r.a) v = x.f.mul(v, c);
    return r;
}

Mat transpose(const Mat& x) {
    Mat r(x.f, x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

Mat hstack(const Mat& x, const Mat& y) {
    check_same_field(x, y, "hstack");
    if (x.rows != y.rows) throw std::invalid_argument("hstack: row mismatch");
    Mat r(x.f, x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        std::copy_n(x.a.begin() + size_t(i) * x.cols, x.cols, r.a.begin() + size_t(i) * r.cols);
        std::copy_n(y.a.begin() + size_t(i) * y.cols, y.cols,
                    r.a.begin() + size_t(i) * r.cols + x.cols);
    }
    return r;
}

Mat vstack(const Mat& x, const Mat& y) {
    check_same_field(x, y, "vstack");
    if (x.cols != y.cols) throw std::invalid_argument("vstack: col mismatch");
    Mat r(x.f, x.rows + y.rows, x.cols);
    std::copy(x.a.begin(), x.a.end(), r.a.begin());
    std::copy(y.a.begin(), y.a.end(), r.a.begin() + x.a.size());
    return r;
}

Mat vstack(const std::vector<Mat>& blocks, Field f, int cols) {
    int total = 0;
    for (const auto& b : blocks) {
        if (b.cols != cols) throw std::invalid_argument("vstack: col mismatch");
        total += b.rows;
    }
    Mat r(f, total, cols);
    size_t off = 0;
    for (const auto& b : blocks) {
        std::copy(b.a.begin(), b.a.end(), r.a.begin() + off);
        off += b.a.size();
    }
    return r;
}

namespace {

// Row-major triple loop, accumulating 64-bit sums with deferred reduction.
// Shared by the serial and OpenMP kernels; `i` range is the parallel axis.
inline void mul_rows(const Mat& x, const Mat& y, Mat& out, int i0, int i1) {
    const uint64_t p = x.f.p;
    // How many products fit in a u64 accumulator before reduction.
    const uint64_t max_term = (p - 1) * (p - 1);
    const int chunk = max_term ? static_cast<int>(UINT64_MAX / max_term) : x.cols;
    for (int i = i0; i < i1; ++i) {
        for (int j = 0; j < y.cols; ++j) {
            uint64_t acc = 0;
            int k = 0;
            while (k < x.cols) {
                int kend = std::min(x.cols, k + std::max(chunk, 1));
                for (; k < kend; ++k)
                    acc += uint64_t(x.at(i, k)) * y.at(k, j);
                acc %= p;
            }
            out.at(i, j) = static_cast<uint32_t>(acc);
        }
    }
}

}  // namespace

Mat mul_serial(const Mat& x, const Mat& y) {
    check_same_field(x, y, "mul");
    if (x.cols != y.rows) throw std::invalid_argument("mul: inner dimension mismatch");
    Mat r(x.f, x.rows, y.cols);
    mul_rows(x, y, r, 0, x.rows);
    return r;
}

Mat mul_omp(const Mat& x, const Mat& y) {
    check_same_field(x, y, "mul");
    if (x.cols != y.rows) throw std::invalid_argument("mul: inner dimension mismatch");
    Mat r(x.f, x.rows, y.cols);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < x.rows; ++i) mul_rows(x, y, r, i, i + 1);
    return r;
}

Mat mul(const Mat& x, const Mat& y) {
    int64_t work = int64_t(x.rows) * x.cols * y.cols;
#ifdef _OPENMP
    if (work >= kParallelWork) return mul_omp(x, y);
#endif
    (void)work;
    return mul_serial(x, y);
}

Mat kron_serial(const Mat& x, const Mat& y) {
    check_same_field(x, y, "kron");
    Mat r(x.f, x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < y.rows; ++k) {
            uint32_t* dst = &r.a[size_t(i * y.rows + k) * r.cols];
            for (int j = 0; j < x.cols; ++j) {
                uint32_t xv = x.at(i, j);
                if (xv == 0) continue;
                for (int l = 0; l < y.cols; ++l)
                    dst[j * y.cols + l] = x.f.mul(xv, y.at(k, l));
            }
        }
    return r;
}

Mat kron_omp(const Mat& x, const Mat& y) {
    check_same_field(x, y, "kron");
    Mat r(x.f, x.rows * y.rows, x.cols * y.cols);
    const int out_rows = r.rows;
#pragma omp parallel for schedule(static)
    for (int ik = 0; ik < out_rows; ++ik) {
        int i = ik / y.rows, k = ik % y.rows;
        uint32_t* dst = &r.a[size_t(ik) * r.cols];
        for (int j = 0; j < x.cols; ++j) {
            uint32_t xv = x.at(i, j);
            if (xv == 0) continue;
            for (int l = 0; l < y.cols; ++l)
                dst[j * y.cols + l] = x.f.mul(xv, y.at(k, l));
        }
    }
    return r;
}

Mat kron(const Mat& x, const Mat& y) {
    int64_t work = int64_t(x.rows) * y.rows * x.cols * y.cols;
#ifdef _OPENMP
    if (work >= kParallelWork) return kron_omp(x, y);
#endif
    (void)work;
    return kron_serial(x, y);
}

namespace {

// In-place Gauss-Jordan. Eliminates with row axpys; the OpenMP variant
// spreads the elimination loop across threads (updates touch disjoint rows,
// so the result is bit-identical to the serial kernel).
RrefResult rref_impl(Mat m, bool parallel) {
    RrefResult res;
    const Field f = m.f;
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        uint32_t d = f.inv(m.at(rank, col));
        if (d != 1)
            for (int j = col; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), d);

        const uint32_t* prow = &m.a[size_t(rank) * m.cols];
        auto eliminate = [&](int i) {
            if (i == rank) return;
            uint32_t c = m.at(i, col);
            if (c == 0) return;
            uint32_t* irow = &m.a[size_t(i) * m.cols];
            for (int j = col; j < m.cols; ++j)
                irow[j] = f.sub(irow[j], f.mul(c, prow[j]));
        };
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < m.rows; ++i) eliminate(i);
        } else {
            for (int i = 0; i < m.rows; ++i) eliminate(i);
        }
        res.pivots.push_back(col);
        ++rank;
    }
    res.rank = rank;
    res.r = std::move(m);
    return res;
}

}  // namespace

RrefResult rref_serial(const Mat& m) { return rref_impl(m, false); }

RrefResult rref_omp(const Mat& m) { return rref_impl(m, true); }

RrefResult rref(const Mat& m) {
    int64_t work = int64_t(m.rows) * m.cols * std::min(m.rows, m.cols);
#ifdef _OPENMP
    if (work >= kParallelWork) return rref_omp(m);
#endif
    (void)work;
    return rref_serial(m);
}

RrefTransform rref_with_transform(const Mat& m) {
    // Reduce [m | I]; the right block records the row operations.
    Mat aug = hstack(m, identity(m.f, m.rows));
    // Pivots must stay inside the m block, so run elimination manually.
    RrefTransform res;
    const Field f = m.f;
    int rank = 0;
    for (int col = 0; col < m.cols && rank < aug.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < aug.rows; ++i)
            if (aug.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < aug.cols; ++j) std::swap(aug.at(piv, j), aug.at(rank, j));
        uint32_t d = f.inv(aug.at(rank, col));
        if (d != 1)
            for (int j = 0; j < aug.cols; ++j) aug.at(rank, j) = f.mul(aug.at(rank, j), d);
        for (int i = 0; i < aug.rows; ++i) {
            if (i == rank) continue;
            uint32_t c = aug.at(i, col);
            if (c == 0) continue;
            for (int j = 0; j < aug.cols; ++j)
                aug.at(i, j) = f.sub(aug.at(i, j), f.mul(c, aug.at(rank, j)));
        }
        res.pivots.push_back(col);
        ++rank;
    }
    res.rank = rank;
    res.r = Mat(m.f, m.rows, m.cols);
    res.e = Mat(m.f, m.rows, m.rows);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) res.r.at(i, j) = aug.at(i, j);
        for (int j = 0; j < m.rows; ++j) res.e.at(i, j) = aug.at(i, m.cols + j);
    }
    return res;
}

int rank_of(const Mat& m) { return rref(m).rank; }

Mat kernel_basis(const Mat& m) {
    RrefTransform t = rref_with_transform(m);
    // Rows of e beyond the rank multiply m to zero rows of r.
    return t.e.rows_slice(t.rank, m.rows - t.rank);
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.f.p != b.f.p) throw std::invalid_argument("solve: field mismatch");
    if (a.cols != b.cols) throw std::invalid_argument("solve: column mismatch");
    RrefTransform t = rref_with_transform(a);
    Mat x(a.f, b.rows, a.rows);
    for (int i = 0; i < b.rows; ++i) {
        // Reduce b_i against the echelon rows, collecting coefficients.
        Mat v = b.row(i);
        Mat coeff(a.f, 1, a.rows);
        for (int k = 0; k < t.rank; ++k) {
            uint32_t c = v.at(0, t.pivots[k]);
            if (c == 0) continue;
            coeff.at(0, k) = c;
            for (int j = 0; j < v.cols; ++j)
                v.at(0, j) = a.f.sub(v.at(0, j), a.f.mul(c, t.r.at(k, j)));
        }
        if (!v.is_zero()) return std::nullopt;
        Mat xi = mul(coeff, t.e);
        x.set_row(i, xi);
    }
    return x;
}

std::optional<Mat> solve_in_span(const std::vector<Mat>& span, const Mat& target) {
    if (span.empty()) {
        if (target.is_zero()) return zeros(target.f, 1, 0);
        return std::nullopt;
    }
    Mat stacked(target.f, static_cast<int>(span.size()), span[0].rows * span[0].cols);
    for (size_t i = 0; i < span.size(); ++i) stacked.set_row(static_cast<int>(i), flatten(span[i]));
    return solve(stacked, flatten(target));
}

Mat random_mat(Field f, int r, int c, Rng& rng) {
    Mat m(f, r, c);
    for (auto& v : m.a) v = rng.residue(f.p);
    return m;
}

Mat random_invertible(Field f, int n, Rng& rng) {
    for (;;) {
        Mat m = random_mat(f, n, n, rng);
        if (is_invertible(m)) return m;
    }
}

bool is_invertible(const Mat& m) {
    return m.rows == m.cols && rank_of(m) == m.rows;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    RrefTransform t = rref_with_transform(m);
    if (t.rank != m.rows) return std::nullopt;
    return t.e;
}

Mat row_space_basis(const Mat& m) {
    RrefResult r = rref(m);
    return r.r.rows_slice(0, r.rank);
}

bool row_space_contains(const RrefResult& basis, const Mat& v) {
    return reduce_rows_mod(basis, v).is_zero();
}

Mat reduce_rows_mod(const RrefResult& basis, const Mat& v) {
    Mat out = v;
    for (int i = 0; i < out.rows; ++i) {
        for (int k = 0; k < basis.rank; ++k) {
            uint32_t c = out.at(i, basis.pivots[k]);
            if (c == 0) continue;
            for (int j = 0; j < out.cols; ++j)
                out.at(i, j) = out.f.sub(out.at(i, j), out.f.mul(c, basis.r.at(k, j)));
        }
    }
    return out;
}

Mat flatten(const Mat& m) {
    Mat v(m.f, 1, m.rows * m.cols);
    v.a = m.a;
    return v;
}

Mat unflatten(const Mat& v, int r, int c) {
    if (v.rows * v.cols != r * c) throw std::invalid_argument("unflatten: size");
    Mat m(v.f, r, c);
    m.a = v.a;
    return m;
}

Mat QuotientSpace::project(const Mat& v) const {
    Mat reduced = reduce_rows_mod(rel, v);
    Mat out(f, v.rows, dim());
    for (int i = 0; i < v.rows; ++i)
        for (int j = 0; j < dim(); ++j) out.at(i, j) = reduced.at(i, free_cols[j]);
    return out;
}

Mat QuotientSpace::include(const Mat& c) const {
    Mat out(f, c.rows, ambient);
    for (int i = 0; i < c.rows; ++i)
        for (int j = 0; j < dim(); ++j) out.at(i, free_cols[j]) = c.at(i, j);
    return out;
}

QuotientSpace make_quotient(Field f, int ambient, const Mat& relations) {
    QuotientSpace q;
    q.f = f;
    q.ambient = ambient;
    q.rel = rref(relations);
    std::vector<bool> is_pivot(ambient, false);
    for (int c : q.rel.pivots) is_pivot[c] = true;
    for (int j = 0; j < ambient; ++j)
        if (!is_pivot[j]) q.free_cols.push_back(j);
    return q;
}

std::string to_string(const Mat& m) {
    std::ostringstream os;
    os << m.rows << "x" << m.cols << " [";
    for (int i = 0; i < m.rows; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < m.cols; ++j) os << (j ? " " : "") << m.at(i, j);
    }
    os << "]";
    return os.str();
}

}  // namespace fdhom
