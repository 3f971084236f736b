#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdhom/mat.hpp"
#include "fdhom/sparse.hpp"

using namespace fdhom;

namespace {

Mat from_rows(Field f, std::vector<std::vector<uint32_t>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("field arithmetic") {
    Field f(5);
    CHECK(f.add(3, 4) == 2);
    CHECK(f.sub(1, 3) == 3);
    CHECK(f.mul(3, 4) == 2);
    CHECK(f.inv(2) == 3);
    CHECK(f.inv(4) == 4);
    CHECK(f.reduce(-7) == 3);
    CHECK_THROWS(Field(6));
    CHECK_THROWS(Field(1));
    Field big(2147483647);  // 2^31 - 1 is prime
    CHECK(big.mul(big.p - 1, big.p - 1) == 1);
}

TEST_CASE("rref identity and zero") {
    Field f(5);
    Mat i2 = identity(f, 2);
    auto r = rref(i2);
    CHECK(r.r == i2);
    CHECK(r.rank == 2);
    auto z = rref(zeros(f, 3, 3));
    CHECK(z.rank == 0);
    CHECK(z.r.is_zero());
}

TEST_CASE("rref rank-1 example over GF(5)") {
    Field f(5);
    Mat m = from_rows(f, {{1, 2}, {2, 4}});
    auto r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.r == from_rows(f, {{1, 2}, {0, 0}}));
    CHECK(r.pivots == std::vector<int>{0});
}

TEST_CASE("kernel basis") {
    Field f(5);
    CHECK(kernel_basis(identity(f, 4)).rows == 0);
    Mat z = zeros(f, 3, 2);
    Mat k = kernel_basis(z);
    CHECK(k.rows == 3);
    CHECK(rank_of(k) == 3);

    Mat m = from_rows(f, {{1, 2}, {2, 4}});
    Mat km = kernel_basis(m);
    REQUIRE(km.rows == 1);
    CHECK(mul(km, m).is_zero());
    // kernel row is proportional to (2, 4) against row convention v*m = 0:
    // v = (a, b) with a*1 + b*2 = 0 coordinatewise... verified by product above;
    // also check independence from scaling
    CHECK(km.at(0, 0) != 0);
}

TEST_CASE("solve") {
    Field f(7);
    Mat b = from_rows(f, {{1, 2}, {3, 4}, {5, 6}});
    auto x = solve(identity(f, 2), b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    CHECK_FALSE(solve(zeros(f, 2, 3), from_rows(f, {{0, 0, 1}})).has_value());
    CHECK(solve(zeros(f, 2, 3), zeros(f, 1, 3)).has_value());

    // round-trip with a seeded invertible matrix
    Rng rng(42);
    Mat a = random_invertible(f, 5, rng);
    Mat x0 = random_mat(f, 3, 5, rng);
    Mat rhs = mul(x0, a);
    auto sol = solve(a, rhs);
    REQUIRE(sol.has_value());
    CHECK(mul(*sol, a) == rhs);
}

TEST_CASE("kron") {
    Field f(5);
    CHECK(kron(identity(f, 2), identity(f, 3)) == identity(f, 6));
    CHECK(kron(from_rows(f, {{1, 2}, {3, 4}}), zeros(f, 2, 2)).is_zero());

    Mat a = from_rows(f, {{1, 2}, {3, 4}});
    Mat b = from_rows(f, {{0, 1}, {2, 3}});
    Mat k = kron(a, b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t)
                    CHECK(k.at(i * 2 + s, j * 2 + t) == f.mul(a.at(i, j), b.at(s, t)));
}

TEST_CASE("rank properties on seeded matrices") {
    Field f(5);
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Mat m = random_mat(f, 4 + int(rng.below(4)), 4 + int(rng.below(4)), rng);
        CHECK(rank_of(m) == rank_of(transpose(m)));
        Mat k = kernel_basis(m);
        CHECK(k.rows == m.rows - rank_of(m));
        if (k.rows) {
            CHECK(mul(k, m).is_zero());
            CHECK(rank_of(k) == k.rows);
        }
    }
}

TEST_CASE("rank of kron is product of ranks") {
    Field f(3);
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Mat a = random_mat(f, 3, 4, rng);
        Mat b = random_mat(f, 4, 3, rng);
        CHECK(rank_of(kron(a, b)) == rank_of(a) * rank_of(b));
    }
}

TEST_CASE("serial and omp kernels agree") {
    Field f(2147483647);
    Rng rng(3);
    Mat a = random_mat(f, 37, 61, rng);
    Mat b = random_mat(f, 61, 29, rng);
    CHECK(mul_serial(a, b) == mul_omp(a, b));
    CHECK(kron_serial(a.rows_slice(0, 5), b.rows_slice(0, 5)) ==
          kron_omp(a.rows_slice(0, 5), b.rows_slice(0, 5)));
    auto rs = rref_serial(a);
    auto rp = rref_omp(a);
    CHECK(rs.r == rp.r);
    CHECK(rs.pivots == rp.pivots);
}

TEST_CASE("rref_with_transform invariant e*m = r") {
    Field f(5);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        Mat m = random_mat(f, 6, 4, rng);
        auto t = rref_with_transform(m);
        CHECK(mul(t.e, m) == t.r);
        CHECK(is_invertible(t.e));
    }
}

TEST_CASE("quotient space project/include") {
    Field f(5);
    Mat rel = from_rows(f, {{1, 1, 0}, {0, 0, 0}});
    auto q = make_quotient(f, 3, rel);
    CHECK(q.dim() == 2);
    Mat v = from_rows(f, {{2, 3, 4}});
    Mat c = q.project(v);
    // project(include(c)) == c
    CHECK(q.project(q.include(c)) == c);
    // relation rows project to zero
    CHECK(q.project(rel.row(0)).is_zero());
}

TEST_CASE("sparse rank agrees with dense") {
    Field f(5);
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Mat m = random_mat(f, 12, 9, rng);
        // sparsify
        for (auto& v : m.a)
            if (rng.below(3)) v = 0;
        CHECK(rank_sparse(to_sparse(m)) == rank_of(m));
    }
    SparseMat empty(f, 4, 4);
    CHECK(rank_sparse(empty) == 0);
}

TEST_CASE("inverse") {
    Field f(5);
    Rng rng(17);
    Mat m = random_invertible(f, 6, rng);
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(mul(m, *inv) == identity(f, 6));
    CHECK(mul(*inv, m) == identity(f, 6));
}
