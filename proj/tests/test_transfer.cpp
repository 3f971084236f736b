#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdhom/transfer.hpp"

using namespace fdhom;

namespace {

AlgebraPtr remark14(uint32_t p = 5) {
    QuiverPresentation q;
    q.field = Field(p);
    q.vertices = {"1", "2"};
    q.arrows = {{"a", "1", "1"}, {"b", "2", "1"}};
    q.relations = {{"a", "a"}, {"b", "a"}};
    return build_from_quiver(q);
}

AlgebraPtr kx2(uint32_t p = 5) {
    QuiverPresentation q;
    q.field = Field(p);
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}};
    q.relations = {{"x", "x"}};
    return build_from_quiver(q);
}

Mat sigma2(const AlgebraPtr& a, uint32_t c) {
    Mat s = identity(a->field, 2);
    s.at(1, 1) = c;
    return s;
}

}  // namespace

TEST_CASE("regular bimodule transfers by the identity on chains") {
    auto a = remark14();
    Bimodule reg = regular_bimodule(a);
    DualBasis db = dual_basis(reg);  // {1, id}
    for (int deg = 0; deg <= 2; ++deg)
        CHECK(transfer_chain_matrix(reg, deg, db).is_identity());
}

TEST_CASE("chain-map identity holds for twists and projectives") {
    auto a = kx2();
    for (int deg = 1; deg <= 3; ++deg) {
        CHECK_NOTHROW(transfer_chain(twist_bimodule(a, sigma2(a, 2)), deg));
        CHECK_NOTHROW(transfer_chain(projective_bimodule(a, a, 0, 0), deg));
    }
    auto r = remark14();
    for (int deg = 1; deg <= 2; ++deg)
        CHECK_NOTHROW(transfer_chain(projective_bimodule(r, r, 0, 1), deg));
}

TEST_CASE("degree-0 transfer is the Hattori-Stallings-style trace") {
    // for the projective bimodule Ae_i (x) e_jB the degree-0 transfer factors
    // through scalars: its image lies in the line spanned by e_j's class
    auto a = remark14();
    Bimodule p = projective_bimodule(a, a, 0, 1);
    DualBasis db = dual_basis(p);
    Mat t0 = transfer_chain_matrix(p, 0, db);
    CHECK(t0.rows == a->dim);
    CHECK(rank_of(t0) <= 1);
}

TEST_CASE("transfer of the regular bimodule is the identity on HH") {
    auto a = kx2();
    for (int deg = 0; deg <= 3; ++deg) {
        TransferMap t = transfer_hh(regular_bimodule(a), deg);
        CHECK(t.induced.is_identity());
    }
    auto r = remark14();
    for (int deg = 0; deg <= 3; ++deg) {
        TransferMap t = transfer_hh(regular_bimodule(r), deg);
        CHECK(t.induced.is_identity());
    }
}

TEST_CASE("transfer of projective bimodules vanishes on HH_n, n >= 1") {
    auto a = remark14();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Bimodule p = projective_bimodule(a, a, i, j);
            for (int deg = 1; deg <= 3; ++deg)
                CHECK(transfer_hh(p, deg).induced.is_zero());
        }
}

TEST_CASE("twist transfers compose to the identity on HH") {
    auto a = kx2();
    Bimodule m = twist_bimodule(a, sigma2(a, 2));
    Bimodule n = twist_bimodule(a, sigma2(a, 3));
    for (int deg = 1; deg <= 3; ++deg) {
        TransferMap tm = transfer_hh(m, deg);
        TransferMap tn = transfer_hh(n, deg);
        CHECK(mul(tm.induced, tn.induced).is_identity());
        CHECK(is_invertible(tm.induced));
    }
}

TEST_CASE("induced map does not depend on the dual basis") {
    auto a = kx2();
    Bimodule m = twist_bimodule(a, sigma2(a, 2));
    DualBasis minimal = dual_basis(m);
    // redundant generating set: the full vector-space basis
    std::vector<Mat> gens;
    for (int i = 0; i < m.dim(); ++i) {
        Mat e(a->field, 1, m.dim());
        e.at(0, i) = 1;
        gens.push_back(e);
    }
    DualBasis redundant = dual_basis_with_generators(m, gens);
    REQUIRE(redundant.elements.size() > minimal.elements.size());
    for (int deg = 0; deg <= 3; ++deg) {
        TransferMap t1 = transfer_hh(m, deg, minimal, kDefaultSizeCap);
        TransferMap t2 = transfer_hh(m, deg, redundant, kDefaultSizeCap);
        CHECK(t1.induced == t2.induced);
    }

    auto r = remark14();
    Bimodule reg = regular_bimodule(r);
    std::vector<Mat> rgens;
    for (int i = 0; i < r->num_idempotents(); ++i)
        rgens.push_back(r->idempotents.row(i));
    DualBasis idem_db = dual_basis_with_generators(reg, rgens);
    for (int deg = 0; deg <= 2; ++deg) {
        TransferMap t1 = transfer_hh(reg, deg);
        TransferMap t2 = transfer_hh(reg, deg, idem_db, kDefaultSizeCap);
        CHECK(t1.induced == t2.induced);
        CHECK(t1.induced.is_identity());
    }
}

TEST_CASE("axiom suite passes on the twist pair") {
    auto a = kx2();
    std::vector<Bimodule> suite = {regular_bimodule(a), twist_bimodule(a, sigma2(a, 2)),
                                   twist_bimodule(a, sigma2(a, 3))};
    TransferAxiomReport rep = check_transfer_axioms(suite, 3, 77);
    for (auto& s : rep.failures) MESSAGE(s);
    CHECK(rep.all());
    CHECK(rep.composition_checked >= 9);
    CHECK(rep.additivity_checked >= 6);
}

TEST_CASE("axiom suite passes on seeded right-projective bimodules over remark14") {
    auto a = remark14();
    Rng rng(123);
    std::vector<Bimodule> suite;
    for (int i = 0; i < 3; ++i)
        suite.push_back(seeded_right_projective_bimodule(a, a, rng, 2));
    TransferAxiomReport rep = check_transfer_axioms(suite, 2, 5);
    for (auto& s : rep.failures) MESSAGE(s);
    CHECK(rep.all());
}

TEST_CASE("additivity is exact on direct sums") {
    auto a = kx2();
    Bimodule l = twist_bimodule(a, sigma2(a, 2));
    Bimodule n = projective_bimodule(a, a, 0, 0);
    Bimodule m = direct_sum(l, n);
    for (int deg = 0; deg <= 3; ++deg) {
        Mat lhs = transfer_hh(m, deg).induced;
        Mat rhs = add(transfer_hh(l, deg).induced, transfer_hh(n, deg).induced);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("composition through a different algebra") {
    // M = Ae_0 (x) e_0K over (remark14, K), N = K regular: t composition
    auto a = remark14();
    auto k = field_algebra(Field(5));
    Bimodule m = projective_bimodule(a, k, 0, 0);
    Bimodule n = regular_bimodule(k);
    Bimodule t = tensor_over(m, n);
    for (int deg = 0; deg <= 2; ++deg) {
        Mat lhs = mul(transfer_hh(m, deg).induced, transfer_hh(n, deg).induced);
        CHECK(lhs == transfer_hh(t, deg).induced);
    }
}
