#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdhom/module.hpp"

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

AlgebraPtr local3(uint32_t p = 5) {
    QuiverPresentation q;
    q.field = Field(p);
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}, {"y", "1", "1"}};
    q.relations = {{"x", "x"}, {"y", "y"}, {"x", "y"}, {"y", "x"}};
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

}  // namespace

TEST_CASE("regular module validates; action matches right multiplication") {
    for (auto a : {remark14(), local3()}) {
        Module reg = regular_module(a);
        CHECK(validate_module(reg).ok);
        CHECK(reg.act(a->unit).is_identity());
    }
}

TEST_CASE("simples are one-dimensional with the right characters") {
    auto a = remark14();
    auto ss = simples(a);
    REQUIRE(ss.size() == 2);
    for (auto& s : ss) {
        CHECK(s.dim == 1);
        CHECK(validate_module(s).ok);
    }
    // e_1 acts as 1 on S_1, 0 on S_2; radical acts as zero
    CHECK(ss[0].action[a->label_index("e_1")].at(0, 0) == 1);
    CHECK(ss[1].action[a->label_index("e_1")].at(0, 0) == 0);
    CHECK(ss[0].action[a->label_index("a")].at(0, 0) == 0);
    CHECK(ss[1].action[a->label_index("b")].at(0, 0) == 0);
}

TEST_CASE("projectives of remark14 have dim 2 each") {
    auto a = remark14();
    auto ps = projectives(a);
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].dim == 2);
    CHECK(ps[1].dim == 2);
    for (auto& p : ps) CHECK(validate_module(p).ok);
}

TEST_CASE("local3 has a single projective: the regular module") {
    auto a = local3();
    auto ps = projectives(a);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].dim == 3);
}

TEST_CASE("hom_space basics") {
    auto a = remark14();
    auto ss = simples(a);
    CHECK(hom_space(ss[0], ss[1]).empty());
    CHECK(hom_space(ss[1], ss[0]).empty());

    Module reg = regular_module(a);
    auto endo = hom_space(reg, reg);
    bool has_identity = false;
    for (auto& h : endo)
        if (h.is_identity()) has_identity = true;
    // identity lies in the span; check directly by solving
    Mat id = identity(a->field, reg.dim);
    CHECK(solve_in_span(endo, id).has_value());
    (void)has_identity;
}

TEST_CASE("hom from simple into local3 regular module has dim 2") {
    auto a = local3();
    Module s = simple_at(a, 0);
    Module reg = regular_module(a);
    CHECK(hom_space(s, reg).size() == 2);  // maps into the 2-dim socle
}

TEST_CASE("projectivity pairing: dim Hom(e_iA, m) = dim(m e_i)") {
    auto a = remark14();
    auto ps = projectives(a);
    Rng rng(5);
    // seeded random modules: direct sums of simples and projectives
    auto ss = simples(a);
    for (int t = 0; t < 6; ++t) {
        Module m = zero_module(a);
        for (int c = 0; c < 3; ++c) {
            switch (rng.below(4)) {
                case 0: m = direct_sum(m, ss[0]); break;
                case 1: m = direct_sum(m, ss[1]); break;
                case 2: m = direct_sum(m, ps[0]); break;
                default: m = direct_sum(m, ps[1]); break;
            }
        }
        for (int i = 0; i < 2; ++i) {
            Mat rho = m.act(a->idempotents.row(i));
            CHECK(static_cast<int>(hom_space(ps[i], m).size()) == rank_of(rho));
        }
    }
}

TEST_CASE("projective cover of a projective is an isomorphism") {
    auto a = remark14();
    for (auto& p : projectives(a)) {
        Cover c = projective_cover(p);
        CHECK(c.p.dim == p.dim);
        CHECK(rank_of(c.pi) == p.dim);
        CHECK(is_projective(p));
    }
}

TEST_CASE("projective cover of local3 simple is the regular module") {
    auto a = local3();
    Module s = simple_at(a, 0);
    Cover c = projective_cover(s);
    CHECK(c.p.dim == 3);
    CHECK(rank_of(c.pi) == 1);  // surjective onto the 1-dim simple
}

TEST_CASE("zero module has zero cover") {
    auto a = remark14();
    Cover c = projective_cover(zero_module(a));
    CHECK(c.p.dim == 0);
}

TEST_CASE("cover is surjective with kernel inside P*J") {
    auto a = local3();
    auto ss = simples(a);
    Module m = direct_sum(ss[0], regular_module(a));
    Cover c = projective_cover(m);
    CHECK(rank_of(c.pi) == m.dim);  // surjective
    // minimality: every kernel row lies in P*J
    Mat k = kernel_basis(c.pi);
    Mat pj = radical_rows(c.p);
    RrefResult span = rref(pj);
    for (int i = 0; i < k.rows; ++i) CHECK(row_space_contains(span, k.row(i)));
}

TEST_CASE("syzygy of local3 simple is 2-dimensional, S + S") {
    auto a = local3();
    Module s = simple_at(a, 0);
    Module o = syzygy(s);
    CHECK(o.dim == 2);
    auto rep = decompose(o, 32, 99);
    REQUIRE(rep.groups.size() == 1);
    CHECK(rep.groups[0].mult == 2);
    CHECK(is_isomorphic(rep.groups[0].rep, s, 32, 1).kind == IsoVerdict::Yes);
}

TEST_CASE("remark14 syzygy chain") {
    auto a = remark14();
    auto ss = simples(a);
    Module o2s2 = syzygy(syzygy(ss[1]));
    CHECK(is_isomorphic(o2s2, ss[0], 32, 7).kind == IsoVerdict::Yes);
    Module o2s1 = syzygy(syzygy(ss[0]));
    CHECK(is_isomorphic(o2s1, ss[0], 32, 7).kind == IsoVerdict::Yes);
    // syzygy of a projective vanishes
    for (auto& p : projectives(a)) CHECK(syzygy(p).dim == 0);
}

TEST_CASE("syzygy is additive over direct sums") {
    auto a = remark14();
    auto ss = simples(a);
    Module m = ss[0], n = ss[1];
    Module lhs = syzygy(direct_sum(m, n));
    Module rhs = direct_sum(syzygy(m), syzygy(n));
    CHECK(is_isomorphic(lhs, rhs, 32, 3).kind == IsoVerdict::Yes);
}

TEST_CASE("decompose of an indecomposable projective is a single summand") {
    auto a = remark14();
    auto rep = decompose(projectives(a)[0], 32, 11);
    CHECK(rep.groups.size() == 1);
    CHECK(rep.groups[0].mult == 1);
}

TEST_CASE("decompose separates distinct simples with exhaustive certificate") {
    auto a = remark14();
    auto ss = simples(a);
    auto rep = decompose(direct_sum(ss[0], ss[1]), 32, 13);
    CHECK(rep.groups.size() == 2);
    CHECK(rep.exhaustive);
}

TEST_CASE("decompose round-trip: stacked inclusions are invertible") {
    auto a = local3();
    Module m = direct_sum(direct_sum(simple_at(a, 0), regular_module(a)), simple_at(a, 0));
    auto rep = decompose(m, 32, 17);
    int total = 0;
    std::vector<Mat> rows;
    for (size_t i = 0; i < rep.leaves.size(); ++i) {
        total += rep.leaves[i].dim;
        rows.push_back(rep.leaf_rows[i]);
    }
    REQUIRE(total == m.dim);
    Mat stacked = vstack(rows, a->field, m.dim);
    auto inv = inverse(stacked);
    REQUIRE(inv.has_value());
    CHECK(mul(stacked, *inv).is_identity());
    // each leaf really is a submodule: rows * act = act_leaf * rows
    for (size_t i = 0; i < rep.leaves.size(); ++i)
        for (int b = 0; b < a->dim; ++b)
            CHECK(mul(rep.leaf_rows[i], m.action[b]) ==
                  mul(rep.leaves[i].action[b], rep.leaf_rows[i]));
}

TEST_CASE("is_isomorphic basics") {
    auto a = remark14();
    auto ss = simples(a);
    auto v = is_isomorphic(ss[0], ss[0], 8, 1);
    CHECK(v.kind == IsoVerdict::Yes);
    CHECK(is_isomorphic(ss[0], ss[1], 8, 1).kind == IsoVerdict::No);
}

TEST_CASE("dual and double dual") {
    auto a = remark14();
    Module p = projectives(a)[0];
    Module d = dual(p);
    CHECK(validate_module(d).ok);
    Module dd = dual(d);
    // (A^op)^op has the same table as A; actions transpose twice
    CHECK(same_algebra(*dd.alg, *a));
    for (int b = 0; b < a->dim; ++b) CHECK(dd.action[b] == p.action[b]);
}

TEST_CASE("nakayama of the regular module over kx2 is the regular module") {
    auto a = kx2();
    Module reg = regular_module(a);
    Module nu = nakayama(reg);
    CHECK(nu.dim == 2);
    CHECK(is_isomorphic(nu, reg, 16, 23).kind == IsoVerdict::Yes);
}

TEST_CASE("nakayama of projectives over remark14 is injective") {
    auto a = remark14();
    for (auto& p : projectives(a)) {
        Module nu = nakayama(p);
        CHECK(validate_module(nu).ok);
        CHECK(is_injective(nu));
    }
}

TEST_CASE("power and zero module") {
    auto a = local3();
    Module s = simple_at(a, 0);
    CHECK(power(s, 4).dim == 4);
    CHECK(zero_module(a).dim == 0);
    CHECK(syzygy(zero_module(a)).dim == 0);
    CHECK(is_projective(zero_module(a)));
}
