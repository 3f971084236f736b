#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdhom/algebra.hpp"

using namespace fdhom;

namespace {

// loop algebra of Remark-style two-vertex quiver: loop a at 1, b: 2 -> 1,
// relations a*a and b*a
QuiverPresentation remark14_quiver(uint32_t p = 5) {
    QuiverPresentation q;
    q.field = Field(p);
    q.vertices = {"1", "2"};
    q.arrows = {{"a", "1", "1"}, {"b", "2", "1"}};
    q.relations = {{"a", "a"}, {"b", "a"}};
    return q;
}

QuiverPresentation local3_quiver(uint32_t p = 5) {
    QuiverPresentation q;
    q.field = Field(p);
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}, {"y", "1", "1"}};
    q.relations = {{"x", "x"}, {"y", "y"}, {"x", "y"}, {"y", "x"}};
    return q;
}

QuiverPresentation kx2_quiver(uint32_t p) {
    QuiverPresentation q;
    q.field = Field(p);
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}};
    q.relations = {{"x", "x"}};
    return q;
}

}  // namespace

TEST_CASE("remark14 algebra has dim 4 with the expected basis") {
    auto a = build_from_quiver(remark14_quiver());
    CHECK(a->dim == 4);
    CHECK(a->labels == std::vector<std::string>{"e_1", "e_2", "a", "b"});
    CHECK(a->num_idempotents() == 2);
    CHECK(a->radical_dim() == 2);
    CHECK(validate(*a).ok);
}

TEST_CASE("one vertex no arrows is the base field") {
    QuiverPresentation q;
    q.field = Field(7);
    q.vertices = {"v"};
    auto a = build_from_quiver(q);
    CHECK(a->dim == 1);
    CHECK(validate(*a).ok);
}

TEST_CASE("local 3-dimensional algebra") {
    auto a = build_from_quiver(local3_quiver());
    CHECK(a->dim == 3);
    CHECK(a->num_idempotents() == 1);
    CHECK(a->radical_dim() == 2);
    CHECK(validate(*a).ok);
    // x*y = 0 = y*x, x*x = 0
    int xi = a->label_index("x"), yi = a->label_index("y");
    REQUIRE(xi >= 0);
    REQUIRE(yi >= 0);
    CHECK(a->table(xi, yi).empty());
    CHECK(a->table(yi, xi).empty());
    CHECK(a->table(xi, xi).empty());
}

TEST_CASE("non-admissible quiver reports an unbounded cycle") {
    QuiverPresentation q;
    q.field = Field(5);
    q.vertices = {"1"};
    q.arrows = {{"x", "1", "1"}, {"y", "1", "1"}};
    q.relations = {{"x", "x"}};  // y*y*... never hits a relation
    CHECK_THROWS_WITH_AS(build_from_quiver(q),
                         doctest::Contains("unbounded relation-free cycle"),
                         std::invalid_argument);
}

TEST_CASE("non-composable relation is rejected") {
    QuiverPresentation q;
    q.field = Field(5);
    q.vertices = {"1", "2"};
    q.arrows = {{"a", "1", "1"}, {"b", "2", "1"}};
    q.relations = {{"a", "b"}};  // a ends at 1, b starts at 2
    CHECK_THROWS_WITH_AS(build_from_quiver(q), doctest::Contains("not composable"),
                         std::invalid_argument);
}

TEST_CASE("opposite") {
    auto a = build_from_quiver(kx2_quiver(5));  // commutative
    auto aop = opposite(a);
    CHECK(aop->mult == a->mult);

    auto r = build_from_quiver(remark14_quiver());
    auto rop = opposite(r);
    CHECK(validate(*rop).ok);
    CHECK(same_algebra(*opposite(rop), *r));
    // b*a = 0 in A but the opposite has a*b = 0 (indices swapped)
    int ai = r->label_index("a"), bi = r->label_index("b");
    CHECK(r->table(bi, ai).empty());
    CHECK(r->table(ai, bi).empty());  // not composable in A
    CHECK(rop->table(ai, bi).empty());
    // e_2 * b = b in A^op since b * e_2 = ... b ends at 1: e_1*b nonzero in op
    CHECK(rop->table(r->label_index("e_1"), bi).size() == 1);
}

TEST_CASE("envelope of the base field is the other factor") {
    auto k = field_algebra(Field(5));
    auto b = build_from_quiver(remark14_quiver());
    auto e = envelope(k, b);
    CHECK(e->dim == b->dim);
    CHECK(e->mult == b->mult);
    CHECK(validate(*e).ok);
}

TEST_CASE("envelope of local3 with itself") {
    auto a = build_from_quiver(local3_quiver());
    auto e = envelope(a, a);
    CHECK(e->dim == 9);
    CHECK(e->radical_dim() == 8);  // 2*3 + 3*2 - 4
    CHECK(e->num_idempotents() == 1);
    CHECK(validate(*e).ok);
}

TEST_CASE("envelope of split basic inputs validates") {
    auto a = build_from_quiver(remark14_quiver());
    auto b = build_from_quiver(local3_quiver());
    auto e = envelope(a, b);
    CHECK(e->dim == 12);
    CHECK(e->num_idempotents() == 2);
    CHECK(validate(*e).ok);
}

TEST_CASE("triangular2 of the base field is the A2 path algebra") {
    auto t = triangular2(field_algebra(Field(5)));
    CHECK(t->dim == 3);
    CHECK(validate(*t).ok);

    QuiverPresentation q;
    q.field = Field(5);
    q.vertices = {"1", "2"};
    q.arrows = {{"a", "1", "2"}};
    auto a2 = build_from_quiver(q);
    REQUIRE(a2->dim == 3);
    // relabel t's basis (E11, E12, E22) -> (e_1, a, e_2) and compare tables
    // t order: blocks @11, @12, @22; a2 order: e_1, e_2, a
    int perm[3] = {0, 2, 1};  // t index -> a2 index
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto lhs = t->table(i, j);
            auto rhs = a2->table(perm[i], perm[j]);
            REQUIRE(lhs.size() == rhs.size());
            if (!lhs.empty()) {
                CHECK(perm[lhs[0].first] == rhs[0].first);
                CHECK(lhs[0].second == rhs[0].second);
            }
        }
}

TEST_CASE("triangular2 structure") {
    auto a = build_from_quiver(remark14_quiver());
    auto t = triangular2(a);
    CHECK(t->dim == 3 * a->dim);
    CHECK(t->num_idempotents() == 2 * a->num_idempotents());
    CHECK(validate(*t).ok);
    // unit is diag(1, 1)
    Mat u = t->unit;
    CHECK(t->mul_elems(u, u) == u);
}

TEST_CASE("validate catches a broken associativity triple") {
    auto good = build_from_quiver(kx2_quiver(5));
    auto mult = good->mult;
    // corrupt x*x = x (so (x*x)*x = x*x = x but x*(x*x) = x*x = x ... make
    // x*x = e instead: then (x*x)*x = x, x*(x*x) = x -- still associative!
    // use x*x = x: (xx)x = xx = x, x(xx) = xx = x; associative too, but unit
    // law still holds; instead corrupt e*x:
    mult[0 * 2 + 1] = {{1, 2}};  // e*x = 2x breaks the unit law
    auto bad = make_table_algebra(good->field, 2, good->labels, mult, good->unit,
                                  good->idempotents, good->radical);
    auto cert = validate(*bad);
    CHECK_FALSE(cert.ok);
    CHECK(cert.failure.find("unit") != std::string::npos);

    // genuinely non-associative: x*x = e with e*x = x keeps unit law but
    // (x*x)*x = e*x = x while x*(x*x) = x*e = x ... still associative.
    // x*x = x breaks associativity with nothing? (xx)x = xx = x = x(xx): no.
    // Take dim 2 with b*b = e and b*e = 0: (bb)b = eb = b, b(bb) = be = 0.
    auto mult2 = good->mult;
    mult2[1 * 2 + 1] = {{0, 1}};  // x*x = e
    mult2[1 * 2 + 0] = {};        // x*e = 0
    auto bad2 = make_table_algebra(good->field, 2, good->labels, mult2, good->unit,
                                   good->idempotents, good->radical);
    auto cert2 = validate(*bad2);
    CHECK_FALSE(cert2.ok);
}

TEST_CASE("validate catches a non-nilpotent claimed radical") {
    // GF(5) x GF(5) presented with the second idempotent hidden in the
    // claimed radical: f*f = f never reaches zero.
    Field f(5);
    std::vector<std::vector<std::pair<int, uint32_t>>> mult(4);
    mult[0 * 2 + 0] = {{0, 1}};
    mult[1 * 2 + 1] = {{1, 1}};
    Mat unit(f, 1, 2);
    unit.at(0, 0) = 1;
    unit.at(0, 1) = 1;
    Mat idem(f, 1, 2);
    idem.at(0, 0) = 1;  // claim r = 1
    Mat rad(f, 1, 2);
    rad.at(0, 1) = 1;  // claim radical = span(f), but f is idempotent
    auto bad = make_table_algebra(f, 2, {"e", "f"}, mult, unit, idem, rad);
    auto cert = validate(*bad);
    CHECK_FALSE(cert.ok);
}

TEST_CASE("radical is an ideal and nilpotent for quiver algebras") {
    for (auto* make : {&remark14_quiver, &local3_quiver}) {
        auto a = build_from_quiver(make(5));
        // J^(dim) = 0 is implied by validate; also check sum of idempotents
        Mat sum(a->field, 1, a->dim);
        for (int s = 0; s < a->num_idempotents(); ++s) sum = add(sum, a->idempotents.row(s));
        CHECK(sum == a->unit);
        CHECK(validate(*a).ok);
    }
}

TEST_CASE("quiver dimension equals independent path count") {
    // breadth-first count with explicit zero-test against relations, kept
    // independent of build_from_quiver's state machine
    auto q = remark14_quiver();
    auto a = build_from_quiver(q);
    // hand enumeration: e1, e2, a (loop), b, and all longer paths die:
    // a*a = 0, b*a = 0, nothing else composes
    CHECK(a->dim == 4);

    QuiverPresentation nak;  // Nakayama-style A3 with one relation
    nak.field = Field(5);
    nak.vertices = {"1", "2", "3"};
    nak.arrows = {{"u", "1", "2"}, {"v", "2", "3"}};
    nak.relations = {{"u", "v"}};
    auto n = build_from_quiver(nak);
    // paths: e1, e2, e3, u, v (u*v dies)
    CHECK(n->dim == 5);
    CHECK(validate(*n).ok);
}
