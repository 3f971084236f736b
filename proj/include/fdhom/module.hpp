#pragma once

#include <optional>
#include <vector>

#include "fdhom/algebra.hpp"

namespace fdhom {

// Finite-dimensional right module, one action matrix per algebra basis
// element. Row-vector convention: v -> v * action, so
// act(x*y) = act(x) * act(y).
struct Module {
    AlgebraPtr alg;
    int dim = 0;
    std::vector<Mat> action;

    Mat act(const Mat& elem) const;  // elem: 1 x dim(alg) coordinate row
};

Module zero_module(const AlgebraPtr& a);
Module regular_module(const AlgebraPtr& a);
Module direct_sum(const Module& m, const Module& n);
Module power(const Module& m, int k);

struct ModuleCertificate {
    bool ok = true;
    std::string failure;
};
ModuleCertificate validate_module(const Module& m);

void require_same_algebra(const Module& m, const Module& n, const char* op);

// Basis of the intertwiner space { F : act_m(b) F = F act_n(b) for all b }.
std::vector<Mat> hom_space(const Module& m, const Module& n);

// Submodule spanned by the given rows of the ambient module, with the
// induced action; `rows` holds the chosen basis inside the ambient space.
struct Submodule {
    Module mod;
    Mat rows;
};
Submodule submodule(const Module& ambient, const Mat& span_rows);

std::vector<Module> projectives(const AlgebraPtr& a);  // e_i A
std::vector<Module> simples(const AlgebraPtr& a);
Module simple_at(const AlgebraPtr& a, int i);

// m * J as a row space inside K^dim.
Mat radical_rows(const Module& m);
// multiplicity of S_i in top(m) = m / mJ, one entry per idempotent
std::vector<int> top_multiplicities(const Module& m);

struct Cover {
    Module p;
    Mat pi;  // dim(p) x dim(m), surjective with kernel inside p*J
    std::vector<int> mults;
};
Cover projective_cover(const Module& m);

Module syzygy(const Module& m);

bool is_projective(const Module& m);
bool is_injective(const Module& m);

Module dual(const Module& m);      // over opposite(alg)
Module nakayama(const Module& m);  // D Hom_A(-, A), over the same algebra

struct DecompositionReport {
    struct Group {
        Module rep;
        int mult = 0;
    };
    std::vector<Group> groups;
    std::vector<Module> leaves;
    std::vector<Mat> leaf_rows;  // inclusion rows into the input module
    bool exhaustive = false;     // locality certified by full idempotent search
    int trials = 0;
    uint64_t seed = 0;
};

// Randomized Fitting splitting; exhaustive endomorphism search certifies
// indecomposable leaves when p^(dim End) <= 2^20.
DecompositionReport decompose(const Module& m, int trials, uint64_t seed);

struct IsoVerdict {
    enum Kind { Yes, No, Undecided } kind;
    Mat witness;         // invertible intertwiner when kind == Yes
    std::string reason;  // for No / Undecided
};
IsoVerdict is_isomorphic(const Module& m, const Module& n, int trials, uint64_t seed);

}  // namespace fdhom
