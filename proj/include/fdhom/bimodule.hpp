#pragma once

#include "fdhom/module.hpp"

namespace fdhom {

// A-B-bimodule stored as a right module over envelope(A, B) = A^op (x) B;
// the envelope basis element (i, j) acts by m -> a_i * m * b_j.
struct Bimodule {
    AlgebraPtr left;
    AlgebraPtr right;
    Module mod;

    int dim() const { return mod.dim; }
    Mat left_act(int i) const;    // m -> a_i * m
    Mat right_act(int j) const;   // m -> m * b_j
    Mat left_act_elem(const Mat& x) const;
    Mat right_act_elem(const Mat& x) const;
};

// Constructor with validation: the module must be a valid envelope(A, B)
// module whose (i, j) action equals the composite of the two side actions.
Bimodule bimodule_over(const AlgebraPtr& left, const AlgebraPtr& right, Module m);

Bimodule regular_bimodule(const AlgebraPtr& a);
// A with the right action twisted by an automorphism: m * b = m sigma(b).
// sigma is the coordinate matrix of the automorphism (v -> v * sigma).
Bimodule twist_bimodule(const AlgebraPtr& a, const Mat& sigma);
bool is_algebra_automorphism(const Algebra& a, const Mat& sigma);

// A (x)_K B with outer actions; projective_bimodule carves out Ae_i (x) e_jB.
Bimodule box_bimodule(const AlgebraPtr& a, const AlgebraPtr& b);
Bimodule projective_bimodule(const AlgebraPtr& a, const AlgebraPtr& b, int i, int j);

// right module over B with trivial GF(p) left action, as a (K, B)-bimodule
Bimodule bimodule_from_right_module(const Module& m);

Bimodule direct_sum(const Bimodule& m, const Bimodule& n);
Bimodule zero_bimodule(const AlgebraPtr& a, const AlgebraPtr& b);

Module restrict_right(const Bimodule& m);  // over B
Module restrict_left(const Bimodule& m);   // over opposite(A)

// M as a B^op-A^op-bimodule (same underlying space, actions exchanged).
Bimodule flip(const Bimodule& m);

// V (x)_A M as a module over B, with the quotient bookkeeping needed to
// push maps through the functor.
struct TensorModule {
    Module result;
    QuotientSpace q;  // quotient of K^(dim V * dim M)
    int dim_m = 0;
};
TensorModule tensor_module(const Module& v, const Bimodule& m);
Module apply_tensor_functor(const Module& v, const Bimodule& m);
// map induced by f: V -> W on V (x) M -> W (x) M
Mat tensor_functor_map(const TensorModule& src, const TensorModule& dst, const Mat& f);

struct TensorBimodule {
    Bimodule result;
    QuotientSpace q;  // quotient of K^(dim M * dim N)
};
TensorBimodule tensor_over_full(const Bimodule& m, const Bimodule& n);
Bimodule tensor_over(const Bimodule& m, const Bimodule& n);

// Hom_{A^op}(M, A) as a B-A-bimodule, and Hom_B(M, B) as a B-A-bimodule.
Bimodule hom_dual_left(const Bimodule& m);
Bimodule hom_dual_right(const Bimodule& m);

Mat trace_ideal_right(const Bimodule& m);   // basis rows of a subspace of B
bool is_progenerator_right(const Bimodule& m);

struct DualBasis {
    std::vector<Mat> elements;     // m_t, 1 x dim(M)
    std::vector<Mat> functionals;  // f_t, dim(M) x dim(B), right-B-linear
};
// Witness that restrict_right(m) is projective; throws std::invalid_argument
// naming the failed splitting system otherwise.
DualBasis dual_basis(const Bimodule& m);

struct UnitMapResult {
    Bimodule target;     // hom_dual_left(M) (x)_A M as a B-B-bimodule
    Mat eta;             // dim(B) x dim(target), bimodule map over B^e
    bool injective = false;
    Bimodule cokernel;   // B-B-bimodule U
};
// eta_B : B -> M^v (x)_A M, b -> (m -> m b). Requires M left-A-projective.
UnitMapResult unit_map(const Bimodule& m);

}  // namespace fdhom
