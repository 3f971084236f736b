#pragma once

#include <string>

#include "fdhom/bimodule.hpp"
#include "fdhom/sparse.hpp"

namespace fdhom {

inline constexpr int kDefaultResolutionBound = 8;
inline constexpr int kDefaultBarDegree = 4;
inline constexpr int64_t kDefaultSizeCap = int64_t(1) << 22;

struct Resolution {
    Module target;
    std::vector<Module> terms;  // P_0 .. P_k
    Mat aug;                    // P_0 -> target
    std::vector<Mat> diffs;     // diffs[k-1] : P_k -> P_{k-1}
    bool complete = false;      // a zero syzygy was reached
};

// Iterated minimal covers; stops early at a zero syzygy.
Resolution minimal_resolution(const Module& m, int n_max);

struct PdVerdict {
    enum Kind { Finite, InfiniteByCycle, Unknown } kind = Unknown;
    int n = 0;  // Finite: the projective dimension; Unknown: the bound used
    std::vector<std::string> cycle;  // InfiniteByCycle: labels along the cycle
};

// Finite on a vanishing syzygy; InfiniteByCycle when the graph
// "indecomposable summand U -> summands of syzygy(U)" has a reachable
// cycle; Unknown otherwise. The zero module reports Finite(-1).
PdVerdict pd(const Module& m, int n_max, int trials, uint64_t seed);

struct StableHom {
    std::vector<Mat> hom;   // basis of Hom(m, n)
    Mat proj_flat;          // row space of maps factoring through a projective
    std::vector<Mat> reps;  // representatives of a stable-quotient basis
    int dim() const { return static_cast<int>(reps.size()); }
};
StableHom stable_hom(const Module& m, const Module& n);
// coordinates of a map in the stable quotient basis
Mat stable_coords(const StableHom& sh, const Mat& map);

struct SingHomReport {
    std::vector<int> stage_dims;    // dim stable-Hom(O^i v, O^i w)
    std::vector<int> window_ranks;  // rank of length-`window` composites
    bool stabilized = false;
    int value = 0;  // stabilized: the stable rank
    int bound = 0;  // not stabilized: the stage bound reached
    int window = 0;
};

// Stage spaces and syzygy-induced transition maps for the filtered-colimit
// Hom of the singularity category; Stabilized when the window composite
// rank is constant at two consecutive start stages.
SingHomReport sing_hom(const Module& v, const Module& w, int i_max, int window);

// dims of Tor_n over the enveloping algebra against the regular bimodule,
// computed from a minimal resolution of x.
std::vector<int> tor_envelope(const Bimodule& x, int n_max);

enum class HHMethod { MinimalResolution, BarComplex };

struct HHTable {
    std::vector<int> dims;  // degrees 0..n_max
    HHMethod method;
};

// Hochschild homology dimensions. The bar method errors (suggesting the
// minimal method) when a boundary matrix would exceed the size cap.
HHTable hochschild(const AlgebraPtr& a, int n_max, HHMethod method,
                   int64_t size_cap = kDefaultSizeCap);

// Hochschild chain boundary C_n = A^(x)(n+1) -> C_(n-1), including the
// wrap-around term; rows are indexed by basis tuples (i_0..i_n) with
// i_0 most significant.
SparseMat hochschild_boundary(const AlgebraPtr& a, int n);
int64_t bar_chain_dim(const AlgebraPtr& a, int n);

// Bar resolution differential A^(x)(n+2) -> A^(x)(n+1) (no wrap term),
// and the n-th bar term as an A-A-bimodule.
SparseMat bar_resolution_diff(const AlgebraPtr& a, int n);
Bimodule bar_term_bimodule(const AlgebraPtr& a, int n);

// X (x)_{A^e} Y for a right A^e-module X and an A-A-bimodule Y, as a
// quotient of the vector-space tensor product.
QuotientSpace tensor_over_envelope(const Bimodule& x, const Bimodule& y);

// cycle/boundary bookkeeping of the bar complex at a fixed degree
struct HHBasisData {
    int degree = 0;
    Mat cycles;                // rows span ker(b_n)
    RrefResult boundary_span;  // row space of im(b_{n+1})
    Mat reps;                  // homology basis representatives
    int dim() const { return reps.rows; }
};
HHBasisData hh_basis(const AlgebraPtr& a, int degree, int64_t size_cap = kDefaultSizeCap);
// coordinates of a cycle row in the homology basis (must be a cycle)
Mat hh_coords(const HHBasisData& basis, const Mat& cycle);

// Degreewise comparison of (M (x)_B N) (x)_{A^e} Bar(A) against
// B (x)_{B^e} (N (x)_A Bar(A) (x)_A M), chain dims and homology dims.
struct KeyComplexReport {
    std::vector<int> lhs_dims, rhs_dims;
    std::vector<int> lhs_homology, rhs_homology;
    bool dims_equal = false;
    bool homology_equal = false;
};
KeyComplexReport key_complex_compare(const Bimodule& m, const Bimodule& n, int n_max);

}  // namespace fdhom
