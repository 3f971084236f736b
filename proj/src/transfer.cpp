#include "fdhom/transfer.hpp"

#include <stdexcept>

namespace fdhom {

Mat transfer_chain_matrix(const Bimodule& m, int degree, const DualBasis& db) {
    const Field f = m.left->field;
    const int da = m.left->dim, dbv = m.right->dim;
    const int k = static_cast<int>(db.elements.size());
    const int64_t rows = bar_chain_dim(m.left, degree);
    const int64_t cols = bar_chain_dim(m.right, degree);
    Mat t(f, static_cast<int>(rows), static_cast<int>(cols));
    if (k == 0) return t;  // zero bimodule transfers to zero

    // E[t][i][s] = f_t(a_i * m_s), a row in B
    std::vector<std::vector<std::vector<Mat>>> E(
        k, std::vector<std::vector<Mat>>(da, std::vector<Mat>(k)));
    for (int i = 0; i < da; ++i) {
        Mat la = m.left_act(i);
        for (int s = 0; s < k; ++s) {
            Mat am = mul(db.elements[s], la);
            for (int tt = 0; tt < k; ++tt) E[tt][i][s] = mul(am, db.functionals[tt]);
        }
    }

    const int n1 = degree + 1;
#pragma omp parallel for schedule(dynamic)
    for (int64_t r = 0; r < rows; ++r) {
        std::vector<int> tuple(n1);
        int64_t rr = r;
        for (int j = n1 - 1; j >= 0; --j) {
            tuple[j] = static_cast<int>(rr % da);
            rr /= da;
        }
        std::vector<int> idx(n1, 0);
        Mat acc(f, 1, static_cast<int>(cols));
        for (;;) {
            // product of E[idx[j]][tuple[j]][idx[(j+1) mod n1]] over j
            Mat term = E[idx[0]][tuple[0]][idx[1 % n1]];
            bool zero = term.is_zero();
            for (int j = 1; j < n1 && !zero; ++j) {
                const Mat& nxt = E[idx[j]][tuple[j]][idx[(j + 1) % n1]];
                if (nxt.is_zero()) { zero = true; break; }
                term = kron(term, nxt);
            }
            if (!zero) acc = add(acc, term);
            int pos = n1 - 1;
            while (pos >= 0 && ++idx[pos] == k) idx[pos--] = 0;
            if (pos < 0) break;
        }
        t.set_row(static_cast<int>(r), acc);
    }
    return t;
}

TransferMap transfer_chain(const Bimodule& m, int degree) {
    DualBasis db = dual_basis(m);
    TransferMap tm;
    tm.degree = degree;
    tm.chain = transfer_chain_matrix(m, degree, db);
    if (degree >= 1) {
        Mat prev = transfer_chain_matrix(m, degree - 1, db);
        Mat lhs = mul(tm.chain, to_dense(hochschild_boundary(m.right, degree)));
        Mat rhs = mul(to_dense(hochschild_boundary(m.left, degree)), prev);
        if (lhs != rhs)
            throw std::logic_error(
                "transfer_chain: chain-map identity b o t = t o b fails at degree " +
                std::to_string(degree));
    }
    return tm;
}

TransferMap transfer_hh(const Bimodule& m, int degree, const DualBasis& db,
                        int64_t size_cap) {
    TransferMap tm;
    tm.degree = degree;
    tm.chain = transfer_chain_matrix(m, degree, db);
    tm.src_basis = hh_basis(m.left, degree, size_cap);
    tm.tgt_basis = hh_basis(m.right, degree, size_cap);
    tm.induced = Mat(m.left->field, tm.src_basis.dim(), tm.tgt_basis.dim());
    for (int i = 0; i < tm.src_basis.dim(); ++i) {
        Mat image = mul(tm.src_basis.reps.row(i), tm.chain);
        if (degree >= 1) {
            Mat bd = mul(image, to_dense(hochschild_boundary(m.right, degree)));
            if (!bd.is_zero())
                throw std::logic_error("transfer_hh: image of a cycle is not a cycle");
        }
        tm.induced.set_row(i, hh_coords(tm.tgt_basis, image));
    }
    return tm;
}

TransferMap transfer_hh(const Bimodule& m, int degree, int64_t size_cap) {
    return transfer_hh(m, degree, dual_basis(m), size_cap);
}

DualBasis dual_basis_with_generators(const Bimodule& m, const std::vector<Mat>& gens) {
    const Field f = m.right->field;
    const int dm = m.dim(), dbv = m.right->dim;
    Module r = restrict_right(m);
    const int k = static_cast<int>(gens.size());
    Mat phi(f, k * dbv, dm);
    for (int t = 0; t < k; ++t)
        for (int c = 0; c < dbv; ++c) {
            Mat ec(f, 1, dbv);
            ec.at(0, c) = 1;
            phi.set_row(t * dbv + c, mul(gens[t], r.act(ec)));
        }
    if (rank_of(phi) != dm)
        throw std::invalid_argument("dual_basis_with_generators: set does not generate");

    const int freedim = k * dbv;
    const int nvar = dm * freedim;
    Mat sys(f, nvar, 0);
    Mat idk = identity(f, k);
    for (int b = 0; b < dbv; ++b) {
        Mat free_act = kron(idk, m.right->right_mult(b));
        sys = hstack(sys, sub(kron(transpose(r.action[b]), identity(f, freedim)),
                              kron(identity(f, dm), free_act)));
    }
    sys = hstack(sys, kron(identity(f, dm), phi));
    Mat target(f, 1, sys.cols);
    Mat idm_flat = flatten(identity(f, dm));
    for (int c = 0; c < dm * dm; ++c)
        target.at(0, sys.cols - dm * dm + c) = idm_flat.at(0, c);
    auto sol = solve(sys, target);
    if (!sol)
        throw std::invalid_argument(
            "dual_basis_with_generators: right restriction is not projective");
    Mat sigma = unflatten(*sol, dm, freedim);
    DualBasis out;
    for (int t = 0; t < k; ++t) {
        out.elements.push_back(gens[t]);
        Mat ft(f, dm, dbv);
        for (int i = 0; i < dm; ++i)
            for (int c = 0; c < dbv; ++c) ft.at(i, c) = sigma.at(i, t * dbv + c);
        out.functionals.push_back(std::move(ft));
    }
    return out;
}

Bimodule seeded_right_projective_bimodule(const AlgebraPtr& a, const AlgebraPtr& b,
                                          Rng& rng, int max_summands) {
    const bool square = same_algebra(*a, *b);
    int count = 1 + static_cast<int>(rng.below(max_summands));
    Bimodule acc = zero_bimodule(a, b);
    for (int s = 0; s < count; ++s) {
        bool use_regular = square && rng.below(3) == 0;
        if (use_regular) {
            acc = direct_sum(acc, regular_bimodule(a));
        } else {
            int i = static_cast<int>(rng.below(a->num_idempotents()));
            int j = static_cast<int>(rng.below(b->num_idempotents()));
            acc = direct_sum(acc, projective_bimodule(a, b, i, j));
        }
    }
    return acc;
}

TransferAxiomReport check_transfer_axioms(const std::vector<Bimodule>& suite, int n_max,
                                          uint64_t seed) {
    TransferAxiomReport rep;
    (void)seed;
    auto record = [&](bool& flag, bool ok, const std::string& what) {
        if (!ok) {
            flag = false;
            rep.failures.push_back(what);
        }
    };

    // (1) composition over composable pairs in the suite
    for (size_t x = 0; x < suite.size(); ++x)
        for (size_t y = 0; y < suite.size(); ++y) {
            const Bimodule& m = suite[x];
            const Bimodule& n = suite[y];
            if (!same_algebra(*m.right, *n.left)) continue;
            Bimodule t = tensor_over(m, n);
            for (int deg = 0; deg <= n_max; ++deg) {
                TransferMap tm = transfer_hh(m, deg);
                TransferMap tn = transfer_hh(n, deg);
                TransferMap tmn = transfer_hh(t, deg);
                record(rep.composition, mul(tm.induced, tn.induced) == tmn.induced,
                       "composition fails at degree " + std::to_string(deg) +
                           " for suite pair (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
            }
            rep.composition_checked += 1;
        }

    // (2) additivity over same-shape pairs
    for (size_t x = 0; x < suite.size(); ++x)
        for (size_t y = x; y < suite.size(); ++y) {
            const Bimodule& l = suite[x];
            const Bimodule& n = suite[y];
            if (!same_algebra(*l.left, *n.left) || !same_algebra(*l.right, *n.right))
                continue;
            Bimodule m = direct_sum(l, n);
            for (int deg = 0; deg <= n_max; ++deg) {
                TransferMap tl = transfer_hh(l, deg);
                TransferMap tn = transfer_hh(n, deg);
                TransferMap tm = transfer_hh(m, deg);
                record(rep.additivity, add(tl.induced, tn.induced) == tm.induced,
                       "additivity fails at degree " + std::to_string(deg) +
                           " for suite pair (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
            }
            rep.additivity_checked += 1;
        }

    // algebras appearing in the suite (deduplicated structurally)
    std::vector<AlgebraPtr> algebras;
    auto add_algebra = [&](const AlgebraPtr& a) {
        for (const auto& known : algebras)
            if (same_algebra(*known, *a)) return;
        algebras.push_back(a);
    };
    for (const auto& m : suite) {
        add_algebra(m.left);
        add_algebra(m.right);
    }

    // (3) vanishing of t on Ae_i (x) e_jB in degrees >= 1
    for (const auto& a : algebras)
        for (const auto& b : algebras)
            for (int i = 0; i < a->num_idempotents(); ++i)
                for (int j = 0; j < b->num_idempotents(); ++j) {
                    Bimodule p = projective_bimodule(a, b, i, j);
                    for (int deg = 1; deg <= n_max; ++deg) {
                        TransferMap tp = transfer_hh(p, deg);
                        record(rep.projective_vanishing, tp.induced.is_zero(),
                               "projective transfer nonzero at degree " +
                                   std::to_string(deg) + " (i=" + std::to_string(i) +
                                   ", j=" + std::to_string(j) + ")");
                    }
                }

    // (4) identity on the regular bimodule
    for (const auto& a : algebras) {
        Bimodule reg = regular_bimodule(a);
        for (int deg = 0; deg <= n_max; ++deg) {
            TransferMap tr = transfer_hh(reg, deg);
            record(rep.regular_identity, tr.induced.is_identity(),
                   "regular transfer is not the identity at degree " +
                       std::to_string(deg));
        }
    }
    return rep;
}

}  // namespace fdhom
