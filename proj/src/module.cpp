#include "fdhom/module.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdhom {

Mat Module::act(const Mat& elem) const {
    Mat r(alg->field, dim, dim);
    for (int k = 0; k < alg->dim; ++k) {
        uint32_t c = elem.at(0, k);
        if (c == 0) continue;
        for (size_t t = 0; t < r.a.size(); ++t)
            r.a[t] = alg->field.add(r.a[t], alg->field.mul(c, action[k].a[t]));
    }
    return r;
}

Module zero_module(const AlgebraPtr& a) {
    Module m;
    m.alg = a;
    m.dim = 0;
    m.action.assign(a->dim, Mat(a->field, 0, 0));
    return m;
}

Module regular_module(const AlgebraPtr& a) {
    Module m;
    m.alg = a;
    m.dim = a->dim;
    for (int j = 0; j < a->dim; ++j) m.action.push_back(a->right_mult(j));
    return m;
}

Module direct_sum(const Module& m, const Module& n) {
    require_same_algebra(m, n, "direct_sum");
    Module s;
    s.alg = m.alg;
    s.dim = m.dim + n.dim;
    for (int k = 0; k < m.alg->dim; ++k) {
        Mat blk(m.alg->field, s.dim, s.dim);
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j) blk.at(i, j) = m.action[k].at(i, j);
        for (int i = 0; i < n.dim; ++i)
            for (int j = 0; j < n.dim; ++j) blk.at(m.dim + i, m.dim + j) = n.action[k].at(i, j);
        s.action.push_back(std::move(blk));
    }
    return s;
}

Module power(const Module& m, int k) {
    Module s = zero_module(m.alg);
    for (int i = 0; i < k; ++i) s = direct_sum(s, m);
    return s;
}

ModuleCertificate validate_module(const Module& m) {
    ModuleCertificate cert;
    auto fail = [&](const std::string& msg) {
        cert.ok = false;
        cert.failure = msg;
        return cert;
    };
    const auto& a = *m.alg;
    if (static_cast<int>(m.action.size()) != a.dim)
        return fail("action table size != algebra dimension");
    for (const auto& x : m.action)
        if (x.rows != m.dim || x.cols != m.dim) return fail("action matrix shape");
    if (!m.act(a.unit).is_identity() && m.dim > 0) return fail("act(1) != identity");
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            Mat lhs = mul(m.action[i], m.action[j]);
            Mat rhs(a.field, m.dim, m.dim);
            for (auto& [k, c] : a.table(i, j)) rhs = add(rhs, scale(m.action[k], c));
            if (lhs != rhs)
                return fail("act(b_" + std::to_string(i) + ") act(b_" + std::to_string(j) +
                            ") != act(b_i b_j)");
        }
    return cert;
}

void require_same_algebra(const Module& m, const Module& n, const char* op) {
    if (m.alg.get() == n.alg.get()) return;
    if (!same_algebra(*m.alg, *n.alg))
        throw std::invalid_argument(std::string(op) + ": modules over different algebras");
}

std::vector<Mat> hom_space(const Module& m, const Module& n) {
    require_same_algebra(m, n, "hom_space");
    if (m.dim == 0 || n.dim == 0) return {};
    const Field f = m.alg->field;
    const int mn = m.dim * n.dim;
    // vec(F) * (kron(act_m(b)^T, I) - kron(I, act_n(b))) = 0 for all basis b
    Mat big(f, mn, m.alg->dim * mn);
    Mat im = identity(f, m.dim), in = identity(f, n.dim);
    for (int b = 0; b < m.alg->dim; ++b) {
        Mat block = sub(kron(transpose(m.action[b]), in), kron(im, n.action[b]));
        for (int r = 0; r < mn; ++r)
            for (int c = 0; c < mn; ++c) big.at(r, b * mn + c) = block.at(r, c);
    }
    Mat k = kernel_basis(big);
    std::vector<Mat> basis;
    basis.reserve(k.rows);
    for (int i = 0; i < k.rows; ++i) basis.push_back(unflatten(k.row(i), m.dim, n.dim));
    return basis;
}

Submodule submodule(const Module& ambient, const Mat& span_rows) {
    Submodule s;
    s.rows = row_space_basis(span_rows);
    s.mod.alg = ambient.alg;
    s.mod.dim = s.rows.rows;
    for (int b = 0; b < ambient.alg->dim; ++b) {
        auto t = solve(s.rows, mul(s.rows, ambient.action[b]));
        if (!t) throw std::invalid_argument("submodule: rows do not span a submodule");
        s.mod.action.push_back(std::move(*t));
    }
    return s;
}

std::vector<Module> projectives(const AlgebraPtr& a) {
    Module reg = regular_module(a);
    std::vector<Module> out;
    for (int i = 0; i < a->num_idempotents(); ++i) {
        std::vector<Mat> rows;
        Mat ei = a->idempotents.row(i);
        for (int j = 0; j < a->dim; ++j) {
            Mat ej(a->field, 1, a->dim);
            ej.at(0, j) = 1;
            rows.push_back(a->mul_elems(ei, ej));
        }
        out.push_back(submodule(reg, vstack(rows, a->field, a->dim)).mod);
    }
    return out;
}

namespace {

// characters lambda_i : A -> K through A/J, one per idempotent
Mat characters(const Algebra& a) {
    Mat basis = vstack(a.idempotents, a.radical);
    auto inv = inverse(basis);
    if (!inv) throw std::invalid_argument("simples: idempotents+radical do not span");
    // row j of inv holds the coordinates of b_j; first r entries are the
    // idempotent coefficients
    return *inv;
}

}  // namespace

Module simple_at(const AlgebraPtr& a, int i) {
    Mat coords = characters(*a);
    Module s;
    s.alg = a;
    s.dim = 1;
    for (int j = 0; j < a->dim; ++j) {
        Mat v(a->field, 1, 1);
        v.at(0, 0) = coords.at(j, i);
        s.action.push_back(std::move(v));
    }
    return s;
}

std::vector<Module> simples(const AlgebraPtr& a) {
    std::vector<Module> out;
    for (int i = 0; i < a->num_idempotents(); ++i) out.push_back(simple_at(a, i));
    return out;
}

Mat radical_rows(const Module& m) {
    const Field f = m.alg->field;
    std::vector<Mat> rows;
    for (int s = 0; s < m.alg->radical_dim(); ++s) {
        Mat rho = m.act(m.alg->radical.row(s));
        for (int i = 0; i < m.dim; ++i) rows.push_back(rho.row(i));
    }
    Mat stacked = rows.empty() ? Mat(f, 0, m.dim) : vstack(rows, f, m.dim);
    return row_space_basis(stacked);
}

namespace {

struct TopData {
    std::vector<int> mults;
    std::vector<std::pair<int, Mat>> generators;  // (idempotent index, lift row)
};

TopData top_data(const Module& m) {
    TopData td;
    td.mults.assign(m.alg->num_idempotents(), 0);
    Mat span = radical_rows(m);
    RrefResult r = rref(span);
    for (int i = 0; i < m.alg->num_idempotents(); ++i) {
        Mat rho = m.act(m.alg->idempotents.row(i));
        for (int s = 0; s < m.dim; ++s) {
            Mat w = rho.row(s);
            if (row_space_contains(r, w)) continue;
            td.mults[i] += 1;
            td.generators.emplace_back(i, w);
            r = rref(vstack(r.r.rows_slice(0, r.rank), w));
        }
    }
    return td;
}

}  // namespace

std::vector<int> top_multiplicities(const Module& m) { return top_data(m).mults; }

Cover projective_cover(const Module& m) {
    const Field f = m.alg->field;
    TopData td = top_data(m);
    std::vector<Module> projs = projectives(m.alg);

    Cover cov;
    cov.mults = td.mults;
    cov.p = zero_module(m.alg);
    std::vector<Mat> pi_rows;
    for (auto& [i, v] : td.generators) {
        cov.p = direct_sum(cov.p, projs[i]);
        // the summand e_i A sits inside the regular module; its basis rows
        // are algebra elements u, mapped to v * act(u)
        const Module reg = regular_module(m.alg);
        Mat ei = m.alg->idempotents.row(i);
        std::vector<Mat> rows;
        for (int j = 0; j < m.alg->dim; ++j) {
            Mat ej(f, 1, m.alg->dim);
            ej.at(0, j) = 1;
            rows.push_back(m.alg->mul_elems(ei, ej));
        }
        Mat sub_basis = row_space_basis(vstack(rows, f, m.alg->dim));
        for (int s = 0; s < sub_basis.rows; ++s)
            pi_rows.push_back(mul(v, m.act(sub_basis.row(s))));
    }
    cov.pi = pi_rows.empty() ? Mat(f, 0, m.dim) : vstack(pi_rows, f, m.dim);
    return cov;
}

Module syzygy(const Module& m) {
    Cover cov = projective_cover(m);
    Mat k = kernel_basis(cov.pi);
    if (k.rows == 0) return zero_module(m.alg);
    return submodule(cov.p, k).mod;
}

bool is_projective(const Module& m) {
    return projective_cover(m).p.dim == m.dim;
}

Module dual(const Module& m) {
    Module d;
    d.alg = opposite(m.alg);
    d.dim = m.dim;
    for (const auto& a : m.action) d.action.push_back(transpose(a));
    return d;
}

bool is_injective(const Module& m) { return is_projective(dual(m)); }

Module nakayama(const Module& m) {
    const Field f = m.alg->field;
    std::vector<Mat> homs = hom_space(m, regular_module(m.alg));
    Module nak;
    nak.alg = m.alg;
    nak.dim = static_cast<int>(homs.size());
    if (nak.dim == 0) {
        nak.action.assign(m.alg->dim, Mat(f, 0, 0));
        return nak;
    }
    // Hom_A(M, A) is a left A-module via postcomposition with left
    // multiplication; dualizing transposes the action back over A.
    for (int b = 0; b < m.alg->dim; ++b) {
        Mat lmat = m.alg->left_mult(b);
        Mat t(f, nak.dim, nak.dim);
        for (int s = 0; s < nak.dim; ++s) {
            Mat image = mul(homs[s], lmat);
            auto coords = solve_in_span(homs, image);
            if (!coords) throw std::logic_error("nakayama: hom space not closed");
            t.set_row(s, *coords);
        }
        nak.action.push_back(transpose(t));
    }
    return nak;
}

namespace {

// phi with stable rank: iterate squaring until rank(E) == rank(E^2).
Mat fitting_power(const Mat& phi) {
    Mat e = phi;
    for (;;) {
        Mat e2 = mul(e, e);
        if (rank_of(e2) == rank_of(e)) return e;
        e = std::move(e2);
    }
}

struct SplitResult {
    bool split = false;
    Mat im_rows;
    Mat ker_rows;
};

SplitResult try_split(const Module& m, const Mat& phi) {
    Mat e = fitting_power(phi);
    int r = rank_of(e);
    if (r == 0 || r == m.dim) return {};
    SplitResult s;
    s.split = true;
    s.im_rows = row_space_basis(e);
    s.ker_rows = kernel_basis(e);
    return s;
}

void decompose_rec(const Module& m, const Mat& rows_in_orig, int trials, Rng& rng,
                   DecompositionReport& report, bool& all_exhaustive) {
    if (m.dim == 0) return;
    std::vector<Mat> endos = hom_space(m, m);
    const Field f = m.alg->field;

    auto recurse = [&](const SplitResult& s) {
        Submodule im = submodule(m, s.im_rows);
        Submodule ker = submodule(m, s.ker_rows);
        decompose_rec(im.mod, mul(im.rows, rows_in_orig), trials, rng, report, all_exhaustive);
        decompose_rec(ker.mod, mul(ker.rows, rows_in_orig), trials, rng, report, all_exhaustive);
    };

    // endomorphism basis elements first
    for (const auto& phi : endos) {
        SplitResult s = try_split(m, phi);
        if (s.split) { recurse(s); return; }
    }
    // seeded random combinations
    for (int t = 0; t < trials; ++t) {
        Mat phi(f, m.dim, m.dim);
        for (const auto& e : endos) phi = add(phi, scale(e, rng.residue(f.p)));
        SplitResult s = try_split(m, phi);
        if (s.split) { recurse(s); return; }
    }
    // exhaustive idempotent search when the endomorphism ring is small
    const int h = static_cast<int>(endos.size());
    double log_count = h * std::log2(double(f.p));
    if (log_count <= 20.0) {
        std::vector<uint32_t> coeff(h, 0);
        bool found = false;
        for (;;) {
            // next tuple
            int pos = 0;
            while (pos < h && ++coeff[pos] == f.p) coeff[pos++] = 0;
            if (pos == h) break;
            Mat phi(f, m.dim, m.dim);
            for (int i = 0; i < h; ++i)
                if (coeff[i]) phi = add(phi, scale(endos[i], coeff[i]));
            SplitResult s = try_split(m, phi);
            if (s.split) { found = true; recurse(s); break; }
        }
        if (found) return;
        // no endomorphism splits: certified indecomposable
        report.leaves.push_back(m);
        report.leaf_rows.push_back(rows_in_orig);
        return;
    }
    all_exhaustive = false;
    report.leaves.push_back(m);
    report.leaf_rows.push_back(rows_in_orig);
}

}  // namespace

DecompositionReport decompose(const Module& m, int trials, uint64_t seed) {
    DecompositionReport report;
    report.trials = trials;
    report.seed = seed;
    Rng rng(seed);
    bool all_exhaustive = true;
    decompose_rec(m, identity(m.alg->field, m.dim), trials, rng, report, all_exhaustive);
    report.exhaustive = all_exhaustive;

    // group leaves by isomorphism
    std::vector<int> group_of(report.leaves.size(), -1);
    for (size_t i = 0; i < report.leaves.size(); ++i) {
        for (size_t g = 0; g < report.groups.size(); ++g) {
            if (report.groups[g].rep.dim != report.leaves[i].dim) continue;
            IsoVerdict v = is_isomorphic(report.groups[g].rep, report.leaves[i], trials,
                                         seed ^ (0x9e37 + i));
            if (v.kind == IsoVerdict::Yes) {
                report.groups[g].mult += 1;
                group_of[i] = static_cast<int>(g);
                break;
            }
        }
        if (group_of[i] < 0) {
            report.groups.push_back({report.leaves[i], 1});
            group_of[i] = static_cast<int>(report.groups.size()) - 1;
        }
    }
    return report;
}

IsoVerdict is_isomorphic(const Module& m, const Module& n, int trials, uint64_t seed) {
    require_same_algebra(m, n, "is_isomorphic");
    const Field f = m.alg->field;
    if (m.dim != n.dim) return {IsoVerdict::No, {}, "dimension mismatch"};
    if (m.dim == 0) return {IsoVerdict::Yes, Mat(f, 0, 0), ""};
    std::vector<Mat> fw = hom_space(m, n);
    if (fw.empty()) return {IsoVerdict::No, {}, "Hom(m,n) = 0"};
    std::vector<Mat> bw = hom_space(n, m);
    if (bw.empty()) return {IsoVerdict::No, {}, "Hom(n,m) = 0"};
    if (fw.size() != bw.size())
        return {IsoVerdict::No, {}, "Hom dimensions differ between directions"};
    if (top_multiplicities(m) != top_multiplicities(n))
        return {IsoVerdict::No, {}, "top multiplicities differ"};

    for (const auto& h : fw)
        if (is_invertible(h)) return {IsoVerdict::Yes, h, ""};

    const int hdim = static_cast<int>(fw.size());
    double log_count = hdim * std::log2(double(f.p));
    if (log_count <= 12.0) {
        std::vector<uint32_t> coeff(hdim, 0);
        for (;;) {
            int pos = 0;
            while (pos < hdim && ++coeff[pos] == f.p) coeff[pos++] = 0;
            if (pos == hdim) break;
            Mat cand(f, m.dim, n.dim);
            for (int i = 0; i < hdim; ++i)
                if (coeff[i]) cand = add(cand, scale(fw[i], coeff[i]));
            if (is_invertible(cand)) return {IsoVerdict::Yes, cand, ""};
        }
        return {IsoVerdict::No, {}, "no invertible map in Hom (exhausted)"};
    }

    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Mat cand(f, m.dim, n.dim);
        for (const auto& h : fw) cand = add(cand, scale(h, rng.residue(f.p)));
        if (is_invertible(cand)) return {IsoVerdict::Yes, cand, ""};
    }
    return {IsoVerdict::Undecided, {}, "no invertible combination found in " +
                                           std::to_string(trials) + " trials"};
}

}  // namespace fdhom
