#include "fdhom/homology.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fdhom {

namespace {

// direct syzygy iteration is abandoned beyond this dimension; the summand
// graph takes over for certificates
constexpr int kPdDirectCap = 4096;

}  // namespace

Resolution minimal_resolution(const Module& m, int n_max) {
    Resolution res;
    res.target = m;
    Cover c0 = projective_cover(m);
    res.terms.push_back(c0.p);
    res.aug = c0.pi;
    Mat ker_rows = kernel_basis(c0.pi);
    for (int k = 1; k <= n_max; ++k) {
        if (ker_rows.rows == 0) {
            res.complete = true;
            break;
        }
        Submodule omega = submodule(res.terms.back(), ker_rows);
        Cover c = projective_cover(omega.mod);
        // P_k -> Omega_k -> P_{k-1}
        res.diffs.push_back(mul(c.pi, omega.rows));
        res.terms.push_back(c.p);
        ker_rows = kernel_basis(c.pi);
    }
    if (!res.complete && ker_rows.rows == 0) res.complete = true;
    return res;
}

PdVerdict pd(const Module& m, int n_max, int trials, uint64_t seed) {
    if (m.dim == 0) return {PdVerdict::Finite, -1, {}};

    // direct phase: look for a vanishing syzygy
    Module cur = m;
    for (int k = 1; k <= n_max; ++k) {
        if (cur.dim > kPdDirectCap) break;
        cur = syzygy(cur);
        if (cur.dim == 0) return {PdVerdict::Finite, k - 1, {}};
    }

    // graph phase: indecomposable summand U -> summands of syzygy(U)
    Rng rng(seed);
    std::vector<Module> nodes;
    std::vector<std::vector<int>> edges;
    std::vector<int> depth;
    auto match = [&](const Module& u) -> std::pair<int, bool> {
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].dim != u.dim) continue;
            if (is_isomorphic(nodes[i], u, trials, rng.fork(301 + i).next()).kind ==
                IsoVerdict::Yes)
                return {static_cast<int>(i), false};
        }
        nodes.push_back(u);
        edges.emplace_back();
        depth.push_back(0);
        return {static_cast<int>(nodes.size()) - 1, true};
    };

    std::vector<int> queue;
    DecompositionReport root = decompose(m, trials, rng.fork(1).next());
    for (const auto& g : root.groups) {
        auto [idx, fresh] = match(g.rep);
        if (fresh) queue.push_back(idx);
    }
    std::vector<bool> expanded(128, false);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        if (depth[u] > n_max) continue;
        Module s = syzygy(nodes[u]);
        if (s.dim == 0) continue;
        DecompositionReport rep = decompose(s, trials, rng.fork(17 + u).next());
        for (const auto& g : rep.groups) {
            auto [v, fresh] = match(g.rep);
            edges[u].push_back(v);
            if (fresh) {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    (void)expanded;

    // cycle detection (three-color DFS over what was expanded)
    std::vector<int> color(nodes.size(), 0);
    std::vector<int> stack, parent(nodes.size(), -1);
    std::vector<int> cycle_nodes;
    std::function<bool(int)> dfs = [&](int u) -> bool {
        color[u] = 1;
        for (int v : edges[u]) {
            if (color[v] == 1) {
                // back edge: unwind u .. v
                cycle_nodes.push_back(v);
                int w = u;
                while (w != v && w != -1) {
                    cycle_nodes.push_back(w);
                    w = parent[w];
                }
                std::reverse(cycle_nodes.begin(), cycle_nodes.end());
                return true;
            }
            if (color[v] == 0) {
                parent[v] = u;
                if (dfs(v)) return true;
            }
        }
        color[u] = 2;
        return false;
    };
    for (size_t i = 0; i < nodes.size(); ++i)
        if (color[i] == 0 && dfs(static_cast<int>(i))) {
            PdVerdict v;
            v.kind = PdVerdict::InfiniteByCycle;
            v.n = n_max;
            for (int idx : cycle_nodes)
                v.cycle.push_back("U" + std::to_string(idx) + "(dim " +
                                  std::to_string(nodes[idx].dim) + ")");
            return v;
        }
    return {PdVerdict::Unknown, n_max, {}};
}

StableHom stable_hom(const Module& m, const Module& n) {
    require_same_algebra(m, n, "stable_hom");
    const Field f = m.alg->field;
    StableHom sh;
    sh.hom = hom_space(m, n);
    sh.proj_flat = Mat(f, 0, m.dim * n.dim);
    if (sh.hom.empty()) return sh;

    // a map factors through a projective iff it factors through the cover
    Cover cov = projective_cover(n);
    std::vector<Mat> lifts = hom_space(m, cov.p);
    std::vector<Mat> rows;
    for (const auto& g : lifts) rows.push_back(flatten(mul(g, cov.pi)));
    Mat stacked = rows.empty() ? Mat(f, 0, m.dim * n.dim) : vstack(rows, f, m.dim * n.dim);
    sh.proj_flat = row_space_basis(stacked);

    RrefResult acc = rref(sh.proj_flat);
    for (const auto& h : sh.hom) {
        Mat fh = flatten(h);
        if (row_space_contains(acc, fh)) continue;
        sh.reps.push_back(h);
        acc = rref(vstack(acc.r.rows_slice(0, acc.rank), fh));
    }
    return sh;
}

Mat stable_coords(const StableHom& sh, const Mat& map) {
    const Field f = map.f;
    const int q = sh.dim();
    if (q == 0) return Mat(f, 1, 0);
    std::vector<Mat> rows;
    for (const auto& r : sh.reps) rows.push_back(flatten(r));
    Mat basis = vstack(rows, f, map.rows * map.cols);
    Mat full = vstack(basis, sh.proj_flat);
    auto sol = solve(full, flatten(map));
    if (!sol) throw std::logic_error("stable_coords: map outside Hom + projective span");
    Mat out(f, 1, q);
    for (int i = 0; i < q; ++i) out.at(0, i) = sol->at(0, i);
    return out;
}

namespace {

struct Stage {
    Module v, w;
    Cover cv, cw;
    Mat kv_rows, kw_rows;  // syzygy bases inside the covers
    StableHom sh;
};

// module-map lift F : P_V -> P_W with F * pi_W = pi_V * f
Mat lift_through_covers(const Stage& st, const Mat& f) {
    const Field fd = f.f;
    const Module& pv = st.cv.p;
    const Module& pw = st.cw.p;
    const int nv = pv.dim * pw.dim;
    Mat sys(fd, nv, 0);
    Mat target(fd, 1, 0);
    for (int b = 0; b < pv.alg->dim; ++b) {
        Mat blk = sub(kron(transpose(pv.action[b]), identity(fd, pw.dim)),
                      kron(identity(fd, pv.dim), pw.action[b]));
        sys = hstack(sys, blk);
        target = hstack(target, zeros(fd, 1, blk.cols));
    }
    sys = hstack(sys, kron(identity(fd, pv.dim), st.cw.pi));
    target = hstack(target, flatten(mul(st.cv.pi, f)));
    auto sol = solve(sys, target);
    if (!sol) throw std::logic_error("sing_hom: projective lift does not exist");
    return unflatten(*sol, pv.dim, pw.dim);
}

}  // namespace

SingHomReport sing_hom(const Module& v, const Module& w, int i_max, int window) {
    require_same_algebra(v, w, "sing_hom");
    SingHomReport rep;
    rep.window = window;
    rep.bound = i_max;

    std::vector<Stage> stages;
    Module cv = v, cw = w;
    for (int i = 0; i <= i_max; ++i) {
        if (cv.dim == 0 || cw.dim == 0) {
            // one side has finite projective dimension: the colimit vanishes
            rep.stabilized = true;
            rep.value = 0;
            return rep;
        }
        Stage st;
        st.v = cv;
        st.w = cw;
        st.cv = projective_cover(cv);
        st.cw = projective_cover(cw);
        st.kv_rows = kernel_basis(st.cv.pi);
        st.kw_rows = kernel_basis(st.cw.pi);
        st.sh = stable_hom(cv, cw);
        rep.stage_dims.push_back(st.sh.dim());
        stages.push_back(st);
        if (i < i_max) {
            cv = st.kv_rows.rows ? submodule(st.cv.p, st.kv_rows).mod : zero_module(v.alg);
            cw = st.kw_rows.rows ? submodule(st.cw.p, st.kw_rows).mod : zero_module(v.alg);
        }
    }

    const Field f = v.alg->field;
    std::vector<Mat> taus;  // tau_i : stable(i) -> stable(i+1)
    for (int i = 0; i + 1 <= i_max; ++i) {
        const Stage& st = stages[i];
        const Stage& nx = stages[i + 1];
        Mat tau(f, st.sh.dim(), nx.sh.dim());
        if (st.sh.dim() > 0 && nx.sh.dim() > 0) {
            for (int s = 0; s < st.sh.dim(); ++s) {
                Mat lift = lift_through_covers(st, st.sh.reps[s]);
                auto omega_f = solve(st.kw_rows, mul(st.kv_rows, lift));
                if (!omega_f) throw std::logic_error("sing_hom: restriction leaves the kernel");
                tau.set_row(s, stable_coords(nx.sh, *omega_f));
            }
        }
        taus.push_back(std::move(tau));
    }

    for (int j = 0; j + window <= static_cast<int>(taus.size()); ++j) {
        Mat comp = taus[j];
        for (int t = 1; t < window; ++t) comp = mul(comp, taus[j + t]);
        rep.window_ranks.push_back(rank_of(comp));
    }
    for (size_t j = 0; j + 1 < rep.window_ranks.size(); ++j) {
        if (rep.window_ranks[j] == rep.window_ranks[j + 1]) {
            rep.stabilized = true;
            rep.value = rep.window_ranks[j];
            return rep;
        }
    }
    rep.stabilized = false;
    return rep;
}

QuotientSpace tensor_over_envelope(const Bimodule& x, const Bimodule& y) {
    const Field f = x.left->field;
    const int dx = x.dim(), dy = y.dim();
    const int da = x.left->dim;
    if (x.left->dim != y.left->dim || !same_algebra(*x.left, *y.left) ||
        !same_algebra(*x.right, *y.right) || !same_algebra(*x.left, *x.right))
        throw std::invalid_argument("tensor_over_envelope: need A-A-bimodules over one A");
    const int amb = dx * dy;
    std::vector<Mat> rels;
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            // e = a_i (x) a_j in A^e; e acts on y on the left by a_j * y * a_i
            const Mat& xe = x.mod.action[size_t(i) * da + j];
            Mat ye = mul(y.left_act(j), y.right_act(i));
            for (int s = 0; s < dx; ++s)
                for (int t = 0; t < dy; ++t) {
                    Mat row(f, 1, amb);
                    for (int c = 0; c < dy; ++c) row.at(0, s * dy + c) = f.neg(ye.at(t, c));
                    for (int c = 0; c < dx; ++c)
                        row.at(0, c * dy + t) = f.add(row.at(0, c * dy + t), xe.at(s, c));
                    rels.push_back(std::move(row));
                }
        }
    }
    Mat rel = rels.empty() ? Mat(f, 0, amb) : vstack(rels, f, amb);
    return make_quotient(f, amb, rel);
}

std::vector<int> tor_envelope(const Bimodule& x, int n_max) {
    const AlgebraPtr a = x.left;
    if (!same_algebra(*x.left, *x.right))
        throw std::invalid_argument("tor_envelope: need an A-A-bimodule");
    Bimodule rega = regular_bimodule(a);
    Resolution res = minimal_resolution(x.mod, n_max + 1);

    const Field f = a->field;
    std::vector<QuotientSpace> qs;
    for (const auto& term : res.terms)
        qs.push_back(tensor_over_envelope(Bimodule{a, a, term}, rega));

    std::vector<int> ranks;  // induced differential ranks, index k-1
    for (size_t k = 1; k < res.terms.size(); ++k) {
        Mat section = qs[k].include(identity(f, qs[k].dim()));
        Mat amb = mul(section, kron(res.diffs[k - 1], identity(f, a->dim)));
        ranks.push_back(rank_of(qs[k - 1].project(amb)));
    }

    std::vector<int> dims;
    for (int n = 0; n <= n_max; ++n) {
        if (n >= static_cast<int>(qs.size())) {
            dims.push_back(0);  // resolution terminated earlier
            continue;
        }
        int d = qs[n].dim();
        if (n >= 1) d -= ranks[n - 1];
        if (n < static_cast<int>(ranks.size())) d -= ranks[n];
        dims.push_back(d);
    }
    return dims;
}

int64_t bar_chain_dim(const AlgebraPtr& a, int n) {
    int64_t d = 1;
    for (int i = 0; i <= n; ++i) d *= a->dim;
    return d;
}

SparseMat hochschild_boundary(const AlgebraPtr& a, int n) {
    if (n < 1) throw std::invalid_argument("hochschild_boundary: degree >= 1");
    const Field f = a->field;
    const int d = a->dim;
    const int64_t rows = bar_chain_dim(a, n);
    const int64_t cols = bar_chain_dim(a, n - 1);
    SparseMat b(f, static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> tuple(n + 1, 0);
    for (int64_t r = 0; r < rows; ++r) {
        // decode row-major tuple
        int64_t rr = r;
        for (int j = n; j >= 0; --j) {
            tuple[j] = static_cast<int>(rr % d);
            rr /= d;
        }
        for (int t = 0; t < n; ++t) {
            for (auto& [k, c] : a->table(tuple[t], tuple[t + 1])) {
                int64_t idx = 0;
                for (int j = 0; j <= n; ++j) {
                    if (j == t) idx = idx * d + k;
                    else if (j == t + 1) continue;
                    else idx = idx * d + tuple[j];
                }
                uint32_t v = (t % 2 == 0) ? c : f.neg(c);
                b.add_entry(static_cast<int>(r), static_cast<int>(idx), v);
            }
        }
        // wrap term: a_n a_0 (x) a_1 ... a_{n-1}
        for (auto& [k, c] : a->table(tuple[n], tuple[0])) {
            int64_t idx = k;
            for (int j = 1; j <= n - 1; ++j) idx = idx * d + tuple[j];
            uint32_t v = (n % 2 == 0) ? c : f.neg(c);
            b.add_entry(static_cast<int>(r), static_cast<int>(idx), v);
        }
    }
    b.normalize();
    return b;
}

SparseMat bar_resolution_diff(const AlgebraPtr& a, int n) {
    if (n < 1) throw std::invalid_argument("bar_resolution_diff: degree >= 1");
    const Field f = a->field;
    const int d = a->dim;
    const int64_t rows = bar_chain_dim(a, n + 1);  // A^(x)(n+2)
    const int64_t cols = bar_chain_dim(a, n);
    SparseMat b(f, static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> tuple(n + 2, 0);
    for (int64_t r = 0; r < rows; ++r) {
        int64_t rr = r;
        for (int j = n + 1; j >= 0; --j) {
            tuple[j] = static_cast<int>(rr % d);
            rr /= d;
        }
        for (int t = 0; t <= n; ++t) {
            for (auto& [k, c] : a->table(tuple[t], tuple[t + 1])) {
                int64_t idx = 0;
                for (int j = 0; j <= n + 1; ++j) {
                    if (j == t) idx = idx * d + k;
                    else if (j == t + 1) continue;
                    else idx = idx * d + tuple[j];
                }
                uint32_t v = (t % 2 == 0) ? c : f.neg(c);
                b.add_entry(static_cast<int>(r), static_cast<int>(idx), v);
            }
        }
    }
    b.normalize();
    return b;
}

Bimodule bar_term_bimodule(const AlgebraPtr& a, int n) {
    // A^(x)(n+2) with outer actions
    const Field f = a->field;
    const int d = a->dim;
    int64_t inner = bar_chain_dim(a, n);  // d^(n+1)... middle factor count is n
    inner /= d;                           // d^n
    auto env = envelope(a, a);
    Module m;
    m.alg = env;
    m.dim = static_cast<int>(int64_t(d) * inner * d);
    Mat eye = identity(f, static_cast<int>(inner));
    for (int i = 0; i < d; ++i) {
        Mat li = kron(a->left_mult(i), eye);
        for (int j = 0; j < d; ++j)
            m.action.push_back(kron(li, a->right_mult(j)));
    }
    return Bimodule{a, a, std::move(m)};
}

namespace {

int boundary_rank(const AlgebraPtr& a, int n, int64_t size_cap) {
    int64_t entries = bar_chain_dim(a, n) * bar_chain_dim(a, n - 1);
    if (entries > size_cap)
        throw std::invalid_argument(
            "hochschild: bar boundary at degree " + std::to_string(n) + " needs " +
            std::to_string(entries) +
            " entries, over the size cap; use the minimal-resolution method");
    SparseMat b = hochschild_boundary(a, n);
    if (n >= 4) return rank_sparse(std::move(b));
    return rank_of(to_dense(b));
}

}  // namespace

HHTable hochschild(const AlgebraPtr& a, int n_max, HHMethod method, int64_t size_cap) {
    HHTable table;
    table.method = method;
    if (method == HHMethod::MinimalResolution) {
        table.dims = tor_envelope(regular_bimodule(a), n_max);
        return table;
    }
    std::vector<int> ranks(n_max + 2, 0);
    for (int n = 1; n <= n_max + 1; ++n) ranks[n] = boundary_rank(a, n, size_cap);
    for (int n = 0; n <= n_max; ++n) {
        int dim = static_cast<int>(bar_chain_dim(a, n));
        int h = dim - ranks[n + 1] - (n >= 1 ? ranks[n] : 0);
        table.dims.push_back(h);
    }
    return table;
}

HHBasisData hh_basis(const AlgebraPtr& a, int degree, int64_t size_cap) {
    const Field f = a->field;
    HHBasisData data;
    data.degree = degree;
    int64_t dim = bar_chain_dim(a, degree);
    int64_t next_entries = dim * bar_chain_dim(a, degree + 1);
    if (next_entries > size_cap || dim * dim > size_cap)
        throw std::invalid_argument("hh_basis: degree " + std::to_string(degree) +
                                    " exceeds the size cap");
    if (degree == 0) {
        data.cycles = identity(f, static_cast<int>(dim));
    } else {
        data.cycles = kernel_basis(to_dense(hochschild_boundary(a, degree)));
    }
    Mat bnd = to_dense(hochschild_boundary(a, degree + 1));
    data.boundary_span = rref(bnd);
    RrefResult acc = data.boundary_span;
    std::vector<Mat> reps;
    for (int i = 0; i < data.cycles.rows; ++i) {
        Mat row = data.cycles.row(i);
        if (row_space_contains(acc, row)) continue;
        reps.push_back(row);
        acc = rref(vstack(acc.r.rows_slice(0, acc.rank), row));
    }
    data.reps = reps.empty() ? Mat(f, 0, static_cast<int>(dim))
                             : vstack(reps, f, static_cast<int>(dim));
    return data;
}

Mat hh_coords(const HHBasisData& basis, const Mat& cycle) {
    const Field f = cycle.f;
    const int q = basis.dim();
    if (q == 0) {
        if (!row_space_contains(basis.boundary_span, cycle))
            throw std::logic_error("hh_coords: cycle is not a boundary in zero homology");
        return Mat(f, 1, 0);
    }
    Mat bnd_basis = basis.boundary_span.r.rows_slice(0, basis.boundary_span.rank);
    Mat full = vstack(basis.reps, bnd_basis);
    auto sol = solve(full, cycle);
    if (!sol) throw std::logic_error("hh_coords: vector is not a cycle class");
    Mat out(f, 1, q);
    for (int i = 0; i < q; ++i) out.at(0, i) = sol->at(0, i);
    return out;
}

namespace {

// homology dims of a complex T_0 <- T_1 <- ... given induced differential
// ranks; dims[k] = dim T_k
std::vector<int> homology_from_ranks(const std::vector<int>& dims,
                                     const std::vector<int>& ranks, int upto) {
    std::vector<int> h;
    for (int n = 0; n <= upto; ++n) {
        int v = dims[n];
        if (n >= 1) v -= ranks[n - 1];
        if (n < static_cast<int>(ranks.size())) v -= ranks[n];
        h.push_back(v);
    }
    return h;
}

}  // namespace

KeyComplexReport key_complex_compare(const Bimodule& m, const Bimodule& n, int n_max) {
    const AlgebraPtr a = m.left;
    const AlgebraPtr b = m.right;
    const Field f = a->field;
    KeyComplexReport rep;

    // LHS: (M (x)_B N) (x)_{A^e} Bar_k(A)
    Bimodule x = tensor_over(m, n);
    std::vector<QuotientSpace> lq;
    std::vector<Bimodule> bars;
    for (int k = 0; k <= n_max + 1; ++k) {
        bars.push_back(bar_term_bimodule(a, k));
        lq.push_back(tensor_over_envelope(x, bars[k]));
    }
    for (int k = 0; k <= n_max; ++k) rep.lhs_dims.push_back(lq[k].dim());
    std::vector<int> lranks;
    for (int k = 1; k <= n_max + 1; ++k) {
        Mat d = to_dense(bar_resolution_diff(a, k));
        Mat section = lq[k].include(identity(f, lq[k].dim()));
        Mat amb = mul(section, kron(identity(f, x.dim()), d));
        lranks.push_back(rank_of(lq[k - 1].project(amb)));
    }
    std::vector<int> ldims_full;
    for (int k = 0; k <= n_max + 1; ++k) ldims_full.push_back(lq[k].dim());
    rep.lhs_homology = homology_from_ranks(ldims_full, lranks, n_max);

    // RHS: B (x)_{B^e} (N (x)_A Bar_k(A) (x)_A M)
    Bimodule regb = regular_bimodule(b);
    std::vector<TensorBimodule> inner1, inner2;
    std::vector<QuotientSpace> rq;
    for (int k = 0; k <= n_max + 1; ++k) {
        inner1.push_back(tensor_over_full(n, bars[k]));
        inner2.push_back(tensor_over_full(inner1[k].result, m));
        rq.push_back(tensor_over_envelope(regb, inner2[k].result));
    }
    for (int k = 0; k <= n_max; ++k) rep.rhs_dims.push_back(rq[k].dim());
    std::vector<int> rranks;
    for (int k = 1; k <= n_max + 1; ++k) {
        Mat d = to_dense(bar_resolution_diff(a, k));
        // step 1: N (x) Bar_k -> N (x) Bar_{k-1}
        Mat s1 = inner1[k].q.include(identity(f, inner1[k].result.dim()));
        Mat mu = inner1[k - 1].q.project(mul(s1, kron(identity(f, n.dim()), d)));
        // step 2: (N (x) Bar) (x) M
        Mat s2 = inner2[k].q.include(identity(f, inner2[k].result.dim()));
        Mat nu = inner2[k - 1].q.project(mul(s2, kron(mu, identity(f, m.dim()))));
        // step 3: B (x)_{B^e} -
        Mat s3 = rq[k].include(identity(f, rq[k].dim()));
        Mat fin = rq[k - 1].project(mul(s3, kron(identity(f, b->dim), nu)));
        rranks.push_back(rank_of(fin));
    }
    std::vector<int> rdims_full;
    for (int k = 0; k <= n_max + 1; ++k) rdims_full.push_back(rq[k].dim());
    rep.rhs_homology = homology_from_ranks(rdims_full, rranks, n_max);

    rep.dims_equal = rep.lhs_dims == rep.rhs_dims;
    rep.homology_equal = rep.lhs_homology == rep.rhs_homology;
    return rep;
}

}  // namespace fdhom
