#include "fdhom/bimodule.hpp"

#include <functional>
#include <stdexcept>

namespace fdhom {

namespace {

void require_same_algebra_ptr(const AlgebraPtr& a, const AlgebraPtr& b, const char* op) {
    if (a.get() == b.get() || same_algebra(*a, *b)) return;
    throw std::invalid_argument(std::string(op) + ": algebra mismatch");
}

}  // namespace

Mat Bimodule::left_act(int i) const {
    const int db = right->dim;
    Mat r(left->field, dim(), dim());
    for (int j = 0; j < db; ++j) {
        uint32_t c = right->unit.at(0, j);
        if (c) r = add(r, scale(mod.action[size_t(i) * db + j], c));
    }
    return r;
}

Mat Bimodule::right_act(int j) const {
    const int db = right->dim;
    Mat r(left->field, dim(), dim());
    for (int i = 0; i < left->dim; ++i) {
        uint32_t c = left->unit.at(0, i);
        if (c) r = add(r, scale(mod.action[size_t(i) * db + j], c));
    }
    return r;
}

Mat Bimodule::left_act_elem(const Mat& x) const {
    Mat r(left->field, dim(), dim());
    for (int i = 0; i < left->dim; ++i)
        if (x.at(0, i)) r = add(r, scale(left_act(i), x.at(0, i)));
    return r;
}

Mat Bimodule::right_act_elem(const Mat& x) const {
    Mat r(left->field, dim(), dim());
    for (int j = 0; j < right->dim; ++j)
        if (x.at(0, j)) r = add(r, scale(right_act(j), x.at(0, j)));
    return r;
}

Bimodule bimodule_over(const AlgebraPtr& left, const AlgebraPtr& right, Module m) {
    auto env = envelope(left, right);
    if (!same_algebra(*m.alg, *env))
        throw std::invalid_argument("bimodule_over: module is not over envelope(A, B)");
    auto cert = validate_module(m);
    if (!cert.ok) throw std::invalid_argument("bimodule_over: " + cert.failure);
    Bimodule bm{left, right, std::move(m)};
    // side actions must commute and recompose to the envelope action
    const int db = right->dim;
    for (int i = 0; i < left->dim; ++i) {
        Mat la = bm.left_act(i);
        for (int j = 0; j < db; ++j) {
            Mat ra = bm.right_act(j);
            if (mul(la, ra) != mul(ra, la) ||
                mul(la, ra) != bm.mod.action[size_t(i) * db + j])
                throw std::invalid_argument(
                    "bimodule_over: side actions do not recompose at (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    return bm;
}

bool is_algebra_automorphism(const Algebra& a, const Mat& sigma) {
    if (sigma.rows != a.dim || sigma.cols != a.dim || !is_invertible(sigma)) return false;
    if (mul(a.unit, sigma) != a.unit) return false;
    for (int i = 0; i < a.dim; ++i) {
        Mat ei(a.field, 1, a.dim);
        ei.at(0, i) = 1;
        Mat si = mul(ei, sigma);
        for (int j = 0; j < a.dim; ++j) {
            Mat ej(a.field, 1, a.dim);
            ej.at(0, j) = 1;
            Mat lhs = mul(a.mul_elems(ei, ej), sigma);
            Mat rhs = a.mul_elems(si, mul(ej, sigma));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

Bimodule twist_bimodule(const AlgebraPtr& a, const Mat& sigma) {
    if (!is_algebra_automorphism(*a, sigma))
        throw std::invalid_argument("twist_bimodule: sigma is not an automorphism");
    auto env = envelope(a, a);
    Module m;
    m.alg = env;
    m.dim = a->dim;
    m.action.reserve(size_t(a->dim) * a->dim);
    for (int i = 0; i < a->dim; ++i) {
        Mat la = a->left_mult(i);
        for (int j = 0; j < a->dim; ++j) {
            Mat ej(a->field, 1, a->dim);
            ej.at(0, j) = 1;
            Mat ra = a->right_mult_elem(mul(ej, sigma));
            m.action.push_back(mul(la, ra));
        }
    }
    return Bimodule{a, a, std::move(m)};
}

Bimodule regular_bimodule(const AlgebraPtr& a) {
    return twist_bimodule(a, identity(a->field, a->dim));
}

Bimodule box_bimodule(const AlgebraPtr& a, const AlgebraPtr& b) {
    auto env = envelope(a, b);
    Module m;
    m.alg = env;
    m.dim = a->dim * b->dim;
    for (int i = 0; i < a->dim; ++i) {
        Mat la = a->left_mult(i);
        for (int j = 0; j < b->dim; ++j) m.action.push_back(kron(la, b->right_mult(j)));
    }
    return Bimodule{a, b, std::move(m)};
}

Bimodule projective_bimodule(const AlgebraPtr& a, const AlgebraPtr& b, int i, int j) {
    Bimodule big = box_bimodule(a, b);
    const Field f = a->field;
    // rows of Ae_i and e_jB
    std::vector<Mat> arows, brows;
    for (int k = 0; k < a->dim; ++k) {
        Mat ek(f, 1, a->dim);
        ek.at(0, k) = 1;
        arows.push_back(a->mul_elems(ek, a->idempotents.row(i)));
    }
    for (int k = 0; k < b->dim; ++k) {
        Mat ek(f, 1, b->dim);
        ek.at(0, k) = 1;
        brows.push_back(b->mul_elems(b->idempotents.row(j), ek));
    }
    Mat aei = row_space_basis(vstack(arows, f, a->dim));
    Mat ejb = row_space_basis(vstack(brows, f, b->dim));
    Submodule s = submodule(big.mod, kron(aei, ejb));
    return Bimodule{a, b, s.mod};
}

Bimodule bimodule_from_right_module(const Module& m) {
    auto k = field_algebra(m.alg->field);
    auto env = envelope(k, m.alg);
    Module em;
    em.alg = env;
    em.dim = m.dim;
    em.action = m.action;  // (0, j) -> action of b_j
    return Bimodule{k, m.alg, std::move(em)};
}

Bimodule direct_sum(const Bimodule& m, const Bimodule& n) {
    require_same_algebra_ptr(m.left, n.left, "bimodule direct_sum (left)");
    require_same_algebra_ptr(m.right, n.right, "bimodule direct_sum (right)");
    return Bimodule{m.left, m.right, direct_sum(m.mod, n.mod)};
}

Bimodule zero_bimodule(const AlgebraPtr& a, const AlgebraPtr& b) {
    return Bimodule{a, b, zero_module(envelope(a, b))};
}

Module restrict_right(const Bimodule& m) {
    Module r;
    r.alg = m.right;
    r.dim = m.dim();
    for (int j = 0; j < m.right->dim; ++j) r.action.push_back(m.right_act(j));
    return r;
}

Module restrict_left(const Bimodule& m) {
    Module r;
    r.alg = opposite(m.left);
    r.dim = m.dim();
    for (int i = 0; i < m.left->dim; ++i) r.action.push_back(m.left_act(i));
    return r;
}

Bimodule flip(const Bimodule& m) {
    auto lop = opposite(m.right);
    auto rop = opposite(m.left);
    auto env = envelope(lop, rop);
    const int da = m.left->dim, db = m.right->dim;
    Module f;
    f.alg = env;
    f.dim = m.dim();
    f.action.resize(size_t(da) * db);
    for (int j = 0; j < db; ++j)
        for (int i = 0; i < da; ++i)
            f.action[size_t(j) * da + i] = m.mod.action[size_t(i) * db + j];
    return Bimodule{lop, rop, std::move(f)};
}

TensorModule tensor_module(const Module& v, const Bimodule& m) {
    require_same_algebra(v, regular_module(m.left), "apply_tensor_functor");
    const Field f = v.alg->field;
    const int dv = v.dim, dm = m.dim();
    const int amb = dv * dm;
    // relations (v*a) (x) m - v (x) (a*m) over the algebra basis
    std::vector<Mat> rels;
    for (int b = 0; b < m.left->dim; ++b) {
        Mat ra = v.action[b];
        Mat la = m.left_act(b);
        for (int s = 0; s < dv; ++s) {
            for (int t = 0; t < dm; ++t) {
                Mat row(f, 1, amb);
                for (int c = 0; c < dm; ++c)
                    row.at(0, s * dm + c) = f.neg(la.at(t, c));
                for (int c = 0; c < dv; ++c)
                    row.at(0, c * dm + t) = f.add(row.at(0, c * dm + t), ra.at(s, c));
                rels.push_back(std::move(row));
            }
        }
    }
    Mat rel = rels.empty() ? Mat(f, 0, amb) : vstack(rels, f, amb);

    TensorModule tm;
    tm.q = make_quotient(f, amb, rel);
    tm.dim_m = dm;
    tm.result.alg = m.right;
    tm.result.dim = tm.q.dim();
    Mat section = tm.q.include(identity(f, tm.q.dim()));
    for (int j = 0; j < m.right->dim; ++j) {
        Mat w = kron(identity(f, dv), m.right_act(j));
        tm.result.action.push_back(tm.q.project(mul(section, w)));
    }
    return tm;
}

Module apply_tensor_functor(const Module& v, const Bimodule& m) {
    return tensor_module(v, m).result;
}

Mat tensor_functor_map(const TensorModule& src, const TensorModule& dst, const Mat& f) {
    Mat section = src.q.include(identity(f.f, src.result.dim));
    return dst.q.project(mul(section, kron(f, identity(f.f, src.dim_m))));
}

TensorBimodule tensor_over_full(const Bimodule& m, const Bimodule& n) {
    require_same_algebra_ptr(m.right, n.left, "tensor_over: middle mismatch");
    const Field f = m.left->field;
    const int dm = m.dim(), dn = n.dim();
    const int amb = dm * dn;
    std::vector<Mat> rels;
    for (int b = 0; b < m.right->dim; ++b) {
        Mat rb = m.right_act(b);
        Mat lb = n.left_act(b);
        for (int s = 0; s < dm; ++s)
            for (int t = 0; t < dn; ++t) {
                Mat row(f, 1, amb);
                for (int c = 0; c < dn; ++c)
                    row.at(0, s * dn + c) = f.neg(lb.at(t, c));
                for (int c = 0; c < dm; ++c)
                    row.at(0, c * dn + t) = f.add(row.at(0, c * dn + t), rb.at(s, c));
                rels.push_back(std::move(row));
            }
    }
    Mat rel = rels.empty() ? Mat(f, 0, amb) : vstack(rels, f, amb);

    TensorBimodule tb;
    tb.q = make_quotient(f, amb, rel);
    auto env = envelope(m.left, n.right);
    Module out;
    out.alg = env;
    out.dim = tb.q.dim();
    Mat section = tb.q.include(identity(f, tb.q.dim()));
    for (int i = 0; i < m.left->dim; ++i) {
        Mat li = kron(m.left_act(i), identity(f, dn));
        for (int k = 0; k < n.right->dim; ++k) {
            Mat w = mul(li, kron(identity(f, dm), n.right_act(k)));
            out.action.push_back(tb.q.project(mul(section, w)));
        }
    }
    tb.result = Bimodule{m.left, n.right, std::move(out)};
    return tb;
}

Bimodule tensor_over(const Bimodule& m, const Bimodule& n) {
    return tensor_over_full(m, n).result;
}

namespace {

// Common machinery for the two Hom duals: a basis of linear maps M -> C
// closed under (b |> F <| a), realized on the span by coordinates.
Bimodule hom_bimodule(const AlgebraPtr& outL, const AlgebraPtr& outR,
                      const std::vector<Mat>& homs,
                      const std::function<Mat(int, const Mat&, int)>& conjugate) {
    auto env = envelope(outL, outR);
    const Field f = outL->field;
    const int h = static_cast<int>(homs.size());
    Module m;
    m.alg = env;
    m.dim = h;
    for (int i = 0; i < outL->dim; ++i)
        for (int j = 0; j < outR->dim; ++j) {
            Mat t(f, h, h);
            for (int s = 0; s < h; ++s) {
                Mat image = conjugate(i, homs[s], j);
                auto coords = solve_in_span(homs, image);
                if (!coords)
                    throw std::logic_error("hom_bimodule: span not closed under actions");
                t.set_row(s, *coords);
            }
            m.action.push_back(std::move(t));
        }
    return Bimodule{outL, outR, std::move(m)};
}

}  // namespace

Bimodule hom_dual_left(const Bimodule& m) {
    // left-A-linear maps M -> A; B acts by precomposition with the right
    // action, A by postcomposition with right multiplication
    Module ml = restrict_left(m);
    auto aop = opposite(m.left);
    std::vector<Mat> homs = hom_space(ml, regular_module(aop));
    std::vector<Mat> right_acts, amults;
    for (int j = 0; j < m.right->dim; ++j) right_acts.push_back(m.right_act(j));
    for (int i = 0; i < m.left->dim; ++i) amults.push_back(m.left->right_mult(i));
    auto conj = [&](int bj, const Mat& F, int ai) {
        return mul(right_acts[bj], mul(F, amults[ai]));
    };
    return hom_bimodule(m.right, m.left, homs, conj);
}

Bimodule hom_dual_right(const Bimodule& m) {
    // right-B-linear maps M -> B; B acts by postcomposition with left
    // multiplication, A by precomposition with the left action
    Module mr = restrict_right(m);
    std::vector<Mat> homs = hom_space(mr, regular_module(m.right));
    std::vector<Mat> left_acts, bmults;
    for (int i = 0; i < m.left->dim; ++i) left_acts.push_back(m.left_act(i));
    for (int j = 0; j < m.right->dim; ++j) bmults.push_back(m.right->left_mult(j));
    auto conj = [&](int bj, const Mat& F, int ai) {
        return mul(left_acts[ai], mul(F, bmults[bj]));
    };
    return hom_bimodule(m.right, m.left, homs, conj);
}

Mat trace_ideal_right(const Bimodule& m) {
    const Field f = m.right->field;
    Module mr = restrict_right(m);
    std::vector<Mat> homs = hom_space(mr, regular_module(m.right));
    std::vector<Mat> rows;
    for (const auto& h : homs)
        for (int s = 0; s < h.rows; ++s) rows.push_back(h.row(s));
    Mat stacked = rows.empty() ? Mat(f, 0, m.right->dim) : vstack(rows, f, m.right->dim);
    return row_space_basis(stacked);
}

bool is_progenerator_right(const Bimodule& m) {
    if (m.dim() == 0) return false;
    if (!is_projective(restrict_right(m))) return false;
    return trace_ideal_right(m).rows == m.right->dim;
}

namespace {

// Module generators of a right module: lifts of a top basis, with a
// preliminary attempt at the single generator sum(lifts).
std::vector<Mat> module_generators(const Module& r) {
    const Field f = r.alg->field;
    std::vector<int> mults = top_multiplicities(r);
    // recompute the lift vectors the same way top_multiplicities does
    Mat span = radical_rows(r);
    RrefResult acc = rref(span);
    std::vector<Mat> gens;
    for (int i = 0; i < r.alg->num_idempotents(); ++i) {
        Mat rho = r.act(r.alg->idempotents.row(i));
        for (int s = 0; s < r.dim; ++s) {
            Mat w = rho.row(s);
            if (row_space_contains(acc, w)) continue;
            gens.push_back(w);
            acc = rref(vstack(acc.r.rows_slice(0, acc.rank), w));
        }
    }
    if (gens.size() > 1) {
        Mat g(f, 1, r.dim);
        for (const auto& v : gens) g = add(g, v);
        std::vector<Mat> orbit;
        for (int j = 0; j < r.alg->dim; ++j) {
            Mat ej(f, 1, r.alg->dim);
            ej.at(0, j) = 1;
            orbit.push_back(mul(g, r.act(ej)));
        }
        if (rank_of(vstack(orbit, f, r.dim)) == r.dim) return {g};
    }
    return gens;
}

}  // namespace

DualBasis dual_basis(const Bimodule& m) {
    const Field f = m.right->field;
    const int dm = m.dim(), db = m.right->dim;
    Module r = restrict_right(m);
    if (dm == 0) return {};

    std::vector<Mat> gens = module_generators(r);
    const int k = static_cast<int>(gens.size());
    // phi : B^k ->> M, (b_t) -> sum g_t b_t
    Mat phi(f, k * db, dm);
    for (int t = 0; t < k; ++t)
        for (int c = 0; c < db; ++c) {
            Mat ec(f, 1, db);
            ec.at(0, c) = 1;
            phi.set_row(t * db + c, mul(gens[t], r.act(ec)));
        }

    // sigma : M -> B^k, a right-B-module map with sigma . phi = id; solve the
    // intertwining equations together with the splitting equation on vec(S)
    const int freedim = k * db;
    const int nvar = dm * freedim;
    std::vector<Mat> blocks;
    Mat idk = identity(f, k);
    for (int b = 0; b < db; ++b) {
        Mat free_act = kron(idk, m.right->right_mult(b));
        blocks.push_back(sub(kron(transpose(r.action[b]), identity(f, freedim)),
                             kron(identity(f, dm), free_act)));
    }
    blocks.push_back(kron(identity(f, dm), phi));
    Mat sys(f, nvar, 0);
    for (auto& blk : blocks) sys = hstack(sys, blk);
    Mat target(f, 1, sys.cols);
    Mat idm_flat = flatten(identity(f, dm));
    for (int c = 0; c < dm * dm; ++c)
        target.at(0, sys.cols - dm * dm + c) = idm_flat.at(0, c);
    auto sol = solve(sys, target);
    if (!sol)
        throw std::invalid_argument(
            "dual_basis: right restriction is not projective (no splitting of the "
            "cover B^" + std::to_string(k) + " ->> M solves sigma*phi = id)");
    Mat sigma = unflatten(*sol, dm, freedim);

    DualBasis out;
    for (int t = 0; t < k; ++t) {
        out.elements.push_back(gens[t]);
        Mat ft(f, dm, db);
        for (int i = 0; i < dm; ++i)
            for (int c = 0; c < db; ++c) ft.at(i, c) = sigma.at(i, t * db + c);
        out.functionals.push_back(std::move(ft));
    }
    // dual-basis identity: sum_t m_t f_t(v) = v on every basis vector
    for (int i = 0; i < dm; ++i) {
        Mat v(f, 1, dm);
        v.at(0, i) = 1;
        Mat acc(f, 1, dm);
        for (int t = 0; t < k; ++t)
            acc = add(acc, mul(out.elements[t], r.act(mul(v, out.functionals[t]))));
        if (acc != v) throw std::logic_error("dual_basis: identity check failed");
    }
    return out;
}

UnitMapResult unit_map(const Bimodule& m) {
    const Field f = m.left->field;
    // left dual basis via the flipped bimodule; fails when M is not
    // left-A-projective
    DualBasis left_db;
    try {
        left_db = dual_basis(flip(m));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("unit_map: M is not projective as a left A-module");
    }

    Bimodule mdual = hom_dual_left(m);
    // functionals of the flipped dual basis are left-A-linear maps M -> A,
    // i.e. elements of mdual's underlying hom basis span
    Module ml = restrict_left(m);
    std::vector<Mat> homs = hom_space(ml, regular_module(opposite(m.left)));

    TensorBimodule t = tensor_over_full(mdual, m);
    const int dB = m.right->dim;
    Mat eta(f, dB, t.result.dim());
    for (int c = 0; c < dB; ++c) {
        Mat ec(f, 1, dB);
        ec.at(0, c) = 1;
        Mat amb(f, 1, mdual.dim() * m.dim());
        for (size_t s = 0; s < left_db.elements.size(); ++s) {
            auto coords = solve_in_span(homs, left_db.functionals[s]);
            if (!coords) throw std::logic_error("unit_map: functional outside hom span");
            Mat usb = mul(left_db.elements[s], m.right_act_elem(ec));
            amb = add(amb, kron(*coords, usb));
        }
        eta.set_row(c, t.q.project(amb));
    }

    UnitMapResult res;
    res.target = t.result;
    res.eta = eta;
    res.injective = rank_of(eta) == dB;

    // cokernel as a quotient B-B-bimodule
    QuotientSpace cq = make_quotient(f, t.result.dim(), eta);
    Module u;
    u.alg = t.result.mod.alg;
    u.dim = cq.dim();
    Mat section = cq.include(identity(f, cq.dim()));
    for (const auto& act : t.result.mod.action)
        u.action.push_back(cq.project(mul(section, act)));
    res.cokernel = Bimodule{m.right, m.right, std::move(u)};
    return res;
}

}  // namespace fdhom
