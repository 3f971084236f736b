#include "fdhom/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fdhom {

Mat Algebra::right_mult(int j) const {
    Mat m(field, dim, dim);
    for (int i = 0; i < dim; ++i)
        for (auto& [k, c] : table(i, j)) m.at(i, k) = field.add(m.at(i, k), c);
    return m;
}

Mat Algebra::left_mult(int i) const {
    Mat m(field, dim, dim);
    for (int j = 0; j < dim; ++j)
        for (auto& [k, c] : table(i, j)) m.at(j, k) = field.add(m.at(j, k), c);
    return m;
}

Mat Algebra::right_mult_elem(const Mat& x) const {
    Mat m(field, dim, dim);
    for (int j = 0; j < dim; ++j) {
        uint32_t xj = x.at(0, j);
        if (xj == 0) continue;
        for (int i = 0; i < dim; ++i)
            for (auto& [k, c] : table(i, j))
                m.at(i, k) = field.add(m.at(i, k), field.mul(xj, c));
    }
    return m;
}

Mat Algebra::left_mult_elem(const Mat& x) const {
    Mat m(field, dim, dim);
    for (int i = 0; i < dim; ++i) {
        uint32_t xi = x.at(0, i);
        if (xi == 0) continue;
        for (int j = 0; j < dim; ++j)
            for (auto& [k, c] : table(i, j))
                m.at(j, k) = field.add(m.at(j, k), field.mul(xi, c));
    }
    return m;
}

Mat Algebra::mul_elems(const Mat& x, const Mat& y) const {
    Mat r(field, 1, dim);
    for (int i = 0; i < dim; ++i) {
        uint32_t xi = x.at(0, i);
        if (xi == 0) continue;
        for (int j = 0; j < dim; ++j) {
            uint32_t c0 = field.mul(xi, y.at(0, j));
            if (c0 == 0) continue;
            for (auto& [k, c] : table(i, j))
                r.at(0, k) = field.add(r.at(0, k), field.mul(c0, c));
        }
    }
    return r;
}

int Algebra::label_index(const std::string& l) const {
    for (int i = 0; i < dim; ++i)
        if (labels[i] == l) return i;
    return -1;
}

bool same_algebra(const Algebra& a, const Algebra& b) {
    return a.field == b.field && a.dim == b.dim && a.mult == b.mult && a.unit == b.unit &&
           a.idempotents == b.idempotents && a.radical == b.radical;
}

namespace {

struct Path {
    int src = 0;
    int tgt = 0;
    std::vector<int> arrows;  // arrow indices, first traversed first
};

std::string path_label(const QuiverPresentation& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertices[p.src];
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += "*";
        s += q.arrows[p.arrows[i]].name;
    }
    return s;
}

// Does `rel` occur as a contiguous subsequence ending at the last arrow?
bool ends_with(const std::vector<int>& arrows, const std::vector<int>& rel) {
    if (rel.size() > arrows.size()) return false;
    return std::equal(rel.begin(), rel.end(), arrows.end() - rel.size());
}

bool contains_relation(const std::vector<int>& arrows,
                       const std::vector<std::vector<int>>& rels) {
    for (size_t end = 1; end <= arrows.size(); ++end)
        for (const auto& r : rels)
            if (r.size() <= end &&
                std::equal(r.begin(), r.end(), arrows.begin() + end - r.size()))
                return true;
    return false;
}

}  // namespace

AlgebraPtr build_from_quiver(const QuiverPresentation& q) {
    const int nv = static_cast<int>(q.vertices.size());
    if (nv == 0) throw std::invalid_argument("quiver: no vertices");
    std::map<std::string, int> vidx;
    for (int v = 0; v < nv; ++v) {
        if (!vidx.emplace(q.vertices[v], v).second)
            throw std::invalid_argument("quiver: duplicate vertex " + q.vertices[v]);
    }
    std::map<std::string, int> aidx;
    std::vector<int> asrc, atgt;
    for (size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& ar = q.arrows[i];
        if (!vidx.count(ar.src) || !vidx.count(ar.tgt))
            throw std::invalid_argument("quiver: arrow " + ar.name + " has unknown endpoint");
        if (!aidx.emplace(ar.name, static_cast<int>(i)).second)
            throw std::invalid_argument("quiver: duplicate arrow name " + ar.name);
        asrc.push_back(vidx[ar.src]);
        atgt.push_back(vidx[ar.tgt]);
    }

    std::vector<std::vector<int>> rels;
    size_t max_rel = 2;
    for (const auto& r : q.relations) {
        if (r.size() < 2)
            throw std::invalid_argument("quiver: relation of length < 2");
        std::vector<int> rr;
        for (const auto& name : r) {
            auto it = aidx.find(name);
            if (it == aidx.end())
                throw std::invalid_argument("quiver: relation uses unknown arrow " + name);
            rr.push_back(it->second);
        }
        for (size_t i = 0; i + 1 < rr.size(); ++i)
            if (atgt[rr[i]] != asrc[rr[i + 1]]) {
                std::string s;
                for (auto& n : r) s += (s.empty() ? "" : "*") + n;
                throw std::invalid_argument("quiver: relation " + s + " is not composable");
            }
        max_rel = std::max(max_rel, rr.size());
        rels.push_back(std::move(rr));
    }

    // Enumerate relation-free paths breadth-first. Whether a one-arrow
    // extension stays relation-free depends only on the last max_rel-1
    // arrows, so if the basis is infinite some relation-free path repeats
    // such a window; the pigeonhole bound below detects that and names the
    // repeated stretch as an unbounded cycle.
    std::set<std::vector<int>> windows_seen;
    std::vector<Path> basis;
    for (int v = 0; v < nv; ++v) basis.push_back({v, v, {}});
    std::vector<Path> frontier = basis;
    size_t window_cap = 1;  // grows as new windows appear
    while (!frontier.empty()) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
                if (asrc[ai] != p.tgt) continue;
                Path np{p.src, atgt[ai], p.arrows};
                np.arrows.push_back(static_cast<int>(ai));
                bool zero = false;
                for (const auto& r : rels)
                    if (ends_with(np.arrows, r)) { zero = true; break; }
                if (zero) continue;
                if (np.arrows.size() >= max_rel - 1) {
                    std::vector<int> w(np.arrows.end() - (max_rel - 1), np.arrows.end());
                    windows_seen.insert(w);
                    window_cap = windows_seen.size();
                }
                if (np.arrows.size() > window_cap + max_rel + q.vertices.size()) {
                    // find the repeated window inside np and report the cycle
                    std::map<std::vector<int>, size_t> pos;
                    size_t w = max_rel - 1;
                    std::string cyc;
                    for (size_t end = w; end <= np.arrows.size(); ++end) {
                        std::vector<int> win(np.arrows.begin() + end - w,
                                             np.arrows.begin() + end);
                        auto it = pos.find(win);
                        if (it != pos.end()) {
                            for (size_t k = it->second; k < end; ++k)
                                cyc += (cyc.empty() ? "" : "*") + q.arrows[np.arrows[k]].name;
                            break;
                        }
                        pos[win] = end;
                    }
                    throw std::invalid_argument(
                        "quiver: path basis is infinite; unbounded relation-free cycle " + cyc);
                }
                next.push_back(std::move(np));
            }
        }
        for (const auto& p : next) basis.push_back(p);
        frontier = std::move(next);
    }

    std::sort(basis.begin(), basis.end(), [](const Path& x, const Path& y) {
        if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
        if (x.src != y.src) return x.src < y.src;
        return x.arrows < y.arrows;
    });

    auto alg = std::make_shared<Algebra>();
    alg->field = q.field;
    alg->dim = static_cast<int>(basis.size());
    std::map<std::vector<int>, int> by_arrows_src;  // key: (src, arrows) packed
    std::map<std::pair<int, std::vector<int>>, int> index_of;
    for (int i = 0; i < alg->dim; ++i) {
        alg->labels.push_back(path_label(q, basis[i]));
        index_of[{basis[i].src, basis[i].arrows}] = i;
    }
    (void)by_arrows_src;

    alg->mult.assign(size_t(alg->dim) * alg->dim, {});
    for (int i = 0; i < alg->dim; ++i) {
        for (int j = 0; j < alg->dim; ++j) {
            const Path& pi = basis[i];
            const Path& pj = basis[j];
            if (pi.tgt != pj.src) continue;
            std::vector<int> cat = pi.arrows;
            cat.insert(cat.end(), pj.arrows.begin(), pj.arrows.end());
            if (contains_relation(cat, rels)) continue;
            auto it = index_of.find({pi.src, cat});
            if (it == index_of.end()) continue;  // unreachable for admissible input
            alg->mult[size_t(i) * alg->dim + j].emplace_back(it->second, 1u);
        }
    }

    alg->unit = Mat(q.field, 1, alg->dim);
    alg->idempotents = Mat(q.field, nv, alg->dim);
    int njpaths = alg->dim - nv;
    alg->radical = Mat(q.field, njpaths, alg->dim);
    int jrow = 0;
    for (int i = 0; i < alg->dim; ++i) {
        if (basis[i].arrows.empty()) {
            alg->unit.at(0, i) = 1;
            alg->idempotents.at(basis[i].src, i) = 1;
        } else {
            alg->radical.at(jrow++, i) = 1;
        }
    }
    return alg;
}

AlgebraPtr field_algebra(Field f) {
    auto alg = std::make_shared<Algebra>();
    alg->field = f;
    alg->dim = 1;
    alg->labels = {"1"};
    alg->mult.assign(1, {{0, 1u}});
    alg->unit = Mat(f, 1, 1);
    alg->unit.at(0, 0) = 1;
    alg->idempotents = alg->unit;
    alg->radical = Mat(f, 0, 1);
    return alg;
}

AlgebraPtr opposite(const AlgebraPtr& a) {
    auto alg = std::make_shared<Algebra>();
    alg->field = a->field;
    alg->dim = a->dim;
    alg->labels = a->labels;
    alg->mult.assign(a->mult.size(), {});
    for (int i = 0; i < a->dim; ++i)
        for (int j = 0; j < a->dim; ++j)
            alg->mult[size_t(i) * a->dim + j] = a->table(j, i);
    alg->unit = a->unit;
    alg->idempotents = a->idempotents;
    alg->radical = a->radical;
    return alg;
}

AlgebraPtr envelope(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (!(a->field == b->field)) throw std::invalid_argument("envelope: field mismatch");
    const Field f = a->field;
    const int da = a->dim, db = b->dim;
    auto aop = opposite(a);
    auto alg = std::make_shared<Algebra>();
    alg->field = f;
    alg->dim = da * db;
    alg->labels.reserve(alg->dim);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            alg->labels.push_back(a->labels[i] + "⊗" + b->labels[j]);

    alg->mult.assign(size_t(alg->dim) * alg->dim, {});
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < db; ++j1)
            for (int i2 = 0; i2 < da; ++i2)
                for (int j2 = 0; j2 < db; ++j2) {
                    auto& out =
                        alg->mult[size_t(i1 * db + j1) * alg->dim + size_t(i2 * db + j2)];
                    for (auto& [ka, ca] : aop->table(i1, i2))
                        for (auto& [kb, cb] : b->table(j1, j2))
                            out.emplace_back(ka * db + kb, f.mul(ca, cb));
                }

    // unit = 1_a (x) 1_b
    alg->unit = kron(a->unit, b->unit);
    const int ra = a->num_idempotents(), rb = b->num_idempotents();
    alg->idempotents = Mat(f, ra * rb, alg->dim);
    for (int s = 0; s < ra; ++s)
        for (int t = 0; t < rb; ++t)
            alg->idempotents.set_row(s * rb + t,
                                     kron(a->idempotents.row(s), b->idempotents.row(t)));

    // J(a (x) b) = J(a) (x) b + a (x) J(b)
    std::vector<Mat> jrows;
    for (int s = 0; s < a->radical_dim(); ++s)
        for (int j = 0; j < db; ++j) {
            Mat ej(f, 1, db);
            ej.at(0, j) = 1;
            jrows.push_back(kron(a->radical.row(s), ej));
        }
    for (int i = 0; i < da; ++i)
        for (int t = 0; t < b->radical_dim(); ++t) {
            Mat ei(f, 1, da);
            ei.at(0, i) = 1;
            jrows.push_back(kron(ei, b->radical.row(t)));
        }
    Mat stacked = jrows.empty() ? Mat(f, 0, alg->dim) : vstack(jrows, f, alg->dim);
    alg->radical = row_space_basis(stacked);
    return alg;
}

AlgebraPtr triangular2(const AlgebraPtr& a) {
    const Field f = a->field;
    const int d = a->dim;
    auto alg = std::make_shared<Algebra>();
    alg->field = f;
    alg->dim = 3 * d;
    // blocks: 0 = top-left, 1 = top-right, 2 = bottom-right
    const char* suffix[3] = {"@11", "@12", "@22"};
    for (int blk = 0; blk < 3; ++blk)
        for (int i = 0; i < d; ++i) alg->labels.push_back(a->labels[i] + suffix[blk]);

    // (x E_pq)(y E_rs) = xy E_ps when q = r
    auto blk_pq = [](int blk) {
        switch (blk) {
            case 0: return std::pair<int, int>{1, 1};
            case 1: return std::pair<int, int>{1, 2};
            default: return std::pair<int, int>{2, 2};
        }
    };
    auto blk_of = [](int p, int s) {
        if (p == 1 && s == 1) return 0;
        if (p == 1 && s == 2) return 1;
        return 2;
    };
    alg->mult.assign(size_t(alg->dim) * alg->dim, {});
    for (int b1 = 0; b1 < 3; ++b1)
        for (int b2 = 0; b2 < 3; ++b2) {
            auto [p, q] = blk_pq(b1);
            auto [r, s] = blk_pq(b2);
            if (q != r) continue;
            int ob = blk_of(p, s);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    auto& out = alg->mult[size_t(b1 * d + i) * alg->dim + size_t(b2 * d + j)];
                    for (auto& [k, c] : a->table(i, j)) out.emplace_back(ob * d + k, c);
                }
        }

    alg->unit = Mat(f, 1, alg->dim);
    for (int i = 0; i < d; ++i) {
        alg->unit.at(0, 0 * d + i) = a->unit.at(0, i);
        alg->unit.at(0, 2 * d + i) = a->unit.at(0, i);
    }
    const int r = a->num_idempotents();
    alg->idempotents = Mat(f, 2 * r, alg->dim);
    for (int s = 0; s < r; ++s)
        for (int i = 0; i < d; ++i) {
            alg->idempotents.at(s, 0 * d + i) = a->idempotents.at(s, i);
            alg->idempotents.at(r + s, 2 * d + i) = a->idempotents.at(s, i);
        }
    // radical: J in both diagonal blocks plus the whole top-right block
    const int jd = a->radical_dim();
    alg->radical = Mat(f, 2 * jd + d, alg->dim);
    for (int s = 0; s < jd; ++s)
        for (int i = 0; i < d; ++i) {
            alg->radical.at(s, 0 * d + i) = a->radical.at(s, i);
            alg->radical.at(jd + s, 2 * d + i) = a->radical.at(s, i);
        }
    for (int i = 0; i < d; ++i) alg->radical.at(2 * jd + i, 1 * d + i) = 1;
    return alg;
}

AlgebraPtr make_table_algebra(Field f, int dim, std::vector<std::string> labels,
                              std::vector<std::vector<std::pair<int, uint32_t>>> mult,
                              Mat unit, Mat idempotents, Mat radical) {
    if (dim < 0 || static_cast<int>(labels.size()) != dim ||
        mult.size() != size_t(dim) * dim)
        throw std::invalid_argument("table algebra: inconsistent sizes");
    if (unit.rows != 1 || unit.cols != dim || idempotents.cols != dim || radical.cols != dim)
        throw std::invalid_argument("table algebra: vector shapes");
    auto alg = std::make_shared<Algebra>();
    alg->field = f;
    alg->dim = dim;
    alg->labels = std::move(labels);
    alg->mult = std::move(mult);
    for (auto& row : alg->mult)
        for (auto& [k, c] : row) {
            if (k < 0 || k >= dim) throw std::invalid_argument("table algebra: index range");
            c %= f.p;
        }
    alg->unit = std::move(unit);
    alg->idempotents = std::move(idempotents);
    alg->radical = std::move(radical);
    return alg;
}

AlgebraCertificate validate(const Algebra& a) {
    AlgebraCertificate cert;
    auto fail = [&](const std::string& msg) {
        cert.ok = false;
        cert.failure = msg;
        return cert;
    };
    const Field f = a.field;
    // unit law
    for (int i = 0; i < a.dim; ++i) {
        Mat ei(f, 1, a.dim);
        ei.at(0, i) = 1;
        if (a.mul_elems(a.unit, ei) != ei) return fail("unit law fails: 1*b_" + std::to_string(i));
        if (a.mul_elems(ei, a.unit) != ei) return fail("unit law fails: b_" + std::to_string(i) + "*1");
    }
    // associativity on basis triples
    for (int i = 0; i < a.dim; ++i) {
        Mat ei(f, 1, a.dim);
        ei.at(0, i) = 1;
        for (int j = 0; j < a.dim; ++j) {
            Mat ej(f, 1, a.dim);
            ej.at(0, j) = 1;
            Mat ij = a.mul_elems(ei, ej);
            for (int k = 0; k < a.dim; ++k) {
                Mat ek(f, 1, a.dim);
                ek.at(0, k) = 1;
                Mat lhs = a.mul_elems(ij, ek);
                Mat rhs = a.mul_elems(ei, a.mul_elems(ej, ek));
                if (lhs != rhs)
                    return fail("associativity fails at triple (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
            }
        }
    }
    // idempotents: orthogonal, idempotent, summing to 1
    const int r = a.num_idempotents();
    Mat sum(f, 1, a.dim);
    for (int s = 0; s < r; ++s) {
        sum = add(sum, a.idempotents.row(s));
        for (int t = 0; t < r; ++t) {
            Mat prod = a.mul_elems(a.idempotents.row(s), a.idempotents.row(t));
            Mat expect = (s == t) ? a.idempotents.row(s) : Mat(f, 1, a.dim);
            if (prod != expect)
                return fail("idempotent identity e_" + std::to_string(s) + "e_" +
                            std::to_string(t) + " fails");
        }
    }
    if (sum != a.unit) return fail("idempotents do not sum to the unit");
    // radical: two-sided ideal
    RrefResult jspan = rref(a.radical);
    if (jspan.rank != a.radical.rows) return fail("radical rows are dependent");
    for (int s = 0; s < a.radical_dim(); ++s)
        for (int i = 0; i < a.dim; ++i) {
            Mat ei(f, 1, a.dim);
            ei.at(0, i) = 1;
            if (!row_space_contains(jspan, a.mul_elems(a.radical.row(s), ei)))
                return fail("radical is not a right ideal (row " + std::to_string(s) + " * b_" +
                            std::to_string(i) + ")");
            if (!row_space_contains(jspan, a.mul_elems(ei, a.radical.row(s))))
                return fail("radical is not a left ideal (b_" + std::to_string(i) + " * row " +
                            std::to_string(s) + ")");
        }
    // nilpotency within dim steps
    Mat power = a.radical;
    for (int step = 1; step <= a.dim && power.rows > 0; ++step) {
        std::vector<Mat> next;
        for (int s = 0; s < power.rows; ++s)
            for (int t = 0; t < a.radical_dim(); ++t)
                next.push_back(a.mul_elems(power.row(s), a.radical.row(t)));
        Mat stacked = next.empty() ? Mat(f, 0, a.dim) : vstack(next, f, a.dim);
        power = row_space_basis(stacked);
        if (power.rows == 0) break;
        if (step == a.dim) return fail("radical is not nilpotent within dim(A) steps");
    }
    // split basic count: dim A - dim J = r, idempotent images a basis of A/J
    if (a.dim - a.radical_dim() != r)
        return fail("split-basic count fails: dim A - dim J != number of idempotents");
    Mat quotient_probe = vstack(a.idempotents, a.radical);
    if (rank_of(quotient_probe) != a.dim)
        return fail("idempotent images do not span A/J");
    return cert;
}

}  // namespace fdhom
