#include "fdhom/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fdhom {

void SparseMat::add_entry(int i, int j, uint32_t v) {
    if (v == 0) return;
    row[i].emplace_back(j, v);
}

void SparseMat::normalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end());
        std::vector<std::pair<int, uint32_t>> out;
        for (auto& [c, v] : r) {
            if (!out.empty() && out.back().first == c)
                out.back().second = f.add(out.back().second, v);
            else
                out.emplace_back(c, v);
        }
        std::erase_if(out, [](const auto& e) { return e.second == 0; });
        r = std::move(out);
    }
}

int64_t SparseMat::nnz() const {
    int64_t n = 0;
    for (const auto& r : row) n += static_cast<int64_t>(r.size());
    return n;
}

Mat to_dense(const SparseMat& m) {
    Mat d(m.f, m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (auto& [c, v] : m.row[i]) d.at(i, c) = m.f.add(d.at(i, c), v);
    return d;
}

SparseMat to_sparse(const Mat& m) {
    SparseMat s(m.f, m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j)) s.row[i].emplace_back(j, m.at(i, j));
    return s;
}

namespace {

// dst -= c * src, rows as sorted sparse vectors.
std::vector<std::pair<int, uint32_t>> axpy(const Field& f,
                                           const std::vector<std::pair<int, uint32_t>>& dst,
                                           const std::vector<std::pair<int, uint32_t>>& src,
                                           uint32_t c) {
    std::vector<std::pair<int, uint32_t>> out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            uint32_t v = f.neg(f.mul(c, src[j].second));
            if (v) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            uint32_t v = f.sub(dst[i].second, f.mul(c, src[j].second));
            if (v) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

int rank_sparse(SparseMat m) {
    m.normalize();
    // column -> list of row indices with a nonzero there would cost memory;
    // desk-scale dims make a rescan acceptable.
    std::vector<bool> done(m.rows, false);
    int rank = 0;
    for (;;) {
        // shortest not-yet-pivoted nonempty row
        int pr = -1;
        size_t best = SIZE_MAX;
        for (int i = 0; i < m.rows; ++i)
            if (!done[i] && !m.row[i].empty() && m.row[i].size() < best) {
                best = m.row[i].size();
                pr = i;
            }
        if (pr < 0) break;
        done[pr] = true;
        ++rank;
        int pc = m.row[pr].front().first;
        uint32_t d = m.f.inv(m.row[pr].front().second);
        if (d != 1)
            for (auto& [c, v] : m.row[pr]) v = m.f.mul(v, d);
        for (int i = 0; i < m.rows; ++i) {
            if (i == pr || m.row[i].empty()) continue;
            auto it = std::lower_bound(m.row[i].begin(), m.row[i].end(),
                                       std::make_pair(pc, uint32_t(0)));
            if (it == m.row[i].end() || it->first != pc) continue;
            m.row[i] = axpy(m.f, m.row[i], m.row[pr], it->second);
        }
        m.row[pr].clear();  // pivot row no longer needed
        done[pr] = true;
    }
    return rank;
}

SparseMat mul_sparse(const SparseMat& x, const SparseMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mul_sparse: shape");
    SparseMat out(x.f, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        std::map<int, uint32_t> acc;
        for (auto& [k, xv] : x.row[i])
            for (auto& [j, yv] : y.row[k]) {
                uint32_t& slot = acc[j];
                slot = x.f.add(slot, x.f.mul(xv, yv));
            }
        for (auto& [j, v] : acc)
            if (v) out.row[i].emplace_back(j, v);
    }
    return out;
}

}  // namespace fdhom
