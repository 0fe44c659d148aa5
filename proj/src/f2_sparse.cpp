#include "patchlab/f2_sparse.hpp"

#include <algorithm>

namespace patchlab {

void sparse_add(SparseVec& a, const SparseVec& b) {
    if (b.empty()) return;
    SparseVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + long(i), a.end());
    out.insert(out.end(), b.begin() + long(j), b.end());
    a.swap(out);
}

SparseVec sparse_sum(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    sparse_add(r, b);
    return r;
}

SparseVec to_sparse(const BitVec& v) {
    SparseVec out;
    for (long i = v.first_set(); i >= 0; i = v.first_set(std::size_t(i) + 1)) out.push_back(std::uint32_t(i));
    return out;
}

BitVec to_dense(const SparseVec& v, std::size_t n) {
    BitVec out(n);
    for (auto i : v) out.set(i);
    return out;
}

bool sparse_dot(const SparseVec& a, const SparseVec& b) {
    std::size_t i = 0, j = 0;
    bool acc = false;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else {
            acc = !acc;
            ++i;
            ++j;
        }
    }
    return acc;
}

SparseMatrix SparseMatrix::from_dense(const F2Matrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) s.columns[j] = to_sparse(m.column(j));
    return s;
}

F2Matrix SparseMatrix::to_dense() const {
    F2Matrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (auto i : columns[j]) m.set(i, j);
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols, rows);
    for (std::size_t j = 0; j < cols; ++j)
        for (auto i : columns[j]) t.columns[i].push_back(std::uint32_t(j));
    return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
    SparseVec acc;
    for (auto j : x) {
        require(j < cols, ErrorKind::DimensionMismatch, "sparse apply index");
        sparse_add(acc, columns[j]);
    }
    return acc;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    require(cols == o.rows, ErrorKind::DimensionMismatch, "sparse product sizes");
    SparseMatrix r(rows, o.cols);
    for (std::size_t j = 0; j < o.cols; ++j) r.columns[j] = apply(o.columns[j]);
    return r;
}

bool SparseMatrix::is_zero() const {
    for (const auto& c : columns)
        if (!c.empty()) return false;
    return true;
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
}

ColumnReduction::ColumnReduction(const SparseMatrix& m, bool track, const std::vector<char>* skip)
    : lows_(m.cols, -1), col_of_low_(m.rows, -1), r_(m.cols), skipped_(m.cols, 0) {
    if (track) v_.resize(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
        if (skip && (*skip)[j]) {
            skipped_[j] = 1;
            continue;
        }
        SparseVec col = m.columns[j];
        SparseVec v;
        if (track) v.push_back(std::uint32_t(j));
        while (!col.empty()) {
            long k = col_of_low_[col.back()];
            if (k < 0) break;
            sparse_add(col, r_[std::size_t(k)]);
            if (track) sparse_add(v, v_[std::size_t(k)]);
        }
        if (!col.empty()) {
            lows_[j] = long(col.back());
            col_of_low_[col.back()] = long(j);
            ++rank_;
        }
        r_[j] = std::move(col);
        if (track) v_[j] = std::move(v);
    }
}

SparseComplex SparseComplex::dual() const {
    SparseComplex out;
    out.delta = -delta;
    out.dims = dims;
    out.d.resize(dims.size());
    for (int q = 0; q <= top(); ++q) {
        int src = q - delta;
        if (src >= 0 && src <= top()) out.d[std::size_t(q)] = d[std::size_t(src)].transpose();
        else out.d[std::size_t(q)] = SparseMatrix(0, dims[std::size_t(q)]);
    }
    return out;
}

bool SparseComplex::is_complex() const {
    for (int q = 0; q <= top(); ++q) {
        int nxt = q + delta;
        if (nxt < 0 || nxt > top()) continue;
        const SparseMatrix& a = d[std::size_t(q)];
        const SparseMatrix& b = d[std::size_t(nxt)];
        if (b.rows == 0) continue;
        if (!(b * a).is_zero()) return false;
    }
    return true;
}

SparseHomology::SparseHomology(SparseComplex c, bool representatives)
    : c_(std::move(c)), with_reps_(representatives) {
    const int top = c_.top();
    const std::size_t nd = c_.dims.size();
    require(c_.d.size() == nd, ErrorKind::DimensionMismatch, "complex maps per degree");
    for (int q = 0; q <= top; ++q) {
        const auto& m = c_.d[std::size_t(q)];
        int tgt = q + c_.delta;
        std::size_t trows = (tgt >= 0 && tgt <= top) ? c_.dims[std::size_t(tgt)] : 0;
        require(m.cols == c_.dims[std::size_t(q)] && m.rows == trows, ErrorKind::DimensionMismatch,
                "complex map has the wrong shape");
    }
    red_.resize(nd);
    betti_.assign(nd, 0);
    reps_.assign(nd, {});
    essential_index_.assign(nd, {});
    // Reduce the map into q before the map out of q so its pivots can be cleared.
    std::vector<int> order;
    for (int q = 0; q <= top; ++q) order.push_back(q);
    if (c_.delta < 0) std::reverse(order.begin(), order.end());
    for (int q : order) {
        int src = q - c_.delta;
        std::vector<char> skip(c_.dims[std::size_t(q)], 0);
        if (src >= 0 && src <= top) {
            const auto& rin = red_[std::size_t(src)];
            for (std::size_t j = 0; j < c_.dims[std::size_t(src)]; ++j)
                if (rin.low(j) >= 0) skip[std::size_t(rin.low(j))] = 1;
        }
        red_[std::size_t(q)] = ColumnReduction(c_.d[std::size_t(q)], with_reps_, &skip);
    }
    for (int q = 0; q <= top; ++q) {
        int src = q - c_.delta;
        std::size_t rin = (src >= 0 && src <= top) ? red_[std::size_t(src)].rank() : 0;
        const auto& rq = red_[std::size_t(q)];
        auto& ess = essential_index_[std::size_t(q)];
        ess.assign(c_.dims[std::size_t(q)], -1);
        std::size_t count = 0;
        for (std::size_t j = 0; j < c_.dims[std::size_t(q)]; ++j) {
            if (rq.skipped(j) || rq.low(j) >= 0) continue;
            ess[j] = long(count++);
            if (with_reps_) reps_[std::size_t(q)].push_back(rq.combination(j));
        }
        betti_[std::size_t(q)] = c_.dims[std::size_t(q)] - rq.rank() - rin;
        require(count == betti_[std::size_t(q)], ErrorKind::Internal, "essential count disagrees with rank count");
    }
}

bool SparseHomology::is_cycle(int q, const SparseVec& z) const {
    return c_.d[std::size_t(q)].apply(z).empty();
}

BitVec SparseHomology::coordinates(int q, SparseVec z) const {
    require(with_reps_, ErrorKind::Internal, "homology computed without representatives");
    require(is_cycle(q, z), ErrorKind::InvariantViolation, "coordinates requested for a non-cycle");
    int src = q - c_.delta;
    const ColumnReduction* rin = (src >= 0 && src <= c_.top()) ? &red_[std::size_t(src)] : nullptr;
    const auto& rq = red_[std::size_t(q)];
    BitVec coeff(betti_[std::size_t(q)]);
    while (!z.empty()) {
        std::uint32_t m = z.back();
        long k = rin ? rin->column_with_low(m) : -1;
        if (k >= 0) {
            sparse_add(z, rin->reduced(std::size_t(k)));
        } else if (essential_index_[std::size_t(q)][m] >= 0) {
            coeff.flip(std::size_t(essential_index_[std::size_t(q)][m]));
            sparse_add(z, rq.combination(m));
        } else {
            throw Error(ErrorKind::Internal, "cycle reduction reached a non-basis pivot");
        }
    }
    return coeff;
}

bool SparseHomology::is_boundary(int q, const SparseVec& z) const {
    return coordinates(q, z).is_zero();
}

}  // namespace patchlab
