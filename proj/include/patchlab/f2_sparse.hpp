#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "patchlab/f2_linalg.hpp"

namespace patchlab {

// Sorted index list; addition is symmetric difference.
using SparseVec = std::vector<std::uint32_t>;

void sparse_add(SparseVec& a, const SparseVec& b);
SparseVec sparse_sum(const SparseVec& a, const SparseVec& b);
SparseVec to_sparse(const BitVec& v);
BitVec to_dense(const SparseVec& v, std::size_t n);
bool sparse_dot(const SparseVec& a, const SparseVec& b);

struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<SparseVec> columns;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

    static SparseMatrix from_dense(const F2Matrix& m);
    F2Matrix to_dense() const;
    SparseMatrix transpose() const;
    SparseVec apply(const SparseVec& x) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    bool is_zero() const;
    std::size_t nonzeros() const;
};

// Left-to-right column reduction with pivot = largest row index.
// Columns listed in `skip` are known to reduce to zero and are not processed.
class ColumnReduction {
public:
    ColumnReduction() = default;
    ColumnReduction(const SparseMatrix& m, bool track, const std::vector<char>* skip = nullptr);

    std::size_t rank() const { return rank_; }
    // Row index of the pivot of column j, or -1 when the column reduced to zero.
    long low(std::size_t j) const { return lows_[j]; }
    // Column whose pivot is row i, or -1.
    long column_with_low(std::size_t i) const { return col_of_low_[i]; }
    const SparseVec& reduced(std::size_t j) const { return r_[j]; }
    // Column j of V with R = M V; only available when tracking.
    const SparseVec& combination(std::size_t j) const { return v_[j]; }
    bool skipped(std::size_t j) const { return skipped_[j]; }

private:
    std::size_t rank_ = 0;
    std::vector<long> lows_;
    std::vector<long> col_of_low_;
    std::vector<SparseVec> r_;
    std::vector<SparseVec> v_;
    std::vector<char> skipped_;
};

// Based complex over F2: d[q] maps degree q to degree q + delta.
struct SparseComplex {
    int delta = -1;
    std::vector<std::size_t> dims;
    std::vector<SparseMatrix> d;

    int top() const { return int(dims.size()) - 1; }
    // Map out of degree q (zero map when the target degree is out of range).
    const SparseMatrix& map_from(int q) const { return d[std::size_t(q)]; }
    SparseComplex dual() const;
    // d∘d = 0 on every degree.
    bool is_complex() const;
};

// Homology of a SparseComplex with pivot-based representatives.
class SparseHomology {
public:
    SparseHomology(SparseComplex c, bool representatives);

    const std::vector<std::size_t>& betti() const { return betti_; }
    // Cycle representatives of the homology basis in degree q.
    const std::vector<SparseVec>& representatives(int q) const { return reps_[std::size_t(q)]; }
    const SparseComplex& complex() const { return c_; }
    // Coordinates of the class of a cycle z of degree q.
    BitVec coordinates(int q, SparseVec z) const;
    bool is_cycle(int q, const SparseVec& z) const;
    bool is_boundary(int q, const SparseVec& z) const;

private:
    SparseComplex c_;
    bool with_reps_;
    std::vector<std::size_t> betti_;
    std::vector<ColumnReduction> red_;
    std::vector<std::vector<SparseVec>> reps_;
    std::vector<std::vector<long>> essential_index_;
};

}  // namespace patchlab
