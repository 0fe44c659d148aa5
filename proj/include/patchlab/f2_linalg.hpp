#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "patchlab/error.hpp"

namespace patchlab {

// Dense bit vector over F2. Bits past size() are always zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_bits(const std::vector<int>& bits);
    static BitVec unit(std::size_t n, std::size_t i);

    std::size_t size() const { return n_; }
    std::size_t word_count() const { return w_.size(); }
    const std::uint64_t* words() const { return w_.data(); }
    std::uint64_t* words() { return w_.data(); }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= std::uint64_t(1) << (i & 63);
        else w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    // Lexicographic order with index 0 most significant; a set bit sorts after a clear one.
    bool operator<(const BitVec& o) const;

    bool is_zero() const;
    std::size_t popcount() const;
    // Lowest set index >= from, or -1.
    long first_set(std::size_t from = 0) const;
    long last_set() const;
    bool dot(const BitVec& o) const;

    // Concatenation [this | o].
    BitVec concat(const BitVec& o) const;
    BitVec slice(std::size_t begin, std::size_t end) const;
    // Entries at the given indices, in order.
    BitVec gather(const std::vector<std::size_t>& idx) const;

    std::vector<int> to_bits() const;
    std::vector<std::size_t> support() const;
    std::string to_string() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols = 0);
    static F2Matrix from_row_vectors(std::size_t cols, std::vector<BitVec> rows);
    static F2Matrix from_columns(std::size_t rows, const std::vector<BitVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return data_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v = true) { data_[i].set(j, v); }
    const BitVec& row(std::size_t i) const { return data_[i]; }
    BitVec& row(std::size_t i) { return data_[i]; }
    BitVec column(std::size_t j) const;
    std::vector<BitVec> columns() const;

    BitVec apply(const BitVec& x) const;
    F2Matrix operator*(const F2Matrix& o) const;
    F2Matrix operator+(const F2Matrix& o) const;
    bool operator==(const F2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    F2Matrix transpose() const;
    F2Matrix select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;

    bool is_zero() const;
    std::size_t rank() const;
    // Basis of the null space as the columns of a cols() x k matrix.
    F2Matrix kernel() const;
    std::vector<std::vector<int>> to_rows() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVec> data_;
};

// Row echelon form built incrementally; pivot of a row is its lowest set index.
class Echelon {
public:
    explicit Echelon(std::size_t n) : n_(n), pivot_row_(n, -1) {}

    std::size_t ambient_dim() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<BitVec>& rows() const { return rows_; }

    BitVec reduce(BitVec v) const;
    bool insert(BitVec v);
    bool contains(const BitVec& v) const { return reduce(v).is_zero(); }

private:
    std::size_t n_;
    std::vector<BitVec> rows_;
    std::vector<int> pivot_row_;
};

// Echelon form that records, for every row, which inserted vectors it combines.
class TrackedEchelon {
public:
    TrackedEchelon(std::size_t n, std::size_t tags) : n_(n), tags_(tags), pivot_row_(n, -1) {}

    std::size_t rank() const { return rows_.size(); }
    // Inserts v carrying the tag vector t; returns false when v reduces to zero.
    bool insert(BitVec v, BitVec t);
    // Reduces v; accumulates the tags of the rows used. Returns the reduced vector.
    BitVec reduce(BitVec v, BitVec& tag) const;

private:
    std::size_t n_;
    std::size_t tags_;
    std::vector<BitVec> rows_;
    std::vector<BitVec> row_tags_;
    std::vector<int> pivot_row_;
};

class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t n) : n_(n), pivot_row_(n, -1) {}

    static Subspace zero(std::size_t n) { return Subspace(n); }
    static Subspace full(std::size_t n);
    static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& idx);
    static Subspace span(std::size_t n, const std::vector<BitVec>& gens);

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    // Basis vectors in canonical order (pivot ascending, fully reduced).
    const std::vector<BitVec>& basis() const { return basis_; }
    // ambient_dim x dim matrix whose columns are the canonical basis.
    F2Matrix basis_matrix() const;
    std::vector<std::size_t> pivots() const;

    bool contains(const BitVec& v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace& o) const;
    // Clears every pivot position; the result is the canonical coset representative.
    BitVec reduce(BitVec v) const;
    // Coordinates of v in the canonical basis; v must lie in the subspace.
    BitVec coords(const BitVec& v) const;

    bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    void build(std::vector<BitVec> rows);

    std::size_t n_ = 0;
    std::vector<BitVec> basis_;
    std::vector<int> pivot_row_;
};

Subspace canonicalize(const F2Matrix& generators);
std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& u, const Subspace& w);
Subspace image(const F2Matrix& f, const Subspace& u);
Subspace preimage(const F2Matrix& f, const Subspace& w);
Subspace kernel(const F2Matrix& f);

// num/den with a fixed complement basis; coords() reads classes in that basis.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(Subspace num, Subspace den);

    const Subspace& num() const { return num_; }
    const Subspace& den() const { return den_; }
    std::size_t dim() const { return reps_.size(); }
    const std::vector<BitVec>& representatives() const { return reps_; }
    BitVec coords(const BitVec& v) const;

private:
    Subspace num_;
    Subspace den_;
    std::vector<BitVec> reps_;
    TrackedEchelon ech_{0, 0};
};

F2Matrix induced_map_on_subquotient(const F2Matrix& f, const Subspace& src_num, const Subspace& src_den,
                                    const Subspace& dst_num, const Subspace& dst_den);

}  // namespace patchlab
