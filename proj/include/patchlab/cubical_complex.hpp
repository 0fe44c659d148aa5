#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "patchlab/f2_linalg.hpp"
#include "patchlab/f2_sparse.hpp"
#include "patchlab/triangulation.hpp"

namespace patchlab {

// The cube indexed by a pair of simplices lower <= upper.
struct CubicalCell {
    int lower = 0;
    int upper = 0;
    int dim = 0;
};

// Cubical subdivision of a triangulation.
class CubicalComplex {
public:
    CubicalComplex() = default;
    explicit CubicalComplex(const Triangulation& k);

    const Triangulation& triangulation() const { return k_; }
    int dim() const { return k_.dim(); }
    std::size_t size() const { return cells_.size(); }
    // Cells are sorted by (dim, lower, upper).
    const std::vector<CubicalCell>& cells() const { return cells_; }
    const CubicalCell& cell(int c) const { return cells_[std::size_t(c)]; }
    int index(int lower, int upper) const;
    const std::vector<int>& facets(int c) const { return facets_[std::size_t(c)]; }
    const std::vector<int>& cofacets(int c) const { return cofacets_[std::size_t(c)]; }
    std::vector<int> cells_of_dim(int q) const;
    bool is_face(int f, int c) const;

    // The dual hypersurface: cells whose lower simplex has dimension >= 1.
    std::vector<int> dual_hypersurface() const;
    // Cells whose upper simplex lies in the given set of simplices (a closed subcomplex when the set is).
    std::vector<int> cells_over(const std::vector<int>& simplices) const;

private:
    Triangulation k_;
    std::vector<CubicalCell> cells_;
    std::unordered_map<std::uint64_t, int> index_;
    std::vector<std::vector<int>> facets_;
    std::vector<std::vector<int>> cofacets_;
};

// A chain complex on a closed set of cubical cells with one block per cell.
struct AssembledComplex {
    SparseComplex complex;
    // cells of each degree in assembly order and the offset of each block inside its degree
    std::vector<std::vector<int>> cells;
    std::vector<std::vector<std::size_t>> offsets;
};

// Coefficients with extension maps to facets: ext[i][j] maps the stalk of cells[i] to the stalk of its j-th
// facet (CubicalComplex::facets order).
struct Cosheaf {
    std::vector<int> cells;
    std::vector<std::size_t> stalk;
    std::vector<std::vector<F2Matrix>> ext;

    static Cosheaf constant(const CubicalComplex& cc, const std::vector<int>& cells);
};

// Coefficients with restriction maps from facets: res[i][j] maps the stalk of the j-th facet to cells[i].
struct Sheaf {
    std::vector<int> cells;
    std::vector<std::size_t> stalk;
    std::vector<std::vector<F2Matrix>> res;
};

Sheaf dual(const Cosheaf& f);
// Throws CoefficientConsistency when two facet chains between the same cells give different composites.
void check_functoriality(const CubicalComplex& cc, const Cosheaf& f);
void check_functoriality(const CubicalComplex& cc, const Sheaf& f);
AssembledComplex chain_complex(const CubicalComplex& cc, const Cosheaf& f);
AssembledComplex cochain_complex(const CubicalComplex& cc, const Sheaf& f);

// A complex with F2-coefficients whose cells are pairs (point; cell): the points over a cube (a;b) are masks in
// F2^m(b), and the point over a face with upper simplex b' is obtained by projecting along b -> b'.
// Cochains of this complex are the cochains of the function sheaf {points} -> F2, which carries a cup product.
class PointComplex {
public:
    using Mask = std::uint32_t;
    // project(b, b', v): image of a point over upper simplex b in the point space of its face b'.
    using Projection = std::function<Mask(int, int, Mask)>;

    PointComplex() = default;
    PointComplex(const CubicalComplex& cc, const std::vector<int>& cells, std::vector<std::vector<Mask>> points,
                 Projection project);

    const CubicalComplex& cubical() const { return *cc_; }
    int top() const { return top_; }
    std::size_t dim(int q) const { return dims_[std::size_t(q)]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    // Cells of degree q in order; their points start at block_offset.
    const std::vector<int>& cells(int q) const { return cells_by_deg_[std::size_t(q)]; }
    const std::vector<Mask>& points(int cell) const;
    std::size_t block_offset(int cell) const;
    bool contains(int cell) const { return local_.count(cell) > 0; }
    // Index inside its degree, or -1.
    long index(int cell, Mask point) const;
    Mask project(int from_upper, int to_upper, Mask v) const { return project_(from_upper, to_upper, v); }

    SparseComplex chain_complex() const;
    SparseComplex cochain_complex() const { return chain_complex().dual(); }
    BitVec coboundary(int q, const BitVec& a) const;
    // (a cup b)(v; s; u) = sum over t with s <= t <= u, dim t = dim s + k of a(pi v; s; t) b(v; t; u).
    BitVec cup(int k, const BitVec& a, int l, const BitVec& b) const;
    // The unit: value 1 at every point of every vertex cell.
    BitVec unit() const;

private:
    const CubicalComplex* cc_ = nullptr;
    int top_ = -1;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<int>> cells_by_deg_;
    std::unordered_map<int, std::size_t> local_;
    std::vector<std::vector<Mask>> points_;
    std::vector<std::vector<int>> lookup_;
    std::vector<std::size_t> offset_;
    Projection project_;
};

// The Delta-complex whose simplices are pairs (point; simplex) with points in F2^m(simplex), all points present.
class PointDeltaComplex {
public:
    using Mask = std::uint32_t;

    PointDeltaComplex(const Triangulation& k, std::vector<int> point_dims, PointComplex::Projection project);

    int top() const { return k_->dim(); }
    std::size_t dim(int q) const { return dims_[std::size_t(q)]; }
    long index(int simplex, Mask point) const;
    SparseComplex cochain_complex() const;
    BitVec alexander_whitney(int k, const BitVec& a, int l, const BitVec& b) const;
    // Pullback of cubical cochains along the subdivision chain map (v; s) -> sum over vertices t of (v; t; s).
    BitVec subdivision_pullback(const PointComplex& cubes, int q, const BitVec& c) const;

private:
    const Triangulation* k_;
    std::vector<int> point_dims_;
    PointComplex::Projection project_;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offset_;  // per simplex, inside its degree
};

}  // namespace patchlab
