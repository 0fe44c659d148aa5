#pragma once

#include <functional>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "patchlab/f2_linalg.hpp"
#include "patchlab/f2_sparse.hpp"

namespace patchlab {

enum class Side { Homology, Cohomology };

const char* to_string(Side s);

// A based complex whose basis is adapted to a filtration: basis element i of degree q has weight[q][i].
// Homology side: d lowers the degree and F_p = span{weight >= p} is preserved.
// Cohomology side: d raises the degree and F^p = span{weight <= p} is preserved.
struct FilteredComplexF2 {
    Side side = Side::Homology;
    SparseComplex complex;
    std::vector<std::vector<int>> weight;
    // weights lie in [0, weight_count)
    int weight_count = 1;

    int degrees() const { return int(complex.dims.size()); }
    std::size_t dim(int q) const { return complex.dims[std::size_t(q)]; }
    // F_p C_q (homology side) or F^p C^q (cohomology side) as a coordinate subspace.
    Subspace filtration(int p, int q) const;
    // Throws Input when a weight is out of range or d does not preserve the filtration.
    void validate() const;
    // Transposed maps, same weights: the annihilator of F_{p+1} is F^p.
    FilteredComplexF2 dualize() const;

    // Adapted basis for filtrations given as subspaces of the standard coordinates: steps[q][p] = F_p C_q,
    // decreasing in p, with steps[q][0] everything and F_{weight_count} = 0. Throws Input when d does not
    // preserve them.
    static FilteredComplexF2 from_filtration(const SparseComplex& c, const std::vector<std::vector<Subspace>>& steps,
                                             int weight_count);
};

struct Page {
    int r = 0;
    // dims[p][q] = dim of the (p,q) term; ranks[p][q] = rank of the differential leaving it.
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::vector<std::size_t>> ranks;
};

struct SpectralSequence {
    Side side = Side::Homology;
    int weights = 0;
    int degrees = 0;
    // r = 0 .. weights; the last page is the limit.
    std::vector<Page> pages;
    // least r0 with every differential of page >= r0 zero
    int degeneracy_index = 0;

    const Page& page(int r) const;
    std::size_t dim(int r, int p, int q) const;
    std::size_t rank(int r, int p, int q) const;
    const Page& limit() const { return pages.back(); }
    // sum over p of the limit page
    std::vector<std::size_t> abutment() const;
    long long euler_characteristic(int r) const;
    bool same_tables(const SpectralSequence& o) const;
};

enum class Engine { Auto, Dense, Reduction };

// Auto uses the reduction engine and cross-checks it against the dense one on complexes of total dimension at
// most dense_limit; a disagreement throws Internal.
SpectralSequence compute_pages(const FilteredComplexF2& c, Engine engine = Engine::Auto,
                               std::size_t dense_limit = 600);

// Pages read off the defining subquotients Z_r / (Z_{r-1} + d Z_{r-1}); keeps representatives.
class DenseSpectralEngine {
public:
    explicit DenseSpectralEngine(const FilteredComplexF2& c);

    const FilteredComplexF2& complex() const { return c_; }
    SpectralSequence run();
    // The (p,q) term of page r as a subquotient of the degree-q group.
    const Subquotient& term(int r, int p, int q);
    // Matrix of the page-r differential leaving (p,q), in the representative bases of source and target.
    F2Matrix differential(int r, int p, int q);
    // Target of the page-r differential leaving (p,q).
    std::pair<int, int> target(int r, int p, int q) const;

private:
    int level(int p) const;  // filtration level s with G_s increasing and d(G_s) in G_s
    int weight_of_level(int s) const;
    const Subspace& cycles(int r, int s, int q);

    FilteredComplexF2 c_;
    int delta_;
    std::vector<F2Matrix> d_;
    std::vector<std::vector<int>> level_;
    std::map<std::tuple<int, int, int>, Subspace> z_;
    std::map<std::tuple<int, int, int>, Subquotient> e_;
};

// Persistence-style pages: one column reduction per degree in filtration order.
SpectralSequence reduction_pages(const FilteredComplexF2& c);

// Product of cochains in the coordinates of a cohomology-side filtered complex.
using CochainProduct = std::function<BitVec(int, const BitVec&, int, const BitVec&)>;

struct PairingBlock {
    int p = 0;
    int q = 0;
    std::size_t rows = 0;  // dim of E_r^{p,q}
    std::size_t cols = 0;  // dim of E_r^{top-p,top-q}
    std::size_t rank = 0;
    bool nondegenerate() const { return rows == cols && rank == rows; }
};

// The products E_r^{p,q} x E_r^{top-p,top-q} -> E_r^{top,top} on representatives. Throws Structure when
// E_r^{top,top} is not one-dimensional, Internal when a product leaves the cycles of page r.
std::vector<PairingBlock> page_pairing(DenseSpectralEngine& e, int r, int top, const CochainProduct& product);

}  // namespace patchlab
