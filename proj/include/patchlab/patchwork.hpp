#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "patchlab/cubical_complex.hpp"
#include "patchlab/spectral.hpp"
#include "patchlab/triangulation.hpp"
#include "patchlab/tropical.hpp"

namespace patchlab {

using ga::Mask;

// Structure constants of the cup product on H^*(RP): table[a][b][i][j] holds the coordinates of
// alpha_i cup beta_j in H^{a+b} (empty when a + b > n).
struct CupTables {
    std::vector<std::size_t> betti;
    std::vector<std::vector<std::vector<std::vector<BitVec>>>> table;

    const BitVec& product(int a, int i, int b, int j) const { return table[std::size_t(a)][std::size_t(b)][std::size_t(i)][std::size_t(j)]; }
    // Coordinates of x cup y for classes given by coordinates.
    BitVec multiply(int a, const BitVec& x, int b, const BitVec& y) const;
};

// The real lift RK of K: one copy of every cube per point of t/Sed(upper simplex), glued by the projections.
// Owns its cubical complex; cheap to share between threads once built.
class RealLift {
public:
    explicit RealLift(const Triangulation& k);
    RealLift(const RealLift&) = delete;
    RealLift& operator=(const RealLift&) = delete;

    int n() const { return cc_->dim(); }
    const Triangulation& triangulation() const { return cc_->triangulation(); }
    const CubicalComplex& cubical() const { return *cc_; }
    const QuotientSpaces& quotients() const { return *qs_; }
    const PointComplex& complex() const { return *rk_; }
    const PointDeltaComplex& delta_complex() const { return *delta_; }
    PointComplex::Projection projection() const;

    // Value of omega_RX on the real edge (v; e).
    bool omega_on_edge(int edge, Mask v) const;
    // omega_RX on the Delta-complex RK and its cubical representative c(v; s; t) = omega([min s, min t])(v).
    const BitVec& omega_delta() const { return omega_delta_; }
    const BitVec& omega_cochain() const { return omega_cubical_; }

    const std::vector<std::size_t>& betti() const { return homology_->betti(); }
    const SparseHomology& homology() const { return *homology_; }
    const SparseHomology& cohomology() const { return *cohomology_; }
    const CupTables& cup_tables() const { return cup_; }
    // Coordinates of a cocycle class in the basis of cohomology().representatives(q).
    BitVec class_of(int q, const BitVec& cocycle) const;
    // The degree [omega_RX] in H^1.
    BitVec omega_class() const { return class_of(1, omega_cubical_); }
    BitVec cochain(int q, std::size_t basis_index) const;
    // Sum of all top cells, the mod-2 fundamental class.
    SparseVec fundamental_cycle() const;
    bool evaluate(int q, const BitVec& cochain, const SparseVec& chain) const;

    // Lifts of the coordinate hyperplane facets {x_j = 0}, taken in decreasing j, reduced to a basis of
    // H_{n-1}(RP) when they span it. Columns are homology coordinates.
    const F2Matrix& divisor_basis() const { return divisors_; }
    bool divisors_span() const { return divisors_.cols() == betti()[std::size_t(n() - 1)]; }
    const std::vector<int>& divisor_axes() const { return divisor_axes_; }
    // Coordinates of a class of H_{n-1}(RP) in the divisor basis; nullopt when the divisors do not span.
    std::optional<BitVec> divisor_coordinates(const BitVec& homology_coords) const;
    // omega_RX on the real circles over the coordinate edges [0, d e_j] of P, decreasing j; -1 when the
    // segment is not an edge of P.
    std::vector<int> coordinate_circle_degrees() const;

    // sd*(a cup b) and AW(sd* a, sd* b) differ by a coboundary on every pair of basis classes.
    bool cup_agrees_with_alexander_whitney() const;

private:
    std::unique_ptr<CubicalComplex> cc_;
    std::unique_ptr<QuotientSpaces> qs_;
    std::unique_ptr<PointComplex> rk_;
    std::unique_ptr<PointDeltaComplex> delta_;
    std::unique_ptr<SparseHomology> homology_, cohomology_;
    BitVec omega_delta_, omega_cubical_;
    CupTables cup_;
    F2Matrix divisors_;
    std::vector<int> divisor_axes_;
};

// The argument set of the cube (a;b): points v of t/Sed(b) with d eps(e) + omega(e)(v) = 1 for an edge e of a.
std::vector<Mask> arg_set(const RealLift& lift, const SignDistribution& eps, int cell);

struct Component {
    std::vector<int> top_cells;  // indices into the top degree of the T-hypersurface complex
    BitVec homology_class;      // in H_{n-1}(RP)
    std::optional<BitVec> divisor_class;
    bool null_homologous() const { return homology_class.is_zero(); }
};

// The T-hypersurface RX_eps as a closed subcomplex of RK.
class THypersurface {
public:
    // Throws InvariantViolation when RX_eps is not a closed pseudo-manifold of dimension n-1.
    THypersurface(const RealLift& lift, SignDistribution eps);

    const RealLift& lift() const { return *lift_; }
    const SignDistribution& signs() const { return eps_; }
    int n() const { return lift_->n(); }
    const PointComplex& complex() const { return *rx_; }
    // Chain complex in degrees 0..n-1.
    const SparseComplex& chains() const { return chains_; }
    const std::vector<std::size_t>& betti() const { return homology_->betti(); }
    const SparseHomology& homology() const { return *homology_; }
    const SparseHomology& cohomology() const { return *cohomology_; }
    long long euler_characteristic() const;
    const std::vector<Component>& components() const { return components_; }

    // Index of the degree-q cell of RX in RK.
    std::uint32_t ambient_index(int q, std::size_t i) const { return to_ambient_[std::size_t(q)][i]; }
    SparseVec push_forward(int q, const SparseVec& chain) const;
    BitVec restrict_cochain(int q, const BitVec& ambient) const;
    // i^q: H^q(RP) -> H^q(RX) and i_q: H_q(RX) -> H_q(RP) in the computed bases.
    F2Matrix restriction_map(int q) const;
    F2Matrix push_forward_map(int q) const;
    // i_*[RX] in H_{n-1}(RP).
    BitVec fundamental_class_image() const;
    // beta(i_*[RX]) = (omega cup beta)([RP]) for every basis class beta of H^{n-1}(RP).
    bool poincare_dual_to_omega() const;

private:
    const RealLift* lift_;
    SignDistribution eps_;
    std::unique_ptr<PointComplex> rx_;
    SparseComplex chains_;
    std::unique_ptr<SparseHomology> homology_, cohomology_;
    std::vector<std::vector<std::uint32_t>> to_ambient_;
    std::vector<Component> components_;
};

// Betti numbers of RX_eps from an independent model: the top cubes (v; e; b) selected by the sign rule, closed
// under faces, with their own boundary matrices.
std::vector<std::size_t> direct_betti(const RealLift& lift, const SignDistribution& eps);

enum class FiltrationMethod { Intersection, RenaudineauShaw };

const char* to_string(FiltrationMethod m);

// Filtration of F2[Arg] over one cube type, on the coordinates of the sorted argument set.
struct CubeFiltration {
    int m = 0;
    std::vector<Mask> points;
    // steps[k] for k = 0..m+1
    std::vector<Subspace> steps;
    // adapted basis (columns), its inverse, and the weight of every basis vector
    F2Matrix basis;
    F2Matrix inverse;
    std::vector<int> weight;
    std::size_t graded_dim(int k) const;
};

// Cube filtrations by both methods, compared on every cube of RX_eps.
struct FiltrationComparison {
    std::size_t cubes = 0;
    std::size_t types = 0;
    std::size_t mismatches = 0;
};
FiltrationComparison compare_filtrations(const THypersurface& x);

// The chain complex of RX_eps in adapted coordinates, weights k on the graded piece of K_(k).
class FilteredTComplex {
public:
    // Throws Assembly when the boundary does not preserve the filtration.
    FilteredTComplex(const THypersurface& x, FiltrationMethod method);

    const FilteredComplexF2& chains() const { return chains_; }
    FilteredComplexF2 cochains() const { return chains_.dualize(); }
    const THypersurface& hypersurface() const { return *x_; }
    // Filtration of the block of a cell of RX_eps.
    const CubeFiltration& cube(int cell) const;
    // Dual adapted coordinates of a standard cochain and back.
    BitVec to_adapted_cochain(int q, const BitVec& f) const;
    BitVec to_standard_cochain(int q, const BitVec& y) const;
    // Cup product of RX_eps cochains in dual adapted coordinates.
    CochainProduct cochain_product() const;
    // Number of cells whose graded dimensions differ from dim F_k^X.
    std::size_t graded_mismatches(const TropicalCoefficients& coeffs) const;

private:
    const THypersurface* x_;
    FilteredComplexF2 chains_;
    std::vector<std::shared_ptr<const CubeFiltration>> types_;
    std::unordered_map<int, std::size_t> type_of_;
};

}  // namespace patchlab
