#pragma once

#include <cstdint>
#include <vector>

#include "patchlab/cubical_complex.hpp"
#include "patchlab/f2_sparse.hpp"
#include "patchlab/group_algebra.hpp"
#include "patchlab/triangulation.hpp"

namespace patchlab {

// The spaces t(F2)/Sed(s) for every simplex s, in coordinates: a coset is read off the positions that are not
// pivots of the canonical basis of Sed(s), which makes the lexicographically least vector its representative.
class QuotientSpaces {
public:
    using Mask = ga::Mask;

    QuotientSpaces() = default;
    explicit QuotientSpaces(const Triangulation& k);

    int ambient() const { return n_; }
    int dim(int simplex) const { return dims_[std::size_t(face_of_[std::size_t(simplex)])]; }
    // Image of v under t/Sed(from) -> t/Sed(to); `to` must be a face of `from`.
    Mask project(int from, int to, Mask v) const;
    // A covector on F2^n vanishing on Sed(simplex), as a covector on its quotient coordinates.
    Mask covector(int simplex, const BitVec& alpha) const;
    // Coordinates of the coset of a vector of F2^n.
    Mask coset(int simplex, const BitVec& v) const;
    BitVec lift(int simplex, Mask v) const;
    // Restriction of a p-form vanishing on Sed(simplex) to the quotient, over the p-subsets of its coordinates.
    BitVec restrict_form(int simplex, const WedgeCovector& w) const;

private:
    Mask reduce(int face, Mask x) const;
    Mask gather(int face, Mask x) const;

    int n_ = 0;
    std::vector<int> face_of_;
    std::vector<int> dims_;
    std::vector<std::vector<Mask>> sed_basis_;  // fully reduced, per polytope face
    std::vector<std::vector<int>> free_;        // non-pivot positions, per polytope face
    std::vector<std::vector<Mask>> table_;      // [from_face * faces + to_face]
    std::size_t faces_ = 0;
};

// Lambda^k of a linear map given by the images of the basis vectors (as masks in F2^m_out).
F2Matrix exterior_power(const std::vector<ga::Mask>& images, int m_in, int m_out, int k);
// v_1 ^ ... ^ v_k in the k-subset basis of Lambda^k F2^m.
BitVec wedge_of(int m, const std::vector<ga::Mask>& vs);
// Matrix of the contraction omega . - : Lambda^k -> Lambda^(k-p) for omega in Lambda^p of the dual.
F2Matrix contraction_matrix(int m, int p, const BitVec& omega, int k);

struct TropicalCoefficients {
    int n = 0;
    // fp[k] on every cell, fx[k] on the cells of the dual hypersurface.
    std::vector<Cosheaf> fp;
    std::vector<Cosheaf> fx;
    // fx_space[k][i]: F_k^X of fx[k].cells[i] inside Lambda^k; inclusion[k][i] its basis matrix.
    std::vector<std::vector<Subspace>> fx_space;
    std::vector<std::vector<F2Matrix>> inclusion;
};

// F_k^P and F_k^X; F_k^X is built as the sum over edges and checked cell by cell against the kernel of the
// contraction by omega and the dimension formula. Throws Internal on a mismatch.
TropicalCoefficients build_tropical_coefficients(const CubicalComplex& cc, const QuotientSpaces& qs);

class TropicalHomology {
public:
    TropicalHomology(const CubicalComplex& cc, const QuotientSpaces& qs);

    int n() const { return coeffs_.n; }
    const TropicalCoefficients& coefficients() const { return coeffs_; }
    // dim H_{p,q}(X) and dim H_{p,q}(P); zero outside the computed range.
    std::size_t hx(int p, int q) const;
    std::size_t hp(int p, int q) const;
    std::vector<std::vector<std::size_t>> table_x() const;
    std::vector<std::vector<std::size_t>> table_p() const;
    // dim H^{p,q}(X) from the transposed complexes.
    std::size_t hx_cohomology(int p, int q) const;

    // i_{p,q}: H_{p,q}(X) -> H_{p,q}(P) and i^{p,q}: H^{p,q}(P) -> H^{p,q}(X) in the computed bases.
    F2Matrix inclusion(int p, int q) const;
    F2Matrix co_inclusion(int p, int q) const;
    // <i^* a, z> = <a, i_* z> on all basis pairs.
    bool adjoint(int p, int q) const;
    // sum (-1)^(p+q) dim F_p^X(cell) over cells of dimension q.
    long long cell_euler_characteristic() const;

private:
    const CubicalComplex* cc_;
    TropicalCoefficients coeffs_;
    std::vector<AssembledComplex> cx_, cp_;
    std::vector<SparseHomology> hx_, hp_, cohx_, cohp_;
};

}  // namespace patchlab
