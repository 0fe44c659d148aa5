#pragma once

#include <cstdint>
#include <vector>

#include "patchlab/f2_linalg.hpp"

// F2[V] and O(V) for V = F2^m. Both are stored as bit vectors of length 2^m indexed by the bitmask of v:
// for a group algebra element bit v is the coefficient of x^v, for a function it is the value at v.
namespace patchlab::ga {

using Mask = std::uint32_t;

inline std::size_t order(int m) { return std::size_t(1) << m; }
int popcount(Mask s);

// k-subsets of {0..m-1} as masks, in the lexicographic order of their sorted index lists.
const std::vector<Mask>& k_subsets(int m, int k);
// Position of a k-subset in k_subsets(m, |s|).
std::size_t subset_index(int m, Mask s);

BitVec monomial(int m, Mask v);
BitVec multiply(int m, const BitVec& a, const BitVec& b);
// x^v * a
BitVec translate(int m, const BitVec& a, Mask v);
// prod_{i in s} (1 + x^{e_i}): the indicator of the submasks of s.
BitVec subcube(int m, Mask s);
// Coordinates in the basis {subcube(s)}; inverse of itself.
BitVec subcube_coordinates(int m, const BitVec& p);
// Algebraic normal form of a function: coefficient of prod_{i in s} x_i at bit s; inverse of itself.
BitVec anf(int m, const BitVec& f);

// m^k = span{subcube(s) : |s| >= k}.
Subspace aug_power(int m, int k);
// The subalgebra F2[W] and its augmentation powers m^k_W, for W spanned by the given vectors.
Subspace subalgebra(int m, const std::vector<Mask>& w_basis);
Subspace aug_power_of_subspace(int m, const std::vector<Mask>& w_basis, int k);

// eta on the basis e_I of Lambda^k (coordinates over k_subsets(m, k)).
BitVec eta(int m, int k, const BitVec& wedge);
// prod (1 + x^{v_i}).
BitVec eta_vectors(int m, const std::vector<Mask>& vs);
// Class of p in m^k / m^{k+1} as a wedge; p must lie in m^k.
BitVec eta_inverse(int m, int k, const BitVec& p);
BitVec wedge_product(int m, int k, const BitVec& a, int l, const BitVec& b);

// f . P = sum f(v) p_v x^v
inline BitVec contract(const BitVec& f, const BitVec& p) { return f & p; }
inline bool pairing(const BitVec& f, const BitVec& p) { return (f & p).popcount() & 1u; }

BitVec monomial_function(int m, Mask s);
// Polynomial degree; -1 for the zero function.
int degree(int m, const BitVec& f);
// O^(k): functions of degree <= k.
Subspace degree_filtration(int m, int k);

}  // namespace patchlab::ga
