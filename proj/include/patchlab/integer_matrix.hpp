#pragma once

#include <cstdint>
#include <vector>

namespace patchlab {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;  // row-major

IMat identity_imat(std::size_t n);
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_transpose(const IMat& a, std::size_t cols_if_empty = 0);

// Exact determinant by fraction-free elimination.
long long determinant(IMat a);

// D = U * A * V with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    IMat U, D, V, V_inverse;
    std::size_t rank = 0;
};
SmithForm smith_normal_form(const IMat& a, std::size_t cols);

// Basis of {x in Z^cols : A x = 0}; saturated by construction.
IMat integer_kernel(const IMat& a, std::size_t cols);

long long gcd_of(const IVec& v);
IVec primitive(IVec v);

}  // namespace patchlab
