#include "patchlab/integer_matrix.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

#include "patchlab/error.hpp"

namespace patchlab {

IMat identity_imat(std::size_t n) {
    IMat m(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat imat_mul(const IMat& a, const IMat& b) {
    if (a.empty()) return {};
    std::size_t inner = a[0].size();
    require(inner == b.size(), ErrorKind::DimensionMismatch, "integer product sizes");
    std::size_t cols = b.empty() ? 0 : b[0].size();
    IMat c(a.size(), IVec(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

IMat imat_transpose(const IMat& a, std::size_t cols_if_empty) {
    std::size_t cols = a.empty() ? cols_if_empty : a[0].size();
    IMat t(cols, IVec(a.size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

long long determinant(IMat a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    for (const auto& r : a) require(r.size() == n, ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    long long sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                __int128 v = (__int128)a[i][j] * a[k][k] - (__int128)a[i][k] * a[k][j];
                a[i][j] = (long long)(v / prev);
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

namespace {

struct SnfState {
    IMat A, U, V, Vi;
    std::size_t rows, cols;

    void swap_rows(std::size_t i, std::size_t j) {
        std::swap(A[i], A[j]);
        std::swap(U[i], U[j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (auto& r : A) std::swap(r[i], r[j]);
        for (auto& r : V) std::swap(r[i], r[j]);
        std::swap(Vi[i], Vi[j]);
    }
    // row i += k * row j
    void add_row(std::size_t i, std::size_t j, long long k) {
        for (std::size_t c = 0; c < cols; ++c) A[i][c] += k * A[j][c];
        for (std::size_t c = 0; c < rows; ++c) U[i][c] += k * U[j][c];
    }
    // col i += k * col j
    void add_col(std::size_t i, std::size_t j, long long k) {
        for (std::size_t r = 0; r < rows; ++r) A[r][i] += k * A[r][j];
        for (std::size_t r = 0; r < cols; ++r) V[r][i] += k * V[r][j];
        for (std::size_t c = 0; c < cols; ++c) Vi[j][c] -= k * Vi[i][c];
    }
    void negate_row(std::size_t i) {
        for (auto& x : A[i]) x = -x;
        for (auto& x : U[i]) x = -x;
    }
};

}  // namespace

SmithForm smith_normal_form(const IMat& a, std::size_t cols) {
    SnfState s{a, identity_imat(a.size()), identity_imat(cols), identity_imat(cols), a.size(), cols};
    for (const auto& r : a) require(r.size() == cols, ErrorKind::DimensionMismatch, "ragged integer matrix");
    std::size_t t = 0;
    for (; t < std::min(s.rows, s.cols); ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block goes to (t,t)
            long long best = 0;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = t; i < s.rows; ++i)
                for (std::size_t j = t; j < s.cols; ++j)
                    if (s.A[i][j] && (best == 0 || std::llabs(s.A[i][j]) < best)) {
                        best = std::llabs(s.A[i][j]);
                        bi = i;
                        bj = j;
                    }
            if (best == 0) goto done;
            s.swap_rows(t, bi);
            s.swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < s.rows; ++i) {
                long long q = s.A[i][t] / s.A[t][t];
                if (q) s.add_row(i, t, -q);
                if (s.A[i][t]) clean = false;
            }
            for (std::size_t j = t + 1; j < s.cols; ++j) {
                long long q = s.A[t][j] / s.A[t][t];
                if (q) s.add_col(j, t, -q);
                if (s.A[t][j]) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < s.rows && divides; ++i)
                for (std::size_t j = t + 1; j < s.cols; ++j)
                    if (s.A[i][j] % s.A[t][t]) {
                        s.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (s.A[t][t] < 0) s.negate_row(t);
    }
done:
    SmithForm f;
    f.rank = t;
    f.U = std::move(s.U);
    f.D = std::move(s.A);
    f.V = std::move(s.V);
    f.V_inverse = std::move(s.Vi);
    return f;
}

IMat integer_kernel(const IMat& a, std::size_t cols) {
    SmithForm f = smith_normal_form(a, cols);
    IMat basis;
    for (std::size_t j = f.rank; j < cols; ++j) {
        IVec v(cols);
        for (std::size_t i = 0; i < cols; ++i) v[i] = f.V[i][j];
        basis.push_back(std::move(v));
    }
    return basis;
}

long long gcd_of(const IVec& v) {
    long long g = 0;
    for (auto x : v) g = std::gcd(g, std::llabs(x));
    return g;
}

IVec primitive(IVec v) {
    long long g = gcd_of(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

}  // namespace patchlab
