#include "doctest.h"
#include "patchlab/tropical.hpp"

using namespace patchlab;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Betti numbers from dense ranks of the assembled matrices.
std::vector<std::size_t> dense_betti(const SparseComplex& c) {
    std::vector<std::size_t> rk(c.dims.size() + 1, 0);
    for (std::size_t q = 0; q < c.dims.size(); ++q) rk[q] = c.d[q].rows ? c.d[q].to_dense().rank() : 0;
    std::vector<std::size_t> b;
    for (std::size_t q = 0; q < c.dims.size(); ++q) b.push_back(c.dims[q] - rk[q] - (q + 1 < c.dims.size() ? rk[q + 1] : 0));
    return b;
}

struct Setup {
    Triangulation k;
    CubicalComplex cc;
    QuotientSpaces qs;
    explicit Setup(Triangulation t) : k(std::move(t)), cc(k), qs(k) {}
};

}  // namespace

TEST_CASE("exterior algebra helpers") {
    // the swap of two coordinates acts on Lambda^1 as a swap and on Lambda^2 of F2^2 as the identity
    F2Matrix s1 = exterior_power({2, 1}, 2, 2, 1);
    CHECK(s1.to_rows() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(exterior_power({2, 1}, 2, 2, 2) == F2Matrix::identity(1));
    // projection F2^3 -> F2^2 killing e_2: Lambda^2 sends e_01 to e_01 and the others to 0
    F2Matrix p2 = exterior_power({1, 2, 0}, 3, 2, 2);
    CHECK(p2.to_rows() == std::vector<std::vector<int>>{{1, 0, 0}});
    // contraction by e_0^* on Lambda^1 F2^2 is the first coordinate
    BitVec w(2);
    w.set(0);
    CHECK(contraction_matrix(2, 1, w, 1).to_rows() == std::vector<std::vector<int>>{{1, 0}});
    // contraction of e_01 by e_0^* is e_1
    CHECK(contraction_matrix(2, 1, w, 2).to_rows() == std::vector<std::vector<int>>{{0}, {1}});
}

TEST_CASE("quotient spaces") {
    Setup s(viro(2, 3));
    for (std::size_t i = 0; i < s.k.simplex_count(); ++i) {
        int face = s.k.polytope_face(int(i));
        CHECK(s.qs.dim(int(i)) == s.k.polytope().faces()[std::size_t(face)].dim);
    }
    // the coset of a vector of Sed is zero, and lifting then taking the coset is the identity
    for (std::size_t i = 0; i < s.k.simplex_count(); ++i) {
        for (const auto& b : s.k.sedentarity(int(i)).basis()) CHECK(s.qs.coset(int(i), b) == 0u);
        for (ga::Mask v = 0; v < (1u << s.qs.dim(int(i))); ++v) CHECK(s.qs.coset(int(i), s.qs.lift(int(i), v)) == v);
    }
}

TEST_CASE("coefficient dimensions") {
    Setup s(viro(2, 3));
    TropicalCoefficients tc = build_tropical_coefficients(s.cc, s.qs);
    for (std::size_t i = 0; i < tc.fp[0].cells.size(); ++i) CHECK(tc.fp[0].stalk[i] == 1);
    for (std::size_t i = 0; i < tc.fp[1].cells.size(); ++i) {
        const auto& cell = s.cc.cell(tc.fp[1].cells[i]);
        int face = s.k.polytope_face(cell.upper);
        CHECK(tc.fp[1].stalk[i] == std::size_t(s.k.polytope().faces()[std::size_t(face)].dim));
    }
    // a cell over an edge lying in x = 0: F_1^P is one-dimensional
    int e = s.k.simplex_index({0, 1});
    REQUIRE(e >= 0);
    REQUIRE(s.k.vertices()[0] == IVec{0, 0});
    REQUIRE(s.k.vertices()[1] == IVec{0, 1});
    CHECK(s.qs.dim(e) == 1);
    // F_k^X against the closed formula C(m,k) - C(m-p,k-p)
    for (std::size_t k = 0; k < tc.fx.size(); ++k)
        for (std::size_t i = 0; i < tc.fx[k].cells.size(); ++i) {
            const auto& cell = s.cc.cell(tc.fx[k].cells[i]);
            int m = s.qs.dim(cell.upper);
            int p = s.k.simplices()[std::size_t(cell.lower)].dim;
            CHECK(static_cast<long long>(tc.fx[k].stalk[i]) == binom(m, int(k)) - binom(m - p, int(k) - p));
        }
}

TEST_CASE("tropical line and cubic") {
    Setup line(trivial_triangulation(LatticePolytope::simplex(2, 1)));
    TropicalHomology tl(line.cc, line.qs);
    // H_{1,1} of the tropical line is 1: three kernel lines span F2^2 at the centre, leaving one relation.
    CHECK(tl.table_x() == std::vector<std::vector<std::size_t>>{{1, 0}, {0, 1}});
    Setup cubic(viro(2, 3));
    TropicalHomology tc(cubic.cc, cubic.qs);
    CHECK(tc.table_x() == std::vector<std::vector<std::size_t>>{{1, 1}, {1, 1}});
    CHECK(tc.inclusion(1, 1).rank() == 1);
    CHECK(tc.inclusion(0, 0).rank() == 1);
    // oracle: dense ranks of the assembled F_1^X complex
    auto cx = chain_complex(cubic.cc, tc.coefficients().fx[1]);
    auto b = dense_betti(cx.complex);
    CHECK(b[0] == 1);
    CHECK(b[1] == 1);
}

TEST_CASE("tables agree with dense ranks") {
    for (auto t : {viro(2, 4), cube_triangulation(2, 2), viro(3, 2), product_of_simplices(1, 2, 1, 1)}) {
        Setup s(t);
        TropicalHomology th(s.cc, s.qs);
        const int n = th.n();
        for (int p = 0; p < n; ++p) {
            auto b = dense_betti(chain_complex(s.cc, th.coefficients().fx[std::size_t(p)]).complex);
            for (int q = 0; q <= n; ++q) CHECK(th.hx(p, q) == b[std::size_t(q)]);
        }
        for (int p = 0; p <= n; ++p) {
            auto b = dense_betti(chain_complex(s.cc, th.coefficients().fp[std::size_t(p)]).complex);
            for (int q = 0; q <= n; ++q) CHECK(th.hp(p, q) == b[std::size_t(q)]);
        }
    }
}

TEST_CASE("projective space: H_{q,q}(P) = 1 and nothing else") {
    for (auto t : {viro(2, 2), viro(3, 2), trivial_triangulation(LatticePolytope::simplex(4, 1))}) {
        Setup s(t);
        TropicalHomology th(s.cc, s.qs);
        for (int p = 0; p <= th.n(); ++p)
            for (int q = 0; q <= th.n(); ++q) CHECK(th.hp(p, q) == (p == q ? 1u : 0u));
    }
}

TEST_CASE("inclusions: adjointness, connectivity, Lefschetz, duality, Euler characteristic") {
    for (auto t : {viro(2, 3), viro(3, 2), viro(3, 3), cube_triangulation(3, 2), viro(4, 1)}) {
        Setup s(t);
        TropicalHomology th(s.cc, s.qs);
        const int n = th.n();
        long long chi = 0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                CHECK(th.adjoint(p, q));
                CHECK(th.inclusion(p, q).rank() == th.co_inclusion(p, q).rank());
                CHECK(th.hx(p, q) == th.hx_cohomology(p, q));
                CHECK(th.hx_cohomology(p, q) == th.hx_cohomology(n - 1 - p, n - 1 - q));
                chi += ((p + q) % 2 ? -1 : 1) * static_cast<long long>(th.hx(p, q));
            }
        CHECK(chi == th.cell_euler_characteristic());
        CHECK(th.inclusion(0, 0).rank() == 1);
        for (int q = 0; 2 * q < n - 1; ++q) {
            F2Matrix m = th.co_inclusion(q, q);
            CHECK(m.rows() == m.cols());
            CHECK(m.rank() == m.rows());
        }
    }
}
