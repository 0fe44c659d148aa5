#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "patchlab/polytope.hpp"

using namespace patchlab;

namespace {

std::map<int, int> face_counts(const LatticePolytope& p) {
    std::map<int, int> c;
    for (const auto& f : p.faces()) ++c[f.dim];
    return c;
}

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<LatticePolytope> family_sample() {
    return {LatticePolytope::simplex(1, 2), LatticePolytope::simplex(2, 3), LatticePolytope::simplex(3, 2),
            LatticePolytope::simplex(4, 3), LatticePolytope::cube(2, 3),    LatticePolytope::cube(3, 2),
            LatticePolytope::cube(4, 1),    LatticePolytope::product(1, 2, 1, 3), LatticePolytope::product(1, 1, 2, 2),
            LatticePolytope::product(2, 1, 2, 1)};
}

}  // namespace

TEST_CASE("family examples") {
    auto tri = LatticePolytope::simplex(2, 1);
    CHECK(tri.vertices().size() == 3);
    CHECK(face_counts(tri) == std::map<int, int>{{0, 3}, {1, 3}, {2, 1}});
    auto sq = LatticePolytope::cube(2, 1);
    CHECK(face_counts(sq) == std::map<int, int>{{0, 4}, {1, 4}, {2, 1}});
    auto s43 = LatticePolytope::simplex(4, 3);
    auto c = face_counts(s43);
    for (int k = 0; k <= 3; ++k) CHECK(c[k] == binom(5, k + 1));
    CHECK(s43.vertices().front() == IVec{0, 0, 0, 0});
    CHECK(std::count(s43.vertices().begin(), s43.vertices().end(), IVec{0, 0, 3, 0}) == 1);
    CHECK_THROWS_AS(LatticePolytope::simplex(0, 1), Error);
    CHECK_THROWS_AS(LatticePolytope::cube(2, 0), Error);
    CHECK(LatticePolytope::from_family("product(simplex(1,2),simplex(2,1))").family() ==
          "product(simplex(1,2),simplex(2,1))");
    CHECK_THROWS_AS(LatticePolytope::from_family("sphere(2,1)"), Error);
}

TEST_CASE("sedentarity examples") {
    auto p = LatticePolytope::simplex(2, 3);
    CHECK(p.sedentarity({{1, 1}}).dim() == 0);
    CHECK(p.sedentarity({{0, 0}, {1, 0}, {0, 1}}).dim() == 0);
    CHECK(p.sedentarity({{3, 0}}) == Subspace::full(2));
    // edge from 0 to 3e1: annihilator of span(e1) is {v : v1 = 0}
    CHECK(p.sedentarity({{0, 0}, {3, 0}}) == Subspace::coordinate(2, {1}));
    CHECK(p.sedentarity({{1, 0}, {2, 0}}) == Subspace::coordinate(2, {1}));
    // hypotenuse x + y = 3: tangent direction (1,-1), annihilator mod 2 is span(1,1)
    CHECK(p.sedentarity({{1, 2}}) == Subspace::span(2, {BitVec::from_bits({1, 1})}));
    CHECK_THROWS_AS(p.sedentarity({{4, 0}}), Error);
}

TEST_CASE("smoothness") {
    for (const auto& p : family_sample()) CHECK(p.smoothness_check().smooth);
    LatticePolytope wedge(2, {{0, 0}, {2, 0}, {0, 1}});
    auto r = wedge.smoothness_check();
    CHECK_FALSE(r.smooth);
    // normals at (0,1) are (1,0) and (-1,-2); at (2,0) they are (0,1) and (-1,-2), a basis
    CHECK(wedge.vertices()[std::size_t(r.vertex)] == IVec{0, 1});
    CHECK(r.det == 2);
}

TEST_CASE("normalized volume of the families") {
    CHECK(LatticePolytope::simplex(3, 2).normalized_volume() == 8);
    CHECK(LatticePolytope::simplex(4, 3).normalized_volume() == 81);
    CHECK(LatticePolytope::cube(2, 3).normalized_volume() == 18);
    CHECK(LatticePolytope::cube(3, 2).normalized_volume() == 48);
    CHECK(LatticePolytope::product(1, 2, 2, 1).normalized_volume() == 6);
    CHECK(LatticePolytope(2, {{0, 0}, {2, 0}, {0, 1}}).normalized_volume() == 2);
}

TEST_CASE("face lattice properties") {
    for (const auto& p : family_sample()) {
        const std::size_t n = std::size_t(p.dim());
        std::set<std::vector<int>> faces;
        for (const auto& f : p.faces()) faces.insert(f.vertices);
        for (std::size_t i = 0; i < p.faces().size(); ++i) {
            const auto& a = p.faces()[i];
            CHECK(p.face_sedentarity(int(i)).dim() + std::size_t(a.dim) == n);
            for (std::size_t j = 0; j < p.faces().size(); ++j) {
                const auto& b = p.faces()[j];
                std::vector<int> meet;
                std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                                      std::back_inserter(meet));
                if (!meet.empty()) CHECK(faces.count(meet) == 1);
                if (std::includes(b.vertices.begin(), b.vertices.end(), a.vertices.begin(), a.vertices.end()))
                    CHECK(p.face_sedentarity(int(i)).contains(p.face_sedentarity(int(j))));
            }
        }
        // graded: every face of dim k > 0 contains a face of dim k - 1
        for (const auto& a : p.faces()) {
            if (a.dim == 0) continue;
            bool found = false;
            for (const auto& b : p.faces())
                found = found || (b.dim == a.dim - 1 &&
                                  std::includes(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end()));
            CHECK(found);
        }
    }
}

TEST_CASE("Smith normal form properties") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
        IMat a(r, IVec(c));
        for (auto& row : a)
            for (auto& x : row) x = (long long)(rng() % 9) - 4;
        SmithForm s = smith_normal_form(a, c);
        CHECK(imat_mul(imat_mul(s.U, a), s.V) == s.D);
        CHECK(imat_mul(s.V, s.V_inverse) == identity_imat(c));
        CHECK(std::llabs(determinant(s.U)) == 1);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D[i][j] == 0);
        for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.D[i + 1][i + 1] % s.D[i][i] == 0);
        for (std::size_t i = 0; i < s.rank; ++i) CHECK(s.D[i][i] > 0);
        for (const auto& k : integer_kernel(a, c))
            for (const auto& row : a) {
                long long acc = 0;
                for (std::size_t j = 0; j < c; ++j) acc += row[j] * k[j];
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("saturation matters for sedentarity") {
    // vertex differences (2,0) and (0,2) generate an index-4 sublattice; the face is still full-dimensional
    LatticePolytope p(2, {{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    CHECK(p.sedentarity({{1, 1}}).dim() == 0);
    // edge direction (2,2) saturates to (1,1)
    LatticePolytope q(2, {{0, 0}, {2, 2}, {2, 0}});
    CHECK(q.sedentarity({{0, 0}, {2, 2}}) == Subspace::span(2, {BitVec::from_bits({1, 1})}));
}
