#include <set>
#include <fstream>
#include <random>

#include "doctest.h"
#include "patchlab/patchwork.hpp"

using namespace patchlab;

namespace {

nlohmann::json load(const std::string& name) {
    std::ifstream in(std::string(PATCHLAB_DATA_DIR) + "/" + name);
    return nlohmann::json::parse(in);
}

SignDistribution all_signs(std::size_t n, std::size_t code) {
    SignDistribution s = SignDistribution::zero(n);
    for (std::size_t i = 0; i < n; ++i) s.values[i] = (code >> i) & 1;
    return s;
}

std::vector<std::size_t> projective_betti(int dim) { return std::vector<std::size_t>(std::size_t(dim + 1), 1); }

// Every affine combination a + b + c of members stays a member.
bool is_affine(const std::vector<Mask>& s) {
    std::set<Mask> in(s.begin(), s.end());
    for (Mask a : s)
        for (Mask b : s)
            for (Mask c : s)
                if (!in.count(a ^ b ^ c)) return false;
    return true;
}

}  // namespace

TEST_CASE("real lift of the segment and the projective plane") {
    RealLift seg(trivial_triangulation(LatticePolytope::simplex(1, 1)));
    CHECK(seg.betti() == std::vector<std::size_t>{1, 1});
    CHECK(seg.complex().dim(1) == 4);  // two edges, each subdivided once
    // omega_RX on the two real edges over [0,1]: value 1 on exactly one of them
    CHECK(seg.omega_delta().popcount() == 1);
    CHECK(seg.omega_class() == BitVec::from_bits({1}));

    RealLift plane(trivial_triangulation(LatticePolytope::simplex(2, 1)));
    CHECK(plane.betti() == std::vector<std::size_t>{1, 1, 1});
    CHECK(plane.cohomology().betti() == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("torus from the figure: lift, degree, T-curve and its components") {
    Triangulation k = Triangulation::from_json(load("fig_torus.json"));
    SignDistribution eps = SignDistribution::from_json(load("fig_torus_signs.json"), k.vertices().size());
    RealLift lift(k);
    CHECK(lift.betti() == std::vector<std::size_t>{1, 2, 1});
    CHECK(lift.divisors_span());
    CHECK(lift.divisor_axes() == std::vector<int>{1, 0});
    CHECK(lift.coordinate_circle_degrees() == std::vector<int>{1, 1});

    THypersurface x(lift, eps);
    CHECK(x.betti() == std::vector<std::size_t>{2, 2});
    CHECK(direct_betti(lift, eps) == x.betti());
    REQUIRE(x.components().size() == 2);
    int trivial = 0, diagonal = 0;
    for (const auto& c : x.components()) {
        REQUIRE(c.divisor_class.has_value());
        if (c.null_homologous()) ++trivial;
        if (*c.divisor_class == BitVec::from_bits({1, 1})) ++diagonal;
    }
    CHECK(trivial == 1);
    CHECK(diagonal == 1);
    CHECK(x.poincare_dual_to_omega());
}

TEST_CASE("harnack quartic has four ovals") {
    Triangulation k = viro(2, 4);
    RealLift lift(k);
    auto eps = SignDistribution::harnack(k);
    THypersurface x(lift, eps);
    CHECK(x.betti()[0] == 4);
    CHECK(direct_betti(lift, eps) == x.betti());
}

TEST_CASE("degree one hypersurfaces are projective spaces") {
    for (int n = 1; n <= 4; ++n) {
        Triangulation k = trivial_triangulation(LatticePolytope::simplex(n, 1));
        RealLift lift(k);
        CHECK(lift.betti() == projective_betti(n));
        const std::size_t nv = k.vertices().size();
        for (std::size_t code = 0; code < (std::size_t(1) << nv); ++code) {
            THypersurface x(lift, all_signs(nv, code));
            CHECK(x.betti() == projective_betti(n - 1));
            CHECK(x.poincare_dual_to_omega());
        }
    }
}

TEST_CASE("argument sets are complements of affine subspaces of codimension p") {
    std::mt19937_64 g(11);
    for (auto k : {viro(2, 3), viro(3, 2), cube_triangulation(2, 2)}) {
        RealLift lift(k);
        const auto& cc = lift.cubical();
        for (int trial = 0; trial < 4; ++trial) {
            SignDistribution eps = SignDistribution::from_seed(k.vertices().size(), g());
            for (std::size_t c = 0; c < cc.size(); ++c) {
                const auto& cell = cc.cell(int(c));
                int p = k.simplices()[std::size_t(cell.lower)].dim;
                int m = lift.quotients().dim(cell.upper);
                auto arg = arg_set(lift, eps, int(c));
                std::size_t total = std::size_t(1) << m;
                CHECK(arg.size() == total - (total >> p));
                std::vector<Mask> rest;
                for (Mask v = 0; v < total; ++v)
                    if (!std::binary_search(arg.begin(), arg.end(), v)) rest.push_back(v);
                CHECK(is_affine(rest));
            }
        }
    }
    // interior cubes of a curve: (edge; triangle) has 2 of 4 arguments, (triangle; triangle) has 3 of 4
    Triangulation k = viro(2, 2);
    RealLift lift(k);
    auto eps = SignDistribution::zero(k.vertices().size());
    for (int t : k.simplices_of_dim(2)) {
        CHECK(arg_set(lift, eps, lift.cubical().index(t, t)).size() == 3);
        for (int e : k.facets(t)) CHECK(arg_set(lift, eps, lift.cubical().index(e, t)).size() == 2);
    }
    for (int v = 0; v < int(k.vertices().size()); ++v) CHECK(arg_set(lift, eps, lift.cubical().index(v, v)).empty());
}

TEST_CASE("T-hypersurfaces against the direct model") {
    std::mt19937_64 g(5);
    for (auto k : {viro(2, 3), viro(2, 5), viro(3, 2), cube_triangulation(2, 3), cube_triangulation(3, 2)}) {
        RealLift lift(k);
        for (int trial = 0; trial < 5; ++trial) {
            SignDistribution eps = SignDistribution::from_seed(k.vertices().size(), g());
            THypersurface x(lift, eps);
            CHECK(direct_betti(lift, eps) == x.betti());
            long long chi = 0;
            for (std::size_t q = 0; q < x.betti().size(); ++q) chi += (q % 2 ? -1 : 1) * (long long)x.betti()[q];
            CHECK(chi == x.euler_characteristic());
            CHECK(x.poincare_dual_to_omega());
            for (std::size_t c = 0; c < lift.cubical().size(); ++c)
                if (x.complex().contains(int(c))) CHECK(x.complex().points(int(c)) == arg_set(lift, eps, int(c)));
            for (int q = 0; q < x.n(); ++q) CHECK(x.restriction_map(q).rank() == x.push_forward_map(q).rank());
            std::size_t top_cells = 0;
            for (const auto& comp : x.components()) top_cells += comp.top_cells.size();
            CHECK(top_cells == x.complex().dim(x.n() - 1));
            CHECK(x.components().size() == x.betti()[0]);
        }
    }
}

TEST_CASE("cohomology rings of projective spaces, cubes and the torus") {
    for (int n = 2; n <= 3; ++n) {
        RealLift lift(trivial_triangulation(LatticePolytope::simplex(n, 1)));
        const auto& ring = lift.cup_tables();
        BitVec h = BitVec::from_bits({1});
        BitVec power = h;
        for (int k = 2; k <= n; ++k) {
            power = ring.multiply(k - 1, power, 1, h);
            CHECK(!power.is_zero());
        }
        CHECK(lift.cup_agrees_with_alexander_whitney());
    }
    for (auto k : {cube_triangulation(2, 1), cube_triangulation(2, 2), cube_triangulation(3, 1)}) {
        RealLift lift(k);
        const auto& ring = lift.cup_tables();
        for (std::size_t code = 1; code < (std::size_t(1) << lift.betti()[1]); ++code) {
            BitVec a(lift.betti()[1]);
            for (std::size_t i = 0; i < a.size(); ++i) a.set(i, code >> i & 1);
            CHECK(ring.multiply(1, a, 1, a).is_zero());
        }
    }
    RealLift torus(cube_triangulation(2, 2));
    const auto& ring = torus.cup_tables();
    REQUIRE(torus.betti()[1] == 2);
    F2Matrix form(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) form.set(std::size_t(i), std::size_t(j), ring.product(1, i, 1, j).get(0));
    CHECK(form.to_rows() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(torus.cup_agrees_with_alexander_whitney());
}

TEST_CASE("the two filtrations agree and their graded pieces are the tropical coefficients") {
    std::mt19937_64 g(21);
    for (auto k : {viro(2, 3), viro(3, 2), cube_triangulation(2, 2)}) {
        RealLift lift(k);
        TropicalCoefficients coeffs = build_tropical_coefficients(lift.cubical(), lift.quotients());
        for (int trial = 0; trial < 4; ++trial) {
            SignDistribution eps = trial == 0 ? SignDistribution::harnack(k)
                                              : SignDistribution::from_seed(k.vertices().size(), g());
            THypersurface x(lift, eps);
            auto cmp = compare_filtrations(x);
            CHECK(cmp.mismatches == 0);
            CHECK(cmp.cubes == x.complex().cells(0).size() + x.complex().cells(1).size() +
                                   (x.n() > 2 ? x.complex().cells(2).size() : 0));
            for (auto method : {FiltrationMethod::Intersection, FiltrationMethod::RenaudineauShaw}) {
                FilteredTComplex f(x, method);
                CHECK(f.graded_mismatches(coeffs) == 0);
                CHECK_NOTHROW(f.chains().validate());
                for (int q = 0; q < x.n(); ++q)
                    for (int c : x.complex().cells(q)) {
                        const auto& cube = f.cube(c);
                        CHECK(cube.steps[0].dim() == cube.points.size());
                        CHECK(cube.steps[std::size_t(cube.m)].dim() <= 1);
                    }
            }
        }
    }
    // an interior (edge; triangle) cube of a curve has graded dimensions (1,1)
    Triangulation k = viro(2, 2);
    RealLift lift(k);
    THypersurface x(lift, SignDistribution::zero(k.vertices().size()));
    FilteredTComplex f(x, FiltrationMethod::Intersection);
    int interior_edge = -1;
    for (int e : k.simplices_of_dim(1))
        if (k.cofacets(e).size() == 2) interior_edge = e;
    REQUIRE(interior_edge >= 0);
    const auto& cube = f.cube(lift.cubical().index(interior_edge, k.cofacets(interior_edge)[0]));
    CHECK(cube.graded_dim(0) == 1);
    CHECK(cube.graded_dim(1) == 1);
}

TEST_CASE("adapted cochain coordinates round trip") {
    Triangulation k = viro(2, 3);
    RealLift lift(k);
    THypersurface x(lift, SignDistribution::harnack(k));
    FilteredTComplex f(x, FiltrationMethod::RenaudineauShaw);
    std::mt19937_64 g(3);
    for (int q = 0; q < 2; ++q) {
        BitVec v(x.complex().dim(q));
        for (std::size_t i = 0; i < v.size(); ++i) v.set(i, g() & 1);
        CHECK(f.to_standard_cochain(q, f.to_adapted_cochain(q, v)) == v);
    }
}

TEST_CASE("bad inputs") {
    Triangulation k = viro(2, 2);
    RealLift lift(k);
    CHECK_THROWS_AS(THypersurface(lift, SignDistribution::zero(3)), Error);
}
