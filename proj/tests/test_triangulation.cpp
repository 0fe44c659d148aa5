#include <algorithm>
#include <fstream>
#include <set>

#include "doctest.h"
#include "patchlab/triangulation.hpp"

using namespace patchlab;

namespace {

using PointSet = std::set<IVec>;

std::set<PointSet> maximal_point_sets(const Triangulation& t) {
    std::set<PointSet> out;
    for (const auto& s : t.maximal_simplices()) {
        PointSet ps;
        for (int v : s) ps.insert(t.vertices()[std::size_t(v)]);
        out.insert(ps);
    }
    return out;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

nlohmann::json load(const std::string& name) {
    std::ifstream in(std::string(PATCHLAB_DATA_DIR) + "/" + name);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("trivial triangulations are valid") {
    for (int n = 1; n <= 5; ++n) {
        auto t = trivial_triangulation(LatticePolytope::simplex(n, 1));
        CHECK(t.validate().ok);
        CHECK(t.maximal_simplices().size() == 1);
    }
}

TEST_CASE("validation failures") {
    LatticePolytope wedge(2, {{0, 0}, {2, 0}, {0, 1}});
    Triangulation fat(wedge, {{{0, 0}, {2, 0}, {0, 1}}});
    auto r = fat.validate();
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("primitive") != std::string::npos);
    CHECK(r.simplices == std::vector<int>{0});

    // two unimodular triangles on the same side of the edge (0,0)-(1,0)
    Triangulation overlap(LatticePolytope::cube(2, 1), {{{0, 0}, {1, 0}, {1, 1}}, {{0, 0}, {1, 0}, {0, 1}}});
    auto o = overlap.validate();
    CHECK_FALSE(o.ok);
    CHECK(o.simplices.size() == 2);

    Triangulation half(LatticePolytope::cube(2, 1), {{{0, 0}, {1, 0}, {1, 1}}});
    CHECK_FALSE(half.validate().ok);
}

TEST_CASE("viro triangulations are valid with d^n simplices") {
    for (int n = 1; n <= 4; ++n)
        for (int d = 1; d <= 4; ++d) {
            auto t = viro(n, d);
            auto r = t.validate();
            CHECK_MESSAGE(r.ok, "viro(", n, ",", d, "): ", r.reason);
            CHECK(static_cast<long long>(t.maximal_simplices().size()) == ipow(d, n));
        }
    for (int d = 5; d <= 6; ++d) CHECK(viro(2, d).validate().ok);
    CHECK(viro(1, 5).maximal_simplices().size() == 5);
    CHECK(viro(2, 3).maximal_simplices().size() == 9);
}

TEST_CASE("viro(2,5) matches the strip pattern of the figure") {
    // strip between rows k and k+1: a fan from (0,k+1) down to row k, then edges from row k+1 to (5-k,k)
    std::set<PointSet> expect;
    for (int k = 0; k < 5; ++k) {
        for (int j = 0; j < 5 - k; ++j) expect.insert(PointSet{IVec{0, k + 1}, IVec{j, k}, IVec{j + 1, k}});
        for (int j = 0; j < 4 - k; ++j) expect.insert(PointSet{IVec{j, k + 1}, IVec{j + 1, k + 1}, IVec{5 - k, k}});
    }
    CHECK(expect.size() == 25);
    CHECK(maximal_point_sets(viro(2, 5)) == expect);
}

TEST_CASE("plus reproduces the recursion") {
    CHECK(maximal_point_sets(plus(viro(2, 1), viro(1, 2))) == maximal_point_sets(viro(2, 2)));
    auto t = plus(viro(3, 3), viro(2, 4));
    CHECK(maximal_point_sets(t) == maximal_point_sets(viro(3, 4)));
    CHECK(t.maximal_simplices().size() == 64);
    CHECK_THROWS_AS(plus(viro(3, 3), viro(2, 3)), Error);
}

TEST_CASE("heredity: the far facet carries the lower Viro triangulation") {
    for (int n = 2; n <= 4; ++n)
        for (int d = 1; d <= 4; ++d) {
            auto facet = restrict_to_far_facet(viro(n, d));
            std::vector<std::vector<IVec>> expect;
            auto lower = viro(n - 1, d);
            for (const auto& s : lower.maximal_simplices()) {
                std::vector<IVec> pts;
                for (int v : s) pts.push_back(lower.vertices()[std::size_t(v)]);
                std::sort(pts.begin(), pts.end());
                expect.push_back(pts);
            }
            std::sort(expect.begin(), expect.end());
            CHECK_MESSAGE(facet == expect, "n=", n, " d=", d);
        }
}

TEST_CASE("cube, product and permuted triangulations are valid") {
    for (int n = 1; n <= 3; ++n)
        for (int d = 1; d <= 3; ++d) {
            auto t = cube_triangulation(n, d);
            CHECK(t.validate().ok);
            CHECK(t.polytope().family() == "cube(" + std::to_string(n) + "," + std::to_string(d) + ")");
        }
    CHECK(cube_triangulation(4, 2).validate().ok);
    CHECK(product_of_simplices(1, 2, 2, 1).validate().ok);
    CHECK(product_of_simplices(2, 2, 2, 1).validate().ok);
    CHECK(product_of_simplices(1, 3, 1, 2).validate().ok);
    auto v = viro(4, 2);
    auto p = permute_simplex_vertices(v, {4, 2, 0, 3, 1});
    CHECK(p.validate().ok);
    CHECK(maximal_point_sets(p) != maximal_point_sets(v));
    CHECK(maximal_point_sets(permute_simplex_vertices(v, {0, 1, 2, 3, 4})) == maximal_point_sets(v));
}

TEST_CASE("omega examples") {
    auto t = viro(2, 2);
    auto vid = [&](IVec x) {
        return int(std::lower_bound(t.vertices().begin(), t.vertices().end(), x) - t.vertices().begin());
    };
    int a = vid({0, 0}), b = vid({1, 0}), c = vid({0, 1});
    int ab = t.simplex_index({std::min(a, b), std::max(a, b)});
    int bc = t.simplex_index({std::min(b, c), std::max(b, c)});
    REQUIRE(ab >= 0);
    REQUIRE(bc >= 0);
    CHECK(t.edge_covector(ab) == BitVec::from_bits({1, 0}));
    CHECK(t.edge_covector(bc) == BitVec::from_bits({1, 1}));
    auto w = t.omega(bc);
    CHECK(w.p == 1);
    CHECK(w.value == BitVec::from_bits({1, 1}));
    for (int s : t.simplices_of_dim(2)) CHECK(t.omega(s).value == BitVec::from_bits({1}));
    CHECK(t.omega(a).value == BitVec::from_bits({1}));
    Triangulation fat(LatticePolytope(2, {{0, 0}, {2, 0}, {0, 1}}), {{{0, 0}, {2, 0}, {0, 1}}});
    CHECK_THROWS_AS(fat.omega(int(fat.simplex_count()) - 1), Error);
}

TEST_CASE("omega of an edge vanishes on its sedentarity") {
    for (const auto& t : {viro(2, 4), viro(3, 3), cube_triangulation(2, 3), product_of_simplices(1, 2, 2, 1)})
        for (int e : t.simplices_of_dim(1)) {
            BitVec w = t.edge_covector(e);
            CHECK_FALSE(w.is_zero());
            for (const auto& v : t.sedentarity(e).basis()) CHECK_FALSE(w.dot(v));
        }
}

TEST_CASE("torus figure file") {
    auto t = Triangulation::from_json(load("fig_torus.json"));
    CHECK(t.maximal_simplices().size() == 18);
    CHECK(t.polytope().family() == "cube(2,3)");
    auto s = SignDistribution::from_json(load("fig_torus_signs.json"), t.vertices().size());
    CHECK(s.values.size() == 16);
}

TEST_CASE("json round trip and load errors") {
    auto t = viro(3, 2);
    auto back = Triangulation::from_json(t.to_json());
    CHECK(back.maximal_simplices() == t.maximal_simplices());
    CHECK(back.vertices() == t.vertices());
    auto bad = t.to_json();
    bad["maximal_simplices"][0][0] = 99;
    CHECK_THROWS_AS(Triangulation::from_json(bad), Error);
    auto missing = t.to_json();
    missing["maximal_simplices"].erase(0);
    CHECK_THROWS_AS(Triangulation::from_json(missing), Error);
}

TEST_CASE("sign distributions") {
    // reference value: the first splitmix64 output from state 0 is 0xE220A8397B1DCDAF
    CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
    auto s = SignDistribution::from_seed(10, 0);
    CHECK(s.values[0] == 1);
    CHECK(SignDistribution::from_seed(10, 7).values == SignDistribution::from_json({{"random_seed", 7}}, 10).values);
    auto quartic = viro(2, 4);
    auto h = SignDistribution::harnack(quartic);
    const auto& v = quartic.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(h.values[i] == ((v[i][0] * v[i][1]) & 1));
    CHECK_THROWS_AS(SignDistribution::from_json({{"signs", {0, 1}}}, 3), Error);
    CHECK_THROWS_AS(SignDistribution::from_json({{"signs", {0, 2, 1}}}, 3), Error);
}
