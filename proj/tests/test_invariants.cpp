#include <random>

#include "doctest.h"
#include "patchlab/invariants.hpp"

using namespace patchlab;

namespace {

// F2[h1,h2]/(h1^(a+1), h2^(b+1)) on monomial bases; iota of x h1 + y h2 by brute force over all classes.
int product_ring_iota(int a, int b, int x, int y) {
    auto monomials = [&](int k) {
        std::vector<std::pair<int, int>> m;
        for (int i = 0; i <= std::min(a, k); ++i)
            if (k - i <= b) m.push_back({i, k - i});
        return m;
    };
    for (int k = 0; k <= a + b; ++k) {
        auto src = monomials(k), dst = monomials(k + 1);
        for (std::uint32_t code = 1; code < (1u << src.size()); ++code) {
            std::vector<int> img(dst.size(), 0);
            for (std::size_t s = 0; s < src.size(); ++s) {
                if (!(code >> s & 1)) continue;
                auto [i, j] = src[s];
                for (std::size_t t = 0; t < dst.size(); ++t) {
                    if (x && dst[t] == std::make_pair(i + 1, j)) img[t] ^= 1;
                    if (y && dst[t] == std::make_pair(i, j + 1)) img[t] ^= 1;
                }
            }
            bool zero = true;
            for (int v : img) zero = zero && !v;
            if (zero) return k - 1;
        }
    }
    return a + b;
}

bool passes(const InvariantRecord& rec) {
    for (const auto& v : rec.verdicts)
        if (v.status == Status::Fail) return false;
    return true;
}

std::string failures(const InvariantRecord& rec) {
    std::string s;
    for (const auto& v : rec.verdicts)
        if (v.status == Status::Fail) s += v.name + " " + v.witness.dump() + "\n";
    return s;
}

}  // namespace

TEST_CASE("iota of projective spaces, cubes and products") {
    for (int n = 1; n <= 3; ++n) {
        RealLift lift(trivial_triangulation(LatticePolytope::simplex(n, 1)));
        CHECK(iota_space(lift.cup_tables()) == n - 1);
        CHECK(iota(lift.cup_tables(), BitVec(1)) == -1);
    }
    for (int n = 1; n <= 3; ++n)
        for (int d = 1; d <= 2; ++d) {
            RealLift lift(cube_triangulation(n, d));
            CHECK(iota_space(lift.cup_tables()) == 0);
        }
    for (auto [a, b] : {std::pair{1, 1}, {1, 2}, {2, 2}, {1, 3}}) {
        RealLift lift(product_of_simplices(a, 1, b, 1));
        CHECK(iota_space(lift.cup_tables()) == std::max(a, b) - 1);
    }
}

TEST_CASE("iota of the degree class against the product ring oracle") {
    // the oracle itself reproduces the nonzero cells of the parity table
    for (auto [n, m] : {std::pair{1, 0}, {1, 1}, {2, 0}, {1, 2}}) {
        CHECK(product_ring_iota(n, n + m, 1, 0) == n - 1);
        CHECK(product_ring_iota(n, n + m, 0, 1) == n + m - 1);
        CHECK(product_ring_iota(n, n + m, 1, 1) == n + m - 1);
        CHECK(product_ring_iota(n, n + m, 0, 0) == -1);
    }
    for (auto [n, m] : {std::pair{1, 0}, {1, 1}, {2, 0}})
        for (int d = 1; d <= 2; ++d)
            for (int e = 1; e <= 2; ++e) {
                RealLift lift(product_of_simplices(n, d, n + m, e));
                CHECK(iota(lift.cup_tables(), lift.omega_class()) == product_ring_iota(n, n + m, d % 2, e % 2));
            }
}

TEST_CASE("rank of odd degree hypersurfaces in projective space") {
    for (auto [n, d] : {std::pair{2, 1}, {2, 3}, {3, 1}, {3, 3}}) {
        Triangulation k = viro(n, d);
        RealLift lift(k);
        std::mt19937_64 g(std::uint64_t(10 * n + d));
        for (int t = 0; t < 3; ++t) {
            THypersurface x(lift, SignDistribution::from_seed(k.vertices().size(), g()));
            CHECK(rank_ell(x) == n - 1);
        }
    }
    CHECK(simplex_degree(LatticePolytope::simplex(3, 2)) == 2);
    CHECK(!simplex_degree(LatticePolytope::cube(2, 2)).has_value());
}

TEST_CASE("rank is the length of the injective prefix") {
    std::mt19937_64 g(8);
    for (auto k : {viro(2, 4), viro(3, 2), cube_triangulation(2, 2)}) {
        RealLift lift(k);
        for (int t = 0; t < 5; ++t) {
            THypersurface x(lift, SignDistribution::from_seed(k.vertices().size(), g()));
            auto inj = restriction_injective(x);
            int ell = rank_ell(x);
            CHECK(ell >= 0);  // nonempty, so i^0 is injective
            for (int q = 0; q <= ell; ++q) CHECK(inj[std::size_t(q)]);
            if (ell + 1 < int(inj.size())) CHECK(!inj[std::size_t(ell + 1)]);
            CHECK(inj.back() == false);
        }
    }
}

TEST_CASE("every verdict passes on curves of degree three") {
    Triangulation k = viro(2, 3);
    RealLift lift(k);
    AnalysisOptions opt;
    opt.viro = true;
    Analyzer an(lift, opt);
    std::mt19937_64 g(2);
    for (int t = 0; t < 50; ++t) {
        auto rec = an.analyze(SignDistribution::from_seed(k.vertices().size(), g()));
        CHECK_MESSAGE(passes(rec), failures(rec));
        CHECK(rec.r_index <= 2);
        CHECK(rec.verdict("odd_degree")->status == Status::Pass);
        CHECK(rec.verdict("mod4")->status == Status::Skipped);
    }
}

TEST_CASE("surfaces: congruence modulo four and the vanishing criterion") {
    std::mt19937_64 g(4);
    for (auto k : {viro(3, 2), viro(3, 3), cube_triangulation(3, 2)}) {
        RealLift lift(k);
        Analyzer an(lift);
        for (int t = 0; t < 6; ++t) {
            auto rec = an.analyze(SignDistribution::from_seed(k.vertices().size(), g()));
            CHECK_MESSAGE(passes(rec), failures(rec));
            CHECK(rec.verdict("mod4")->status == Status::Pass);
            CHECK(rec.verdict("vanishing_criterion")->status == Status::Pass);
            CHECK(rec.ell >= rec.iota_degree);
        }
    }
}

TEST_CASE("records are deterministic and serializable") {
    Triangulation k = viro(2, 2);
    RealLift lift(k);
    Analyzer an(lift);
    auto eps = SignDistribution::harnack(k);
    auto a = an.analyze(eps).to_json().dump();
    auto b = an.analyze(eps).to_json().dump();
    CHECK(a == b);
    auto j = nlohmann::json::parse(a);
    CHECK(j["counterexample"] == 0);
    CHECK(j["invariants"]["ell"] == 0);  // a single oval bounds a disc
    CHECK(j["betti"]["RX"] == std::vector<int>{1, 1});

    InvariantRecord r;
    r.verdicts.push_back({"x", Status::Pass, {}});
    CHECK(!r.counterexample());
    r.verdicts.push_back({"y", Status::Fail, {}});
    CHECK(r.counterexample());
    CHECK(r.verdict("y")->status == Status::Fail);
    CHECK(r.verdict("z") == nullptr);
}
