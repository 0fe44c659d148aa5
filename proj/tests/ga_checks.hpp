#pragma once

// Exhaustive checks of the group algebra layer, shared by unit tests and the acceptance runner.

#include <random>
#include <string>
#include <vector>

#include "patchlab/group_algebra.hpp"

namespace gacheck {

using patchlab::BitVec;
using patchlab::Subspace;
using patchlab::ga::Mask;
namespace ga = patchlab::ga;

inline long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// All linearly independent ordered tuples would repeat subspaces; enumerate subspaces as sets instead.
inline std::vector<std::vector<Mask>> all_subspace_bases(int m) {
    std::vector<std::vector<Mask>> out;
    std::vector<std::vector<char>> seen;
    std::vector<std::vector<Mask>> frontier = {{}};
    auto members = [&](const std::vector<Mask>& b) {
        std::vector<char> in(ga::order(m), 0);
        for (Mask s = 0; s < (Mask(1) << b.size()); ++s) {
            Mask v = 0;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (s >> i & 1u) v ^= b[i];
            in[v] = 1;
        }
        return in;
    };
    while (!frontier.empty()) {
        std::vector<std::vector<Mask>> next;
        for (auto& b : frontier) {
            auto in = members(b);
            bool dup = false;
            for (auto& s : seen)
                if (s == in) dup = true;
            if (dup) continue;
            seen.push_back(in);
            out.push_back(b);
            for (Mask v = 1; v < ga::order(m); ++v)
                if (!in[v]) {
                    auto nb = b;
                    nb.push_back(v);
                    next.push_back(nb);
                }
        }
        frontier = std::move(next);
    }
    return out;
}

// Sum over the elements of the subspace spanned by b.
inline BitVec subspace_sum(int m, const std::vector<Mask>& b) {
    BitVec out(ga::order(m));
    for (Mask s = 0; s < (Mask(1) << b.size()); ++s) {
        Mask v = 0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (s >> i & 1u) v ^= b[i];
        out.set(v);
    }
    return out;
}

struct Result {
    bool ok = true;
    std::string detail;
    void fail(const std::string& s) {
        if (ok) detail = s;
        ok = false;
    }
};

inline Result check_dims(int m) {
    Result r;
    auto bases = all_subspace_bases(m);
    for (int k = 0; k <= m + 1; ++k) {
        long long expect = 0;
        for (int j = k; j <= m; ++j) expect += binom(m, j);
        Subspace mk = ga::aug_power(m, k);
        if (static_cast<long long>(mk.dim()) != expect) r.fail("dim m^" + std::to_string(k));
        std::vector<BitVec> gens;
        for (auto& b : bases)
            if (static_cast<int>(b.size()) >= k) gens.push_back(subspace_sum(m, b));
        if (Subspace::span(ga::order(m), gens) != mk) r.fail("subspace-sum span differs for k=" + std::to_string(k));
        Subspace ok = ga::degree_filtration(m, k - 1 < 0 ? 0 : k - 1);
        if (k >= 1 && ok.dim() + mk.dim() != ga::order(m)) r.fail("annihilator dims");
    }
    return r;
}

inline Result check_eta(int m, std::mt19937_64& rng, int trials) {
    Result r;
    for (int t = 0; t < trials; ++t) {
        int k = int(rng() % std::uint64_t(m + 1));
        int l = int(rng() % std::uint64_t(m + 1 - k));
        BitVec u(ga::k_subsets(m, k).size()), w(ga::k_subsets(m, l).size());
        for (std::size_t i = 0; i < u.size(); ++i) u.set(i, rng() & 1u);
        for (std::size_t i = 0; i < w.size(); ++i) w.set(i, rng() & 1u);
        BitVec prod = ga::multiply(m, ga::eta(m, k, u), ga::eta(m, l, w));
        BitVec uw = ga::eta(m, k + l, ga::wedge_product(m, k, u, l, w));
        if (!ga::aug_power(m, k + l + 1).contains(prod ^ uw)) r.fail("eta not multiplicative");
        if (ga::eta_inverse(m, k, ga::eta(m, k, u)) != u) r.fail("eta_inverse");
    }
    // eta of explicit vectors agrees with the multilinear expansion
    for (int t = 0; t < trials; ++t) {
        int k = int(rng() % std::uint64_t(m + 1));
        std::vector<Mask> vs;
        BitVec wedge(ga::k_subsets(m, 0).size());
        wedge.set(0);
        int deg = 0;
        for (int i = 0; i < k; ++i) {
            Mask v = Mask(rng() % ga::order(m));
            vs.push_back(v);
            BitVec lin(ga::k_subsets(m, 1).size());
            for (int j = 0; j < m; ++j)
                if (v >> j & 1u) lin.set(std::size_t(j));
            wedge = ga::wedge_product(m, deg, wedge, 1, lin);
            ++deg;
        }
        if (ga::eta_inverse(m, k, ga::eta_vectors(m, vs)) != wedge) r.fail("eta of vectors");
    }
    return r;
}

inline Result check_functions(int m, std::mt19937_64& rng, int trials) {
    Result r;
    auto random_of_degree = [&](int d) {
        BitVec a(ga::order(m));
        for (Mask s = 0; s < ga::order(m); ++s)
            if (ga::popcount(s) <= d) a.set(s, rng() & 1u);
        return ga::anf(m, a);
    };
    for (int k = 0; k <= m; ++k) {
        Subspace ok = ga::degree_filtration(m, k);
        long long expect = 0;
        for (int j = 0; j <= k; ++j) expect += binom(m, j);
        if (static_cast<long long>(ok.dim()) != expect) r.fail("dim O^(k)");
        // exhaustive orthogonality against generators of m^{k+1}
        for (const BitVec& f : ok.basis())
            for (Mask s = 0; s < ga::order(m); ++s)
                if (ga::popcount(s) >= k + 1 && ga::pairing(f, ga::subcube(m, s))) r.fail("O^(k) pairs with m^{k+1}");
    }
    for (int t = 0; t < trials; ++t) {
        int k = int(rng() % std::uint64_t(m + 1));
        int l = int(rng() % std::uint64_t(m + 1));
        BitVec f = random_of_degree(k), g = random_of_degree(l);
        if (ga::degree(m, f & g) > k + l) r.fail("O^(k) O^(l) not in O^(k+l)");
        // contraction drops the augmentation degree by at most deg f
        int j = int(rng() % std::uint64_t(m + 1));
        std::vector<BitVec> gens = ga::aug_power(m, j).basis();
        BitVec p(ga::order(m));
        for (auto& b : gens)
            if (rng() & 1u) p ^= b;
        if (ga::degree(m, f) >= 0 && !ga::aug_power(m, std::max(0, j - k)).contains(ga::contract(f, p)))
            r.fail("contraction degree drop");
    }
    return r;
}

inline Result check_subalgebra(int m) {
    Result r;
    for (auto& w : all_subspace_bases(m)) {
        Subspace fw = ga::subalgebra(m, w);
        for (int k = 0; k <= m + 1; ++k) {
            Subspace inter = patchlab::sum_and_intersection(fw, ga::aug_power(m, k)).second;
            if (inter != ga::aug_power_of_subspace(m, w, k)) r.fail("F2[W] cap m^k != m^k_W");
        }
    }
    return r;
}

inline Subspace coordinate_span(int m, const std::vector<char>& in) {
    std::vector<std::size_t> idx;
    for (Mask v = 0; v < ga::order(m); ++v)
        if (in[v]) idx.push_back(v);
    return Subspace::coordinate(ga::order(m), idx);
}

// A cut out by l independent affine hyperplanes alpha_i(v) = c_i.
inline Result check_affine_complement(int m, std::mt19937_64& rng, int trials) {
    Result r;
    for (int t = 0; t < trials; ++t) {
        int l = 1 + int(rng() % std::uint64_t(m));
        std::vector<Mask> alphas;
        std::vector<int> cs;
        Subspace lin(static_cast<std::size_t>(m));
        while (int(alphas.size()) < l) {
            Mask a = Mask(rng() % ga::order(m));
            BitVec av(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) av.set(std::size_t(i), a >> i & 1u);
            if (a == 0 || lin.contains(av)) continue;
            std::vector<BitVec> g = lin.basis();
            g.push_back(av);
            lin = Subspace::span(std::size_t(m), g);
            alphas.push_back(a);
            cs.push_back(int(rng() & 1u));
        }
        std::vector<char> out_a(ga::order(m), 0);
        std::vector<std::vector<char>> out_h(alphas.size(), std::vector<char>(ga::order(m), 0));
        for (Mask v = 0; v < ga::order(m); ++v)
            for (std::size_t i = 0; i < alphas.size(); ++i)
                if (ga::popcount(alphas[i] & v) % 2 != cs[i]) {
                    out_a[v] = 1;
                    out_h[i][v] = 1;
                }
        for (int k = 0; k <= m + 1; ++k) {
            Subspace mk = ga::aug_power(m, k);
            Subspace lhs = patchlab::sum_and_intersection(coordinate_span(m, out_a), mk).second;
            Subspace rhs = Subspace::zero(ga::order(m));
            for (auto& h : out_h)
                rhs = patchlab::sum_and_intersection(rhs, patchlab::sum_and_intersection(coordinate_span(m, h), mk).second)
                          .first;
            if (lhs != rhs) r.fail("affine complement lemma, k=" + std::to_string(k));
        }
    }
    return r;
}

}  // namespace gacheck
