#include "patchlab/group_algebra.hpp"

#include <map>
#include <mutex>

namespace patchlab::ga {

int popcount(Mask s) { return __builtin_popcount(s); }

const std::vector<Mask>& k_subsets(int m, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Mask>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({m, k});
    if (it != cache.end()) return it->second;
    std::vector<Mask> out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[std::size_t(i)] = i;
    if (k <= m) {
        while (true) {
            Mask s = 0;
            for (int i : idx) s |= Mask(1) << i;
            out.push_back(s);
            int i = k - 1;
            while (i >= 0 && idx[std::size_t(i)] == m - k + i) --i;
            if (i < 0) break;
            ++idx[std::size_t(i)];
            for (int j = i + 1; j < k; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
        }
    }
    return cache.emplace(std::make_pair(m, k), std::move(out)).first->second;
}

std::size_t subset_index(int m, Mask s) {
    const auto& subs = k_subsets(m, popcount(s));
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i] == s) return i;
    throw Error(ErrorKind::InvalidParameter, "subset_index: subset out of range");
}

BitVec monomial(int m, Mask v) { return BitVec::unit(order(m), v); }

BitVec multiply(int m, const BitVec& a, const BitVec& b) {
    BitVec out(order(m));
    for (std::size_t u : a.support())
        for (std::size_t w : b.support()) out.flip(u ^ w);
    return out;
}

BitVec translate(int m, const BitVec& a, Mask v) {
    BitVec out(order(m));
    for (std::size_t u : a.support()) out.set(u ^ v);
    return out;
}

BitVec subcube(int m, Mask s) {
    BitVec out(order(m));
    Mask t = s;
    while (true) {
        out.set(t);
        if (t == 0) break;
        t = (t - 1) & s;
    }
    return out;
}

BitVec subcube_coordinates(int m, const BitVec& p) {
    // superset transform
    BitVec c = p;
    for (int i = 0; i < m; ++i)
        for (Mask s = 0; s < order(m); ++s)
            if (!(s >> i & 1u) && c.get(s | (Mask(1) << i))) c.flip(s);
    return c;
}

BitVec anf(int m, const BitVec& f) {
    // subset transform
    BitVec a = f;
    for (int i = 0; i < m; ++i)
        for (Mask s = 0; s < order(m); ++s)
            if ((s >> i & 1u) && a.get(s ^ (Mask(1) << i))) a.flip(s);
    return a;
}

Subspace aug_power(int m, int k) {
    std::vector<BitVec> gens;
    for (Mask s = 0; s < order(m); ++s)
        if (popcount(s) >= k) gens.push_back(subcube(m, s));
    return Subspace::span(order(m), gens);
}

Subspace subalgebra(int m, const std::vector<Mask>& w_basis) {
    return aug_power_of_subspace(m, w_basis, 0);
}

Subspace aug_power_of_subspace(int m, const std::vector<Mask>& w_basis, int k) {
    std::vector<BitVec> gens;
    const std::size_t j = w_basis.size();
    for (Mask s = 0; s < (Mask(1) << j); ++s) {
        if (popcount(s) < k) continue;
        std::vector<Mask> vs;
        for (std::size_t i = 0; i < j; ++i)
            if (s >> i & 1u) vs.push_back(w_basis[i]);
        gens.push_back(eta_vectors(m, vs));
    }
    return Subspace::span(order(m), gens);
}

BitVec eta(int m, int k, const BitVec& wedge) {
    const auto& subs = k_subsets(m, k);
    require(wedge.size() == subs.size(), ErrorKind::DimensionMismatch, "eta: wedge size");
    BitVec out(order(m));
    for (std::size_t i : wedge.support()) out ^= subcube(m, subs[i]);
    return out;
}

BitVec eta_vectors(int m, const std::vector<Mask>& vs) {
    BitVec out = monomial(m, 0);
    for (Mask v : vs) {
        BitVec f = monomial(m, 0);
        f.flip(v);
        out = multiply(m, out, f);
    }
    return out;
}

BitVec eta_inverse(int m, int k, const BitVec& p) {
    BitVec c = subcube_coordinates(m, p);
    const auto& subs = k_subsets(m, k);
    BitVec out(subs.size());
    for (std::size_t s : c.support()) {
        int w = popcount(Mask(s));
        require(w >= k, ErrorKind::Degree, "eta_inverse: element not in m^k");
        if (w == k) out.set(subset_index(m, Mask(s)));
    }
    return out;
}

BitVec wedge_product(int m, int k, const BitVec& a, int l, const BitVec& b) {
    const auto& sa = k_subsets(m, k);
    const auto& sb = k_subsets(m, l);
    BitVec out(k_subsets(m, k + l).size());
    if (k + l > m) return out;
    for (std::size_t i : a.support())
        for (std::size_t j : b.support())
            if ((sa[i] & sb[j]) == 0) out.flip(subset_index(m, sa[i] | sb[j]));
    return out;
}

BitVec monomial_function(int m, Mask s) {
    BitVec f(order(m));
    for (Mask v = 0; v < order(m); ++v)
        if ((v & s) == s) f.set(v);
    return f;
}

int degree(int m, const BitVec& f) {
    BitVec a = anf(m, f);
    int d = -1;
    for (std::size_t s : a.support()) d = std::max(d, popcount(Mask(s)));
    return d;
}

Subspace degree_filtration(int m, int k) {
    std::vector<BitVec> gens;
    for (Mask s = 0; s < order(m); ++s)
        if (popcount(s) <= k) gens.push_back(monomial_function(m, s));
    return Subspace::span(order(m), gens);
}

}  // namespace patchlab::ga
