#include "patchlab/triangulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace patchlab {

namespace {

IVec sub(const IVec& a, const IVec& b) {
    IVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

long long dot(const IVec& a, const IVec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

nlohmann::json polytope_json(const LatticePolytope& p) {
    return {{"dim", p.dim()}, {"vertices", p.vertices()}, {"family", p.family()}};
}

LatticePolytope polytope_from_json(const nlohmann::json& j) {
    int dim = j.at("dim").get<int>();
    auto verts = j.at("vertices").get<std::vector<IVec>>();
    std::string family = j.value("family", "custom");
    try {
        LatticePolytope p = LatticePolytope::from_family(family);
        LatticePolytope q(dim, verts, family);
        require(p.vertices() == q.vertices(), ErrorKind::Input, "polytope vertices do not match family " + family);
        return p;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Input) throw;
    }
    return LatticePolytope(dim, verts, family);
}

}  // namespace

std::vector<std::vector<int>> subsets_of_size(int n, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(p));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        out.push_back(idx);
        int i = p - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - p + i) --i;
        if (i < 0) return out;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < p; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
}

Triangulation::Triangulation(LatticePolytope polytope, const std::vector<std::vector<IVec>>& maximal)
    : polytope_(std::move(polytope)) {
    std::set<IVec> pts;
    for (const auto& s : maximal)
        for (const auto& v : s) {
            require(v.size() == std::size_t(polytope_.dim()), ErrorKind::DimensionMismatch, "vertex of wrong dimension");
            pts.insert(v);
        }
    vertices_.assign(pts.begin(), pts.end());
    auto vid = [&](const IVec& v) {
        return int(std::lower_bound(vertices_.begin(), vertices_.end(), v) - vertices_.begin());
    };
    std::set<std::vector<int>> all;
    for (const auto& s : maximal) {
        std::vector<int> idx;
        for (const auto& v : s) idx.push_back(vid(v));
        std::sort(idx.begin(), idx.end());
        require(std::adjacent_find(idx.begin(), idx.end()) == idx.end(), ErrorKind::Validation, "repeated vertex in a simplex");
        maximal_.push_back(idx);
        const std::size_t k = idx.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
            std::vector<int> f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) f.push_back(idx[i]);
            all.insert(f);
        }
    }
    std::sort(maximal_.begin(), maximal_.end());
    maximal_.erase(std::unique(maximal_.begin(), maximal_.end()), maximal_.end());
    for (const auto& f : all) simplices_.push_back({f, int(f.size()) - 1});
    std::stable_sort(simplices_.begin(), simplices_.end(), [](const Simplex& a, const Simplex& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    for (std::size_t i = 0; i < simplices_.size(); ++i) index_[simplices_[i].vertices] = int(i);
    facets_.resize(simplices_.size());
    cofacets_.resize(simplices_.size());
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        const auto& v = simplices_[i].vertices;
        if (v.size() < 2) continue;
        for (std::size_t k = 0; k < v.size(); ++k) {
            std::vector<int> f = v;
            f.erase(f.begin() + long(k));
            int fi = index_.at(f);
            facets_[i].push_back(fi);
            cofacets_[std::size_t(fi)].push_back(int(i));
        }
    }
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        for (const auto& v : coordinates(int(i))) require(polytope_.contains(v), ErrorKind::Validation, "vertex outside the polytope");
        poly_face_.push_back(polytope_.smallest_face(coordinates(int(i))));
    }
}

int Triangulation::simplex_index(const std::vector<int>& vertices) const {
    auto it = index_.find(vertices);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> Triangulation::faces_of(int s) const {
    const auto& v = simplices_[std::size_t(s)].vertices;
    std::vector<int> out;
    for (std::size_t mask = 1; mask < (std::size_t(1) << v.size()); ++mask) {
        std::vector<int> f;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mask >> i & 1) f.push_back(v[i]);
        out.push_back(index_.at(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Triangulation::is_face(int a, int b) const {
    const auto& va = simplices_[std::size_t(a)].vertices;
    const auto& vb = simplices_[std::size_t(b)].vertices;
    return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
}

std::vector<IVec> Triangulation::coordinates(int s) const {
    std::vector<IVec> out;
    for (int v : simplices_[std::size_t(s)].vertices) out.push_back(vertices_[std::size_t(v)]);
    return out;
}

std::vector<int> Triangulation::simplices_of_dim(int p) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        if (simplices_[i].dim == p) out.push_back(int(i));
    return out;
}

ValidationResult Triangulation::validate() const {
    const int n = dim();
    for (std::size_t m = 0; m < maximal_.size(); ++m) {
        const auto& s = maximal_[m];
        if (s.size() != std::size_t(n + 1)) return {false, "maximal simplex of the wrong dimension", {int(m)}};
        IMat rows;
        for (std::size_t i = 1; i < s.size(); ++i)
            rows.push_back(sub(vertices_[std::size_t(s[i])], vertices_[std::size_t(s[0])]));
        long long det = std::llabs(determinant(rows));
        if (det != 1)
            return {false, "maximal simplex is not primitive (|det| = " + std::to_string(det) + ")", {int(m)}};
    }
    long long vol = polytope_.normalized_volume();
    if (static_cast<long long>(maximal_.size()) != vol)
        return {false, "maximal simplices do not cover the polytope (" + std::to_string(maximal_.size()) + " vs volume " +
                           std::to_string(vol) + ")", {}};
    std::map<std::vector<int>, std::vector<int>> owners;
    for (std::size_t m = 0; m < maximal_.size(); ++m)
        for (std::size_t k = 0; k < maximal_[m].size(); ++k) {
            auto f = maximal_[m];
            f.erase(f.begin() + long(k));
            owners[f].push_back(int(m));
        }
    for (const auto& [f, own] : owners) {
        std::vector<IVec> pts;
        for (int v : f) pts.push_back(vertices_[std::size_t(v)]);
        if (own.size() == 1) {
            if (polytope_.facets_containing(pts).empty())
                return {false, "interior codimension-one face bounds a single simplex", own};
            continue;
        }
        if (own.size() > 2) return {false, "codimension-one face shared by more than two simplices", own};
        IMat dirs;
        for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(sub(pts[i], pts[0]));
        IVec normal = hyperplane_normal(dirs, std::size_t(n));
        long long side[2];
        for (int t = 0; t < 2; ++t) {
            const auto& s = maximal_[std::size_t(own[std::size_t(t)])];
            int apex = -1;
            for (int v : s)
                if (!std::binary_search(f.begin(), f.end(), v)) apex = v;
            side[t] = dot(normal, sub(vertices_[std::size_t(apex)], pts[0]));
        }
        if (!((side[0] > 0 && side[1] < 0) || (side[0] < 0 && side[1] > 0)))
            return {false, "simplices overlap across a shared face", own};
    }
    return {};
}

WedgeCovector Triangulation::omega(int s) const {
    const int n = dim();
    const auto pts = coordinates(s);
    const int p = int(pts.size()) - 1;
    auto subsets = subsets_of_size(n, p);
    WedgeCovector w{p, n, BitVec(subsets.size())};
    long long g = 0;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        IMat minor;
        for (int j = 1; j <= p; ++j) {
            IVec row;
            for (int c : subsets[i]) row.push_back(pts[std::size_t(j)][std::size_t(c)] - pts[0][std::size_t(c)]);
            minor.push_back(row);
        }
        long long det = determinant(minor);
        g = std::gcd(g, std::llabs(det));
        w.value.set(i, det & 1);
    }
    require(g == 1, ErrorKind::Validation, "simplex is not primitive; its edges do not span a saturated lattice");
    return w;
}

BitVec Triangulation::edge_covector(int e) const {
    const auto pts = coordinates(e);
    require(pts.size() == 2, ErrorKind::Degree, "edge_covector on a non-edge");
    BitVec c(static_cast<std::size_t>(dim()));
    for (std::size_t i = 0; i < c.size(); ++i) c.set(i, (pts[1][i] - pts[0][i]) & 1);
    return c;
}

nlohmann::json Triangulation::to_json() const {
    return {{"dim", dim()}, {"vertices", vertices_}, {"maximal_simplices", maximal_}, {"polytope", polytope_json(polytope_)}};
}

Triangulation Triangulation::from_json(const nlohmann::json& j) {
    try {
        LatticePolytope p = polytope_from_json(j.at("polytope"));
        require(j.at("dim").get<int>() == p.dim(), ErrorKind::Input, "triangulation dim differs from its polytope");
        auto verts = j.at("vertices").get<std::vector<IVec>>();
        std::vector<std::vector<IVec>> simplices;
        for (const auto& s : j.at("maximal_simplices")) {
            std::vector<IVec> pts;
            for (int i : s.get<std::vector<int>>()) {
                require(i >= 0 && std::size_t(i) < verts.size(), ErrorKind::Input, "vertex index out of range");
                pts.push_back(verts[std::size_t(i)]);
            }
            simplices.push_back(pts);
        }
        Triangulation t(p, simplices);
        ValidationResult v = t.validate();
        require(v.ok, ErrorKind::Validation, "invalid triangulation: " + v.reason);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Input, std::string("malformed triangulation JSON: ") + e.what());
    }
}

Triangulation trivial_triangulation(const LatticePolytope& p) {
    require(p.vertices().size() == std::size_t(p.dim() + 1), ErrorKind::InvalidParameter, "trivial triangulation needs a simplex");
    return Triangulation(p, {p.vertices()});
}

Triangulation plus(const Triangulation& k, const Triangulation& l) {
    const int n = k.dim();
    require(n >= 2 && l.dim() == n - 1, ErrorKind::InvalidParameter, "plus needs triangulations of dimensions n and n-1");
    const auto& kv = k.polytope().vertices();
    long long d = 0;
    for (const auto& v : kv) d = std::max(d, *std::max_element(v.begin(), v.end()));
    long long dl = 0;
    for (const auto& v : l.polytope().vertices()) dl = std::max(dl, *std::max_element(v.begin(), v.end()));
    require(k.polytope().family() == "simplex(" + std::to_string(n) + "," + std::to_string(d) + ")" &&
                l.polytope().family() == "simplex(" + std::to_string(n - 1) + "," + std::to_string(d + 1) + ")",
            ErrorKind::InvalidParameter, "plus needs simplex(n,d) and simplex(n-1,d+1)");
    std::vector<std::vector<IVec>> out;
    auto lift = [&](IVec x) {
        x[std::size_t(n - 1)] += 1;
        return x;
    };
    for (const auto& s : k.maximal_simplices()) {
        std::vector<IVec> pts;
        for (int v : s) pts.push_back(lift(k.vertices()[std::size_t(v)]));
        out.push_back(pts);
    }
    for (int i = 0; i <= n - 1; ++i) {
        // faces of K in conv{0, d e_1, ..., d e_i}: coordinates i+1..n vanish
        std::vector<std::vector<IVec>> top;
        for (int s : k.simplices_of_dim(i)) {
            auto pts = k.coordinates(s);
            bool in = true;
            for (const auto& x : pts)
                for (int c = i; c < n; ++c) in = in && x[std::size_t(c)] == 0;
            if (in) {
                for (auto& x : pts) x = lift(x);
                top.push_back(pts);
            }
        }
        // faces of L in conv{(d+1)e_i, ..., (d+1)e_{n-1}} with (d+1)e_0 = 0
        std::vector<std::vector<IVec>> bottom;
        for (int s : l.simplices_of_dim(n - 1 - i)) {
            auto pts = l.coordinates(s);
            bool in = true;
            if (i >= 1)
                for (const auto& x : pts) {
                    long long sum = std::accumulate(x.begin(), x.end(), 0LL);
                    in = in && sum == d + 1;
                    for (int c = 0; c + 1 < i; ++c) in = in && x[std::size_t(c)] == 0;
                }
            if (in) {
                for (auto& x : pts) x.push_back(0);
                bottom.push_back(pts);
            }
        }
        for (const auto& a : top)
            for (const auto& b : bottom) {
                auto j = a;
                j.insert(j.end(), b.begin(), b.end());
                out.push_back(j);
            }
    }
    return Triangulation(LatticePolytope::simplex(n, int(d + 1)), out);
}

Triangulation viro(int n, int d) {
    require(n >= 1 && d >= 1, ErrorKind::InvalidParameter, "viro needs n >= 1 and d >= 1");
    if (d == 1) return trivial_triangulation(LatticePolytope::simplex(n, 1));
    if (n == 1) {
        std::vector<std::vector<IVec>> segs;
        for (int k = 0; k < d; ++k) segs.push_back({{k}, {k + 1}});
        return Triangulation(LatticePolytope::simplex(1, d), segs);
    }
    return plus(viro(n, d - 1), viro(n - 1, d));
}

Triangulation product_triangulation(const Triangulation& a, const Triangulation& b, const LatticePolytope& target) {
    const int n1 = a.dim(), n2 = b.dim();
    require(target.dim() == n1 + n2, ErrorKind::InvalidParameter, "product target has the wrong dimension");
    std::vector<std::vector<IVec>> out;
    for (const auto& s : a.maximal_simplices())
        for (const auto& t : b.maximal_simplices()) {
            // monotone lattice paths from (0,0) to (n1,n2): choose which of the n1+n2 steps move in the first factor
            for (const auto& steps : subsets_of_size(n1 + n2, n1)) {
                std::size_t i = 0, j = 0;
                std::vector<IVec> pts;
                auto push = [&] {
                    IVec x = a.vertices()[std::size_t(s[i])];
                    const auto& y = b.vertices()[std::size_t(t[j])];
                    x.insert(x.end(), y.begin(), y.end());
                    pts.push_back(x);
                };
                push();
                for (int step = 0; step < n1 + n2; ++step) {
                    if (std::binary_search(steps.begin(), steps.end(), step)) ++i;
                    else ++j;
                    push();
                }
                out.push_back(pts);
            }
        }
    return Triangulation(target, out);
}

Triangulation cube_triangulation(int n, int d) {
    require(n >= 1 && d >= 1, ErrorKind::InvalidParameter, "cube needs n >= 1 and d >= 1");
    Triangulation t = viro(1, d);
    for (int k = 2; k <= n; ++k) {
        LatticePolytope target = k == n ? LatticePolytope::cube(n, d) : LatticePolytope::cube(k, d);
        t = product_triangulation(t, viro(1, d), target);
    }
    if (n == 1) return Triangulation(LatticePolytope::cube(1, d), [&] {
        std::vector<std::vector<IVec>> s;
        for (int m = 0; m < d; ++m) s.push_back({{m}, {m + 1}});
        return s;
    }());
    return t;
}

Triangulation product_of_simplices(int n1, int d1, int n2, int d2) {
    return product_triangulation(viro(n1, d1), viro(n2, d2), LatticePolytope::product(n1, d1, n2, d2));
}

Triangulation permute_simplex_vertices(const Triangulation& k, const std::vector<int>& perm) {
    const int n = k.dim();
    require(perm.size() == std::size_t(n + 1), ErrorKind::InvalidParameter, "permutation of the wrong size");
    std::vector<int> check = perm;
    std::sort(check.begin(), check.end());
    for (int i = 0; i <= n; ++i) require(check[std::size_t(i)] == i, ErrorKind::InvalidParameter, "not a permutation");
    long long d = 0;
    for (const auto& v : k.polytope().vertices()) d = std::max(d, *std::max_element(v.begin(), v.end()));
    // barycentric coordinates b_0 = d - sum x, b_i = x_i; the image has b'_{perm[i]} = b_i
    auto map = [&](const IVec& x) {
        IVec b(std::size_t(n + 1));
        b[0] = d - std::accumulate(x.begin(), x.end(), 0LL);
        for (int i = 0; i < n; ++i) b[std::size_t(i + 1)] = x[std::size_t(i)];
        IVec nb(std::size_t(n + 1));
        for (int i = 0; i <= n; ++i) nb[std::size_t(perm[std::size_t(i)])] = b[std::size_t(i)];
        return IVec(nb.begin() + 1, nb.end());
    };
    std::vector<std::vector<IVec>> out;
    for (const auto& s : k.maximal_simplices()) {
        std::vector<IVec> pts;
        for (int v : s) pts.push_back(map(k.vertices()[std::size_t(v)]));
        out.push_back(pts);
    }
    return Triangulation(k.polytope(), out);
}

std::vector<std::vector<IVec>> restrict_to_far_facet(const Triangulation& k) {
    const int n = k.dim();
    long long d = 0;
    for (const auto& v : k.polytope().vertices()) d = std::max(d, *std::max_element(v.begin(), v.end()));
    std::vector<std::vector<IVec>> out;
    for (int s : k.simplices_of_dim(n - 1)) {
        auto pts = k.coordinates(s);
        bool in = true;
        for (const auto& x : pts) in = in && std::accumulate(x.begin(), x.end(), 0LL) == d;
        if (!in) continue;
        for (auto& x : pts) x.erase(x.begin());
        std::sort(pts.begin(), pts.end());
        out.push_back(pts);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SignDistribution SignDistribution::harnack(const Triangulation& k) {
    SignDistribution s;
    for (const auto& v : k.vertices()) {
        std::uint8_t e = 1;
        for (auto x : v) e &= std::uint8_t(x & 1);
        s.values.push_back(e);
    }
    return s;
}

SignDistribution SignDistribution::from_seed(std::size_t n, std::uint64_t seed) {
    SignDistribution s;
    for (std::size_t i = 0; i < n; ++i)
        s.values.push_back(std::uint8_t(splitmix64_mix(seed + (i + 1) * 0x9E3779B97F4A7C15ULL) >> 63));
    return s;
}

SignDistribution SignDistribution::from_json(const nlohmann::json& j, std::size_t n) {
    try {
        if (j.contains("random_seed")) return from_seed(n, j.at("random_seed").get<std::uint64_t>());
        SignDistribution s;
        for (int v : j.at("signs").get<std::vector<int>>()) {
            require(v == 0 || v == 1, ErrorKind::Input, "signs must be 0 or 1");
            s.values.push_back(std::uint8_t(v));
        }
        require(s.values.size() == n, ErrorKind::Input,
                "sign distribution has " + std::to_string(s.values.size()) + " entries for " + std::to_string(n) + " vertices");
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Input, std::string("malformed sign JSON: ") + e.what());
    }
}

nlohmann::json SignDistribution::to_json() const {
    std::vector<int> v(values.begin(), values.end());
    return {{"signs", v}};
}

}  // namespace patchlab
