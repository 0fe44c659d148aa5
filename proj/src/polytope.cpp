#include "patchlab/polytope.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

namespace patchlab {

namespace {

long long dot(const IVec& a, const IVec& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IVec diff(const IVec& a, const IVec& b) {
    IVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<int> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = int(i);
    for (;;) {
        f(idx);
        long i = long(k) - 1;
        while (i >= 0 && idx[std::size_t(i)] == int(n - k + std::size_t(i))) --i;
        if (i < 0) return;
        ++idx[std::size_t(i)];
        for (std::size_t j = std::size_t(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Subspace mod2_span(const IMat& vectors, std::size_t n) {
    std::vector<BitVec> gens;
    for (const auto& v : vectors) {
        BitVec b(n);
        for (std::size_t i = 0; i < n; ++i) b.set(i, v[i] & 1);
        gens.push_back(b);
    }
    return Subspace::span(n, gens);
}

}  // namespace

IVec hyperplane_normal(const IMat& directions, std::size_t n) {
    require(directions.size() + 1 == n, ErrorKind::DimensionMismatch, "hyperplane needs n-1 directions");
    IVec normal(n);
    for (std::size_t j = 0; j < n; ++j) {
        IMat minor;
        for (const auto& r : directions) {
            IVec row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(r[c]);
            minor.push_back(row);
        }
        long long d = determinant(minor);
        normal[j] = (j % 2 == 0) ? d : -d;
    }
    return normal;
}

std::size_t rational_rank(const IMat& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return smith_normal_form(rows, cols).rank;
}

LatticePolytope::LatticePolytope(int dim, std::vector<IVec> vertices, std::string family)
    : n_(dim), vertices_(std::move(vertices)), family_(std::move(family)) {
    require(n_ >= 0, ErrorKind::InvalidParameter, "negative polytope dimension");
    require(!vertices_.empty(), ErrorKind::Geometry, "polytope without vertices");
    for (const auto& v : vertices_) require(v.size() == std::size_t(n_), ErrorKind::DimensionMismatch, "vertex of wrong dimension");
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    IMat d;
    for (const auto& v : vertices_) d.push_back(diff(v, vertices_[0]));
    require(rational_rank(d, std::size_t(n_)) == std::size_t(n_), ErrorKind::Geometry, "polytope is not full-dimensional");
    build_facets();
    build_faces();
}

void LatticePolytope::build_facets() {
    const std::size_t n = std::size_t(n_);
    if (n == 0) return;
    std::set<IVec> seen;
    for_each_subset(vertices_.size(), n, [&](const std::vector<int>& idx) {
        IMat dirs;
        for (std::size_t i = 1; i < idx.size(); ++i) dirs.push_back(diff(vertices_[std::size_t(idx[i])], vertices_[std::size_t(idx[0])]));
        IVec a = hyperplane_normal(dirs, n);
        if (gcd_of(a) == 0) return;
        a = primitive(a);
        long long b = dot(a, vertices_[std::size_t(idx[0])]);
        bool above = false, below = false;
        for (const auto& v : vertices_) {
            long long s = dot(a, v);
            above |= s > b;
            below |= s < b;
        }
        if (above && below) return;
        if (below) {
            for (auto& x : a) x = -x;
            b = -b;
        }
        if (!seen.insert(a).second) return;
        Facet f{a, b, {}};
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (dot(a, vertices_[i]) == b) f.vertices.push_back(int(i));
        facets_.push_back(std::move(f));
    });
    std::sort(facets_.begin(), facets_.end(), [](const Facet& x, const Facet& y) { return x.vertices < y.vertices; });
}

void LatticePolytope::build_faces() {
    const std::size_t n = std::size_t(n_);
    std::set<std::vector<int>> sets;
    std::vector<int> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
    std::vector<std::vector<int>> queue{all};
    sets.insert(all);
    while (!queue.empty()) {
        auto cur = queue.back();
        queue.pop_back();
        for (const auto& f : facets_) {
            std::vector<int> next;
            std::set_intersection(cur.begin(), cur.end(), f.vertices.begin(), f.vertices.end(), std::back_inserter(next));
            if (next.empty() || next == cur) continue;
            if (sets.insert(next).second) queue.push_back(next);
        }
    }
    for (const auto& s : sets) {
        Face face;
        face.vertices = s;
        IMat d;
        for (int v : s) d.push_back(diff(vertices_[std::size_t(v)], vertices_[std::size_t(s[0])]));
        face.dim = int(rational_rank(d, n));
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if (std::includes(facets_[i].vertices.begin(), facets_[i].vertices.end(), s.begin(), s.end()))
                face.facets.push_back(int(i));
        faces_.push_back(std::move(face));
    }
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    for (const auto& face : faces_) {
        IMat d;
        for (int v : face.vertices) d.push_back(diff(vertices_[std::size_t(v)], vertices_[std::size_t(face.vertices[0])]));
        IMat ann = d.empty() ? identity_imat(n) : integer_kernel(d, n);
        Subspace s = mod2_span(ann, n);
        require(s.dim() + std::size_t(face.dim) == n, ErrorKind::Internal, "sedentarity dimension");
        sed_.push_back(std::move(s));
    }
}

LatticePolytope LatticePolytope::simplex(int n, int d) {
    require(n >= 1 && d >= 1, ErrorKind::InvalidParameter, "simplex needs n >= 1 and d >= 1");
    std::vector<IVec> v{IVec(std::size_t(n), 0)};
    for (int i = 0; i < n; ++i) {
        IVec e(std::size_t(n), 0);
        e[std::size_t(i)] = d;
        v.push_back(e);
    }
    return LatticePolytope(n, v, "simplex(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

LatticePolytope LatticePolytope::cube(int n, int d) {
    require(n >= 1 && d >= 1, ErrorKind::InvalidParameter, "cube needs n >= 1 and d >= 1");
    std::vector<IVec> v;
    for (int mask = 0; mask < (1 << n); ++mask) {
        IVec x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) x[std::size_t(i)] = (mask >> i & 1) ? d : 0;
        v.push_back(x);
    }
    return LatticePolytope(n, v, "cube(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

LatticePolytope LatticePolytope::product(int n1, int d1, int n2, int d2) {
    LatticePolytope a = simplex(n1, d1), b = simplex(n2, d2);
    std::vector<IVec> v;
    for (const auto& x : a.vertices())
        for (const auto& y : b.vertices()) {
            IVec z = x;
            z.insert(z.end(), y.begin(), y.end());
            v.push_back(z);
        }
    return LatticePolytope(n1 + n2, v, "product(" + a.family() + "," + b.family() + ")");
}

LatticePolytope LatticePolytope::from_family(const std::string& tag) {
    int a = 0, b = 0, c = 0, e = 0;
    char tail = 0;
    if (std::sscanf(tag.c_str(), "simplex(%d,%d)%c", &a, &b, &tail) == 2) return simplex(a, b);
    if (std::sscanf(tag.c_str(), "cube(%d,%d)%c", &a, &b, &tail) == 2) return cube(a, b);
    if (std::sscanf(tag.c_str(), "product(simplex(%d,%d),simplex(%d,%d))%c", &a, &b, &c, &e, &tail) == 4)
        return product(a, b, c, e);
    throw Error(ErrorKind::InvalidParameter, "unknown polytope family: " + tag);
}

bool LatticePolytope::contains(const IVec& x) const {
    if (x.size() != std::size_t(n_)) return false;
    if (n_ == 0) return true;
    for (const auto& f : facets_)
        if (dot(f.normal, x) < f.offset) return false;
    return true;
}

std::vector<IVec> LatticePolytope::lattice_points() const {
    const std::size_t n = std::size_t(n_);
    IVec lo = vertices_[0], hi = vertices_[0];
    for (const auto& v : vertices_)
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<IVec> out;
    IVec x = lo;
    for (;;) {
        if (contains(x)) out.push_back(x);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                for (std::size_t j = i + 1; j < n; ++j) x[j] = lo[j];
                break;
            }
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

std::vector<int> LatticePolytope::facets_containing(const std::vector<IVec>& points) const {
    for (const auto& p : points) require(contains(p), ErrorKind::Geometry, "point outside the polytope");
    std::vector<int> out;
    for (std::size_t i = 0; i < facets_.size(); ++i) {
        bool all = true;
        for (const auto& p : points) all = all && dot(facets_[i].normal, p) == facets_[i].offset;
        if (all) out.push_back(int(i));
    }
    return out;
}

int LatticePolytope::smallest_face(const std::vector<IVec>& points) const {
    std::vector<int> fs = facets_containing(points);
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].facets == fs) return int(i);
    throw Error(ErrorKind::Internal, "no face matches the facet set");
}

Subspace LatticePolytope::sedentarity(const std::vector<IVec>& points) const {
    return sed_[std::size_t(smallest_face(points))];
}

SmoothnessResult LatticePolytope::smoothness_check() const {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        IMat normals;
        for (const auto& f : facets_)
            if (std::binary_search(f.vertices.begin(), f.vertices.end(), int(v))) normals.push_back(f.normal);
        if (normals.size() != std::size_t(n_)) return {false, int(v), 0};
        long long d = std::llabs(determinant(normals));
        if (d != 1) return {false, int(v), d};
    }
    return {};
}

long long LatticePolytope::normalized_volume() const {
    const std::size_t n = std::size_t(n_);
    if (n == 0) return 1;
    if (n == 1) return vertices_.back()[0] - vertices_.front()[0];
    const IVec& apex = vertices_[0];
    long long total = 0;
    for (const auto& f : facets_) {
        long long h = dot(f.normal, apex) - f.offset;
        if (h == 0) continue;
        // Lattice coordinates on the facet hyperplane: z = V^{-1} (x - x0) has z_0 = 0.
        SmithForm s = smith_normal_form(IMat{f.normal}, n);
        const IVec& x0 = vertices_[std::size_t(f.vertices[0])];
        std::vector<IVec> pts;
        for (int vi : f.vertices) {
            IVec d = diff(vertices_[std::size_t(vi)], x0);
            IVec z(n - 1);
            for (std::size_t r = 1; r < n; ++r) z[r - 1] = dot(s.V_inverse[r], d);
            pts.push_back(z);
        }
        total += h * LatticePolytope(n_ - 1, pts).normalized_volume();
    }
    return total;
}

}  // namespace patchlab
