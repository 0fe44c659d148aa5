#include "patchlab/cubical_complex.hpp"

#include <algorithm>
#include <map>

namespace patchlab {

namespace {

std::uint64_t pair_key(int a, int b) { return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b); }

}  // namespace

CubicalComplex::CubicalComplex(const Triangulation& k) : k_(k) {
    const int ns = int(k_.simplex_count());
    for (int b = 0; b < ns; ++b)
        for (int a : k_.faces_of(b)) cells_.push_back({a, b, k_.simplices()[std::size_t(b)].dim - k_.simplices()[std::size_t(a)].dim});
    std::sort(cells_.begin(), cells_.end(), [](const CubicalCell& x, const CubicalCell& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        if (x.lower != y.lower) return x.lower < y.lower;
        return x.upper < y.upper;
    });
    for (std::size_t i = 0; i < cells_.size(); ++i) index_[pair_key(cells_[i].lower, cells_[i].upper)] = int(i);
    facets_.resize(cells_.size());
    cofacets_.resize(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const auto& c = cells_[i];
        for (int a2 : k_.cofacets(c.lower))
            if (k_.is_face(a2, c.upper)) facets_[i].push_back(index(a2, c.upper));
        for (int b2 : k_.facets(c.upper))
            if (k_.is_face(c.lower, b2)) facets_[i].push_back(index(c.lower, b2));
        std::sort(facets_[i].begin(), facets_[i].end());
        for (int f : facets_[i]) cofacets_[std::size_t(f)].push_back(int(i));
    }
}

int CubicalComplex::index(int lower, int upper) const {
    auto it = index_.find(pair_key(lower, upper));
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> CubicalComplex::cells_of_dim(int q) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].dim == q) out.push_back(int(i));
    return out;
}

bool CubicalComplex::is_face(int f, int c) const {
    const auto& x = cells_[std::size_t(f)];
    const auto& y = cells_[std::size_t(c)];
    return k_.is_face(y.lower, x.lower) && k_.is_face(x.lower, x.upper) && k_.is_face(x.upper, y.upper);
}

std::vector<int> CubicalComplex::dual_hypersurface() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (k_.simplices()[std::size_t(cells_[i].lower)].dim >= 1) out.push_back(int(i));
    return out;
}

std::vector<int> CubicalComplex::cells_over(const std::vector<int>& simplices) const {
    std::vector<char> in(k_.simplex_count(), 0);
    for (int s : simplices) in[std::size_t(s)] = 1;
    std::vector<int> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (in[std::size_t(cells_[i].upper)]) out.push_back(int(i));
    return out;
}

Cosheaf Cosheaf::constant(const CubicalComplex& cc, const std::vector<int>& cells) {
    Cosheaf f;
    f.cells = cells;
    f.stalk.assign(cells.size(), 1);
    for (int c : cells) f.ext.emplace_back(cc.facets(c).size(), F2Matrix::identity(1));
    return f;
}

Sheaf dual(const Cosheaf& f) {
    Sheaf s;
    s.cells = f.cells;
    s.stalk = f.stalk;
    for (const auto& row : f.ext) {
        std::vector<F2Matrix> r;
        for (const auto& m : row) r.push_back(m.transpose());
        s.res.push_back(std::move(r));
    }
    return s;
}

namespace {

std::unordered_map<int, std::size_t> local_index(const std::vector<int>& cells) {
    std::unordered_map<int, std::size_t> loc;
    for (std::size_t i = 0; i < cells.size(); ++i) loc[cells[i]] = i;
    return loc;
}

// Composite along c -> f -> g for every codimension-two face g; `compose(i, j, i2, j2)` returns the composite
// through facet j of cells[i] and facet j2 of that facet.
template <class Compose>
void check_chains(const CubicalComplex& cc, const std::vector<int>& cells, Compose compose) {
    auto loc = local_index(cells);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::map<int, F2Matrix> seen;
        const auto& fs = cc.facets(cells[i]);
        for (std::size_t j = 0; j < fs.size(); ++j) {
            auto it = loc.find(fs[j]);
            require(it != loc.end(), ErrorKind::CoefficientConsistency, "coefficient support is not closed");
            std::size_t i2 = it->second;
            const auto& gs = cc.facets(fs[j]);
            for (std::size_t j2 = 0; j2 < gs.size(); ++j2) {
                F2Matrix comp = compose(i, j, i2, j2);
                auto [pos, fresh] = seen.emplace(gs[j2], comp);
                if (!fresh && !(pos->second == comp))
                    throw Error(ErrorKind::CoefficientConsistency,
                                "composites disagree from cell " + std::to_string(cells[i]) + " to cell " +
                                    std::to_string(gs[j2]));
            }
        }
    }
}

void check_shapes(const CubicalComplex& cc, const std::vector<int>& cells, const std::vector<std::size_t>& stalk,
                  const std::vector<std::vector<F2Matrix>>& maps, bool cosheaf) {
    require(stalk.size() == cells.size() && maps.size() == cells.size(), ErrorKind::DimensionMismatch,
            "coefficient arrays differ in length");
    auto loc = local_index(cells);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& fs = cc.facets(cells[i]);
        require(maps[i].size() == fs.size(), ErrorKind::DimensionMismatch, "one map per facet expected");
        for (std::size_t j = 0; j < fs.size(); ++j) {
            auto it = loc.find(fs[j]);
            require(it != loc.end(), ErrorKind::CoefficientConsistency, "coefficient support is not closed");
            std::size_t src = cosheaf ? stalk[i] : stalk[it->second];
            std::size_t dst = cosheaf ? stalk[it->second] : stalk[i];
            require(maps[i][j].cols() == src && maps[i][j].rows() == dst, ErrorKind::DimensionMismatch,
                    "coefficient map has the wrong shape");
        }
    }
}

struct Layout {
    std::vector<std::vector<int>> cells;
    std::vector<std::vector<std::size_t>> offsets;
    std::vector<std::size_t> dims;
    std::vector<int> degree;
    std::vector<std::size_t> offset;
};

Layout layout(const CubicalComplex& cc, const std::vector<int>& cells, const std::vector<std::size_t>& stalk) {
    Layout l;
    const int top = cc.dim();
    l.cells.resize(std::size_t(top + 1));
    l.offsets.resize(std::size_t(top + 1));
    l.dims.assign(std::size_t(top + 1), 0);
    l.degree.resize(cells.size());
    l.offset.resize(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        int q = cc.cell(cells[i]).dim;
        l.degree[i] = q;
        l.offset[i] = l.dims[std::size_t(q)];
        l.cells[std::size_t(q)].push_back(cells[i]);
        l.offsets[std::size_t(q)].push_back(l.dims[std::size_t(q)]);
        l.dims[std::size_t(q)] += stalk[i];
    }
    return l;
}

}  // namespace

void check_functoriality(const CubicalComplex& cc, const Cosheaf& f) {
    check_shapes(cc, f.cells, f.stalk, f.ext, true);
    check_chains(cc, f.cells, [&](std::size_t i, std::size_t j, std::size_t i2, std::size_t j2) {
        return f.ext[i2][j2] * f.ext[i][j];
    });
}

void check_functoriality(const CubicalComplex& cc, const Sheaf& f) {
    check_shapes(cc, f.cells, f.stalk, f.res, false);
    check_chains(cc, f.cells, [&](std::size_t i, std::size_t j, std::size_t i2, std::size_t j2) {
        return f.res[i][j] * f.res[i2][j2];
    });
}

AssembledComplex chain_complex(const CubicalComplex& cc, const Cosheaf& f) {
    check_functoriality(cc, f);
    Layout l = layout(cc, f.cells, f.stalk);
    auto loc = local_index(f.cells);
    AssembledComplex out;
    out.complex.delta = -1;
    out.complex.dims = l.dims;
    const int top = cc.dim();
    for (int q = 0; q <= top; ++q)
        out.complex.d.emplace_back(q == 0 ? 0 : l.dims[std::size_t(q - 1)], l.dims[std::size_t(q)]);
    for (std::size_t i = 0; i < f.cells.size(); ++i) {
        int q = l.degree[i];
        if (q == 0) continue;
        auto& d = out.complex.d[std::size_t(q)];
        const auto& fs = cc.facets(f.cells[i]);
        for (std::size_t j = 0; j < fs.size(); ++j) {
            std::size_t i2 = loc.at(fs[j]);
            const F2Matrix& m = f.ext[i][j];
            for (std::size_t c = 0; c < m.cols(); ++c)
                for (std::size_t r = 0; r < m.rows(); ++r)
                    if (m.get(r, c)) d.columns[l.offset[i] + c].push_back(std::uint32_t(l.offset[i2] + r));
        }
    }
    for (auto& d : out.complex.d)
        for (auto& col : d.columns) {
            std::sort(col.begin(), col.end());
            SparseVec merged;
            for (auto x : col) sparse_add(merged, SparseVec{x});
            col.swap(merged);
        }
    require(out.complex.is_complex(), ErrorKind::CoefficientConsistency, "assembled boundary does not square to zero");
    out.cells = l.cells;
    out.offsets = l.offsets;
    return out;
}

AssembledComplex cochain_complex(const CubicalComplex& cc, const Sheaf& f) {
    check_functoriality(cc, f);
    Cosheaf t;
    t.cells = f.cells;
    t.stalk = f.stalk;
    for (const auto& row : f.res) {
        std::vector<F2Matrix> r;
        for (const auto& m : row) r.push_back(m.transpose());
        t.ext.push_back(std::move(r));
    }
    AssembledComplex c = chain_complex(cc, t);
    c.complex = c.complex.dual();
    return c;
}

PointComplex::PointComplex(const CubicalComplex& cc, const std::vector<int>& cells,
                           std::vector<std::vector<Mask>> points, Projection project)
    : cc_(&cc), project_(std::move(project)) {
    require(points.size() == cells.size(), ErrorKind::DimensionMismatch, "one point list per cell expected");
    top_ = cc.dim();
    dims_.assign(std::size_t(top_ + 1), 0);
    cells_by_deg_.resize(std::size_t(top_ + 1));
    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return cc.cell(cells[x]).dim < cc.cell(cells[y]).dim;
    });
    for (std::size_t i : order) {
        std::vector<Mask> pts = std::move(points[i]);
        std::sort(pts.begin(), pts.end());
        int c = cells[i];
        int q = cc.cell(c).dim;
        local_[c] = points_.size();
        Mask mx = 0;
        for (Mask p : pts) mx = std::max(mx, p);
        std::vector<int> lk(pts.empty() ? 0 : std::size_t(mx) + 1, -1);
        for (std::size_t j = 0; j < pts.size(); ++j) lk[pts[j]] = int(j);
        lookup_.push_back(std::move(lk));
        offset_.push_back(dims_[std::size_t(q)]);
        dims_[std::size_t(q)] += pts.size();
        points_.push_back(std::move(pts));
        cells_by_deg_[std::size_t(q)].push_back(c);
    }
}

const std::vector<PointComplex::Mask>& PointComplex::points(int cell) const { return points_[local_.at(cell)]; }

std::size_t PointComplex::block_offset(int cell) const { return offset_[local_.at(cell)]; }

long PointComplex::index(int cell, Mask point) const {
    auto it = local_.find(cell);
    if (it == local_.end()) return -1;
    const auto& lk = lookup_[it->second];
    if (point >= lk.size() || lk[point] < 0) return -1;
    return long(offset_[it->second]) + lk[point];
}

SparseComplex PointComplex::chain_complex() const {
    SparseComplex c;
    c.delta = -1;
    c.dims = dims_;
    for (int q = 0; q <= top_; ++q) {
        SparseMatrix d(q == 0 ? 0 : dims_[std::size_t(q - 1)], dims_[std::size_t(q)]);
        if (q > 0) {
            for (int cell : cells_by_deg_[std::size_t(q)]) {
                const auto& pts = points(cell);
                std::size_t off = block_offset(cell);
                int up = cc_->cell(cell).upper;
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    SparseVec col;
                    for (int f : cc_->facets(cell)) {
                        long r = index(f, project_(up, cc_->cell(f).upper, pts[j]));
                        require(r >= 0, ErrorKind::Internal, "point complex is not closed under faces");
                        col.push_back(std::uint32_t(r));
                    }
                    std::sort(col.begin(), col.end());
                    SparseVec merged;
                    for (auto x : col) sparse_add(merged, SparseVec{x});
                    d.columns[off + j] = std::move(merged);
                }
            }
        }
        c.d.push_back(std::move(d));
    }
    return c;
}

BitVec PointComplex::coboundary(int q, const BitVec& a) const {
    require(a.size() == dims_[std::size_t(q)], ErrorKind::DimensionMismatch, "cochain size");
    BitVec out(q + 1 <= top_ ? dims_[std::size_t(q + 1)] : 0);
    if (q + 1 > top_) return out;
    for (int cell : cells_by_deg_[std::size_t(q + 1)]) {
        const auto& pts = points(cell);
        std::size_t off = block_offset(cell);
        int up = cc_->cell(cell).upper;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            bool v = false;
            for (int f : cc_->facets(cell)) v ^= a.get(std::size_t(index(f, project_(up, cc_->cell(f).upper, pts[j]))));
            if (v) out.set(off + j);
        }
    }
    return out;
}

BitVec PointComplex::cup(int k, const BitVec& a, int l, const BitVec& b) const {
    require(k >= 0 && l >= 0 && k + l <= top_, ErrorKind::Degree, "cup: degrees out of range");
    require(a.size() == dims_[std::size_t(k)] && b.size() == dims_[std::size_t(l)], ErrorKind::DimensionMismatch,
            "cup: cochain sizes");
    const Triangulation& K = cc_->triangulation();
    BitVec out(dims_[std::size_t(k + l)]);
    for (int cell : cells_by_deg_[std::size_t(k + l)]) {
        const auto& cl = cc_->cell(cell);
        const int target = K.simplices()[std::size_t(cl.lower)].dim + k;
        std::vector<std::pair<int, int>> mids;
        for (int t : K.faces_of(cl.upper))
            if (K.simplices()[std::size_t(t)].dim == target && K.is_face(cl.lower, t))
                mids.push_back({cc_->index(cl.lower, t), cc_->index(t, cl.upper)});
        const auto& pts = points(cell);
        std::size_t off = block_offset(cell);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            bool v = false;
            for (auto [lo, hi] : mids) {
                long ia = index(lo, project_(cl.upper, cc_->cell(lo).upper, pts[j]));
                long ib = index(hi, pts[j]);
                require(ia >= 0 && ib >= 0, ErrorKind::Internal, "cup: missing face point");
                v ^= a.get(std::size_t(ia)) && b.get(std::size_t(ib));
            }
            if (v) out.set(off + j);
        }
    }
    return out;
}

BitVec PointComplex::unit() const {
    BitVec u(dims_[0]);
    for (std::size_t i = 0; i < u.size(); ++i) u.set(i);
    return u;
}

PointDeltaComplex::PointDeltaComplex(const Triangulation& k, std::vector<int> point_dims,
                                     PointComplex::Projection project)
    : k_(&k), point_dims_(std::move(point_dims)), project_(std::move(project)) {
    require(point_dims_.size() == k.simplex_count(), ErrorKind::DimensionMismatch, "one point space per simplex");
    dims_.assign(std::size_t(k.dim() + 1), 0);
    offset_.resize(k.simplex_count());
    for (std::size_t s = 0; s < k.simplex_count(); ++s) {
        int q = k.simplices()[s].dim;
        offset_[s] = dims_[std::size_t(q)];
        dims_[std::size_t(q)] += std::size_t(1) << point_dims_[s];
    }
}

long PointDeltaComplex::index(int simplex, Mask point) const {
    return long(offset_[std::size_t(simplex)] + point);
}

SparseComplex PointDeltaComplex::cochain_complex() const {
    SparseComplex c;
    c.delta = -1;
    c.dims = dims_;
    for (int q = 0; q <= top(); ++q) c.d.emplace_back(q == 0 ? 0 : dims_[std::size_t(q - 1)], dims_[std::size_t(q)]);
    for (std::size_t s = 0; s < k_->simplex_count(); ++s) {
        int q = k_->simplices()[s].dim;
        if (q == 0) continue;
        for (Mask v = 0; v < (Mask(1) << point_dims_[s]); ++v) {
            SparseVec col;
            for (int f : k_->facets(int(s))) col.push_back(std::uint32_t(index(f, project_(int(s), f, v))));
            std::sort(col.begin(), col.end());
            SparseVec merged;
            for (auto x : col) sparse_add(merged, SparseVec{x});
            c.d[std::size_t(q)].columns[std::size_t(index(int(s), v))] = std::move(merged);
        }
    }
    return c.dual();
}

BitVec PointDeltaComplex::alexander_whitney(int k, const BitVec& a, int l, const BitVec& b) const {
    require(k >= 0 && l >= 0 && k + l <= top(), ErrorKind::Degree, "cup: degrees out of range");
    BitVec out(dims_[std::size_t(k + l)]);
    for (std::size_t s = 0; s < k_->simplex_count(); ++s) {
        const auto& sv = k_->simplices()[s];
        if (sv.dim != k + l) continue;
        std::vector<int> front(sv.vertices.begin(), sv.vertices.begin() + k + 1);
        std::vector<int> back(sv.vertices.begin() + k, sv.vertices.end());
        int fi = k_->simplex_index(front), bi = k_->simplex_index(back);
        for (Mask v = 0; v < (Mask(1) << point_dims_[s]); ++v) {
            bool x = a.get(std::size_t(index(fi, project_(int(s), fi, v)))) &&
                     b.get(std::size_t(index(bi, project_(int(s), bi, v))));
            if (x) out.set(std::size_t(index(int(s), v)));
        }
    }
    return out;
}

BitVec PointDeltaComplex::subdivision_pullback(const PointComplex& cubes, int q, const BitVec& c) const {
    BitVec out(dims_[std::size_t(q)]);
    const CubicalComplex& cc = cubes.cubical();
    for (std::size_t s = 0; s < k_->simplex_count(); ++s) {
        const auto& sv = k_->simplices()[s];
        if (sv.dim != q) continue;
        for (Mask v = 0; v < (Mask(1) << point_dims_[s]); ++v) {
            bool x = false;
            for (int t : sv.vertices) {
                long i = cubes.index(cc.index(t, int(s)), v);
                require(i >= 0, ErrorKind::Internal, "subdivision: missing cube");
                x ^= c.get(std::size_t(i));
            }
            if (x) out.set(std::size_t(index(int(s), v)));
        }
    }
    return out;
}

}  // namespace patchlab
