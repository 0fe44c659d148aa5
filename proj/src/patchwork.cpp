#include "patchlab/patchwork.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace patchlab {

namespace {

bool parity(Mask x) { return ga::popcount(x) & 1; }

std::vector<int> edges_of(const Triangulation& k, int s) {
    std::vector<int> out;
    for (int f : k.faces_of(s))
        if (k.simplices()[std::size_t(f)].dim == 1) out.push_back(f);
    return out;
}

BitVec from_sparse(const SparseVec& v, std::size_t n) { return to_dense(v, n); }

// Inverse of an invertible square matrix.
F2Matrix invert(const F2Matrix& b) {
    const std::size_t n = b.rows();
    TrackedEchelon te(n, n);
    auto cols = b.columns();
    for (std::size_t i = 0; i < n; ++i)
        require(te.insert(cols[i], BitVec::unit(n, i)), ErrorKind::Internal, "adapted basis is not a basis");
    std::vector<BitVec> inv;
    for (std::size_t i = 0; i < n; ++i) {
        BitVec tag(n);
        te.reduce(BitVec::unit(n, i), tag);
        inv.push_back(tag);
    }
    return F2Matrix::from_columns(n, inv);
}

// Coordinates of z in the basis given by the columns of d, or nullopt.
std::optional<BitVec> solve_in_columns(const F2Matrix& d, const BitVec& z) {
    const std::size_t k = d.cols();
    TrackedEchelon te(d.rows(), k);
    auto cols = d.columns();
    for (std::size_t i = 0; i < k; ++i) te.insert(cols[i], BitVec::unit(k, i));
    BitVec tag(k);
    if (!te.reduce(z, tag).is_zero()) return std::nullopt;
    return tag;
}

// (covector on V_b, d eps) for the edges of the lower simplex of a cube.
std::vector<std::pair<Mask, int>> edge_conditions(const RealLift& lift, const SignDistribution& eps, int cell) {
    const auto& K = lift.triangulation();
    const auto& c = lift.cubical().cell(cell);
    std::vector<std::pair<Mask, int>> out;
    for (int e : edges_of(K, c.lower)) {
        const auto& vs = K.simplices()[std::size_t(e)].vertices;
        int de = (eps.values[std::size_t(vs[0])] ^ eps.values[std::size_t(vs[1])]) & 1;
        out.push_back({lift.quotients().covector(c.upper, K.edge_covector(e)), de});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Mask> arg_from_conditions(int m, const std::vector<std::pair<Mask, int>>& conds) {
    std::vector<Mask> out;
    for (Mask v = 0; v < (Mask(1) << m); ++v)
        for (auto [a, de] : conds)
            if (de ^ parity(a & v)) {
                out.push_back(v);
                break;
            }
    return out;
}

std::vector<Mask> kernel_basis(int m, Mask alpha) {
    std::vector<Mask> out;
    int i0 = -1;
    for (int i = 0; i < m; ++i)
        if (alpha >> i & 1) {
            i0 = i;
            break;
        }
    for (int i = 0; i < m; ++i) {
        if (i == i0) continue;
        Mask v = Mask(1) << i;
        if (i0 >= 0 && (alpha >> i & 1)) v |= Mask(1) << i0;
        out.push_back(v);
    }
    return out;
}

// Restriction of a subspace of F2[V] supported on the points to the point coordinates.
Subspace on_points(const Subspace& s, const std::vector<std::size_t>& pts) {
    std::vector<BitVec> g;
    for (const auto& b : s.basis()) {
        BitVec r = b.gather(pts);
        require(r.popcount() == b.popcount(), ErrorKind::Internal, "filtration step leaves the argument set");
        g.push_back(r);
    }
    return Subspace::span(pts.size(), g);
}

std::vector<Subspace> filtration_steps(int m, const std::vector<std::pair<Mask, int>>& conds,
                                       const std::vector<Mask>& points, FiltrationMethod method) {
    const std::size_t N = ga::order(m);
    std::vector<std::size_t> pts(points.begin(), points.end());
    Subspace span_a = Subspace::coordinate(N, pts);
    std::vector<Subspace> steps;
    for (int k = 0; k <= m + 1; ++k) {
        Subspace s;
        if (method == FiltrationMethod::Intersection) {
            s = sum_and_intersection(span_a, ga::aug_power(m, k)).second;
        } else {
            std::vector<BitVec> gens;
            for (auto [a, de] : conds) {
                Mask o = 0;
                while (!(de ^ parity(a & o))) ++o;
                Subspace sub = ga::aug_power_of_subspace(m, kernel_basis(m, a), k);
                for (const auto& b : sub.basis()) gens.push_back(ga::translate(m, b, o));
            }
            s = Subspace::span(N, gens);
        }
        steps.push_back(on_points(s, pts));
    }
    return steps;
}

std::shared_ptr<CubeFiltration> make_cube_filtration(int m, const std::vector<std::pair<Mask, int>>& conds,
                                                     FiltrationMethod method) {
    auto f = std::make_shared<CubeFiltration>();
    f->m = m;
    f->points = arg_from_conditions(m, conds);
    f->steps = filtration_steps(m, conds, f->points, method);
    const std::size_t n = f->points.size();
    require(f->steps[0].dim() == n && f->steps[std::size_t(m + 1)].dim() == 0, ErrorKind::Internal,
            "filtration endpoints");
    Echelon ech(n);
    std::vector<BitVec> cols;
    for (int k = m; k >= 0; --k) {
        require(f->steps[std::size_t(k)].contains(f->steps[std::size_t(k + 1)]), ErrorKind::Internal,
                "filtration is not decreasing");
        for (const auto& b : f->steps[std::size_t(k)].basis())
            if (ech.insert(b)) {
                cols.push_back(b);
                f->weight.push_back(k);
            }
    }
    f->basis = F2Matrix::from_columns(n, cols);
    f->inverse = invert(f->basis);
    return f;
}

std::vector<std::uint32_t> type_key(int m, const std::vector<std::pair<Mask, int>>& conds) {
    std::vector<std::uint32_t> key{std::uint32_t(m)};
    for (auto [a, de] : conds) {
        key.push_back(a);
        key.push_back(std::uint32_t(de));
    }
    return key;
}

void check_signs(const Triangulation& k, const SignDistribution& eps) {
    require(eps.values.size() == k.vertices().size(), ErrorKind::Input, "one sign per vertex of K expected");
}

}  // namespace

// ------------------------------------------------------------ CupTables

BitVec CupTables::multiply(int a, const BitVec& x, int b, const BitVec& y) const {
    BitVec out(betti[std::size_t(a + b)]);
    for (long i = x.first_set(); i >= 0; i = x.first_set(std::size_t(i) + 1))
        for (long j = y.first_set(); j >= 0; j = y.first_set(std::size_t(j) + 1)) out ^= product(a, int(i), b, int(j));
    return out;
}

// ------------------------------------------------------------ RealLift

RealLift::RealLift(const Triangulation& k) {
    cc_ = std::make_unique<CubicalComplex>(k);
    qs_ = std::make_unique<QuotientSpaces>(cc_->triangulation());
    const Triangulation& K = cc_->triangulation();
    const int n = K.dim();

    std::vector<int> cells(cc_->size());
    std::iota(cells.begin(), cells.end(), 0);
    std::vector<std::vector<Mask>> points;
    for (int c : cells) {
        std::vector<Mask> pts(ga::order(qs_->dim(cc_->cell(c).upper)));
        std::iota(pts.begin(), pts.end(), Mask(0));
        points.push_back(std::move(pts));
    }
    rk_ = std::make_unique<PointComplex>(*cc_, cells, std::move(points), projection());
    std::vector<int> pdims;
    for (std::size_t s = 0; s < K.simplex_count(); ++s) pdims.push_back(qs_->dim(int(s)));
    delta_ = std::make_unique<PointDeltaComplex>(K, pdims, projection());

    if (n >= 1) {
        omega_delta_ = BitVec(delta_->dim(1));
        for (int e : K.simplices_of_dim(1))
            for (Mask v = 0; v < (Mask(1) << qs_->dim(e)); ++v)
                if (omega_on_edge(e, v)) omega_delta_.set(std::size_t(delta_->index(e, v)));
        omega_cubical_ = BitVec(rk_->dim(1));
        for (int c : rk_->cells(1)) {
            const auto& cl = cc_->cell(c);
            int a = K.simplices()[std::size_t(cl.lower)].vertices[0];
            int b = K.simplices()[std::size_t(cl.upper)].vertices[0];
            if (a == b) continue;
            int e = K.simplex_index({std::min(a, b), std::max(a, b)});
            require(e >= 0, ErrorKind::Internal, "edge between leading vertices missing");
            Mask alpha = qs_->covector(cl.upper, K.edge_covector(e));
            std::size_t off = rk_->block_offset(c);
            const auto& pts = rk_->points(c);
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (parity(alpha & pts[j])) omega_cubical_.set(off + j);
        }
        require(rk_->coboundary(1, omega_cubical_).is_zero(), ErrorKind::InvariantViolation,
                "omega_RX is not a cocycle on the cubical model");
        SparseComplex dc = delta_->cochain_complex();
        require(dc.d[1].apply(to_sparse(omega_delta_)).empty(), ErrorKind::InvariantViolation,
                "omega_RX is not a cocycle");
        require(delta_->subdivision_pullback(*rk_, 1, omega_cubical_) == omega_delta_, ErrorKind::Internal,
                "cubical representative of omega_RX does not subdivide to omega_RX");
    }

    homology_ = std::make_unique<SparseHomology>(rk_->chain_complex(), true);
    cohomology_ = std::make_unique<SparseHomology>(rk_->cochain_complex(), true);

    cup_.betti = cohomology_->betti();
    cup_.table.assign(std::size_t(n + 1), std::vector<std::vector<std::vector<BitVec>>>(std::size_t(n + 1)));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            auto& t = cup_.table[std::size_t(a)][std::size_t(b)];
            t.assign(cup_.betti[std::size_t(a)], std::vector<BitVec>(cup_.betti[std::size_t(b)]));
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = 0; j < t[i].size(); ++j)
                    t[i][j] = class_of(a + b, rk_->cup(a, cochain(a, i), b, cochain(b, j)));
        }

    // divisors {x_j = 0}
    if (n >= 1) {
        const auto& P = K.polytope();
        Echelon ech(betti()[std::size_t(n - 1)]);
        std::vector<BitVec> cols;
        for (int j = n - 1; j >= 0; --j) {
            int facet = -1;
            for (std::size_t f = 0; f < P.facets().size(); ++f) {
                const auto& F = P.facets()[f];
                IVec ej(std::size_t(n), 0);
                ej[std::size_t(j)] = 1;
                if (F.normal == ej && F.offset == 0) facet = int(f);
            }
            if (facet < 0) continue;
            const auto& F = P.facets()[std::size_t(facet)];
            BitVec chain(rk_->dim(n - 1));
            for (int s : K.simplices_of_dim(n - 1)) {
                bool inside = true;
                for (const auto& x : K.coordinates(s)) {
                    long long dot = 0;
                    for (int i = 0; i < n; ++i) dot += F.normal[std::size_t(i)] * x[std::size_t(i)];
                    if (dot != F.offset) inside = false;
                }
                if (!inside) continue;
                for (int v : K.simplices()[std::size_t(s)].vertices) {
                    int c = cc_->index(v, s);
                    std::size_t off = rk_->block_offset(c);
                    for (std::size_t i = 0; i < rk_->points(c).size(); ++i) chain.set(off + i);
                }
            }
            BitVec z = homology_->coordinates(n - 1, to_sparse(chain));
            if (ech.insert(z)) {
                cols.push_back(z);
                divisor_axes_.push_back(j);
            }
        }
        divisors_ = F2Matrix::from_columns(betti()[std::size_t(n - 1)], cols);
    }
}

PointComplex::Projection RealLift::projection() const {
    const QuotientSpaces* qs = qs_.get();
    return [qs](int from, int to, Mask v) { return qs->project(from, to, v); };
}

bool RealLift::omega_on_edge(int edge, Mask v) const {
    return parity(qs_->covector(edge, triangulation().edge_covector(edge)) & v);
}

BitVec RealLift::class_of(int q, const BitVec& cocycle) const { return cohomology_->coordinates(q, to_sparse(cocycle)); }

BitVec RealLift::cochain(int q, std::size_t i) const {
    return from_sparse(cohomology_->representatives(q)[i], rk_->dim(q));
}

SparseVec RealLift::fundamental_cycle() const {
    SparseVec z(rk_->dim(n()));
    std::iota(z.begin(), z.end(), 0u);
    return z;
}

bool RealLift::evaluate(int q, const BitVec& c, const SparseVec& chain) const {
    require(c.size() == rk_->dim(q), ErrorKind::DimensionMismatch, "cochain size");
    bool v = false;
    for (auto i : chain) v ^= c.get(i);
    return v;
}

std::optional<BitVec> RealLift::divisor_coordinates(const BitVec& z) const {
    if (!divisors_span()) return std::nullopt;
    auto r = solve_in_columns(divisors_, z);
    require(r.has_value(), ErrorKind::Internal, "divisor basis does not span");
    return r;
}

std::vector<int> RealLift::coordinate_circle_degrees() const {
    const Triangulation& K = triangulation();
    const auto& P = K.polytope();
    const int n = this->n();
    std::vector<int> out;
    for (int j = n - 1; j >= 0; --j) {
        int origin = -1, far = -1;
        for (std::size_t v = 0; v < P.vertices().size(); ++v) {
            const auto& x = P.vertices()[v];
            bool zero_else = true;
            for (int i = 0; i < n; ++i)
                if (i != j && x[std::size_t(i)] != 0) zero_else = false;
            if (!zero_else) continue;
            if (x[std::size_t(j)] == 0) origin = int(v);
            else if (x[std::size_t(j)] > 0) far = int(v);
        }
        int face = -1;
        for (std::size_t f = 0; f < P.faces().size(); ++f)
            if (P.faces()[f].dim == 1 && P.faces()[f].vertices == std::vector<int>{std::min(origin, far), std::max(origin, far)})
                face = int(f);
        if (origin < 0 || far < 0 || face < 0) {
            out.push_back(-1);
            continue;
        }
        SparseVec circle;
        for (int e : K.simplices_of_dim(1)) {
            if (K.polytope_face(e) != face) continue;
            for (int v : K.simplices()[std::size_t(e)].vertices) {
                int c = cc_->index(v, e);
                std::size_t off = rk_->block_offset(c);
                for (std::size_t i = 0; i < rk_->points(c).size(); ++i) circle.push_back(std::uint32_t(off + i));
            }
        }
        std::sort(circle.begin(), circle.end());
        require(homology_->is_cycle(1, circle), ErrorKind::Internal, "coordinate circle is not a cycle");
        out.push_back(evaluate(1, omega_cubical_, circle) ? 1 : 0);
    }
    return out;
}

bool RealLift::cup_agrees_with_alexander_whitney() const {
    SparseHomology dh(delta_->cochain_complex(), true);
    const int n = this->n();
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b)
            for (std::size_t i = 0; i < betti()[std::size_t(a)]; ++i)
                for (std::size_t j = 0; j < betti()[std::size_t(b)]; ++j) {
                    BitVec x = cochain(a, i), y = cochain(b, j);
                    BitVec lhs = delta_->subdivision_pullback(*rk_, a + b, rk_->cup(a, x, b, y));
                    BitVec rhs = delta_->alexander_whitney(a, delta_->subdivision_pullback(*rk_, a, x), b,
                                                           delta_->subdivision_pullback(*rk_, b, y));
                    if (!dh.coordinates(a + b, to_sparse(lhs ^ rhs)).is_zero()) return false;
                }
    return true;
}

// ------------------------------------------------------------ arguments and RX

std::vector<Mask> arg_set(const RealLift& lift, const SignDistribution& eps, int cell) {
    check_signs(lift.triangulation(), eps);
    int m = lift.quotients().dim(lift.cubical().cell(cell).upper);
    return arg_from_conditions(m, edge_conditions(lift, eps, cell));
}

THypersurface::THypersurface(const RealLift& lift, SignDistribution eps) : lift_(&lift), eps_(std::move(eps)) {
    check_signs(lift.triangulation(), eps_);
    const int n = lift.n();
    const auto& cc = lift.cubical();
    std::vector<int> cells = cc.dual_hypersurface();
    std::vector<std::vector<Mask>> points;
    for (int c : cells) points.push_back(arg_set(lift, eps_, c));
    rx_ = std::make_unique<PointComplex>(cc, cells, std::move(points), lift.projection());
    require(rx_->dim(n) == 0, ErrorKind::Internal, "top cubes in the dual hypersurface");
    chains_ = rx_->chain_complex();
    chains_.dims.resize(std::size_t(n));
    chains_.d.resize(std::size_t(n));

    to_ambient_.resize(std::size_t(n));
    for (int q = 0; q < n; ++q) {
        auto& t = to_ambient_[std::size_t(q)];
        t.resize(rx_->dim(q));
        for (int c : rx_->cells(q)) {
            std::size_t off = rx_->block_offset(c);
            const auto& pts = rx_->points(c);
            for (std::size_t j = 0; j < pts.size(); ++j) {
                long i = lift.complex().index(c, pts[j]);
                require(i >= 0, ErrorKind::Internal, "RX cell missing in RK");
                t[off + j] = std::uint32_t(i);
            }
        }
    }

    if (n >= 2) {
        std::vector<int> count(rx_->dim(n - 2), 0);
        for (const auto& col : chains_.d[std::size_t(n - 1)].columns)
            for (auto i : col) ++count[i];
        for (int c : count)
            require(c == 2, ErrorKind::InvariantViolation, "RX is not a closed pseudo-manifold");
    }

    homology_ = std::make_unique<SparseHomology>(chains_, true);
    cohomology_ = std::make_unique<SparseHomology>(chains_.dual(), true);

    // components: union-find over all cells, joined along facets
    std::vector<std::size_t> base(std::size_t(n) + 1, 0);
    for (int q = 0; q < n; ++q) base[std::size_t(q + 1)] = base[std::size_t(q)] + rx_->dim(q);
    std::vector<std::size_t> parent(base[std::size_t(n)]);
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // the facet relation of the point complex, read from the unreduced incidences
    for (int q = 1; q < n; ++q)
        for (int c : rx_->cells(q)) {
            std::size_t off = rx_->block_offset(c);
            const auto& pts = rx_->points(c);
            int up = cc.cell(c).upper;
            for (std::size_t j = 0; j < pts.size(); ++j)
                for (int f : cc.facets(c)) {
                    long r = rx_->index(f, rx_->project(up, cc.cell(f).upper, pts[j]));
                    std::size_t a = find(base[std::size_t(q)] + off + j), b = find(base[std::size_t(q - 1)] + std::size_t(r));
                    if (a != b) parent[std::max(a, b)] = std::min(a, b);
                }
        }
    std::map<std::size_t, std::size_t> comp_of_root;
    const int top = n - 1;
    for (std::size_t i = 0; i < rx_->dim(top); ++i) {
        std::size_t r = find(base[std::size_t(top)] + i);
        auto it = comp_of_root.find(r);
        if (it == comp_of_root.end()) {
            it = comp_of_root.emplace(r, components_.size()).first;
            components_.emplace_back();
        }
        components_[it->second].top_cells.push_back(int(i));
    }
    for (auto& comp : components_) {
        SparseVec z(comp.top_cells.begin(), comp.top_cells.end());
        require(homology_->is_cycle(top, z), ErrorKind::InvariantViolation, "component is not a cycle");
        comp.homology_class = lift.homology().coordinates(top, push_forward(top, z));
        comp.divisor_class = lift.divisor_coordinates(comp.homology_class);
    }
}

long long THypersurface::euler_characteristic() const {
    long long chi = 0;
    for (int q = 0; q < n(); ++q) chi += (q % 2 ? -1 : 1) * (long long)rx_->dim(q);
    return chi;
}

SparseVec THypersurface::push_forward(int q, const SparseVec& chain) const {
    SparseVec out;
    for (auto i : chain) out.push_back(to_ambient_[std::size_t(q)][i]);
    std::sort(out.begin(), out.end());
    return out;
}

BitVec THypersurface::restrict_cochain(int q, const BitVec& ambient) const {
    const auto& t = to_ambient_[std::size_t(q)];
    BitVec out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        if (ambient.get(t[i])) out.set(i);
    return out;
}

F2Matrix THypersurface::restriction_map(int q) const {
    const auto& P = lift_->cohomology();
    std::vector<BitVec> cols;
    for (std::size_t i = 0; i < P.betti()[std::size_t(q)]; ++i)
        cols.push_back(cohomology_->coordinates(q, to_sparse(restrict_cochain(q, lift_->cochain(q, i)))));
    return F2Matrix::from_columns(betti()[std::size_t(q)], cols);
}

F2Matrix THypersurface::push_forward_map(int q) const {
    std::vector<BitVec> cols;
    for (const auto& z : homology_->representatives(q))
        cols.push_back(lift_->homology().coordinates(q, push_forward(q, z)));
    return F2Matrix::from_columns(lift_->betti()[std::size_t(q)], cols);
}

BitVec THypersurface::fundamental_class_image() const {
    const int top = n() - 1;
    SparseVec z(rx_->dim(top));
    std::iota(z.begin(), z.end(), 0u);
    return lift_->homology().coordinates(top, push_forward(top, z));
}

bool THypersurface::poincare_dual_to_omega() const {
    const int top = n() - 1;
    SparseVec z(rx_->dim(top));
    std::iota(z.begin(), z.end(), 0u);
    SparseVec image = push_forward(top, z);
    SparseVec fund = lift_->fundamental_cycle();
    for (std::size_t i = 0; i < lift_->betti()[std::size_t(top)]; ++i) {
        BitVec beta = lift_->cochain(top, i);
        bool lhs = lift_->evaluate(top, beta, image);
        bool rhs = lift_->evaluate(n(), lift_->complex().cup(1, lift_->omega_cochain(), top, beta), fund);
        if (lhs != rhs) return false;
    }
    return true;
}

std::vector<std::size_t> direct_betti(const RealLift& lift, const SignDistribution& eps) {
    check_signs(lift.triangulation(), eps);
    const auto& K = lift.triangulation();
    const auto& cc = lift.cubical();
    const auto& qs = lift.quotients();
    const int n = K.dim();
    std::vector<std::map<std::pair<int, Mask>, std::uint32_t>> idx(static_cast<std::size_t>(n));
    std::vector<std::pair<int, Mask>> stack;
    for (int b : K.simplices_of_dim(n))
        for (int e : edges_of(K, b)) {
            const auto& vs = K.simplices()[std::size_t(e)].vertices;
            bool de = (eps.values[std::size_t(vs[0])] ^ eps.values[std::size_t(vs[1])]) & 1;
            BitVec alpha = K.edge_covector(e);
            for (Mask v = 0; v < (Mask(1) << qs.dim(b)); ++v)
                if (de ^ alpha.dot(qs.lift(b, v))) stack.push_back({cc.index(e, b), v});
        }
    while (!stack.empty()) {
        auto [c, v] = stack.back();
        stack.pop_back();
        auto& m = idx[std::size_t(cc.cell(c).dim)];
        if (m.count({c, v})) continue;
        m.emplace(std::make_pair(c, v), 0);
        for (int f : cc.facets(c)) stack.push_back({f, qs.project(cc.cell(c).upper, cc.cell(f).upper, v)});
    }
    SparseComplex x;
    x.delta = -1;
    for (int q = 0; q < n; ++q) {
        std::uint32_t i = 0;
        for (auto& [key, val] : idx[std::size_t(q)]) val = i++;
        x.dims.push_back(idx[std::size_t(q)].size());
    }
    for (int q = 0; q < n; ++q) {
        SparseMatrix d(q == 0 ? 0 : x.dims[std::size_t(q - 1)], x.dims[std::size_t(q)]);
        if (q > 0)
            for (const auto& [key, j] : idx[std::size_t(q)]) {
                auto [c, v] = key;
                SparseVec col;
                for (int f : cc.facets(c))
                    sparse_add(col, SparseVec{idx[std::size_t(q - 1)].at({f, qs.project(cc.cell(c).upper, cc.cell(f).upper, v)})});
                d.columns[j] = std::move(col);
            }
        x.d.push_back(std::move(d));
    }
    return SparseHomology(std::move(x), false).betti();
}

// ------------------------------------------------------------ filtrations

const char* to_string(FiltrationMethod m) {
    return m == FiltrationMethod::Intersection ? "intersection" : "renaudineau_shaw";
}

std::size_t CubeFiltration::graded_dim(int k) const {
    return std::size_t(std::count(weight.begin(), weight.end(), k));
}

FiltrationComparison compare_filtrations(const THypersurface& x) {
    FiltrationComparison out;
    std::map<std::vector<std::uint32_t>, bool> seen;
    const auto& lift = x.lift();
    for (int q = 0; q < x.n(); ++q)
        for (int c : x.complex().cells(q)) {
            ++out.cubes;
            int m = lift.quotients().dim(lift.cubical().cell(c).upper);
            auto conds = edge_conditions(lift, x.signs(), c);
            auto key = type_key(m, conds);
            auto it = seen.find(key);
            if (it == seen.end()) {
                auto pts = arg_from_conditions(m, conds);
                bool same = filtration_steps(m, conds, pts, FiltrationMethod::Intersection) ==
                            filtration_steps(m, conds, pts, FiltrationMethod::RenaudineauShaw);
                it = seen.emplace(key, same).first;
            }
            if (!it->second) ++out.mismatches;
        }
    out.types = seen.size();
    return out;
}

FilteredTComplex::FilteredTComplex(const THypersurface& x, FiltrationMethod method) : x_(&x) {
    const auto& lift = x.lift();
    const auto& cc = lift.cubical();
    const auto& rx = x.complex();
    const int n = x.n();
    std::map<std::vector<std::uint32_t>, std::size_t> cache;
    for (int q = 0; q < n; ++q)
        for (int c : rx.cells(q)) {
            int m = lift.quotients().dim(cc.cell(c).upper);
            auto conds = edge_conditions(lift, x.signs(), c);
            auto key = type_key(m, conds);
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, types_.size()).first;
                types_.push_back(make_cube_filtration(m, conds, method));
            }
            require(types_[it->second]->points == rx.points(c), ErrorKind::Internal, "cube type points");
            type_of_[c] = it->second;
        }

    chains_.side = Side::Homology;
    chains_.weight_count = n;
    chains_.complex.delta = -1;
    chains_.complex.dims = x.chains().dims;
    chains_.weight.resize(std::size_t(n));
    for (int q = 0; q < n; ++q) {
        auto& w = chains_.weight[std::size_t(q)];
        w.resize(rx.dim(q));
        for (int c : rx.cells(q)) {
            const auto& f = cube(c);
            std::size_t off = rx.block_offset(c);
            for (std::size_t j = 0; j < f.weight.size(); ++j) {
                require(f.weight[j] < n, ErrorKind::Assembly, "filtration weight beyond the top degree");
                w[off + j] = f.weight[j];
            }
        }
    }
    for (int q = 0; q < n; ++q) {
        SparseMatrix d(q == 0 ? 0 : rx.dim(q - 1), rx.dim(q));
        if (q > 0)
            for (int c : rx.cells(q)) {
                const auto& fc = cube(c);
                const auto& pc = rx.points(c);
                std::size_t offc = rx.block_offset(c);
                int up = cc.cell(c).upper;
                std::vector<SparseVec> cols(pc.size());
                for (int face : cc.facets(c)) {
                    const auto& ff = cube(face);
                    const auto& pf = rx.points(face);
                    F2Matrix m(pf.size(), pc.size());
                    for (std::size_t j = 0; j < pc.size(); ++j) {
                        Mask img = rx.project(up, cc.cell(face).upper, pc[j]);
                        auto pos = std::lower_bound(pf.begin(), pf.end(), img) - pf.begin();
                        require(std::size_t(pos) < pf.size() && pf[std::size_t(pos)] == img, ErrorKind::Internal,
                                "face point missing");
                        m.set(std::size_t(pos), j);
                    }
                    F2Matrix a = ff.inverse * m * fc.basis;
                    std::size_t offf = rx.block_offset(face);
                    for (std::size_t j = 0; j < pc.size(); ++j)
                        for (std::size_t i = 0; i < pf.size(); ++i)
                            if (a.get(i, j)) {
                                require(ff.weight[i] >= fc.weight[j], ErrorKind::Assembly,
                                        "boundary does not preserve the filtration");
                                sparse_add(cols[j], {std::uint32_t(offf + i)});
                            }
                }
                for (std::size_t j = 0; j < pc.size(); ++j) d.columns[offc + j] = std::move(cols[j]);
            }
        chains_.complex.d.push_back(std::move(d));
    }
    require(chains_.complex.is_complex(), ErrorKind::Internal, "adapted boundary does not square to zero");
}

const CubeFiltration& FilteredTComplex::cube(int cell) const { return *types_[type_of_.at(cell)]; }

BitVec FilteredTComplex::to_adapted_cochain(int q, const BitVec& f) const {
    const auto& rx = x_->complex();
    BitVec y(rx.dim(q));
    for (int c : rx.cells(q)) {
        const auto& t = cube(c);
        std::size_t off = rx.block_offset(c), k = t.points.size();
        BitVec blk = t.basis.transpose().apply(f.slice(off, off + k));
        for (std::size_t i = 0; i < k; ++i)
            if (blk.get(i)) y.set(off + i);
    }
    return y;
}

BitVec FilteredTComplex::to_standard_cochain(int q, const BitVec& y) const {
    const auto& rx = x_->complex();
    BitVec f(rx.dim(q));
    for (int c : rx.cells(q)) {
        const auto& t = cube(c);
        std::size_t off = rx.block_offset(c), k = t.points.size();
        BitVec blk = t.inverse.transpose().apply(y.slice(off, off + k));
        for (std::size_t i = 0; i < k; ++i)
            if (blk.get(i)) f.set(off + i);
    }
    return f;
}

CochainProduct FilteredTComplex::cochain_product() const {
    return [this](int a, const BitVec& x, int b, const BitVec& y) {
        const auto& rx = x_->complex();
        BitVec prod = rx.cup(a, to_standard_cochain(a, x), b, to_standard_cochain(b, y));
        return to_adapted_cochain(a + b, prod);
    };
}

std::size_t FilteredTComplex::graded_mismatches(const TropicalCoefficients& coeffs) const {
    const auto& rx = x_->complex();
    const int n = x_->n();
    std::vector<std::unordered_map<int, std::size_t>> where(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        for (std::size_t i = 0; i < coeffs.fx[std::size_t(k)].cells.size(); ++i)
            where[std::size_t(k)][coeffs.fx[std::size_t(k)].cells[i]] = i;
    std::size_t bad = 0;
    for (int q = 0; q < n; ++q)
        for (int c : rx.cells(q)) {
            const auto& t = cube(c);
            bool ok = t.graded_dim(n) == 0;
            for (int k = 0; k < n; ++k) {
                auto it = where[std::size_t(k)].find(c);
                std::size_t expect = it == where[std::size_t(k)].end() ? 0 : coeffs.fx_space[std::size_t(k)][it->second].dim();
                if (t.graded_dim(k) != expect) ok = false;
            }
            if (!ok) ++bad;
        }
    return bad;
}

}  // namespace patchlab
