#include "patchlab/tropical.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace patchlab {

using ga::Mask;

namespace {

Mask to_mask(const BitVec& v) {
    Mask m = 0;
    for (std::size_t i : v.support()) m |= Mask(1) << i;
    return m;
}

long long binom(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

QuotientSpaces::QuotientSpaces(const Triangulation& k) : n_(k.dim()) {
    const auto& poly = k.polytope();
    faces_ = poly.faces().size();
    for (std::size_t f = 0; f < faces_; ++f) {
        const Subspace& sed = poly.face_sedentarity(int(f));
        std::vector<Mask> basis;
        std::vector<char> piv(std::size_t(n_), 0);
        for (const auto& b : sed.basis()) {
            basis.push_back(to_mask(b));
            piv[std::size_t(b.first_set())] = 1;
        }
        std::vector<int> fr;
        for (int i = 0; i < n_; ++i)
            if (!piv[std::size_t(i)]) fr.push_back(i);
        sed_basis_.push_back(basis);
        dims_.push_back(int(fr.size()));
        free_.push_back(fr);
    }
    table_.resize(faces_ * faces_);
    for (std::size_t f = 0; f < faces_; ++f)
        for (std::size_t g = 0; g < faces_; ++g) {
            const auto& vf = poly.faces()[f].vertices;
            const auto& vg = poly.faces()[g].vertices;
            if (f == g || !std::includes(vf.begin(), vf.end(), vg.begin(), vg.end())) continue;
            auto& t = table_[f * faces_ + g];
            t.resize(std::size_t(1) << dims_[f]);
            for (Mask v = 0; v < t.size(); ++v) {
                Mask x = 0;
                for (std::size_t j = 0; j < free_[f].size(); ++j)
                    if (v >> j & 1u) x |= Mask(1) << free_[f][j];
                t[v] = gather(int(g), reduce(int(g), x));
            }
        }
    for (std::size_t s = 0; s < k.simplex_count(); ++s) face_of_.push_back(k.polytope_face(int(s)));
}

Mask QuotientSpaces::reduce(int face, Mask x) const {
    for (Mask b : sed_basis_[std::size_t(face)])
        if (x & (b & (~b + 1))) x ^= b;
    return x;
}

Mask QuotientSpaces::gather(int face, Mask x) const {
    Mask out = 0;
    const auto& fr = free_[std::size_t(face)];
    for (std::size_t j = 0; j < fr.size(); ++j)
        if (x >> fr[j] & 1u) out |= Mask(1) << j;
    return out;
}

Mask QuotientSpaces::project(int from, int to, Mask v) const {
    int f = face_of_[std::size_t(from)], g = face_of_[std::size_t(to)];
    if (f == g) return v;
    const auto& t = table_[std::size_t(f) * faces_ + std::size_t(g)];
    require(!t.empty(), ErrorKind::Geometry, "projection between simplices that are not nested");
    return t[v];
}

Mask QuotientSpaces::covector(int simplex, const BitVec& alpha) const {
    return gather(face_of_[std::size_t(simplex)], to_mask(alpha));
}

Mask QuotientSpaces::coset(int simplex, const BitVec& v) const {
    int f = face_of_[std::size_t(simplex)];
    return gather(f, reduce(f, to_mask(v)));
}

BitVec QuotientSpaces::lift(int simplex, Mask v) const {
    BitVec out(static_cast<std::size_t>(n_));
    const auto& fr = free_[std::size_t(face_of_[std::size_t(simplex)])];
    for (std::size_t j = 0; j < fr.size(); ++j)
        if (v >> j & 1u) out.set(std::size_t(fr[j]));
    return out;
}

BitVec QuotientSpaces::restrict_form(int simplex, const WedgeCovector& w) const {
    const auto& fr = free_[std::size_t(face_of_[std::size_t(simplex)])];
    const int m = int(fr.size());
    const auto& subs = ga::k_subsets(m, w.p);
    BitVec out(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        Mask g = 0;
        for (int j = 0; j < m; ++j)
            if (subs[i] >> j & 1u) g |= Mask(1) << fr[std::size_t(j)];
        if (w.value.get(ga::subset_index(w.n, g))) out.set(i);
    }
    return out;
}

BitVec wedge_of(int m, const std::vector<Mask>& vs) {
    BitVec acc(1);
    acc.set(0);
    int deg = 0;
    for (Mask v : vs) {
        BitVec lin(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            if (v >> j & 1u) lin.set(std::size_t(j));
        acc = ga::wedge_product(m, deg, acc, 1, lin);
        ++deg;
    }
    return acc;
}

F2Matrix exterior_power(const std::vector<Mask>& images, int m_in, int m_out, int k) {
    const auto& src = ga::k_subsets(m_in, k);
    std::vector<BitVec> cols;
    for (Mask s : src) {
        std::vector<Mask> vs;
        for (int j = 0; j < m_in; ++j)
            if (s >> j & 1u) vs.push_back(images[std::size_t(j)]);
        cols.push_back(wedge_of(m_out, vs));
    }
    return F2Matrix::from_columns(ga::k_subsets(m_out, k).size(), cols);
}

F2Matrix contraction_matrix(int m, int p, const BitVec& omega, int k) {
    const auto& cols = ga::k_subsets(m, k);
    if (k < p) return F2Matrix(0, cols.size());
    const auto& rows = ga::k_subsets(m, k - p);
    F2Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t l = 0; l < cols.size(); ++l)
            if ((rows[i] & cols[l]) == rows[i] && omega.get(ga::subset_index(m, cols[l] & ~rows[i]))) out.set(i, l);
    return out;
}

TropicalCoefficients build_tropical_coefficients(const CubicalComplex& cc, const QuotientSpaces& qs) {
    const Triangulation& K = cc.triangulation();
    const int n = K.dim();
    TropicalCoefficients tc;
    tc.n = n;
    std::vector<int> all(cc.size());
    for (std::size_t i = 0; i < cc.size(); ++i) all[i] = int(i);
    const std::vector<int> xcells = cc.dual_hypersurface();

    // images of the basis of t/Sed(b) in t/Sed(b') for every facet pair
    auto images = [&](int b, int b2) {
        std::vector<Mask> im;
        for (int j = 0; j < qs.dim(b); ++j) im.push_back(qs.project(b, b2, Mask(1) << j));
        return im;
    };
    std::map<std::tuple<int, int, int>, F2Matrix> ext_cache;
    auto ext_p = [&](int b, int b2, int k) -> const F2Matrix& {
        auto key = std::make_tuple(b, b2, k);
        auto it = ext_cache.find(key);
        if (it != ext_cache.end()) return it->second;
        F2Matrix m = b == b2 ? F2Matrix::identity(std::size_t(binom(qs.dim(b), k)))
                             : exterior_power(images(b, b2), qs.dim(b), qs.dim(b2), k);
        return ext_cache.emplace(key, std::move(m)).first->second;
    };

    for (int k = 0; k <= n; ++k) {
        Cosheaf f;
        f.cells = all;
        for (int c : all) {
            const auto& cell = cc.cell(c);
            f.stalk.push_back(std::size_t(binom(qs.dim(cell.upper), k)));
            std::vector<F2Matrix> maps;
            for (int g : cc.facets(c)) maps.push_back(ext_p(cell.upper, cc.cell(g).upper, k));
            f.ext.push_back(std::move(maps));
        }
        tc.fp.push_back(std::move(f));
    }

    // kernels of omega(e) on t/Sed(b), as masks
    std::map<std::pair<int, int>, std::vector<Mask>> ker_cache;
    auto ker_basis = [&](int e, int b) -> const std::vector<Mask>& {
        auto it = ker_cache.find({e, b});
        if (it != ker_cache.end()) return it->second;
        const int m = qs.dim(b);
        Mask a = qs.covector(b, K.edge_covector(e));
        require(a != 0, ErrorKind::Internal, "edge covector vanishes on the quotient of its cofaces");
        int piv = __builtin_ctz(a);
        std::vector<Mask> basis;
        for (int j = 0; j < m; ++j) {
            if (j == piv) continue;
            Mask v = Mask(1) << j;
            if (__builtin_popcount(a & v) & 1) v |= Mask(1) << piv;
            basis.push_back(v);
        }
        return ker_cache.emplace(std::make_pair(e, b), basis).first->second;
    };
    std::map<int, WedgeCovector> omega_cache;

    for (int k = 0; k < n; ++k) {
        std::vector<Subspace> spaces;
        std::unordered_map<int, std::size_t> loc;
        for (int c : xcells) {
            const auto& cell = cc.cell(c);
            const int m = qs.dim(cell.upper);
            const std::size_t N = std::size_t(binom(m, k));
            std::vector<BitVec> gens;
            const auto& av = K.simplices()[std::size_t(cell.lower)].vertices;
            const int p = int(av.size()) - 1;
            for (int e : K.faces_of(cell.lower)) {
                if (K.simplices()[std::size_t(e)].dim != 1) continue;
                const auto& kb = ker_basis(e, cell.upper);
                for (Mask s : ga::k_subsets(int(kb.size()), k)) {
                    std::vector<Mask> vs;
                    for (std::size_t j = 0; j < kb.size(); ++j)
                        if (s >> j & 1u) vs.push_back(kb[j]);
                    gens.push_back(wedge_of(m, vs));
                }
            }
            Subspace sum = Subspace::span(N, gens);
            auto oit = omega_cache.find(cell.lower);
            if (oit == omega_cache.end()) oit = omega_cache.emplace(cell.lower, K.omega(cell.lower)).first;
            BitVec om = qs.restrict_form(cell.upper, oit->second);
            Subspace ker = kernel(contraction_matrix(m, p, om, k));
            require(ker == sum, ErrorKind::Internal,
                    "F_k^X: sum over edges differs from the contraction kernel on cell " + std::to_string(c));
            require(static_cast<long long>(sum.dim()) == binom(m, k) - binom(m - p, k - p), ErrorKind::Internal,
                    "F_k^X: dimension formula fails on cell " + std::to_string(c));
            loc[c] = spaces.size();
            spaces.push_back(std::move(sum));
        }
        Cosheaf f;
        f.cells = xcells;
        std::vector<F2Matrix> incl;
        for (std::size_t i = 0; i < xcells.size(); ++i) {
            const int c = xcells[i];
            const auto& cell = cc.cell(c);
            const Subspace& s = spaces[i];
            f.stalk.push_back(s.dim());
            incl.push_back(s.basis_matrix());
            std::vector<F2Matrix> maps;
            for (int g : cc.facets(c)) {
                const Subspace& t = spaces[loc.at(g)];
                const F2Matrix& e = ext_p(cell.upper, cc.cell(g).upper, k);
                std::vector<BitVec> cols;
                for (const auto& b : s.basis()) cols.push_back(t.coords(e.apply(b)));
                maps.push_back(F2Matrix::from_columns(t.dim(), cols));
            }
            f.ext.push_back(std::move(maps));
        }
        tc.fx.push_back(std::move(f));
        tc.fx_space.push_back(std::move(spaces));
        tc.inclusion.push_back(std::move(incl));
    }
    return tc;
}

TropicalHomology::TropicalHomology(const CubicalComplex& cc, const QuotientSpaces& qs)
    : cc_(&cc), coeffs_(build_tropical_coefficients(cc, qs)) {
    for (const auto& f : coeffs_.fx) {
        cx_.push_back(chain_complex(cc, f));
        hx_.emplace_back(cx_.back().complex, true);
        cohx_.emplace_back(cx_.back().complex.dual(), true);
    }
    for (const auto& f : coeffs_.fp) {
        cp_.push_back(chain_complex(cc, f));
        hp_.emplace_back(cp_.back().complex, true);
        cohp_.emplace_back(cp_.back().complex.dual(), true);
    }
}

std::size_t TropicalHomology::hx(int p, int q) const {
    if (p < 0 || q < 0 || p >= int(hx_.size()) || q > n()) return 0;
    return hx_[std::size_t(p)].betti()[std::size_t(q)];
}

std::size_t TropicalHomology::hp(int p, int q) const {
    if (p < 0 || q < 0 || p >= int(hp_.size()) || q > n()) return 0;
    return hp_[std::size_t(p)].betti()[std::size_t(q)];
}

std::size_t TropicalHomology::hx_cohomology(int p, int q) const {
    if (p < 0 || q < 0 || p >= int(cohx_.size()) || q > n()) return 0;
    return cohx_[std::size_t(p)].betti()[std::size_t(q)];
}

std::vector<std::vector<std::size_t>> TropicalHomology::table_x() const {
    std::vector<std::vector<std::size_t>> t(std::size_t(n()), std::vector<std::size_t>(std::size_t(n()), 0));
    for (int p = 0; p < n(); ++p)
        for (int q = 0; q < n(); ++q) t[std::size_t(p)][std::size_t(q)] = hx(p, q);
    return t;
}

std::vector<std::vector<std::size_t>> TropicalHomology::table_p() const {
    std::vector<std::vector<std::size_t>> t(std::size_t(n() + 1), std::vector<std::size_t>(std::size_t(n() + 1), 0));
    for (int p = 0; p <= n(); ++p)
        for (int q = 0; q <= n(); ++q) t[std::size_t(p)][std::size_t(q)] = hp(p, q);
    return t;
}

namespace {

std::unordered_map<int, std::size_t> block_offsets(const AssembledComplex& c, int q) {
    std::unordered_map<int, std::size_t> m;
    const auto& cells = c.cells[std::size_t(q)];
    for (std::size_t i = 0; i < cells.size(); ++i) m[cells[i]] = c.offsets[std::size_t(q)][i];
    return m;
}

}  // namespace

F2Matrix TropicalHomology::inclusion(int p, int q) const {
    const auto& X = cx_[std::size_t(p)];
    const auto& P = cp_[std::size_t(p)];
    auto poff = block_offsets(P, q);
    std::unordered_map<int, std::size_t> xloc;
    const auto& fx = coeffs_.fx[std::size_t(p)];
    for (std::size_t i = 0; i < fx.cells.size(); ++i) xloc[fx.cells[i]] = i;
    const auto& reps = hx_[std::size_t(p)].representatives(q);
    std::vector<BitVec> cols;
    for (const auto& z : reps) {
        BitVec img(P.complex.dims[std::size_t(q)]);
        const auto& cells = X.cells[std::size_t(q)];
        const auto& offs = X.offsets[std::size_t(q)];
        std::map<std::size_t, BitVec> local;
        for (auto e : z) {
            std::size_t b = std::size_t(std::upper_bound(offs.begin(), offs.end(), std::size_t(e)) - offs.begin()) - 1;
            auto it = local.find(b);
            if (it == local.end())
                it = local.emplace(b, BitVec(coeffs_.inclusion[std::size_t(p)][xloc.at(cells[b])].cols())).first;
            it->second.flip(e - offs[b]);
        }
        for (auto& [b, v] : local) {
            BitVec im = coeffs_.inclusion[std::size_t(p)][xloc.at(cells[b])].apply(v);
            std::size_t po = poff.at(cells[b]);
            for (std::size_t r : im.support()) img.flip(po + r);
        }
        cols.push_back(hp_[std::size_t(p)].coordinates(q, to_sparse(img)));
    }
    return F2Matrix::from_columns(hp(p, q), cols);
}

F2Matrix TropicalHomology::co_inclusion(int p, int q) const {
    const auto& X = cx_[std::size_t(p)];
    const auto& P = cp_[std::size_t(p)];
    auto poff = block_offsets(P, q);
    std::unordered_map<int, std::size_t> xloc;
    const auto& fx = coeffs_.fx[std::size_t(p)];
    for (std::size_t i = 0; i < fx.cells.size(); ++i) xloc[fx.cells[i]] = i;
    std::vector<BitVec> cols;
    for (const auto& a : cohp_[std::size_t(p)].representatives(q)) {
        BitVec full = to_dense(a, P.complex.dims[std::size_t(q)]);
        BitVec res(X.complex.dims[std::size_t(q)]);
        const auto& cells = X.cells[std::size_t(q)];
        for (std::size_t b = 0; b < cells.size(); ++b) {
            const F2Matrix& inc = coeffs_.inclusion[std::size_t(p)][xloc.at(cells[b])];
            std::size_t po = poff.at(cells[b]);
            BitVec local = full.slice(po, po + inc.rows());
            BitVec r = inc.transpose().apply(local);
            for (std::size_t i : r.support()) res.set(X.offsets[std::size_t(q)][b] + i);
        }
        cols.push_back(cohx_[std::size_t(p)].coordinates(q, to_sparse(res)));
    }
    return F2Matrix::from_columns(hx_cohomology(p, q), cols);
}

bool TropicalHomology::adjoint(int p, int q) const {
    F2Matrix A = inclusion(p, q);     // hp x hx
    F2Matrix B = co_inclusion(p, q);  // hx* x hp*
    const auto& zx = hx_[std::size_t(p)].representatives(q);
    const auto& zp = hp_[std::size_t(p)].representatives(q);
    const auto& ax = cohx_[std::size_t(p)].representatives(q);
    const auto& ap = cohp_[std::size_t(p)].representatives(q);
    for (std::size_t a = 0; a < ap.size(); ++a)
        for (std::size_t x = 0; x < zx.size(); ++x) {
            bool lhs = false, rhs = false;
            for (std::size_t j = 0; j < ax.size(); ++j)
                if (B.get(j, a) && sparse_dot(ax[j], zx[x])) lhs = !lhs;
            for (std::size_t w = 0; w < zp.size(); ++w)
                if (A.get(w, x) && sparse_dot(ap[a], zp[w])) rhs = !rhs;
            if (lhs != rhs) return false;
        }
    return true;
}

long long TropicalHomology::cell_euler_characteristic() const {
    long long chi = 0;
    for (std::size_t p = 0; p < coeffs_.fx.size(); ++p) {
        const auto& f = coeffs_.fx[p];
        for (std::size_t i = 0; i < f.cells.size(); ++i) {
            int q = cc_->cell(f.cells[i]).dim;
            long long sign = ((int(p) + q) % 2 == 0) ? 1 : -1;
            chi += sign * static_cast<long long>(f.stalk[i]);
        }
    }
    return chi;
}

}  // namespace patchlab
