#include "patchlab/spectral.hpp"

#include <algorithm>
#include <numeric>

namespace patchlab {

const char* to_string(Side s) { return s == Side::Homology ? "homology" : "cohomology"; }

// ------------------------------------------------------------ FilteredComplexF2

Subspace FilteredComplexF2::filtration(int p, int q) const {
    std::vector<std::size_t> idx;
    const auto& w = weight[std::size_t(q)];
    for (std::size_t i = 0; i < w.size(); ++i)
        if (side == Side::Homology ? w[i] >= p : w[i] <= p) idx.push_back(i);
    return Subspace::coordinate(dim(q), idx);
}

void FilteredComplexF2::validate() const {
    require(int(weight.size()) == degrees(), ErrorKind::Input, "one weight list per degree");
    require(complex.delta == (side == Side::Homology ? -1 : 1), ErrorKind::Input, "differential direction vs side");
    for (int q = 0; q < degrees(); ++q) {
        require(weight[std::size_t(q)].size() == dim(q), ErrorKind::Input, "one weight per basis element");
        for (int w : weight[std::size_t(q)])
            require(w >= 0 && w < weight_count, ErrorKind::Input, "weight out of range");
    }
    for (int q = 0; q < degrees(); ++q) {
        int t = q + complex.delta;
        if (t < 0 || t >= degrees()) continue;
        const auto& m = complex.d[std::size_t(q)];
        for (std::size_t j = 0; j < m.cols; ++j)
            for (auto i : m.columns[j]) {
                int wr = weight[std::size_t(t)][i], wc = weight[std::size_t(q)][j];
                bool ok = side == Side::Homology ? wr >= wc : wr <= wc;
                require(ok, ErrorKind::Input, "differential does not preserve the filtration");
            }
    }
}

FilteredComplexF2 FilteredComplexF2::dualize() const {
    FilteredComplexF2 out;
    out.side = side == Side::Homology ? Side::Cohomology : Side::Homology;
    out.complex = complex.dual();
    out.weight = weight;
    out.weight_count = weight_count;
    return out;
}

FilteredComplexF2 FilteredComplexF2::from_filtration(const SparseComplex& c,
                                                     const std::vector<std::vector<Subspace>>& steps,
                                                     int weight_count) {
    require(c.delta == -1, ErrorKind::Input, "filtration input expects a chain complex");
    require(steps.size() == c.dims.size(), ErrorKind::Input, "one filtration per degree");
    const int nq = int(c.dims.size());
    // basis[q] columns: adapted basis in standard coordinates
    std::vector<F2Matrix> basis(static_cast<std::size_t>(nq)), inverse(static_cast<std::size_t>(nq));
    FilteredComplexF2 out;
    out.side = Side::Homology;
    out.weight_count = weight_count;
    out.weight.resize(std::size_t(nq));
    for (int q = 0; q < nq; ++q) {
        const std::size_t n = c.dims[std::size_t(q)];
        const auto& st = steps[std::size_t(q)];
        require(int(st.size()) == weight_count, ErrorKind::Input, "one step per weight");
        require(st.empty() || st[0].dim() == n, ErrorKind::Input, "F_0 must be everything");
        Echelon ech(n);
        std::vector<BitVec> cols;
        for (int p = weight_count - 1; p >= 0; --p) {
            require(p + 1 == weight_count || st[std::size_t(p)].contains(st[std::size_t(p + 1)]), ErrorKind::Input,
                    "filtration is not decreasing");
            for (const auto& b : st[std::size_t(p)].basis())
                if (ech.insert(b)) {
                    cols.push_back(b);
                    out.weight[std::size_t(q)].push_back(p);
                }
        }
        require(cols.size() == n, ErrorKind::Input, "filtration is not exhaustive");
        basis[std::size_t(q)] = F2Matrix::from_columns(n, cols);
        // coordinates in the adapted basis: solve through the tracked echelon of the columns
        TrackedEchelon te(n, n);
        for (std::size_t i = 0; i < n; ++i) te.insert(cols[i], BitVec::unit(n, i));
        std::vector<BitVec> inv_cols;
        for (std::size_t i = 0; i < n; ++i) {
            BitVec tag(n);
            te.reduce(BitVec::unit(n, i), tag);
            inv_cols.push_back(tag);
        }
        inverse[std::size_t(q)] = F2Matrix::from_columns(n, inv_cols);
    }
    out.complex.delta = -1;
    out.complex.dims = c.dims;
    for (int q = 0; q < nq; ++q) {
        if (q == 0) {
            out.complex.d.push_back(SparseMatrix(0, c.dims[0]));
            continue;
        }
        F2Matrix m = inverse[std::size_t(q - 1)] * c.d[std::size_t(q)].to_dense() * basis[std::size_t(q)];
        out.complex.d.push_back(SparseMatrix::from_dense(m));
    }
    out.validate();
    return out;
}

// ------------------------------------------------------------ SpectralSequence

const Page& SpectralSequence::page(int r) const {
    require(r >= 0, ErrorKind::InvalidParameter, "page index");
    return pages[std::size_t(std::min<int>(r, int(pages.size()) - 1))];
}

std::size_t SpectralSequence::dim(int r, int p, int q) const {
    if (p < 0 || p >= weights || q < 0 || q >= degrees) return 0;
    return page(r).dims[std::size_t(p)][std::size_t(q)];
}

std::size_t SpectralSequence::rank(int r, int p, int q) const {
    if (p < 0 || p >= weights || q < 0 || q >= degrees) return 0;
    return page(r).ranks[std::size_t(p)][std::size_t(q)];
}

std::vector<std::size_t> SpectralSequence::abutment() const {
    std::vector<std::size_t> b(std::size_t(degrees), 0);
    for (int p = 0; p < weights; ++p)
        for (int q = 0; q < degrees; ++q) b[std::size_t(q)] += limit().dims[std::size_t(p)][std::size_t(q)];
    return b;
}

long long SpectralSequence::euler_characteristic(int r) const {
    long long chi = 0;
    for (int p = 0; p < weights; ++p)
        for (int q = 0; q < degrees; ++q) chi += (q % 2 ? -1 : 1) * (long long)dim(r, p, q);
    return chi;
}

bool SpectralSequence::same_tables(const SpectralSequence& o) const {
    if (weights != o.weights || degrees != o.degrees || pages.size() != o.pages.size()) return false;
    for (std::size_t r = 0; r < pages.size(); ++r)
        if (pages[r].dims != o.pages[r].dims || pages[r].ranks != o.pages[r].ranks) return false;
    return degeneracy_index == o.degeneracy_index;
}

namespace {

SpectralSequence empty_sequence(const FilteredComplexF2& c) {
    SpectralSequence s;
    s.side = c.side;
    s.weights = c.weight_count;
    s.degrees = c.degrees();
    for (int r = 0; r <= c.weight_count; ++r) {
        Page pg;
        pg.r = r;
        pg.dims.assign(std::size_t(s.weights), std::vector<std::size_t>(std::size_t(s.degrees), 0));
        pg.ranks = pg.dims;
        s.pages.push_back(std::move(pg));
    }
    return s;
}

void set_degeneracy(SpectralSequence& s) {
    s.degeneracy_index = 0;
    for (const auto& pg : s.pages)
        for (const auto& row : pg.ranks)
            for (auto x : row)
                if (x) s.degeneracy_index = std::max(s.degeneracy_index, pg.r + 1);
}

}  // namespace

// ------------------------------------------------------------ dense engine

DenseSpectralEngine::DenseSpectralEngine(const FilteredComplexF2& c) : c_(c), delta_(c.complex.delta) {
    c_.validate();
    for (int q = 0; q < c_.degrees(); ++q) d_.push_back(c_.complex.d[std::size_t(q)].to_dense());
    level_.resize(std::size_t(c_.degrees()));
    for (int q = 0; q < c_.degrees(); ++q)
        for (int w : c_.weight[std::size_t(q)]) level_[std::size_t(q)].push_back(level(w));
}

int DenseSpectralEngine::level(int p) const { return c_.side == Side::Cohomology ? p : -p; }
int DenseSpectralEngine::weight_of_level(int s) const { return c_.side == Side::Cohomology ? s : -s; }

std::pair<int, int> DenseSpectralEngine::target(int r, int p, int q) const {
    return {weight_of_level(level(p) - r), q + delta_};
}

// Z_r^s in degree q: x in G_s with dx in G_{s-r}; r = -1 gives G_s.
const Subspace& DenseSpectralEngine::cycles(int r, int s, int q) {
    const int L = c_.weight_count;
    const int lo = c_.side == Side::Cohomology ? 0 : -(L - 1);
    const int hi = c_.side == Side::Cohomology ? L - 1 : 0;
    // levels below lo give 0 and levels from hi up give everything
    int t = r < 0 ? hi : std::clamp(s - r, lo - 1, hi);
    s = std::clamp(s, lo - 1, hi);
    auto key = std::make_tuple(s, t, q);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    const std::size_t n = c_.dim(q);
    const auto& lv = level_[std::size_t(q)];
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
        if (lv[i] <= s) cols.push_back(i);
    Subspace z;
    int tq = q + delta_;
    if (t >= hi || tq < 0 || tq >= c_.degrees()) {
        z = Subspace::coordinate(n, cols);
    } else {
        std::vector<std::size_t> rows;
        const auto& tl = level_[std::size_t(tq)];
        for (std::size_t i = 0; i < tl.size(); ++i)
            if (tl[i] > t) rows.push_back(i);
        F2Matrix sub = d_[std::size_t(q)].select(rows, cols);
        Subspace k = kernel(sub);
        std::vector<BitVec> gens;
        for (const auto& b : k.basis()) {
            BitVec v(n);
            for (long i = b.first_set(); i >= 0; i = b.first_set(std::size_t(i) + 1)) v.set(cols[std::size_t(i)]);
            gens.push_back(v);
        }
        z = Subspace::span(n, gens);
    }
    return z_.emplace(key, std::move(z)).first->second;
}

// E_r^s = Z_r^s / (Z_{r-1}^{s-1} + d Z_{r-1}^{s+r-1})
const Subquotient& DenseSpectralEngine::term(int r, int p, int q) {
    auto key = std::make_tuple(r, p, q);
    auto it = e_.find(key);
    if (it != e_.end()) return it->second;
    const int s = level(p);
    const Subspace& num = cycles(r, s, q);
    std::vector<BitVec> den = cycles(r - 1, s - 1, q).basis();
    int src = q - delta_;
    if (src >= 0 && src < c_.degrees()) {
        for (const auto& b : cycles(r - 1, s + r - 1, src).basis()) den.push_back(d_[std::size_t(src)].apply(b));
    }
    Subquotient sq(num, Subspace::span(c_.dim(q), den));
    return e_.emplace(key, std::move(sq)).first->second;
}

F2Matrix DenseSpectralEngine::differential(int r, int p, int q) {
    const Subquotient& src = term(r, p, q);
    auto [tp, tq] = target(r, p, q);
    if (tq < 0 || tq >= c_.degrees() || tp < 0 || tp >= c_.weight_count) return F2Matrix(0, src.dim());
    const Subquotient& dst = term(r, tp, tq);
    return induced_map_on_subquotient(d_[std::size_t(q)], src.num(), src.den(), dst.num(), dst.den());
}

SpectralSequence DenseSpectralEngine::run() {
    SpectralSequence s = empty_sequence(c_);
    for (auto& pg : s.pages)
        for (int p = 0; p < s.weights; ++p)
            for (int q = 0; q < s.degrees; ++q) {
                pg.dims[std::size_t(p)][std::size_t(q)] = term(pg.r, p, q).dim();
                pg.ranks[std::size_t(p)][std::size_t(q)] = differential(pg.r, p, q).rank();
            }
    // page r+1 is the homology of page r
    for (std::size_t r = 0; r + 1 < s.pages.size(); ++r)
        for (int p = 0; p < s.weights; ++p)
            for (int q = 0; q < s.degrees; ++q) {
                std::size_t in = 0;
                int sp = weight_of_level(level(p) + int(r)), sq = q - delta_;
                if (sp >= 0 && sp < s.weights && sq >= 0 && sq < s.degrees)
                    in = s.pages[r].ranks[std::size_t(sp)][std::size_t(sq)];
                std::size_t expect = s.pages[r].dims[std::size_t(p)][std::size_t(q)] -
                                     s.pages[r].ranks[std::size_t(p)][std::size_t(q)] - in;
                require(expect == s.pages[r + 1].dims[std::size_t(p)][std::size_t(q)], ErrorKind::Internal,
                        "page is not the homology of the previous page");
            }
    set_degeneracy(s);
    return s;
}

// ------------------------------------------------------------ reduction engine

SpectralSequence reduction_pages(const FilteredComplexF2& c) {
    c.validate();
    SpectralSequence s = empty_sequence(c);
    const int nq = c.degrees();
    const int delta = c.complex.delta;
    auto lvl = [&](int w) { return c.side == Side::Cohomology ? w : -w; };
    // per degree: basis elements in increasing level
    std::vector<std::vector<std::uint32_t>> order(static_cast<std::size_t>(nq)), pos(static_cast<std::size_t>(nq));
    for (int q = 0; q < nq; ++q) {
        auto& o = order[std::size_t(q)];
        o.resize(c.dim(q));
        std::iota(o.begin(), o.end(), 0u);
        const auto& w = c.weight[std::size_t(q)];
        std::stable_sort(o.begin(), o.end(), [&](auto a, auto b) { return lvl(w[a]) < lvl(w[b]); });
        pos[std::size_t(q)].resize(o.size());
        for (std::size_t i = 0; i < o.size(); ++i) pos[std::size_t(q)][o[i]] = std::uint32_t(i);
    }
    // gap[q][i] for element i (in sorted position) of degree q, -1 when unpaired
    std::vector<std::vector<int>> gap(static_cast<std::size_t>(nq));
    for (int q = 0; q < nq; ++q) gap[std::size_t(q)].assign(c.dim(q), -1);
    std::vector<ColumnReduction> red(static_cast<std::size_t>(nq));
    std::vector<int> seq;
    for (int q = 0; q < nq; ++q) seq.push_back(q);
    if (delta < 0) std::reverse(seq.begin(), seq.end());
    for (int q : seq) {
        int t = q + delta;
        if (t < 0 || t >= nq) continue;
        const auto& m = c.complex.d[std::size_t(q)];
        SparseMatrix pm(m.rows, m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) {
            SparseVec col;
            for (auto i : m.columns[j]) col.push_back(pos[std::size_t(t)][i]);
            std::sort(col.begin(), col.end());
            pm.columns[pos[std::size_t(q)][j]] = std::move(col);
        }
        // columns that are pivots of the map into q reduce to zero
        std::vector<char> skip(m.cols, 0);
        int src = q - delta;
        if (src >= 0 && src < nq && red[std::size_t(src)].rank() > 0) {
            const auto& rin = red[std::size_t(src)];
            for (std::size_t j = 0; j < c.dim(src); ++j)
                if (rin.low(j) >= 0) skip[std::size_t(rin.low(j))] = 1;
        }
        red[std::size_t(q)] = ColumnReduction(pm, false, &skip);
        const auto& wq = c.weight[std::size_t(q)];
        const auto& wt = c.weight[std::size_t(t)];
        for (std::size_t j = 0; j < m.cols; ++j) {
            long i = red[std::size_t(q)].low(j);
            if (i < 0) continue;
            int g = lvl(wq[order[std::size_t(q)][j]]) - lvl(wt[order[std::size_t(t)][std::size_t(i)]]);
            require(g >= 0, ErrorKind::Internal, "negative persistence gap");
            gap[std::size_t(q)][j] = g;
            gap[std::size_t(t)][std::size_t(i)] = g;
            for (auto& pg : s.pages)
                if (pg.r == g) ++pg.ranks[std::size_t(wq[order[std::size_t(q)][j]])][std::size_t(q)];
        }
    }
    for (auto& pg : s.pages)
        for (int q = 0; q < nq; ++q)
            for (std::size_t j = 0; j < c.dim(q); ++j) {
                int g = gap[std::size_t(q)][j];
                if (g < 0 || g >= pg.r)
                    ++pg.dims[std::size_t(c.weight[std::size_t(q)][order[std::size_t(q)][j]])][std::size_t(q)];
            }
    set_degeneracy(s);
    return s;
}

SpectralSequence compute_pages(const FilteredComplexF2& c, Engine engine, std::size_t dense_limit) {
    if (engine == Engine::Dense) return DenseSpectralEngine(c).run();
    SpectralSequence s = reduction_pages(c);
    if (engine == Engine::Auto) {
        std::size_t total = 0;
        for (int q = 0; q < c.degrees(); ++q) total += c.dim(q);
        if (total <= dense_limit) {
            SpectralSequence d = DenseSpectralEngine(c).run();
            require(d.same_tables(s), ErrorKind::Internal, "spectral engines disagree");
        }
    }
    return s;
}

// ------------------------------------------------------------ pairing

std::vector<PairingBlock> page_pairing(DenseSpectralEngine& e, int r, int top, const CochainProduct& product) {
    const auto& c = e.complex();
    require(c.side == Side::Cohomology, ErrorKind::InvalidParameter, "pairing needs the cohomology side");
    const Subquotient& target = e.term(r, top, top);
    require(target.dim() == 1, ErrorKind::Structure, "top term of the page is not one-dimensional");
    std::vector<PairingBlock> out;
    for (int p = 0; p <= top; ++p)
        for (int q = 0; q <= top; ++q) {
            const Subquotient& a = e.term(r, p, q);
            const Subquotient& b = e.term(r, top - p, top - q);
            F2Matrix m(a.dim(), b.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                for (std::size_t j = 0; j < b.dim(); ++j) {
                    BitVec x = product(q, a.representatives()[i], top - q, b.representatives()[j]);
                    require(target.num().contains(x), ErrorKind::Internal, "product of page cycles is not a cycle");
                    m.set(i, j, target.coords(x).get(0));
                }
            out.push_back({p, q, a.dim(), b.dim(), m.rank()});
        }
    return out;
}

}  // namespace patchlab
