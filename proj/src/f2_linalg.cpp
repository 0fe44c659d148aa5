#include "patchlab/f2_linalg.hpp"

#include <algorithm>
#include <bit>

namespace patchlab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "dimension mismatch";
        case ErrorKind::InvariantViolation: return "invariant violation";
        case ErrorKind::InvalidParameter: return "invalid parameter";
        case ErrorKind::Geometry: return "geometry error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::CoefficientConsistency: return "coefficient consistency error";
        case ErrorKind::Degree: return "degree error";
        case ErrorKind::Input: return "input error";
        case ErrorKind::Assembly: return "assembly error";
        case ErrorKind::Structure: return "structure violation";
        case ErrorKind::Internal: return "internal error";
        case ErrorKind::Io: return "i/o error";
    }
    return "error";
}

// ---------------------------------------------------------------- BitVec

BitVec BitVec::from_bits(const std::vector<int>& bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        require(bits[i] == 0 || bits[i] == 1, ErrorKind::Input, "entries must be 0 or 1");
        if (bits[i]) v.set(i);
    }
    return v;
}

BitVec BitVec::unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    require(n_ == o.n_, ErrorKind::DimensionMismatch, "bit vector lengths differ");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    require(n_ == o.n_, ErrorKind::DimensionMismatch, "bit vector lengths differ");
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
}

bool BitVec::operator<(const BitVec& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t k = 0; k < w_.size(); ++k) {
        std::uint64_t diff = w_[k] ^ o.w_[k];
        if (diff) {
            int b = std::countr_zero(diff);
            return ((o.w_[k] >> b) & 1u) != 0;
        }
    }
    return false;
}

bool BitVec::is_zero() const {
    for (auto x : w_)
        if (x) return false;
    return true;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
}

long BitVec::first_set(std::size_t from) const {
    if (from >= n_) return -1;
    std::size_t k = from >> 6;
    std::uint64_t x = w_[k] & (~std::uint64_t(0) << (from & 63));
    while (true) {
        if (x) return long(k * 64 + std::countr_zero(x));
        if (++k >= w_.size()) return -1;
        x = w_[k];
    }
}

long BitVec::last_set() const {
    for (std::size_t k = w_.size(); k-- > 0;)
        if (w_[k]) return long(k * 64 + 63 - std::countl_zero(w_[k]));
    return -1;
}

bool BitVec::dot(const BitVec& o) const {
    require(n_ == o.n_, ErrorKind::DimensionMismatch, "bit vector lengths differ");
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1;
}

BitVec BitVec::concat(const BitVec& o) const {
    BitVec r(n_ + o.n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k];
    for (long i = o.first_set(); i >= 0; i = o.first_set(std::size_t(i) + 1)) r.set(n_ + std::size_t(i));
    return r;
}

BitVec BitVec::slice(std::size_t begin, std::size_t end) const {
    BitVec r(end - begin);
    for (long i = first_set(begin); i >= 0 && std::size_t(i) < end; i = first_set(std::size_t(i) + 1))
        r.set(std::size_t(i) - begin);
    return r;
}

BitVec BitVec::gather(const std::vector<std::size_t>& idx) const {
    BitVec r(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
        if (get(idx[k])) r.set(k);
    return r;
}

std::vector<int> BitVec::to_bits() const {
    std::vector<int> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = get(i);
    return out;
}

std::vector<std::size_t> BitVec::support() const {
    std::vector<std::size_t> out;
    for (long i = first_set(); i >= 0; i = first_set(std::size_t(i) + 1)) out.push_back(std::size_t(i));
    return out;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

// -------------------------------------------------------------- F2Matrix

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    F2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == cols, ErrorKind::DimensionMismatch, "ragged matrix rows");
        m.data_[i] = BitVec::from_bits(rows[i]);
    }
    return m;
}

F2Matrix F2Matrix::from_row_vectors(std::size_t cols, std::vector<BitVec> rows) {
    F2Matrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    for (auto& r : rows) require(r.size() == cols, ErrorKind::DimensionMismatch, "row length");
    m.data_ = std::move(rows);
    return m;
}

F2Matrix F2Matrix::from_columns(std::size_t rows, const std::vector<BitVec>& cols) {
    F2Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        require(cols[j].size() == rows, ErrorKind::DimensionMismatch, "column length");
        for (long i = cols[j].first_set(); i >= 0; i = cols[j].first_set(std::size_t(i) + 1))
            m.set(std::size_t(i), j);
    }
    return m;
}

BitVec F2Matrix::column(std::size_t j) const {
    BitVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (data_[i].get(j)) c.set(i);
    return c;
}

std::vector<BitVec> F2Matrix::columns() const {
    F2Matrix t = transpose();
    std::vector<BitVec> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(t.data_[j]);
    return out;
}

BitVec F2Matrix::apply(const BitVec& x) const {
    require(x.size() == cols_, ErrorKind::DimensionMismatch, "matrix-vector size");
    BitVec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        if (data_[i].dot(x)) y.set(i);
    return y;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
    require(cols_ == o.rows_, ErrorKind::DimensionMismatch, "matrix product sizes");
    F2Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const BitVec& a = data_[i];
        for (long k = a.first_set(); k >= 0; k = a.first_set(std::size_t(k) + 1)) r.data_[i] ^= o.data_[std::size_t(k)];
    }
    return r;
}

F2Matrix F2Matrix::operator+(const F2Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::DimensionMismatch, "matrix sum sizes");
    F2Matrix r = *this;
    for (std::size_t i = 0; i < rows_; ++i) r.data_[i] ^= o.data_[i];
    return r;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const BitVec& a = data_[i];
        for (long j = a.first_set(); j >= 0; j = a.first_set(std::size_t(j) + 1)) t.set(std::size_t(j), i);
    }
    return t;
}

F2Matrix F2Matrix::select(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
    F2Matrix r(row_idx.size(), col_idx.size());
    for (std::size_t a = 0; a < row_idx.size(); ++a) r.data_[a] = data_[row_idx[a]].gather(col_idx);
    return r;
}

bool F2Matrix::is_zero() const {
    for (const auto& r : data_)
        if (!r.is_zero()) return false;
    return true;
}

std::size_t F2Matrix::rank() const {
    Echelon e(cols_);
    for (const auto& r : data_) e.insert(r);
    return e.rank();
}

F2Matrix F2Matrix::kernel() const {
    // Reduced row echelon form, then one kernel vector per free column.
    Subspace rowspace = Subspace::span(cols_, data_);
    std::vector<std::size_t> piv = rowspace.pivots();
    std::vector<char> is_pivot(cols_, 0);
    for (auto p : piv) is_pivot[p] = 1;
    std::vector<BitVec> kers;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        BitVec x(cols_);
        x.set(f);
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (rowspace.basis()[i].get(f)) x.set(piv[i]);
        kers.push_back(std::move(x));
    }
    return from_columns(cols_, kers);
}

std::vector<std::vector<int>> F2Matrix::to_rows() const {
    std::vector<std::vector<int>> out;
    out.reserve(rows_);
    for (const auto& r : data_) out.push_back(r.to_bits());
    return out;
}

// --------------------------------------------------------------- Echelon

BitVec Echelon::reduce(BitVec v) const {
    require(v.size() == n_, ErrorKind::DimensionMismatch, "echelon vector length");
    for (long p = v.first_set(); p >= 0; p = v.first_set(std::size_t(p) + 1)) {
        int r = pivot_row_[std::size_t(p)];
        if (r >= 0) v ^= rows_[std::size_t(r)];
    }
    return v;
}

bool Echelon::insert(BitVec v) {
    v = reduce(std::move(v));
    long p = v.first_set();
    if (p < 0) return false;
    pivot_row_[std::size_t(p)] = int(rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

bool TrackedEchelon::insert(BitVec v, BitVec t) {
    v = reduce(std::move(v), t);
    long p = v.first_set();
    if (p < 0) return false;
    pivot_row_[std::size_t(p)] = int(rows_.size());
    rows_.push_back(std::move(v));
    row_tags_.push_back(std::move(t));
    return true;
}

BitVec TrackedEchelon::reduce(BitVec v, BitVec& tag) const {
    require(v.size() == n_ && tag.size() == tags_, ErrorKind::DimensionMismatch, "tracked echelon sizes");
    for (long p = v.first_set(); p >= 0; p = v.first_set(std::size_t(p) + 1)) {
        int r = pivot_row_[std::size_t(p)];
        if (r >= 0) {
            v ^= rows_[std::size_t(r)];
            tag ^= row_tags_[std::size_t(r)];
        }
    }
    return v;
}

// -------------------------------------------------------------- Subspace

Subspace Subspace::full(std::size_t n) {
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(BitVec::unit(n, i));
    Subspace s(n);
    s.build(std::move(rows));
    return s;
}

Subspace Subspace::coordinate(std::size_t n, const std::vector<std::size_t>& idx) {
    std::vector<BitVec> rows;
    for (auto i : idx) rows.push_back(BitVec::unit(n, i));
    return span(n, rows);
}

Subspace Subspace::span(std::size_t n, const std::vector<BitVec>& gens) {
    Subspace s(n);
    Echelon e(n);
    for (const auto& g : gens) e.insert(g);
    s.build(e.rows());
    return s;
}

void Subspace::build(std::vector<BitVec> rows) {
    std::sort(rows.begin(), rows.end(), [](const BitVec& a, const BitVec& b) { return a.first_set() < b.first_set(); });
    std::vector<long> piv(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) piv[i] = rows[i].first_set();
    for (std::size_t i = rows.size(); i-- > 0;)
        for (std::size_t k = i + 1; k < rows.size(); ++k)
            if (rows[i].get(std::size_t(piv[k]))) rows[i] ^= rows[k];
    basis_ = std::move(rows);
    pivot_row_.assign(n_, -1);
    for (std::size_t i = 0; i < basis_.size(); ++i) pivot_row_[std::size_t(piv[i])] = int(i);
}

F2Matrix Subspace::basis_matrix() const { return F2Matrix::from_columns(n_, basis_); }

std::vector<std::size_t> Subspace::pivots() const {
    std::vector<std::size_t> p;
    for (const auto& b : basis_) p.push_back(std::size_t(b.first_set()));
    return p;
}

bool Subspace::contains(const Subspace& o) const {
    require(o.n_ == n_, ErrorKind::DimensionMismatch, "subspace ambient dimensions differ");
    for (const auto& b : o.basis_)
        if (!contains(b)) return false;
    return true;
}

BitVec Subspace::reduce(BitVec v) const {
    require(v.size() == n_, ErrorKind::DimensionMismatch, "vector does not match ambient dimension");
    for (long p = v.first_set(); p >= 0; p = v.first_set(std::size_t(p) + 1)) {
        int r = pivot_row_[std::size_t(p)];
        if (r >= 0) v ^= basis_[std::size_t(r)];
    }
    return v;
}

BitVec Subspace::coords(const BitVec& v) const {
    require(contains(v), ErrorKind::InvariantViolation, "vector is not in the subspace");
    BitVec c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (v.get(std::size_t(basis_[i].first_set()))) c.set(i);
    return c;
}

Subspace canonicalize(const F2Matrix& generators) {
    return Subspace::span(generators.rows(), generators.columns());
}

std::pair<Subspace, Subspace> sum_and_intersection(const Subspace& u, const Subspace& w) {
    require(u.ambient_dim() == w.ambient_dim(), ErrorKind::DimensionMismatch,
            "sum_and_intersection: ambient dimensions differ");
    const std::size_t n = u.ambient_dim();
    // Zassenhaus: rows [u|u] and [w|0]; echelon rows with zero left half span the intersection.
    Echelon e(2 * n);
    for (const auto& b : u.basis()) e.insert(b.concat(b));
    for (const auto& b : w.basis()) e.insert(b.concat(BitVec(n)));
    std::vector<BitVec> sum_gens, int_gens;
    for (const auto& r : e.rows()) {
        if (std::size_t(r.first_set()) < n) sum_gens.push_back(r.slice(0, n));
        else int_gens.push_back(r.slice(n, 2 * n));
    }
    return {Subspace::span(n, sum_gens), Subspace::span(n, int_gens)};
}

Subspace image(const F2Matrix& f, const Subspace& u) {
    require(f.cols() == u.ambient_dim(), ErrorKind::DimensionMismatch, "image: sizes");
    std::vector<BitVec> g;
    for (const auto& b : u.basis()) g.push_back(f.apply(b));
    return Subspace::span(f.rows(), g);
}

Subspace preimage(const F2Matrix& f, const Subspace& w) {
    require(f.rows() == w.ambient_dim(), ErrorKind::DimensionMismatch, "preimage: sizes");
    std::vector<BitVec> cols;
    for (const auto& c : f.columns()) cols.push_back(w.reduce(c));
    return kernel(F2Matrix::from_columns(f.rows(), cols));
}

Subspace kernel(const F2Matrix& f) { return canonicalize(f.kernel()); }

// ----------------------------------------------------------- Subquotient

Subquotient::Subquotient(Subspace num, Subspace den) : num_(std::move(num)), den_(std::move(den)) {
    require(num_.ambient_dim() == den_.ambient_dim(), ErrorKind::DimensionMismatch, "subquotient ambient");
    require(num_.contains(den_), ErrorKind::InvariantViolation, "subquotient denominator not contained in numerator");
    const std::size_t n = num_.ambient_dim();
    const std::size_t k = num_.dim() - den_.dim();
    ech_ = TrackedEchelon(n, k);
    for (const auto& b : den_.basis()) ech_.insert(b, BitVec(k));
    for (const auto& b : num_.basis()) {
        if (reps_.size() == k) break;
        if (ech_.insert(b, BitVec::unit(k, reps_.size()))) reps_.push_back(b);
    }
}

BitVec Subquotient::coords(const BitVec& v) const {
    BitVec tag(reps_.size());
    BitVec rest = ech_.reduce(v, tag);
    require(rest.is_zero(), ErrorKind::InvariantViolation, "vector is not in the subquotient numerator");
    return tag;
}

F2Matrix induced_map_on_subquotient(const F2Matrix& f, const Subspace& src_num, const Subspace& src_den,
                                    const Subspace& dst_num, const Subspace& dst_den) {
    require(f.cols() == src_num.ambient_dim() && f.rows() == dst_num.ambient_dim(), ErrorKind::DimensionMismatch,
            "induced map sizes");
    require(src_num.contains(src_den), ErrorKind::InvariantViolation, "source denominator not in numerator");
    require(dst_num.contains(dst_den), ErrorKind::InvariantViolation, "target denominator not in numerator");
    for (const auto& b : src_den.basis())
        require(dst_den.contains(f.apply(b)), ErrorKind::InvariantViolation, "f(src_den) not contained in dst_den");
    for (const auto& b : src_num.basis())
        require(dst_num.contains(f.apply(b)), ErrorKind::InvariantViolation, "f(src_num) not contained in dst_num");
    Subquotient src(src_num, src_den), dst(dst_num, dst_den);
    std::vector<BitVec> cols;
    for (const auto& r : src.representatives()) cols.push_back(dst.coords(f.apply(r)));
    return F2Matrix::from_columns(dst.dim(), cols);
}

}  // namespace patchlab
