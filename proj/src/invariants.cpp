#include "patchlab/invariants.hpp"

#include <algorithm>
#include <cstdio>

#include "patchlab/error.hpp"

namespace patchlab {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// Matrix of alpha cup - : H^k -> H^{k+1}.
F2Matrix cup_matrix(const CupTables& ring, const BitVec& alpha, int k) {
    const int top = int(ring.betti.size()) - 1;
    const std::size_t src = ring.betti[std::size_t(k)];
    const std::size_t dst = k + 1 <= top ? ring.betti[std::size_t(k + 1)] : 0;
    std::vector<BitVec> cols;
    for (std::size_t j = 0; j < src; ++j)
        cols.push_back(dst ? ring.multiply(1, alpha, k, BitVec::unit(src, j)) : BitVec(0));
    return F2Matrix::from_columns(dst, cols);
}

Verdict pass(std::string name, nlohmann::json w = nlohmann::json::object()) {
    return {std::move(name), Status::Pass, std::move(w)};
}
Verdict fail(std::string name, nlohmann::json w) { return {std::move(name), Status::Fail, std::move(w)}; }
Verdict skip(std::string name, const std::string& reason) {
    return {std::move(name), Status::Skipped, nlohmann::json{{"reason", reason}}};
}

bool page_vanishes(const SpectralSequence& s, int r) {
    for (int p = 0; p < s.weights; ++p)
        for (int q = 0; q < s.degrees; ++q)
            if (s.rank(r, p, q)) return false;
    return true;
}

nlohmann::json page_json(const Page& pg) { return {{"r", pg.r}, {"dims", pg.dims}, {"ranks", pg.ranks}}; }

}  // namespace

// ------------------------------------------------------------ iota and rank

int iota(const CupTables& ring, const BitVec& alpha) {
    const int top = int(ring.betti.size()) - 1;
    for (int k = 0; k <= top; ++k) {
        const std::size_t b = ring.betti[std::size_t(k)];
        if (b && cup_matrix(ring, alpha, k).rank() < b) return k - 1;
    }
    throw Error(ErrorKind::Internal, "cup product by a degree-one class is injective in every degree");
}

int iota_space(const CupTables& ring) {
    require(ring.betti.size() > 1, ErrorKind::InvalidParameter, "iota needs H^1");
    const std::size_t b1 = ring.betti[1];
    require(b1 <= 20, ErrorKind::InvalidParameter, "H^1 too large to enumerate");
    int best = -1;
    for (std::uint64_t code = 0; code < (std::uint64_t(1) << b1); ++code) {
        BitVec a(b1);
        for (std::size_t i = 0; i < b1; ++i) a.set(i, code >> i & 1);
        best = std::max(best, iota(ring, a));
    }
    return best;
}

std::vector<bool> restriction_injective(const THypersurface& x) {
    std::vector<bool> out;
    for (int q = 0; q < x.n(); ++q) {
        const std::size_t bp = x.lift().betti()[std::size_t(q)];
        const std::size_t up = x.restriction_map(q).rank();
        const std::size_t down = x.push_forward_map(q).rank();
        require(up == down, ErrorKind::Internal,
                "rank of i^" + std::to_string(q) + " differs from rank of i_" + std::to_string(q));
        out.push_back(up == bp);
    }
    return out;
}

int rank_ell(const THypersurface& x) {
    if (x.complex().dim(0) == 0) {
        std::fprintf(stderr, "warning: empty T-hypersurface, rank set to -1\n");
        return -1;
    }
    auto inj = restriction_injective(x);
    int ell = -1;
    while (ell + 1 < int(inj.size()) && inj[std::size_t(ell + 1)]) ++ell;
    return ell;
}

std::optional<int> simplex_degree(const LatticePolytope& p) {
    int n = 0, d = 0;
    char tail = 0;
    if (std::sscanf(p.family().c_str(), "simplex(%d,%d)%c", &n, &d, &tail) == 2) return d;
    return std::nullopt;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Skipped: return "SKIPPED";
    }
    return "?";
}

// ------------------------------------------------------------ record

bool InvariantRecord::counterexample() const {
    for (const auto& v : verdicts)
        if (v.status == Status::Fail) return true;
    return false;
}

const Verdict* InvariantRecord::verdict(const std::string& name) const {
    for (const auto& v : verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

nlohmann::json InvariantRecord::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["betti"] = {{"RX", betti_rx}, {"RP", betti_rp}, {"direct", betti_direct}};
    j["tropical_table"] = tropical_table;
    nlohmann::json inj = nlohmann::json::array();
    for (bool b : injective) inj.push_back(int(b));
    j["invariants"] = {{"ell", ell},
                       {"r_index", r_index},
                       {"iota_degree", iota_degree},
                       {"iota_P", iota_p},
                       {"euler", euler},
                       {"restriction_injective", inj},
                       {"conjecture_bound", int(conjecture_bound)}};
    j["components"] = component_classes;
    nlohmann::json pages = nlohmann::json::object();
    for (const auto* s : {&homology, &cohomology}) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& pg : s->pages) list.push_back(page_json(pg));
        pages[to_string(s->side)] = {{"degeneracy_index", s->degeneracy_index}, {"pages", list}};
    }
    j["pages"] = pages;
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : verdicts) vs.push_back({{"name", v.name}, {"status", to_string(v.status)}, {"witness", v.witness}});
    j["verdicts"] = vs;
    j["counterexample"] = int(counterexample());
    return j;
}

// ------------------------------------------------------------ analyzer

Analyzer::Analyzer(const RealLift& lift, AnalysisOptions options)
    : lift_(&lift),
      options_(options),
      tropical_(lift.cubical(), lift.quotients()),
      iota_p_(iota_space(lift.cup_tables())),
      iota_degree_(iota(lift.cup_tables(), lift.omega_class())),
      simplex_degree_(simplex_degree(lift.triangulation().polytope())) {}

InvariantRecord Analyzer::analyze(const SignDistribution& eps) const {
    const RealLift& lift = *lift_;
    const int n = lift.n();
    THypersurface x(lift, eps);
    InvariantRecord rec;
    rec.n = n;
    rec.betti_rx = x.betti();
    rec.betti_rp = lift.betti();
    rec.betti_direct = direct_betti(lift, eps);
    rec.tropical_table = tropical_.table_x();
    rec.euler = x.euler_characteristic();
    rec.injective = restriction_injective(x);
    rec.ell = rank_ell(x);
    rec.iota_degree = iota_degree_;
    rec.iota_p = iota_p_;
    for (const auto& c : x.components()) {
        std::vector<int> cls;
        if (c.divisor_class)
            for (std::size_t i = 0; i < c.divisor_class->size(); ++i) cls.push_back(c.divisor_class->get(i));
        rec.component_classes.push_back(cls);
    }
    std::sort(rec.component_classes.begin(), rec.component_classes.end());

    FilteredTComplex f(x, options_.method);
    rec.homology = compute_pages(f.chains(), options_.engine, options_.dense_limit);
    rec.cohomology = compute_pages(f.cochains(), options_.engine, options_.dense_limit);
    rec.r_index = rec.cohomology.degeneracy_index;
    rec.conjecture_bound = rec.ell >= floor_div(n - 1, 2);
    const auto& H = rec.homology;
    const auto& C = rec.cohomology;
    const int r = rec.r_index;
    const int ell = rec.ell;
    auto& out = rec.verdicts;

    // first page against tropical homology
    {
        nlohmann::json bad = nlohmann::json::array();
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (H.dim(1, p, q) != tropical_.hx(p, q)) bad.push_back({p, q, H.dim(1, p, q), tropical_.hx(p, q)});
        out.push_back(bad.empty() ? pass("e1_tropical") : fail("e1_tropical", {{"cells", bad}}));
    }
    // limit against the independent cubical model
    if (H.abutment() == rec.betti_direct && rec.betti_direct == rec.betti_rx)
        out.push_back(pass("convergence", {{"betti", rec.betti_rx}}));
    else
        out.push_back(fail("convergence", {{"abutment", H.abutment()}, {"direct", rec.betti_direct}, {"sparse", rec.betti_rx}}));
    // both sides give the same pages
    {
        nlohmann::json bad;
        for (int s = 0; s < int(H.pages.size()) && bad.is_null(); ++s)
            for (int p = 0; p < n && bad.is_null(); ++p)
                for (int q = 0; q < n && bad.is_null(); ++q)
                    if (H.dim(s, p, q) != C.dim(s, p, q) || H.rank(s, p, q) != C.rank(s, p + s, q - 1))
                        bad = {{"r", s}, {"p", p}, {"q", q}};
        out.push_back(bad.is_null() ? pass("side_duality") : fail("side_duality", bad));
    }
    // support on the diagonal and the antidiagonal from page 2 on
    {
        nlohmann::json bad;
        for (const auto* s : {&H, &C})
            for (int pg = 2; pg < int(s->pages.size()) && bad.is_null(); ++pg)
                for (int p = 0; p < n && bad.is_null(); ++p)
                    for (int q = 0; q < n && bad.is_null(); ++q)
                        if (s->dim(pg, p, q) && p != q && p + q != n - 1)
                            bad = {{"side", to_string(s->side)}, {"r", pg}, {"p", p}, {"q", q}};
        out.push_back(bad.is_null() ? pass("structure") : fail("structure", bad));
    }
    // Poincare symmetry of the cohomology pages
    {
        nlohmann::json bad;
        for (int pg = 1; pg < int(C.pages.size()) && bad.is_null(); ++pg)
            for (int p = 0; p < n && bad.is_null(); ++p)
                for (int q = 0; q < n && bad.is_null(); ++q) {
                    if (C.dim(pg, p, q) != C.dim(pg, n - 1 - p, n - 1 - q))
                        bad = {{"kind", "dim"}, {"r", pg}, {"p", p}, {"q", q}};
                    else if (C.rank(pg, p, q) != C.rank(pg, n - 1 - p + pg, n - 2 - q))
                        bad = {{"kind", "rank"}, {"r", pg}, {"p", p}, {"q", q}};
                }
        out.push_back(bad.is_null() ? pass("symmetry") : fail("symmetry", bad));
    }
    // Euler characteristic along the pages
    {
        nlohmann::json bad;
        for (int pg = 0; pg < int(H.pages.size()) && bad.is_null(); ++pg)
            if (H.euler_characteristic(pg) != rec.euler) bad = {{"r", pg}, {"chi", H.euler_characteristic(pg)}};
        out.push_back(bad.is_null() ? pass("euler", {{"chi", rec.euler}}) : fail("euler", bad));
    }
    // pairing into the top term on pages 1 and 2
    {
        std::size_t cells = 0;
        for (int q = 0; q < n; ++q) cells += x.complex().dim(q);
        if (cells > options_.pairing_limit) {
            out.push_back(skip("pairing", "complex has " + std::to_string(cells) + " cells"));
        } else if (C.dim(1, n - 1, n - 1) != 1 || C.dim(2, n - 1, n - 1) != 1) {
            out.push_back(skip("pairing", "top term is not one-dimensional"));
        } else {
            DenseSpectralEngine e(f.cochains());
            nlohmann::json bad;
            for (int pg = 1; pg <= 2 && bad.is_null(); ++pg)
                for (const auto& b : page_pairing(e, pg, n - 1, f.cochain_product()))
                    if (!b.nondegenerate() && bad.is_null())
                        bad = {{"r", pg}, {"p", b.p}, {"q", b.q}, {"rows", b.rows}, {"cols", b.cols}, {"rank", b.rank}};
            out.push_back(bad.is_null() ? pass("pairing") : fail("pairing", bad));
        }
    }
    // internal consistency: raised, not reported
    if (options_.filtration_checks) {
        auto cmp = compare_filtrations(x);
        require(cmp.mismatches == 0, ErrorKind::Internal,
                "the two filtrations differ on " + std::to_string(cmp.mismatches) + " cubes");
        out.push_back(pass("filtration_equality", {{"cubes", cmp.cubes}, {"types", cmp.types}}));
        for (auto method : {FiltrationMethod::Intersection, FiltrationMethod::RenaudineauShaw}) {
            const std::size_t bad = method == options_.method
                                        ? f.graded_mismatches(tropical_.coefficients())
                                        : FilteredTComplex(x, method).graded_mismatches(tropical_.coefficients());
            require(bad == 0, ErrorKind::Internal,
                    std::string("graded pieces differ from F_k^X on ") + std::to_string(bad) + " cells (" +
                        to_string(method) + ")");
        }
        out.push_back(pass("graded_pieces"));
    } else {
        out.push_back(skip("filtration_equality", "disabled"));
        out.push_back(skip("graded_pieces", "disabled"));
    }
    out.push_back(x.poincare_dual_to_omega() ? pass("poincare_dual") : fail("poincare_dual", nlohmann::json::object()));

    // vanishing criterion, one instance per admissible page
    {
        nlohmann::json checked = nlohmann::json::array(), bad;
        for (int pg = 2; pg <= n; ++pg) {
            if ((pg - n) % 2) continue;
            const int q = (n - pg) / 2;
            const bool lhs = page_vanishes(C, pg);
            const bool rhs = rec.injective[std::size_t(q)];
            checked.push_back({pg, q, int(lhs)});
            if (lhs != rhs && bad.is_null()) bad = {{"r", pg}, {"q", q}, {"differentials_zero", int(lhs)}, {"injective", int(rhs)}};
        }
        if (checked.empty()) out.push_back(skip("vanishing_criterion", "no admissible page"));
        else out.push_back(bad.is_null() ? pass("vanishing_criterion", {{"checked", checked}}) : fail("vanishing_criterion", bad));
    }
    // degeneracy from a page on
    {
        nlohmann::json bad;
        bool any = false;
        for (int r0 = 2; r0 <= n; ++r0) {
            if ((r0 - n) % 2) continue;
            any = true;
            bool lhs = true;
            for (int pg = r0; pg < int(C.pages.size()); ++pg) lhs = lhs && page_vanishes(C, pg);
            bool rhs = true;
            for (int q = 0; q <= (n - r0) / 2; ++q) rhs = rhs && rec.injective[std::size_t(q)];
            if (lhs != rhs && bad.is_null()) bad = {{"r0", r0}, {"differentials_zero", int(lhs)}, {"injective", int(rhs)}};
        }
        if (!any) out.push_back(skip("degeneracy_criterion", "no admissible page"));
        else out.push_back(bad.is_null() ? pass("degeneracy_criterion") : fail("degeneracy_criterion", bad));
    }
    // ell >= floor((n-r)/2), equality once r >= 3 (n even) or r >= 4 (n odd)
    {
        const int bound = floor_div(n - r, 2);
        const bool eq_case = r >= 3 + (n % 2 ? 1 : 0);
        const bool ok = ell >= bound && (!eq_case || ell == bound);
        nlohmann::json w = {{"ell", ell}, {"r", r}, {"bound", bound}, {"equality_case", int(eq_case)}};
        out.push_back(ok ? pass("rank_lower_bound", w) : fail("rank_lower_bound", w));
    }
    // r <= max(2, n-2ell-1), equality once 2 ell <= n-5
    {
        const int bound = std::max(2, n - 2 * ell - 1);
        const bool eq_case = 2 * ell <= n - 5;
        const bool ok = r <= bound && (!eq_case || r == bound);
        nlohmann::json w = {{"ell", ell}, {"r", r}, {"bound", bound}, {"equality_case", int(eq_case)}};
        out.push_back(ok ? pass("index_upper_bound", w) : fail("index_upper_bound", w));
    }
    {
        nlohmann::json w = {{"ell", ell}, {"iota_degree", iota_degree_}};
        out.push_back(ell >= iota_degree_ ? pass("iota_bound", w) : fail("iota_bound", w));
    }
    // individual and total bounds from the first page
    {
        std::size_t total_b = 0, total_h = 0;
        nlohmann::json bad;
        for (int q = 0; q < n; ++q) {
            std::size_t h = 0;
            for (int p = 0; p < n; ++p) h += tropical_.hx(p, q);
            total_h += h;
            total_b += rec.betti_rx[std::size_t(q)];
            if (rec.betti_rx[std::size_t(q)] > h && bad.is_null()) bad = {{"q", q}, {"b", rec.betti_rx[std::size_t(q)]}, {"bound", h}};
        }
        out.push_back(bad.is_null() ? pass("betti_upper_bound") : fail("betti_upper_bound", bad));
        if (n % 2 == 0) {
            out.push_back(skip("mod4", "hypersurface has odd dimension"));
        } else {
            nlohmann::json w = {{"total_betti", total_b}, {"total_tropical", total_h}};
            out.push_back((total_h - total_b) % 4 == 0 ? pass("mod4", w) : fail("mod4", w));
        }
    }
    if (simplex_degree_ && *simplex_degree_ % 2) {
        nlohmann::json w = {{"degree", *simplex_degree_}, {"r", r}, {"ell", ell}};
        out.push_back(r <= 2 && ell == n - 1 ? pass("odd_degree", w) : fail("odd_degree", w));
    } else {
        out.push_back(skip("odd_degree", "not a projective space of odd degree"));
    }
    if (options_.viro) {
        nlohmann::json w = {{"ell", ell}, {"r", r}, {"bound", floor_div(n - 1, 2)}};
        out.push_back(ell >= floor_div(n - 1, 2) && r <= 2 ? pass("viro_rank", w) : fail("viro_rank", w));
    } else {
        out.push_back(skip("viro_rank", "not a Viro triangulation"));
    }
    return rec;
}

}  // namespace patchlab
