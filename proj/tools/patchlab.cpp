// patchlab: build polytopes and triangulations, patchwork T-hypersurfaces and check their invariants.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "patchlab/invariants.hpp"

using namespace patchlab;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    std::string polytope;               // family tag
    std::vector<int> viro;              // n d
    std::string triangulation;          // path
    std::string signs = "harnack";      // PATH | harnack | zero | seed:N
    std::size_t random = 0;             // sweep size
    std::uint64_t seed = 0;
    std::string report;                 // output path, stdout when empty
    int jobs = 1;
    std::string side = "both";
    std::string method = "intersection";
    bool quiet = false;

    json to_json() const {
        json j = {{"command", command}, {"signs", signs}, {"random", random}, {"seed", seed},
                  {"jobs", jobs}, {"side", side}, {"method", method}};
        if (!polytope.empty()) j["polytope"] = polytope;
        if (!viro.empty()) j["viro"] = viro;
        if (!triangulation.empty()) j["triangulation"] = triangulation;
        return j;
    }
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Input, path + ": " + e.what());
    }
}

void write_report(const RunConfig& cfg, const json& doc) {
    const std::string text = doc.dump(1) + "\n";
    if (cfg.report.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.report);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + cfg.report);
    out << text;
}

LatticePolytope make_polytope(const RunConfig& cfg) {
    if (!cfg.viro.empty()) return LatticePolytope::simplex(cfg.viro[0], cfg.viro[1]);
    if (!cfg.polytope.empty()) return LatticePolytope::from_family(cfg.polytope);
    throw Error(ErrorKind::InvalidParameter, "give --polytope or --viro");
}

// Builtin triangulations: Viro on simplices, products of Viro subdivisions on cubes, staircase on products.
Triangulation make_triangulation(const RunConfig& cfg, bool& is_viro) {
    is_viro = false;
    if (!cfg.triangulation.empty()) return Triangulation::from_json(read_json(cfg.triangulation));
    if (!cfg.viro.empty()) {
        is_viro = true;
        return viro(cfg.viro[0], cfg.viro[1]);
    }
    if (cfg.polytope.empty()) throw Error(ErrorKind::InvalidParameter, "give --viro, --polytope or --triangulation");
    int a = 0, b = 0, c = 0, e = 0;
    char tail = 0;
    const char* tag = cfg.polytope.c_str();
    if (std::sscanf(tag, "simplex(%d,%d)%c", &a, &b, &tail) == 2) {
        is_viro = true;
        return viro(a, b);
    }
    if (std::sscanf(tag, "cube(%d,%d)%c", &a, &b, &tail) == 2) return cube_triangulation(a, b);
    if (std::sscanf(tag, "product(simplex(%d,%d),simplex(%d,%d))%c", &a, &b, &c, &e, &tail) == 4)
        return product_of_simplices(a, b, c, e);
    throw Error(ErrorKind::InvalidParameter, "unknown polytope family: " + cfg.polytope);
}

SignDistribution make_signs(const std::string& spec, const Triangulation& k) {
    const std::size_t nv = k.vertices().size();
    if (spec == "harnack") return SignDistribution::harnack(k);
    if (spec == "zero") return SignDistribution::zero(nv);
    if (spec.rfind("seed:", 0) == 0) {
        try {
            return SignDistribution::from_seed(nv, std::stoull(spec.substr(5)));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidParameter, "bad seed in " + spec);
        }
    }
    return SignDistribution::from_json(read_json(spec), nv);
}

// Seed of the i-th sweep item.
std::uint64_t item_seed(std::uint64_t seed, std::size_t i) {
    return splitmix64_mix(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
}

FiltrationMethod parse_method(const std::string& m) {
    if (m == "intersection") return FiltrationMethod::Intersection;
    if (m == "rs" || m == "renaudineau-shaw") return FiltrationMethod::RenaudineauShaw;
    throw Error(ErrorKind::InvalidParameter, "unknown filtration method " + m);
}

json polytope_json(const LatticePolytope& p) {
    json facets = json::array();
    for (const auto& f : p.facets()) facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
    auto sm = p.smoothness_check();
    return {{"dim", p.dim()},
            {"family", p.family()},
            {"vertices", p.vertices()},
            {"facets", facets},
            {"smooth", int(sm.smooth)},
            {"normalized_volume", p.normalized_volume()}};
}

json triangulation_stats(const Triangulation& k, const RealLift* lift) {
    std::vector<std::size_t> by_dim(std::size_t(k.dim() + 1), 0);
    for (const auto& s : k.simplices()) ++by_dim[std::size_t(s.dim)];
    json j = {{"vertices", k.vertices().size()},
              {"maximal_simplices", k.maximal_simplices().size()},
              {"simplices_by_dim", by_dim},
              {"valid", int(k.validate().ok)}};
    if (lift) {
        std::vector<std::size_t> cells;
        for (int q = 0; q <= lift->n(); ++q) cells.push_back(lift->complex().dim(q));
        j["cubical_cells"] = lift->cubical().size();
        j["real_cells_by_dim"] = cells;
    }
    return j;
}

json filter_pages(const json& pages, const std::string& side) {
    if (side == "both") return pages;
    json out = json::object();
    const std::string key = side == "homology" ? to_string(Side::Homology) : to_string(Side::Cohomology);
    out[key] = pages.at(key);
    return out;
}

// Shared front matter of analysis reports.
struct Context {
    Triangulation k;
    bool is_viro = false;
    std::unique_ptr<RealLift> lift;
    std::unique_ptr<Analyzer> analyzer;

    explicit Context(const RunConfig& cfg) {
        k = make_triangulation(cfg, is_viro);
        auto v = k.validate();
        if (!v.ok) throw Error(ErrorKind::Validation, "invalid triangulation: " + v.reason);
        lift = std::make_unique<RealLift>(k);
        AnalysisOptions opt;
        opt.viro = is_viro;
        opt.method = parse_method(cfg.method);
        analyzer = std::make_unique<Analyzer>(*lift, opt);
    }

    json header(const RunConfig& cfg) const {
        return {{"config", cfg.to_json()},
                {"polytope", polytope_json(k.polytope())},
                {"triangulation_stats", triangulation_stats(k, lift.get())},
                {"tropical_table", analyzer->tropical().table_x()}};
    }
};

json single_report(const RunConfig& cfg, const Context& ctx, const InvariantRecord& rec, const SignDistribution& eps) {
    json r = rec.to_json();
    json doc = ctx.header(cfg);
    doc["signs"] = eps.to_json();
    doc["betti"] = r["betti"];
    doc["pages"] = filter_pages(r["pages"], cfg.side);
    doc["invariants"] = r["invariants"];
    doc["invariants"]["components"] = r["components"];
    doc["verdicts"] = r["verdicts"];
    doc["counterexample"] = r["counterexample"];
    return doc;
}

void print_summary(const InvariantRecord& rec) {
    std::cerr << "betti RX:";
    for (auto b : rec.betti_rx) std::cerr << ' ' << b;
    std::cerr << "  ell " << rec.ell << "  r " << rec.r_index << "  iota[omega] " << rec.iota_degree << '\n';
    std::cerr << "components:";
    for (const auto& c : rec.component_classes) {
        std::cerr << " (";
        for (std::size_t i = 0; i < c.size(); ++i) std::cerr << (i ? "," : "") << c[i];
        std::cerr << ')';
    }
    std::cerr << '\n';
    for (const auto& v : rec.verdicts) std::cerr << "  " << to_string(v.status) << "  " << v.name << '\n';
}

int cmd_build_polytope(const RunConfig& cfg) {
    json doc = {{"config", cfg.to_json()}, {"polytope", polytope_json(make_polytope(cfg))}};
    write_report(cfg, doc);
    return 0;
}

int cmd_triangulate(const RunConfig& cfg) {
    bool is_viro = false;
    Triangulation k = make_triangulation(cfg, is_viro);
    json doc = k.to_json();
    auto v = k.validate();
    if (!v.ok) throw Error(ErrorKind::Validation, "invalid triangulation: " + v.reason);
    write_report(cfg, doc);
    if (!cfg.quiet) std::cerr << json{{"triangulation_stats", triangulation_stats(k, nullptr)}}.dump() << '\n';
    return 0;
}

int cmd_analyze(const RunConfig& cfg, bool pages_only) {
    Context ctx(cfg);
    SignDistribution eps = make_signs(cfg.signs, ctx.k);
    InvariantRecord rec = ctx.analyzer->analyze(eps);
    json doc = single_report(cfg, ctx, rec, eps);
    if (pages_only) {
        doc = {{"config", doc["config"]}, {"betti", doc["betti"]}, {"pages", doc["pages"]}};
    }
    write_report(cfg, doc);
    if (!cfg.quiet) print_summary(rec);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    Context ctx(cfg);
    const std::size_t count = cfg.random ? cfg.random : 1;
    const std::size_t nv = ctx.k.vertices().size();
    std::vector<json> items(count);
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            const std::uint64_t s = item_seed(cfg.seed, i);
            try {
                auto rec = ctx.analyzer->analyze(SignDistribution::from_seed(nv, s));
                json r = rec.to_json();
                r["index"] = i;
                r["sign_seed"] = s;
                r["pages"] = filter_pages(r["pages"], cfg.side);
                items[i] = std::move(r);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int jobs = std::max(1, cfg.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < count; ++i)
        if (!errors[i].empty()) throw Error(ErrorKind::Internal, "item " + std::to_string(i) + ": " + errors[i]);

    std::map<int, std::size_t> ell_hist, r_hist;
    std::map<std::string, std::map<std::string, std::size_t>> tally;
    std::size_t counterexamples = 0, conjecture = 0;
    json betti = json::array(), pages = json::array();
    for (const auto& it : items) {
        ++ell_hist[it["invariants"]["ell"].get<int>()];
        ++r_hist[it["invariants"]["r_index"].get<int>()];
        conjecture += it["invariants"]["conjecture_bound"].get<std::size_t>();
        counterexamples += it["counterexample"].get<std::size_t>();
        for (const auto& v : it["verdicts"]) ++tally[v["name"].get<std::string>()][v["status"].get<std::string>()];
        betti.push_back(it["betti"]["RX"]);
        pages.push_back(it["pages"]);
    }
    auto hist = [](const std::map<int, std::size_t>& h) {
        json j = json::array();
        for (auto [k, v] : h) j.push_back({k, v});
        return j;
    };
    json doc = ctx.header(cfg);
    doc["betti"] = betti;
    doc["pages"] = pages;
    doc["invariants"] = {{"iota_degree", ctx.analyzer->iota_degree()},
                         {"iota_P", ctx.analyzer->iota_p()},
                         {"ell_histogram", hist(ell_hist)},
                         {"r_histogram", hist(r_hist)},
                         {"conjecture_bound_holds", conjecture}};
    doc["verdicts"] = tally;
    doc["counterexample"] = int(counterexamples > 0);
    doc["items"] = items;
    write_report(cfg, doc);
    if (!cfg.quiet) {
        std::cerr << count << " sign distributions, " << counterexamples << " with a failed verdict\n";
        for (const auto& [name, st] : tally) {
            std::cerr << "  " << name << ':';
            for (const auto& [s, c] : st) std::cerr << ' ' << s << '=' << c;
            std::cerr << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"patchlab: T-hypersurfaces and their spectral sequences over F2"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--polytope", cfg.polytope, "simplex(n,d), cube(n,d) or product(simplex(a,b),simplex(c,e))");
        sub->add_option("--viro", cfg.viro, "Viro triangulation of simplex(N,D)")->expected(2);
        sub->add_option("--triangulation", cfg.triangulation, "triangulation JSON file");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--report", cfg.report, "output path (default stdout)");
        sub->add_flag("--quiet", cfg.quiet, "no summary on stderr");
    };
    auto add_analysis = [&](CLI::App* sub) {
        add_source(sub);
        add_common(sub);
        sub->add_option("--side", cfg.side, "pages to report")->check(CLI::IsMember({"homology", "cohomology", "both"}));
        sub->add_option("--method", cfg.method, "filtration construction")
            ->check(CLI::IsMember({"intersection", "rs", "renaudineau-shaw"}));
    };

    auto* bp = app.add_subcommand("build-polytope", "describe a lattice polytope");
    bp->add_option("--polytope", cfg.polytope, "family tag");
    bp->add_option("--viro", cfg.viro, "simplex(N,D)")->expected(2);
    add_common(bp);
    auto* tr = app.add_subcommand("triangulate", "write a triangulation as JSON");
    add_source(tr);
    add_common(tr);
    auto* an = app.add_subcommand("analyze", "full analysis of one sign distribution");
    add_analysis(an);
    an->add_option("--signs", cfg.signs, "PATH | harnack | zero | seed:N");
    auto* pg = app.add_subcommand("pages", "spectral sequence pages of one sign distribution");
    add_analysis(pg);
    pg->add_option("--signs", cfg.signs, "PATH | harnack | zero | seed:N");
    auto* vf = app.add_subcommand("verify", "check every theorem on one sign distribution");
    add_analysis(vf);
    vf->add_option("--signs", cfg.signs, "PATH | harnack | zero | seed:N");
    auto* sw = app.add_subcommand("sweep", "random sign distributions");
    add_analysis(sw);
    sw->add_option("--random", cfg.random, "number of sign distributions")->required();
    sw->add_option("--seed", cfg.seed, "base seed");
    sw->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (*bp) return cmd_build_polytope(cfg);
        if (*tr) return cmd_triangulate(cfg);
        if (*an || *vf) return cmd_analyze(cfg, false);
        if (*pg) return cmd_analyze(cfg, true);
        if (*sw) return cmd_sweep(cfg);
    } catch (const Error& e) {
        std::cerr << "patchlab: " << e.what() << '\n';
        return e.kind() == ErrorKind::Internal ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "patchlab: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
