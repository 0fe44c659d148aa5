#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "patchlab/patchwork.hpp"
#include "patchlab/spectral.hpp"
#include "patchlab/tropical.hpp"

namespace patchlab {

// iota(alpha): least q >= -1 such that alpha cup - kills a nonzero class of H^{q+1}.
int iota(const CupTables& ring, const BitVec& alpha);
// iota of the space: maximum over every alpha in H^1 (exhaustive, at most 2^20 classes).
int iota_space(const CupTables& ring);

// i^q injective for q = 0..n-1, from the cochain restriction; cross-checked against rank i_q (Internal on
// disagreement).
std::vector<bool> restriction_injective(const THypersurface& x);
// Largest q0 with i^q injective for all q <= q0; -1 when i^0 is not (or RX is empty).
int rank_ell(const THypersurface& x);

// Degree d when the polytope family is simplex(n,d).
std::optional<int> simplex_degree(const LatticePolytope& p);

enum class Status { Pass, Fail, Skipped };

const char* to_string(Status s);

struct Verdict {
    std::string name;
    Status status = Status::Skipped;
    // witness data on failure, reason when skipped, short summary on success
    nlohmann::json witness;
};

struct InvariantRecord {
    int n = 0;
    std::vector<std::size_t> betti_rx;
    std::vector<std::size_t> betti_rp;
    std::vector<std::size_t> betti_direct;
    std::vector<std::vector<std::size_t>> tropical_table;
    std::vector<bool> injective;
    int ell = -1;
    int r_index = 0;
    int iota_degree = -1;
    int iota_p = -1;
    long long euler = 0;
    std::vector<std::vector<int>> component_classes;  // divisor coordinates, empty entry when unavailable
    SpectralSequence homology;
    SpectralSequence cohomology;
    std::vector<Verdict> verdicts;
    // the open lower bound ell >= floor((n-1)/2), reported only
    bool conjecture_bound = false;

    bool counterexample() const;
    const Verdict* verdict(const std::string& name) const;
    nlohmann::json to_json() const;
};

struct AnalysisOptions {
    FiltrationMethod method = FiltrationMethod::Intersection;
    Engine engine = Engine::Auto;
    std::size_t dense_limit = 600;
    // pairing on pages 1 and 2 when the complex has at most this many cells
    std::size_t pairing_limit = 400;
    // run the filtration comparison and graded-piece checks
    bool filtration_checks = true;
    // the triangulation is a Viro triangulation
    bool viro = false;
};

// Everything shared by the sign distributions of one triangulation.
class Analyzer {
public:
    Analyzer(const RealLift& lift, AnalysisOptions options = {});

    const RealLift& lift() const { return *lift_; }
    const TropicalHomology& tropical() const { return tropical_; }
    int iota_p() const { return iota_p_; }
    int iota_degree() const { return iota_degree_; }
    const AnalysisOptions& options() const { return options_; }

    // Verdicts are reported, never raised. Throws Internal when the two filtrations or the graded pieces
    // disagree.
    InvariantRecord analyze(const SignDistribution& eps) const;

private:
    const RealLift* lift_;
    AnalysisOptions options_;
    TropicalHomology tropical_;
    int iota_p_;
    int iota_degree_;
    std::optional<int> simplex_degree_;
};

}  // namespace patchlab
