#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "patchlab/f2_linalg.hpp"
#include "patchlab/polytope.hpp"

namespace patchlab {

struct Simplex {
    std::vector<int> vertices;  // ascending vertex indices
    int dim = 0;
};

struct ValidationResult {
    bool ok = true;
    std::string reason;
    std::vector<int> simplices;  // offending maximal simplices
};

// Element of Lambda^p of the dual of F2^n; bit i is the value on the i-th p-subset in lexicographic order.
struct WedgeCovector {
    int p = 0;
    int n = 0;
    BitVec value;
};

// Lexicographically ordered p-subsets of {0..n-1}.
std::vector<std::vector<int>> subsets_of_size(int n, int p);

class Triangulation {
public:
    Triangulation() = default;
    // Maximal simplices as lists of lattice points; the vertex list is the sorted union.
    Triangulation(LatticePolytope polytope, const std::vector<std::vector<IVec>>& maximal);

    const LatticePolytope& polytope() const { return polytope_; }
    int dim() const { return polytope_.dim(); }
    const std::vector<IVec>& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& maximal_simplices() const { return maximal_; }

    // Every face of every maximal simplex, sorted by (dim, vertices); simplex i < vertex count is vertex i.
    const std::vector<Simplex>& simplices() const { return simplices_; }
    std::size_t simplex_count() const { return simplices_.size(); }
    // Index of the simplex with these vertices, or -1.
    int simplex_index(const std::vector<int>& vertices) const;
    // Codimension-one faces; entry k omits the k-th vertex.
    const std::vector<int>& facets(int s) const { return facets_[std::size_t(s)]; }
    const std::vector<int>& cofacets(int s) const { return cofacets_[std::size_t(s)]; }
    // All faces of s (including s), ascending.
    std::vector<int> faces_of(int s) const;
    bool is_face(int a, int b) const;
    std::vector<IVec> coordinates(int s) const;
    std::vector<int> simplices_of_dim(int p) const;
    int polytope_face(int s) const { return poly_face_[std::size_t(s)]; }
    const Subspace& sedentarity(int s) const { return polytope_.face_sedentarity(poly_face_[std::size_t(s)]); }

    ValidationResult validate() const;
    // Generator of the mod-2 line Lambda^p of the tangent lattice; throws Validation when the edges do not
    // generate a saturated lattice.
    WedgeCovector omega(int s) const;
    // omega of an edge as a covector on F2^n.
    BitVec edge_covector(int e) const;

    nlohmann::json to_json() const;
    static Triangulation from_json(const nlohmann::json& j);

private:
    LatticePolytope polytope_;
    std::vector<IVec> vertices_;
    std::vector<std::vector<int>> maximal_;
    std::vector<Simplex> simplices_;
    std::map<std::vector<int>, int> index_;
    std::vector<std::vector<int>> facets_;
    std::vector<std::vector<int>> cofacets_;
    std::vector<int> poly_face_;
};

// The single-simplex triangulation of a unimodular simplex.
Triangulation trivial_triangulation(const LatticePolytope& p);
Triangulation viro(int n, int d);
// K on simplex(n,d) and L on simplex(n-1,d+1) give a triangulation of simplex(n,d+1).
Triangulation plus(const Triangulation& k, const Triangulation& l);
// Staircase triangulation of the product, with the global lexicographic vertex order on each factor.
Triangulation product_triangulation(const Triangulation& a, const Triangulation& b, const LatticePolytope& target);
// Product of Viro segment subdivisions on cube(n,d).
Triangulation cube_triangulation(int n, int d);
Triangulation product_of_simplices(int n1, int d1, int n2, int d2);
// Image of K under the affine symmetry of simplex(n,d) permuting its vertices 0, de_1, ..., de_n.
Triangulation permute_simplex_vertices(const Triangulation& k, const std::vector<int>& perm);
// Simplices of dimension dim-1 lying in the facet sum x = d, mapped to simplex(n-1,d) by dropping x_1.
std::vector<std::vector<IVec>> restrict_to_far_facet(const Triangulation& k);

struct SignDistribution {
    std::vector<std::uint8_t> values;

    static SignDistribution zero(std::size_t n) { return {std::vector<std::uint8_t>(n, 0)}; }
    // Product of coordinate parities.
    static SignDistribution harnack(const Triangulation& k);
    // value i is the top bit of the i-th output of splitmix64 seeded with `seed`.
    static SignDistribution from_seed(std::size_t n, std::uint64_t seed);
    static SignDistribution from_json(const nlohmann::json& j, std::size_t n);
    nlohmann::json to_json() const;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace patchlab
