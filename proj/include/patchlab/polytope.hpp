#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patchlab/f2_linalg.hpp"
#include "patchlab/integer_matrix.hpp"

namespace patchlab {

struct Face {
    std::vector<int> vertices;  // indices into LatticePolytope::vertices(), ascending
    std::vector<int> facets;    // facets containing the face
    int dim = 0;
};

// Inequality normal . x >= offset with a primitive inward normal.
struct Facet {
    IVec normal;
    long long offset = 0;
    std::vector<int> vertices;
};

struct SmoothnessResult {
    bool smooth = true;
    int vertex = -1;         // falsifying vertex
    long long det = 1;       // |det| of its normals (0 when the vertex is not simple)
};

class LatticePolytope {
public:
    LatticePolytope() = default;
    // Vertices are sorted lexicographically; they must be in convex position.
    LatticePolytope(int dim, std::vector<IVec> vertices, std::string family = "custom");

    static LatticePolytope simplex(int n, int d);
    static LatticePolytope cube(int n, int d);
    static LatticePolytope product(int n1, int d1, int n2, int d2);
    // "simplex(n,d)", "cube(n,d)" or "product(simplex(a,b),simplex(c,e))".
    static LatticePolytope from_family(const std::string& tag);

    int dim() const { return n_; }
    const std::vector<IVec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    // All nonempty faces including P itself, sorted by (dim, vertex list).
    const std::vector<Face>& faces() const { return faces_; }
    const std::string& family() const { return family_; }

    bool contains(const IVec& x) const;
    std::vector<IVec> lattice_points() const;
    // Facets containing every point; throws Geometry when a point lies outside P.
    std::vector<int> facets_containing(const std::vector<IVec>& points) const;
    // The face whose relative interior meets the relative interior of conv(points).
    int smallest_face(const std::vector<IVec>& points) const;
    // Mod-2 annihilator of the saturated tangent lattice of a face.
    const Subspace& face_sedentarity(int face) const { return sed_[std::size_t(face)]; }
    Subspace sedentarity(const std::vector<IVec>& points) const;

    SmoothnessResult smoothness_check() const;
    // n! times the Euclidean volume.
    long long normalized_volume() const;

private:
    void build_facets();
    void build_faces();

    int n_ = 0;
    std::vector<IVec> vertices_;
    std::string family_;
    std::vector<Facet> facets_;
    std::vector<Face> faces_;
    std::vector<Subspace> sed_;
};

// Normal vector of the hyperplane spanned by the rows of an (n-1) x n matrix (generalized cross product).
IVec hyperplane_normal(const IMat& directions, std::size_t n);
// Rank over Q of integer row vectors.
std::size_t rational_rank(const IMat& rows, std::size_t cols);

}  // namespace patchlab
