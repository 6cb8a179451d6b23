#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "specgeom/errors.hpp"

namespace specgeom::mesh {

/// Closed oriented triangle surface. Immutable after construction; all
/// queries are read-only and safe to share across threads. Geometry is
/// intrinsic: every downstream operator consumes edge lengths, so the
/// flat torus stores fundamental-domain coordinates with periodic
/// lengths instead of an embedding.
struct SurfaceMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 2>> edges;       ///< canonical a < b
    std::vector<std::array<int, 3>> triangles;   ///< consistent orientation
    std::vector<double> edge_length;
    std::vector<std::array<int, 2>> edge_tris;   ///< exactly 2 per edge
    std::vector<std::array<int, 3>> tri_edges;   ///< edge ids per triangle
    std::vector<std::vector<int>> vertex_edges;
    std::string descriptor;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }

    /// Total surface area from Heron's formula on edge lengths.
    double total_area() const;
    /// Area of one triangle.
    double triangle_area(int f) const;
    /// Index of the edge opposite to the given local corner (0, 1, 2).
    int opposite_edge(int f, int corner) const;
};

/// Assembles adjacency from oriented triangles and a length rule and
/// validates closedness and orientation consistency. An empty length
/// rule means Euclidean distances between the stored vertex positions.
SurfaceMesh build_surface(std::vector<Eigen::Vector3d> vertices,
                          std::vector<std::array<int, 3>> triangles,
                          const std::function<double(int, int)>& edge_len,
                          std::string descriptor);

/// Flat torus R^2/(2 pi Z)^2 on an m x m grid of squares, each split
/// into two triangles along the (+1,+1) diagonal. Edge lengths are exact
/// grid lengths (2 pi/m and sqrt(2) 2 pi/m).
SurfaceMesh build_flat_torus(int m);

/// Icosahedron subdivided s times with all vertices on the unit sphere.
SurfaceMesh build_icosphere(int s);

/// ASCII OFF reader. Triangle faces only; orientation repaired by
/// breadth-first propagation when possible.
SurfaceMesh load_off(const std::string& path);

/// ASCII OFF writer; coordinates at 17 significant digits so generator
/// meshes round-trip bit-exactly.
void write_off(const SurfaceMesh& mesh, const std::string& path);

/// Single-source shortest-path distances along the weighted edge graph.
std::vector<double> graph_distances(const SurfaceMesh& mesh, int source);

struct DiameterEstimate {
    double value = 0.0;
    bool exact = false;   ///< all-pairs for V <= 5000, double sweep otherwise
};

/// Graph diameter: exact max over all pairs for V <= 5000, otherwise a
/// double-sweep heuristic (lower bound only).
DiameterEstimate estimate_diameter(const SurfaceMesh& mesh);

/// Greedy farthest-point 2eps-separated net; maximality makes the
/// 2eps-balls cover. Both defining clauses are re-verified post hoc.
struct EpsNet {
    std::vector<int> centers;
    double eps = 0.0;
    bool separation_ok = false;
    bool covering_ok = false;
};

EpsNet build_eps_net(const SurfaceMesh& mesh, double eps);

/// Metric ball: vertices within graph distance r of the center plus the
/// induced closed subcomplex (simplices with every vertex in the set).
struct GeodesicBall {
    int center = -1;
    double radius = 0.0;
    std::vector<int> verts;
    std::vector<int> edge_ids;
    std::vector<int> tri_ids;
};

GeodesicBall geodesic_ball(const SurfaceMesh& mesh, int center, double r);

} // namespace specgeom::mesh
