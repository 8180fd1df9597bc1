#pragma once

#include <array>
#include <vector>

#include "hgraph/curve.hpp"

namespace hgraph {

struct BoundaryVertex {
    int index = 0;
    double param = 0.0;  // curve parameter on the boundary loop
    int loop = 0;        // 0 = outer boundary, 1 = inner (annulus meshes)
};

/// Conforming triangulation of the domain enclosed by a boundary curve
/// (or of an annulus between two concentric circles).
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // CCW vertex index triples
    std::vector<BoundaryVertex> boundary;
    double target_h = 0.0;
    double max_edge = 0.0;

    std::vector<char> is_boundary;  // per vertex
    std::vector<int> interior;      // interior vertex indices
    std::vector<int> interior_id;   // vertex -> position in interior (-1 on boundary)

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int num_interior() const { return static_cast<int>(interior.size()); }

    double triangle_area(int t) const;
    double min_angle_deg() const;
    int euler_characteristic() const;

    void build_index();  // fills is_boundary / interior maps and max_edge
};

/// Quality triangulation of the domain enclosed by L, boundary vertices on L,
/// deterministic for fixed inputs. Concentric-ring construction mapped through
/// the curve; requires L star-shaped about its centroid.
Mesh generate_mesh(const PlanarCurve& L, double h);

/// Structured triangulation of the annulus r_in < |x - center| < r_out.
/// Outer boundary is loop 0, inner boundary loop 1.
Mesh generate_annulus_mesh(Vec2 center, double r_in, double r_out, double h);

}  // namespace hgraph
