#include "hgraph/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace hgraph {

double Mesh::triangle_area(int t) const {
    const auto& tri = triangles[t];
    Vec2 a = vertices[tri[0]], b = vertices[tri[1]], c = vertices[tri[2]];
    return 0.5 * (b - a).cross(c - a);
}

double Mesh::min_angle_deg() const {
    double worst = 180.0;
    for (const auto& tri : triangles) {
        for (int k = 0; k < 3; ++k) {
            Vec2 a = vertices[tri[k]];
            Vec2 u = vertices[tri[(k + 1) % 3]] - a;
            Vec2 v = vertices[tri[(k + 2) % 3]] - a;
            double ang = std::acos(std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0));
            worst = std::min(worst, ang * 180.0 / kPi);
        }
    }
    return worst;
}

int Mesh::euler_characteristic() const {
    std::set<std::pair<int, int>> edges;
    for (const auto& tri : triangles)
        for (int k = 0; k < 3; ++k) {
            int a = tri[k], b = tri[(k + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return num_vertices() - static_cast<int>(edges.size()) + num_triangles();
}

void Mesh::build_index() {
    is_boundary.assign(vertices.size(), 0);
    for (const auto& bv : boundary) is_boundary[bv.index] = 1;
    interior.clear();
    interior_id.assign(vertices.size(), -1);
    for (int i = 0; i < num_vertices(); ++i) {
        if (!is_boundary[i]) {
            interior_id[i] = static_cast<int>(interior.size());
            interior.push_back(i);
        }
    }
    max_edge = 0.0;
    for (const auto& tri : triangles)
        for (int k = 0; k < 3; ++k)
            max_edge = std::max(max_edge, (vertices[tri[k]] - vertices[tri[(k + 1) % 3]]).norm());
}

namespace {

void orient_ccw(Mesh& mesh) {
    for (auto& tri : mesh.triangles) {
        Vec2 a = mesh.vertices[tri[0]], b = mesh.vertices[tri[1]], c = mesh.vertices[tri[2]];
        if ((b - a).cross(c - a) < 0.0) std::swap(tri[1], tri[2]);
    }
}

void check_quality(const Mesh& mesh) {
    for (int t = 0; t < mesh.num_triangles(); ++t)
        if (!(mesh.triangle_area(t) > 0.0))
            throw std::runtime_error("mesh generation produced a degenerate triangle");
    double ang = mesh.min_angle_deg();
    if (ang < 20.0 - 1e-9)
        throw std::runtime_error("mesh quality bound unreachable (min angle " +
                                 std::to_string(ang) + " deg)");
}

double tri_min_angle(Vec2 a, Vec2 b, Vec2 c) {
    double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
    auto ang = [](double o, double p, double q) {
        return std::acos(std::clamp((p * p + q * q - o * o) / (2.0 * p * q), -1.0, 1.0));
    };
    return std::min({ang(la, lb, lc), ang(lb, lc, la), ang(lc, la, lb)});
}

/// Laplacian smoothing of interior vertices, guarded so a move is only
/// accepted when the worst incident angle does not degrade (or stays above
/// 30 degrees). Evens out the ring-transition pattern, which restores
/// second-order nodal accuracy of the P1 solves.
void smooth_interior(Mesh& mesh, int iters, double relax) {
    std::vector<std::set<int>> nbr(mesh.vertices.size());
    std::vector<std::vector<int>> incident(mesh.vertices.size());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int a = 0; a < 3; ++a) {
            incident[tri[a]].push_back(t);
            for (int b = 0; b < 3; ++b)
                if (a != b) nbr[tri[a]].insert(tri[b]);
        }
    }
    const double good = kPi / 6.0;
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i < mesh.num_vertices(); ++i) {
            if (mesh.is_boundary[i]) continue;
            Vec2 avg{0.0, 0.0};
            for (int j : nbr[i]) avg += mesh.vertices[j];
            avg = avg / static_cast<double>(nbr[i].size());
            Vec2 cand = mesh.vertices[i] * (1.0 - relax) + avg * relax;
            double before = kPi, after = kPi;
            for (int t : incident[i]) {
                const auto& tri = mesh.triangles[t];
                Vec2 p[3];
                for (int a = 0; a < 3; ++a) p[a] = mesh.vertices[tri[a]];
                before = std::min(before, tri_min_angle(p[0], p[1], p[2]));
                for (int a = 0; a < 3; ++a)
                    if (tri[a] == i) p[a] = cand;
                after = std::min(after, tri_min_angle(p[0], p[1], p[2]));
            }
            if (after >= before - 1e-12 || after > good) mesh.vertices[i] = cand;
        }
    }
}

}  // namespace

Mesh generate_mesh(const PlanarCurve& L, double h) {
    if (h <= 0.0) throw std::invalid_argument("mesh size must be positive");
    const int m = std::max(2, static_cast<int>(std::lround(L.length() / (6.0 * h))));

    Mesh mesh;
    mesh.target_h = h;
    Vec2 c = L.centroid();

    // concentric rings: ring j carries 6j nodes, mapped through the curve
    mesh.vertices.push_back(c);
    for (int j = 1; j <= m; ++j) {
        double frac = static_cast<double>(j) / m;
        for (int i = 0; i < 6 * j; ++i) {
            double theta = kTwoPi * i / (6 * j);
            mesh.vertices.push_back(c + frac * (L.position(theta) - c));
        }
    }
    auto ring_start = [](int j) { return j == 0 ? 0 : 1 + 3 * j * (j - 1); };

    for (int j = 1; j <= m; ++j) {
        int so = ring_start(j), si = ring_start(j - 1);
        int no = 6 * j, ni = std::max(1, 6 * (j - 1));
        for (int s = 0; s < 6; ++s) {
            auto outer = [&](int k) { return so + (s * j + k) % no; };
            auto inner = [&](int k) { return j == 1 ? 0 : si + (s * (j - 1) + k) % ni; };
            for (int k = 0; k < j; ++k)
                mesh.triangles.push_back({outer(k), outer(k + 1), inner(k)});
            for (int k = 0; k + 1 < j; ++k)
                mesh.triangles.push_back({inner(k), outer(k + 1), inner(k + 1)});
        }
    }

    for (int i = 0; i < 6 * m; ++i)
        mesh.boundary.push_back({ring_start(m) + i, kTwoPi * i / (6 * m), 0});

    orient_ccw(mesh);
    mesh.build_index();
    smooth_interior(mesh, 20, 0.5);
    mesh.build_index();
    check_quality(mesh);
    if (mesh.euler_characteristic() != 1)
        throw std::runtime_error("disk mesh has wrong topology");
    return mesh;
}

Mesh generate_annulus_mesh(Vec2 center, double r_in, double r_out, double h) {
    if (!(0.0 < r_in && r_in < r_out)) throw std::invalid_argument("invalid annulus radii");
    if (h <= 0.0) throw std::invalid_argument("mesh size must be positive");
    const int nt = std::max(8, static_cast<int>(std::lround(kTwoPi * r_out / h)));
    const int nr = std::max(2, static_cast<int>(std::lround((r_out - r_in) / h)));

    Mesh mesh;
    mesh.target_h = h;
    auto id = [&](int i, int j) { return i * nt + (j % nt); };
    for (int i = 0; i <= nr; ++i) {
        double r = r_in + (r_out - r_in) * i / nr;
        for (int j = 0; j < nt; ++j) {
            double th = kTwoPi * j / nt;
            mesh.vertices.push_back(center + Vec2{r * std::cos(th), r * std::sin(th)});
        }
    }
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            mesh.triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
            mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
        }
    for (int j = 0; j < nt; ++j) {
        mesh.boundary.push_back({id(nr, j), kTwoPi * j / nt, 0});  // outer
        mesh.boundary.push_back({id(0, j), kTwoPi * j / nt, 1});   // inner
    }

    orient_ccw(mesh);
    mesh.build_index();
    check_quality(mesh);
    return mesh;
}

}  // namespace hgraph
