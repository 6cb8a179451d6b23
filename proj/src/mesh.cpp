#include "specgeom/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>

namespace specgeom::mesh {

namespace {

constexpr double kPi = std::numbers::pi;

double heron(double a, double b, double c) {
    // Kahan's numerically stable form; inputs sorted a >= b >= c.
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if (!(t > 0.0)) return 0.0;
    return 0.25 * std::sqrt(t);
}

} // namespace

double SurfaceMesh::triangle_area(int f) const {
    const auto& e = tri_edges[f];
    return heron(edge_length[e[0]], edge_length[e[1]], edge_length[e[2]]);
}

double SurfaceMesh::total_area() const {
    double a = 0.0;
    for (int f = 0; f < num_triangles(); ++f) a += triangle_area(f);
    return a;
}

int SurfaceMesh::opposite_edge(int f, int corner) const {
    const auto& t = triangles[f];
    const int u = t[(corner + 1) % 3], v = t[(corner + 2) % 3];
    for (int e : tri_edges[f]) {
        const auto& ed = edges[e];
        if ((ed[0] == std::min(u, v)) && (ed[1] == std::max(u, v))) return e;
    }
    throw Error("opposite_edge: inconsistent triangle/edge tables");
}

SurfaceMesh build_surface(std::vector<Eigen::Vector3d> vertices,
                          std::vector<std::array<int, 3>> triangles,
                          const std::function<double(int, int)>& edge_len,
                          std::string descriptor) {
    SurfaceMesh m;
    m.vertices = std::move(vertices);
    m.triangles = std::move(triangles);
    m.descriptor = std::move(descriptor);

    const int nv = m.num_vertices();
    std::map<std::array<int, 2>, int> edge_index;
    // +1 when the directed edge agrees with the canonical (min -> max)
    // direction; orientation consistency needs each edge traversed once
    // in each direction.
    std::map<std::array<int, 2>, int> direction_balance;

    m.tri_edges.resize(m.triangles.size());
    for (size_t f = 0; f < m.triangles.size(); ++f) {
        const auto& t = m.triangles[f];
        for (int c = 0; c < 3; ++c) {
            const int u = t[c], v = t[(c + 1) % 3];
            if (u < 0 || v < 0 || u >= nv || v >= nv)
                throw MeshValidationError("vertex index out of range in triangle " + std::to_string(f));
            if (u == v)
                throw MeshValidationError("degenerate triangle " + std::to_string(f));
            const std::array<int, 2> key{std::min(u, v), std::max(u, v)};
            auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(m.edges.size()));
            if (inserted) {
                m.edges.push_back(key);
                m.edge_tris.push_back({-1, -1});
            }
            const int e = it->second;
            auto& inc = m.edge_tris[e];
            if (inc[0] == -1) inc[0] = static_cast<int>(f);
            else if (inc[1] == -1) inc[1] = static_cast<int>(f);
            else throw MeshValidationError("non-manifold edge", {e});
            direction_balance[key] += (u < v) ? 1 : -1;
        }
    }

    std::vector<int> bad;
    for (int e = 0; e < m.num_edges(); ++e)
        if (m.edge_tris[e][1] == -1) bad.push_back(e);
    if (!bad.empty())
        throw MeshValidationError("mesh has boundary edges (" + std::to_string(bad.size()) + ")", bad);

    for (const auto& [key, bal] : direction_balance)
        if (bal != 0) bad.push_back(edge_index.at(key));
    if (!bad.empty())
        throw MeshValidationError("inconsistent orientation across edges", bad);

    // tri_edges[f][c] holds the edge opposite corner c.
    for (size_t f = 0; f < m.triangles.size(); ++f)
        for (int c = 0; c < 3; ++c) {
            const int u = m.triangles[f][(c + 1) % 3], v = m.triangles[f][(c + 2) % 3];
            m.tri_edges[f][c] = edge_index.at({std::min(u, v), std::max(u, v)});
        }

    m.edge_length.resize(m.edges.size());
    for (int e = 0; e < m.num_edges(); ++e) {
        const int a = m.edges[e][0], b = m.edges[e][1];
        m.edge_length[e] = edge_len ? edge_len(a, b) : (m.vertices[a] - m.vertices[b]).norm();
        if (!(m.edge_length[e] > 0.0))
            throw MeshValidationError("nonpositive edge length", {e});
    }

    m.vertex_edges.resize(nv);
    for (int e = 0; e < m.num_edges(); ++e) {
        m.vertex_edges[m.edges[e][0]].push_back(e);
        m.vertex_edges[m.edges[e][1]].push_back(e);
    }
    return m;
}

SurfaceMesh build_flat_torus(int m) {
    if (m < 3) throw DomainError("build_flat_torus: m >= 3 required");
    const double h = 2.0 * kPi / m;
    const double diag = std::sqrt(2.0) * h;

    auto vid = [m](int i, int j) { return ((i % m + m) % m) * m + ((j % m + m) % m); };

    std::vector<Eigen::Vector3d> verts(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            verts[vid(i, j)] = Eigen::Vector3d(h * i, h * j, 0.0);

    std::vector<std::array<int, 3>> tris;
    tris.reserve(2 * static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
            tris.push_back({v00, v10, v11});
            tris.push_back({v00, v11, v01});
        }

    auto len = [&](int a, int b) {
        const int ai = a / m, aj = a % m, bi = b / m, bj = b % m;
        const int di = std::min((ai - bi + m) % m, (bi - ai + m) % m);
        const int dj = std::min((aj - bj + m) % m, (bj - aj + m) % m);
        // Grid steps are 0 or 1 by construction; exact lengths keep the
        // right-isoceles structure recognizable downstream.
        if (di + dj == 1) return h;
        return diag;
    };
    return build_surface(std::move(verts), std::move(tris), len, "torus:" + std::to_string(m));
}

SurfaceMesh build_icosphere(int s) {
    if (s < 0 || s > 7) throw DomainError("build_icosphere: 0 <= s <= 7 required");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : verts) v.normalize();
    std::vector<std::array<int, 3>> tris = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int level = 0; level < s; ++level) {
        std::map<std::array<int, 2>, int> midpoint;
        auto mid = [&](int a, int b) {
            const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Eigen::Vector3d p = (verts[a] + verts[b]).normalized();
            verts.push_back(p);
            const int id = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(tris.size() * 4);
        for (const auto& t : tris) {
            const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        tris = std::move(next);
    }

    return build_surface(std::move(verts), std::move(tris), {}, "icosphere:" + std::to_string(s));
}

namespace {

// Flip triangles breadth-first so neighbouring faces induce opposite
// directions on their shared edge; fails on non-orientable input.
void repair_orientation(std::vector<std::array<int, 3>>& tris) {
    std::map<std::array<int, 2>, std::vector<int>> edge_faces;
    for (size_t f = 0; f < tris.size(); ++f)
        for (int c = 0; c < 3; ++c) {
            const int u = tris[f][c], v = tris[f][(c + 1) % 3];
            edge_faces[{std::min(u, v), std::max(u, v)}].push_back(static_cast<int>(f));
        }

    auto directed = [&](int f, int a, int b) {
        for (int c = 0; c < 3; ++c)
            if (tris[f][c] == a && tris[f][(c + 1) % 3] == b) return true;
        return false;
    };

    std::vector<int> state(tris.size(), 0); // 0 unvisited, 1 fixed
    for (size_t seed = 0; seed < tris.size(); ++seed) {
        if (state[seed]) continue;
        state[seed] = 1;
        std::queue<int> bfs;
        bfs.push(static_cast<int>(seed));
        while (!bfs.empty()) {
            const int f = bfs.front();
            bfs.pop();
            for (int c = 0; c < 3; ++c) {
                const int u = tris[f][c], v = tris[f][(c + 1) % 3];
                for (int g : edge_faces[{std::min(u, v), std::max(u, v)}]) {
                    if (g == f) continue;
                    const bool same_dir = directed(g, u, v);
                    if (!state[g]) {
                        if (same_dir) std::swap(tris[g][1], tris[g][2]);
                        state[g] = 1;
                        bfs.push(g);
                    } else if (same_dir) {
                        throw MeshValidationError("mesh is non-orientable");
                    }
                }
            }
        }
    }
}

} // namespace

SurfaceMesh load_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_off: cannot open " + path);

    int line_no = 0;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            ++line_no;
            const auto pos = out.find_first_not_of(" \t\r\n");
            if (pos == std::string::npos || out[pos] == '#') continue;
            return true;
        }
        return false;
    };

    std::string line;
    if (!next_line(line)) throw ParseError("load_off: empty file", line_no);
    {
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag != "OFF") throw ParseError("load_off: missing OFF header", line_no);
    }
    if (!next_line(line)) throw ParseError("load_off: missing counts line", line_no);
    long nv = 0, nf = 0, ne = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nv >> nf >> ne) || nv < 3 || nf < 1)
            throw ParseError("load_off: malformed counts line", line_no);
    }

    std::vector<Eigen::Vector3d> verts(nv);
    for (long i = 0; i < nv; ++i) {
        if (!next_line(line)) throw ParseError("load_off: truncated vertex list", line_no);
        std::istringstream ss(line);
        if (!(ss >> verts[i][0] >> verts[i][1] >> verts[i][2]))
            throw ParseError("load_off: malformed vertex line", line_no);
    }
    std::vector<std::array<int, 3>> tris(nf);
    for (long f = 0; f < nf; ++f) {
        if (!next_line(line)) throw ParseError("load_off: truncated face list", line_no);
        std::istringstream ss(line);
        int cnt = 0;
        if (!(ss >> cnt)) throw ParseError("load_off: malformed face line", line_no);
        if (cnt != 3) throw ParseError("load_off: non-triangular face", line_no);
        if (!(ss >> tris[f][0] >> tris[f][1] >> tris[f][2]))
            throw ParseError("load_off: malformed face line", line_no);
    }

    repair_orientation(tris);
    return build_surface(std::move(verts), std::move(tris), {}, "off:" + path);
}

void write_off(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_off: cannot open " + path);
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' '
        << mesh.num_edges() << '\n';
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out << buf;
    }
    for (const auto& t : mesh.triangles)
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    if (!out) throw IoError("write_off: write failed for " + path);
}

std::vector<double> graph_distances(const SurfaceMesh& mesh, int source) {
    if (source < 0 || source >= mesh.num_vertices())
        throw DomainError("graph_distances: vertex index out of range");
    std::vector<double> dist(mesh.num_vertices(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int e : mesh.vertex_edges[v]) {
            const auto& ed = mesh.edges[e];
            const int w = (ed[0] == v) ? ed[1] : ed[0];
            const double nd = d + mesh.edge_length[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                pq.emplace(nd, w);
            }
        }
    }
    return dist;
}

DiameterEstimate estimate_diameter(const SurfaceMesh& mesh) {
    DiameterEstimate out;
    const int nv = mesh.num_vertices();
    if (nv <= 5000) {
        for (int v = 0; v < nv; ++v) {
            const auto d = graph_distances(mesh, v);
            out.value = std::max(out.value, *std::max_element(d.begin(), d.end()));
        }
        out.exact = true;
        return out;
    }
    auto farthest = [&](int src) {
        const auto d = graph_distances(mesh, src);
        const auto it = std::max_element(d.begin(), d.end());
        return std::pair<int, double>(static_cast<int>(it - d.begin()), *it);
    };
    const auto [a, da] = farthest(0);
    const auto [b, db] = farthest(a);
    out.value = db;
    out.exact = false;
    (void)b; (void)da;
    return out;
}

EpsNet build_eps_net(const SurfaceMesh& mesh, double eps) {
    if (!(eps > 0.0)) throw DomainError("build_eps_net: eps > 0 required");
    EpsNet net;
    net.eps = eps;

    std::vector<std::vector<double>> center_dists;
    std::vector<double> to_set = graph_distances(mesh, 0);
    net.centers.push_back(0);
    center_dists.push_back(to_set);

    while (true) {
        int far = 0;
        for (int v = 1; v < mesh.num_vertices(); ++v)
            if (to_set[v] > to_set[far]) far = v;
        if (!(to_set[far] >= 2.0 * eps)) break;
        net.centers.push_back(far);
        center_dists.push_back(graph_distances(mesh, far));
        const auto& nd = center_dists.back();
        for (int v = 0; v < mesh.num_vertices(); ++v)
            to_set[v] = std::min(to_set[v], nd[v]);
    }

    // Post hoc verification of both defining clauses.
    net.separation_ok = true;
    for (size_t i = 0; i < net.centers.size() && net.separation_ok; ++i)
        for (size_t j = i + 1; j < net.centers.size(); ++j)
            if (center_dists[i][net.centers[j]] < 2.0 * eps) {
                net.separation_ok = false;
                break;
            }
    net.covering_ok =
        *std::max_element(to_set.begin(), to_set.end()) < 2.0 * eps;
    return net;
}

GeodesicBall geodesic_ball(const SurfaceMesh& mesh, int center, double r) {
    if (!(r > 0.0)) throw DomainError("geodesic_ball: r > 0 required");
    GeodesicBall ball;
    ball.center = center;
    ball.radius = r;
    const auto dist = graph_distances(mesh, center);
    std::vector<char> in(mesh.num_vertices(), 0);
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (dist[v] <= r) {
            in[v] = 1;
            ball.verts.push_back(v);
        }
    for (int e = 0; e < mesh.num_edges(); ++e)
        if (in[mesh.edges[e][0]] && in[mesh.edges[e][1]]) ball.edge_ids.push_back(e);
    for (int f = 0; f < mesh.num_triangles(); ++f) {
        const auto& t = mesh.triangles[f];
        if (in[t[0]] && in[t[1]] && in[t[2]]) ball.tri_ids.push_back(f);
    }
    return ball;
}

} // namespace specgeom::mesh
