#include "isomesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace isomesh {

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<long long, long long>& k) const {
        return std::hash<long long>()(k.first * 1000003LL ^ k.second);
    }
};

}  // namespace

MacroMesh build_uniform_grid(const Rectangle& domain, int nx, int ny) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("build_uniform_grid: nx, ny must be >= 1");
    if (domain.width() <= 0.0 || domain.height() <= 0.0)
        throw std::invalid_argument("build_uniform_grid: degenerate rectangle");

    MacroMesh m;
    m.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            m.vertices.push_back({domain.x0 + domain.width() * i / nx,
                                  domain.y0 + domain.height() * j / ny});

    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j);
            const int c = vid(i + 1, j + 1), d = vid(i, j + 1);
            // Right-angle vertex first so the hypotenuse (second edge pair)
            // lands on the geometric diagonal a-c.
            m.triangles.push_back({b, c, a});
            m.triangles.push_back({d, a, c});
        }
    }

    for (int i = 0; i < nx; ++i) {
        m.boundary_edges.emplace_back(vid(i, 0), vid(i + 1, 0));
        m.boundary_edges.emplace_back(vid(i, ny), vid(i + 1, ny));
    }
    for (int j = 0; j < ny; ++j) {
        m.boundary_edges.emplace_back(vid(0, j), vid(0, j + 1));
        m.boundary_edges.emplace_back(vid(nx, j), vid(nx, j + 1));
    }
    return m;
}

SubdividedMesh subdivide(const MacroMesh& mesh, int N) {
    if (N < 1) throw std::invalid_argument("subdivide: N must be >= 1");

    SubdividedMesh sm;
    sm.macro = mesh;
    sm.N = N;

    // Deduplicate subvertices by quantized coordinates.
    double scale = 1.0;
    for (const auto& v : mesh.vertices)
        scale = std::max({scale, std::fabs(v.x), std::fabs(v.y)});
    const double tol = 1e-9 * scale;

    std::unordered_map<std::pair<long long, long long>, int, PairHash> lookup;
    auto global_id = [&](const Vec2& p) {
        const std::pair<long long, long long> key(std::llround(p.x / tol),
                                                  std::llround(p.y / tol));
        auto it = lookup.find(key);
        if (it != lookup.end()) return it->second;
        const int id = static_cast<int>(sm.subvertices.size());
        sm.subvertices.push_back(p);
        lookup.emplace(key, id);
        return id;
    };

    sm.macro_vertex_id.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        sm.macro_vertex_id[i] = global_id(mesh.vertices[i]);

    // Lattice ids per macro, for subtriangles and macroedge chains.
    auto lat_index = [N](int i, int j) { return j * (N + 1) + i - j * (j - 1) / 2; };

    std::map<std::pair<int, int>, std::vector<int>> chains;  // macroedge -> chain

    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Vec2 a = mesh.vertices[mesh.triangles[t][0]];
        const Vec2 b = mesh.vertices[mesh.triangles[t][1]];
        const Vec2 c = mesh.vertices[mesh.triangles[t][2]];

        std::vector<int> lat((N + 1) * (N + 2) / 2);
        for (int j = 0; j <= N; ++j)
            for (int i = 0; i + j <= N; ++i)
                lat[lat_index(i, j)] =
                    global_id(a + (b - a) * (double(i) / N) + (c - a) * (double(j) / N));

        for (int j = 0; j < N; ++j) {
            for (int i = 0; i + j < N; ++i) {
                SubTriangle up;
                up.v = {lat[lat_index(i, j)], lat[lat_index(i + 1, j)], lat[lat_index(i, j + 1)]};
                up.macro = static_cast<int>(t);
                up.bi = i;
                up.bj = j;
                up.up = true;
                sm.subtriangles.push_back(up);
                if (i + j < N - 1) {
                    SubTriangle dn;
                    // Right-angle lattice vertex first, mirroring the up cell.
                    dn.v = {lat[lat_index(i + 1, j + 1)], lat[lat_index(i, j + 1)],
                            lat[lat_index(i + 1, j)]};
                    dn.macro = static_cast<int>(t);
                    dn.bi = i;
                    dn.bj = j;
                    dn.up = false;
                    sm.subtriangles.push_back(dn);
                }
            }
        }

        // Chains along the three macroedges, oriented from the lower id.
        auto add_chain = [&](int mv0, int mv1, auto&& lattice_id) {
            std::pair<int, int> key(std::min(mv0, mv1), std::max(mv0, mv1));
            if (chains.count(key)) return;
            std::vector<int> chain(N + 1);
            for (int k = 0; k <= N; ++k) chain[k] = lattice_id(k);
            if (mv1 < mv0) std::reverse(chain.begin(), chain.end());
            chains.emplace(key, std::move(chain));
        };
        const int mv0 = mesh.triangles[t][0], mv1 = mesh.triangles[t][1],
                  mv2 = mesh.triangles[t][2];
        add_chain(mv0, mv1, [&](int k) { return lat[lat_index(k, 0)]; });
        add_chain(mv0, mv2, [&](int k) { return lat[lat_index(0, k)]; });
        add_chain(mv1, mv2, [&](int k) { return lat[lat_index(N - k, k)]; });
    }

    for (auto& [key, chain] : chains) {
        MacroEdgeChain mc;
        mc.macro_v0 = key.first;
        mc.macro_v1 = key.second;
        mc.subvertices = std::move(chain);
        sm.macroedges.push_back(std::move(mc));
    }

    // Subedges with incidence counts (boundary detection).
    std::map<std::pair<int, int>, int> incidence;
    for (const auto& st : sm.subtriangles) {
        for (int e = 0; e < 3; ++e) {
            int u = st.v[e], w = st.v[(e + 1) % 3];
            if (u > w) std::swap(u, w);
            ++incidence[{u, w}];
        }
    }
    sm.boundary_subvertex.assign(sm.subvertices.size(), 0);
    for (const auto& [key, count] : incidence) {
        sm.subedges.push_back({key.first, key.second, EdgeClass::Unit});
        if (count == 1) {
            sm.boundary_subvertex[key.first] = 1;
            sm.boundary_subvertex[key.second] = 1;
        }
    }

    sm.constraints.assign(sm.subvertices.size(), ConstraintTag::Free);
    return sm;
}

void classify_edges(SubdividedMesh& mesh, Tiling tiling) {
    if (tiling == Tiling::Equilateral) {
        for (auto& e : mesh.subedges) e.cls = EdgeClass::Unit;
        return;
    }
    for (auto& e : mesh.subedges) {
        const Vec2 d = mesh.subvertices[e.v1] - mesh.subvertices[e.v0];
        const double tol = 1e-9 * d.norm();
        const bool axis = std::fabs(d.x) <= tol || std::fabs(d.y) <= tol;
        e.cls = axis ? EdgeClass::Leg : EdgeClass::Hypotenuse;
    }
}

void apply_initial_rotation(SubdividedMesh& mesh, double theta, const Vec2& center) {
    for (auto& p : mesh.subvertices) p = center + rotate(p - center, theta);
    for (auto& p : mesh.macro.vertices) p = center + rotate(p - center, theta);
}

void apply_constraint_mode(SubdividedMesh& mesh, ConstraintMode mode, const Rectangle& domain) {
    mesh.constraints.assign(mesh.subvertices.size(), ConstraintTag::Free);
    if (mode == ConstraintMode::Free) return;

    const double tol = 1e-9 * std::max(domain.width(), domain.height());
    for (std::size_t i = 0; i < mesh.subvertices.size(); ++i) {
        const Vec2& p = mesh.subvertices[i];
        const bool on_x = std::fabs(p.x - domain.x0) < tol || std::fabs(p.x - domain.x1) < tol;
        const bool on_y = std::fabs(p.y - domain.y0) < tol || std::fabs(p.y - domain.y1) < tol;
        if (mode == ConstraintMode::PinCorners) {
            if (on_x && on_y) mesh.constraints[i] = ConstraintTag::Fixed;
        } else {  // SlideBoundary
            if (on_x && on_y)
                mesh.constraints[i] = ConstraintTag::Fixed;
            else if (on_x)
                mesh.constraints[i] = ConstraintTag::SlideY;  // x held, slides in y
            else if (on_y)
                mesh.constraints[i] = ConstraintTag::SlideX;  // y held, slides in x
        }
    }
}

double subtriangle_signed_area(const SubdividedMesh& mesh, const SubTriangle& t) {
    const Vec2& p0 = mesh.subvertices[t.v[0]];
    const Vec2& p1 = mesh.subvertices[t.v[1]];
    const Vec2& p2 = mesh.subvertices[t.v[2]];
    return 0.5 * (p1 - p0).cross(p2 - p0);
}

}  // namespace isomesh
