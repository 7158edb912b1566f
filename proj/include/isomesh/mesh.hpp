#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "isomesh/linalg.hpp"
#include "isomesh/metric.hpp"

namespace isomesh {

enum class EdgeClass : std::uint8_t { Unit, Leg, Hypotenuse };
enum class ConstraintTag : std::uint8_t { Free, Fixed, SlideX, SlideY };
enum class Tiling : std::uint8_t { Equilateral, Right };

struct MacroMesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
    std::vector<std::pair<int, int>> boundary_edges;
};

struct SubTriangle {
    std::array<int, 3> v;  // subvertex ids, counter-clockwise
    int macro = 0;         // owner macrotriangle
    int bi = 0, bj = 0;    // barycentric lattice cell
    bool up = true;        // orientation within the lattice cell
};

struct SubEdge {
    int v0 = 0, v1 = 0;  // v0 < v1
    EdgeClass cls = EdgeClass::Unit;
};

// A chain of subvertices along one macroedge, endpoints included.
struct MacroEdgeChain {
    int macro_v0 = 0, macro_v1 = 0;
    std::vector<int> subvertices;
};

// Macrotriangulation with each macro divided into N^2 subtriangles.
// Connectivity is fixed after construction; only `subvertices` moves.
struct SubdividedMesh {
    MacroMesh macro;
    int N = 1;
    std::vector<Vec2> subvertices;
    std::vector<SubTriangle> subtriangles;
    std::vector<SubEdge> subedges;
    std::vector<ConstraintTag> constraints;
    std::vector<char> boundary_subvertex;
    std::vector<MacroEdgeChain> macroedges;

    // Subvertex id of a macro vertex.
    std::vector<int> macro_vertex_id;
};

// Uniform grid on the rectangle, every square split along the same
// lower-left to upper-right diagonal (6 triangles per interior vertex).
MacroMesh build_uniform_grid(const Rectangle& domain, int nx, int ny);

// Uniform barycentric subdivision into N^2 subtriangles per macro, with
// subvertices on shared macroedges deduplicated (conforming result).
SubdividedMesh subdivide(const MacroMesh& mesh, int N);

// Assign edge classes from the undeformed geometry; tags stay fixed
// afterwards. Right tiling: axis-parallel -> Leg, diagonal -> Hypotenuse.
void classify_edges(SubdividedMesh& mesh, Tiling tiling);

// Rigid rotation of all subvertex (and macro vertex) coordinates.
void apply_initial_rotation(SubdividedMesh& mesh, double theta, const Vec2& center);

enum class ConstraintMode : std::uint8_t { Free, PinCorners, SlideBoundary };

// Set constraint tags from the fresh (axis-aligned) geometry.
void apply_constraint_mode(SubdividedMesh& mesh, ConstraintMode mode, const Rectangle& domain);

// Signed Euclidean area of subtriangle t at the current coordinates.
double subtriangle_signed_area(const SubdividedMesh& mesh, const SubTriangle& t);

}  // namespace isomesh
