#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpat {

inline constexpr int SENTINEL = -1;

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A compact cellular surface in the winged-edge encoding.  Unoriented edge k
// owns the four oriented-edge indices 4k..4k+3; reversal is n ^ 2 and the
// mirror sheet (orientation cover) is n ^ 1.  Faces and vertices come in
// mirror pairs 2n / 2n+1.  Partial incidences (holes) are SENTINEL.
class CellularSurface {
public:
    CellularSurface() = default;

    // Each row lists the oriented edges of one face boundary in cyclic order;
    // row k defines face 2k (its mirror 2k+1 is generated automatically).
    // SENTINEL entries break the cycle, producing a boundary face.
    static CellularSurface build_from_face_boundaries(
        const std::vector<std::vector<int>>& rows);

    int num_edges() const { return num_edges_; }
    int num_faces() const { return num_faces_; }
    int num_vertices() const { return num_vertices_; }
    int oriented_count() const { return 4 * num_edges_; }

    static int reversed(int e) { return e ^ 2; }
    static int mirrored(int e) { return e ^ 1; }

    int next_in_left_face(int e) const { return sigma_[check(e)]; }
    int previous_in_left_face(int e) const { return sigma_inv_[check(e)]; }
    int next_in_right_face(int e) const {
        const int p = sigma_inv_[check(e) ^ 2];
        return p == SENTINEL ? SENTINEL : (p ^ 2);
    }
    int previous_in_right_face(int e) const {
        const int n = sigma_[check(e) ^ 2];
        return n == SENTINEL ? SENTINEL : (n ^ 2);
    }
    int left_edge_of_initial_vertex(int e) const {
        const int p = sigma_inv_[check(e)];
        return p == SENTINEL ? SENTINEL : (p ^ 2);
    }
    int right_edge_of_initial_vertex(int e) const {
        const int n = sigma_[check(e) ^ 2];
        return n;
    }
    int left_edge_of_terminal_vertex(int e) const {
        const int n = sigma_[check(e)];
        return n == SENTINEL ? SENTINEL : (n ^ 2);
    }
    int right_edge_of_terminal_vertex(int e) const {
        return sigma_inv_[check(e) ^ 2];
    }

    int left_face(int e) const { return face_[check(e)]; }
    int right_face(int e) const { return face_[check(e) ^ 2]; }
    int initial_vertex(int e) const { return vertex_[check(e)]; }
    int terminal_vertex(int e) const { return vertex_[check(e) ^ 2]; }

    // Unoriented edge is interior if both sides carry a face.
    bool edge_is_interior(int k) const {
        return face_[4 * k] != SENTINEL && face_[4 * k + 2] != SENTINEL;
    }
    // Ascending list of interior unoriented edges.
    std::vector<int> interior_edges() const;
    bool is_closed() const;

    // True if the even/odd oriented-edge sheets are disconnected (the
    // orientation double cover splits), i.e. the surface is orientable.
    bool is_orientable() const;

    // Face boundary rows in canonical form: for face 2k, the sigma-chains of
    // its boundary; starts at the lowest-index entry for a closed cycle, or
    // lists gap-separated chains ordered by their lowest start.
    std::vector<std::vector<int>> face_rows() const;

    // Lowest-index oriented edge of face f (f may be even or odd).
    int some_edge_of_face(int f) const { return face_start_[static_cast<std::size_t>(f)]; }
    // Lowest-index oriented edge with initial vertex v.
    int some_edge_of_vertex(int v) const { return vertex_start_[static_cast<std::size_t>(v)]; }

    // Degree of unoriented face f (number of boundary edges incident).
    // number of boundary edges of the face pair f (pair index, i.e. face/2)
    int face_degree(int f) const;

    // Structural checks (involution laws, orbit consistency); throws on
    // violation.  Used by tests.
    void check_invariants() const;

private:
    int check(int e) const {
        if (e < 0 || e >= 4 * num_edges_)
            throw SurfaceError("oriented edge index out of range");
        return e;
    }

    int num_edges_ = 0;
    int num_faces_ = 0;
    int num_vertices_ = 0;
    std::vector<int> sigma_, sigma_inv_;  // size 4E, SENTINEL where undefined
    std::vector<int> face_;               // left face per oriented edge
    std::vector<int> vertex_;             // initial vertex per oriented edge
    std::vector<int> face_start_, vertex_start_;
};

enum class NavQuery {
    kNextInLeftFace,
    kPreviousInLeftFace,
    kNextInRightFace,
    kPreviousInRightFace,
    kLeftEdgeOfInitialVertex,
    kRightEdgeOfInitialVertex,
    kLeftEdgeOfTerminalVertex,
    kRightEdgeOfTerminalVertex,
    kLeftFace,
    kRightFace,
    kInitialVertex,
    kTerminalVertex,
    kReversed,
    kMirrored,
};

int navigate(const CellularSurface& s, NavQuery q, int e);

// --- derived surfaces --------------------------------------------------------

// Poincaré dual: faces and vertices swap, edges correspond.  Requires a
// closed surface.  dual(dual(s)) is isomorphic to s with each oriented edge
// reversed.
CellularSurface poincare_dual(const CellularSurface& s);

// Medial surface: one 4-valent vertex per edge of s; faces correspond to the
// faces and vertices of s.  Requires a closed surface.
CellularSurface medial(const CellularSurface& s);

// --- elementary moves (immutable surgery) ------------------------------------

enum class MoveKind {
    kSplitEdgeAcross,  // subdivide edge e by a new vertex
    kSplitEdgeAlong,   // double edge e, creating a bigon face
    kSlideEdgeRight,
    kSlideEdgeLeft,
    kContractEdge,     // contract non-loop edge e, merging its endpoints
    kTruncateVertex,   // cut off vertex v (argument is a vertex index)
};

struct MoveResult {
    CellularSurface surface;
    // New unoriented edge index for splits; new face index for truncation.
    std::optional<int> created;
};

MoveResult apply_move(const CellularSurface& s, MoveKind kind, int argument);

// --- puncturing (Neumann boundary setup) -------------------------------------

struct PunctureResult {
    CellularSurface surface;
    std::vector<double> phi;    // target cone angle per unoriented face
    std::vector<double> theta;  // input theta remapped to new edge numbering
    std::vector<int> edge_map;  // old unoriented edge -> new index or SENTINEL
};

// Remove vertex v, the faces incident with it and the edges incident with it
// from a closed surface; surviving faces that lost neighbours become boundary
// faces with Φ_f = 2π − Σ 2(π−θ_e) over their hole-rim edges, interior faces
// keep Φ_f = 2π.
PunctureResult puncture_at_vertex(const CellularSurface& s, int v,
                                  const std::vector<double>& theta);

// --- Z2 homology -------------------------------------------------------------

struct HomologyReport {
    int h0 = 0, h1 = 0, h2 = 0;
};

// Betti numbers of the surface with Z2 coefficients.
HomologyReport homology(const CellularSurface& s);

// An embedded graph: a subcomplex given by unoriented edges and vertices
// (endpoints of chosen edges are added automatically).
struct EmbeddedGraph {
    std::vector<int> edges;     // unoriented edge indices
    std::vector<int> vertices;  // extra vertices (may be empty)
};

struct CutReport {
    HomologyReport relative;  // Z2 homology of the pair (surface, graph)
    int regions = 0;          // components after cutting along the graph
    int sum_h1_regions = 0;   // Σ h1 of the cut pieces (each = 1 − χ(piece))
    int graph_edges = 0;
    int graph_vertices = 0;
};

CutReport cut_along(const CellularSurface& s, const EmbeddedGraph& g);

// --- named example surfaces --------------------------------------------------

// Build a closed surface from faces given as vertex cycles.  If
// `drop_rim_edges` is set, edges used by only one face are omitted (their
// slots become gaps), producing boundary faces: used for disc examples.
CellularSurface surface_from_vertex_cycles(
    const std::vector<std::vector<int>>& faces, bool drop_rim_edges = false);

CellularSurface example_cube();
CellularSurface example_projectivized_cube();
CellularSurface example_disc_triangle();
CellularSurface example_dodecahedron();
CellularSurface example_quad_torus(int w, int h);
CellularSurface example_quadmesh(int w, int h);
CellularSurface example_hexgrid(int radius);
CellularSurface example_truncated_cube();
std::optional<CellularSurface> named_example(const std::string& name);

}  // namespace cpat
