#include "surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <set>
#include <utility>

namespace cpat {

namespace {

constexpr double kPi = std::numbers::pi;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

// The mirror image of a row slot: x ^ 3 reverses direction and switches sheet.
int mirror_slot(int x) { return x ^ 3; }

}  // namespace

CellularSurface CellularSurface::build_from_face_boundaries(
    const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw SurfaceError("no face rows given");

    int max_index = -1;
    for (const auto& row : rows) {
        bool has_edge = false;
        for (int x : row) {
            if (x == SENTINEL) continue;
            if (x < 0) throw SurfaceError("negative oriented edge index");
            has_edge = true;
            max_index = std::max(max_index, x);
        }
        if (!has_edge) throw SurfaceError("face row without any edge");
    }
    const int E = max_index / 4 + 1;
    const int n = 4 * E;

    // Duplicate / mirror-conflict detection: no entry may repeat, and for two
    // entries x, y we require y != x^3 (x^3 lives on the generated mirror
    // sheet and its face assignment is forced by x's row).
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto& row : rows)
        for (int x : row) {
            if (x == SENTINEL) continue;
            if (used[static_cast<std::size_t>(x)])
                throw SurfaceError("oriented edge used twice in face rows");
            if (used[static_cast<std::size_t>(mirror_slot(x))])
                throw SurfaceError(
                    "oriented edge conflicts with the mirror of another row entry");
            used[static_cast<std::size_t>(x)] = 1;
        }

    CellularSurface s;
    s.num_edges_ = E;
    s.num_faces_ = static_cast<int>(rows.size());
    s.sigma_.assign(static_cast<std::size_t>(n), SENTINEL);
    s.sigma_inv_.assign(static_cast<std::size_t>(n), SENTINEL);
    s.face_.assign(static_cast<std::size_t>(n), SENTINEL);

    auto set_sigma = [&](int a, int b) {
        if (s.sigma_[static_cast<std::size_t>(a)] != SENTINEL ||
            s.sigma_inv_[static_cast<std::size_t>(b)] != SENTINEL)
            throw SurfaceError("conflicting successor assignments in face rows");
        s.sigma_[static_cast<std::size_t>(a)] = b;
        s.sigma_inv_[static_cast<std::size_t>(b)] = a;
    };

    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const int f = 2 * static_cast<int>(r);
        const std::size_t d = row.size();
        for (std::size_t i = 0; i < d; ++i) {
            const int a = row[i];
            if (a == SENTINEL) continue;
            if (s.face_[static_cast<std::size_t>(a)] != SENTINEL)
                throw SurfaceError("face assignment conflict");
            s.face_[static_cast<std::size_t>(a)] = f;
            s.face_[static_cast<std::size_t>(mirror_slot(a))] = f + 1;
            const int b = row[(i + 1) % d];
            if (b == SENTINEL) continue;
            set_sigma(a, b);
            set_sigma(mirror_slot(b), mirror_slot(a));
        }
    }

    // Every edge quadruple must be touched by some row.
    for (int k = 0; k < E; ++k) {
        bool touched = false;
        for (int j = 0; j < 4; ++j)
            if (s.face_[static_cast<std::size_t>(4 * k + j)] != SENTINEL)
                touched = true;
        if (!touched) throw SurfaceError("edge quadruple never referenced");
    }

    // Vertices: classes of initial-vertex slots under  slot(e) ~ slot(ι σ⁻¹ e).
    UnionFind uf(n);
    for (int e = 0; e < n; ++e) {
        const int p = s.sigma_inv_[static_cast<std::size_t>(e)];
        if (p != SENTINEL) uf.unite(e, p ^ 2);
    }
    std::vector<int> label(static_cast<std::size_t>(n), SENTINEL);
    s.vertex_.assign(static_cast<std::size_t>(n), SENTINEL);
    int count = 0;
    for (int e = 0; e < n; ++e) {
        const int r = uf.find(e);
        if (label[static_cast<std::size_t>(r)] != SENTINEL) continue;
        const int rm = uf.find(e ^ 1);
        if (rm == r)
            throw SurfaceError("vertex coincides with its own mirror image");
        label[static_cast<std::size_t>(r)] = 2 * count;
        label[static_cast<std::size_t>(rm)] = 2 * count + 1;
        ++count;
    }
    for (int e = 0; e < n; ++e)
        s.vertex_[static_cast<std::size_t>(e)] = label[static_cast<std::size_t>(uf.find(e))];
    s.num_vertices_ = count;

    s.face_start_.assign(static_cast<std::size_t>(2 * s.num_faces_), SENTINEL);
    s.vertex_start_.assign(static_cast<std::size_t>(2 * s.num_vertices_), SENTINEL);
    for (int e = n - 1; e >= 0; --e) {
        const int f = s.face_[static_cast<std::size_t>(e)];
        if (f != SENTINEL) s.face_start_[static_cast<std::size_t>(f)] = e;
        s.vertex_start_[static_cast<std::size_t>(s.vertex_[static_cast<std::size_t>(e)])] = e;
    }
    for (int f = 0; f < 2 * s.num_faces_; ++f)
        if (s.face_start_[static_cast<std::size_t>(f)] == SENTINEL)
            throw SurfaceError("face without boundary edges");
    return s;
}

std::vector<int> CellularSurface::interior_edges() const {
    std::vector<int> out;
    for (int k = 0; k < num_edges_; ++k)
        if (edge_is_interior(k)) out.push_back(k);
    return out;
}

bool CellularSurface::is_closed() const {
    for (int e = 0; e < 4 * num_edges_; ++e)
        if (face_[static_cast<std::size_t>(e)] == SENTINEL) return false;
    return true;
}

bool CellularSurface::is_orientable() const {
    const int n = 4 * num_edges_;
    UnionFind uf(n);
    for (int e = 0; e < n; ++e) {
        uf.unite(e, e ^ 2);
        if (sigma_[static_cast<std::size_t>(e)] != SENTINEL)
            uf.unite(e, sigma_[static_cast<std::size_t>(e)]);
    }
    for (int e = 0; e < n; ++e)
        if (uf.find(e) == uf.find(e ^ 1)) return false;
    return true;
}

std::vector<std::vector<int>> CellularSurface::face_rows() const {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(num_faces_));
    std::vector<std::vector<int>> members(static_cast<std::size_t>(num_faces_));
    for (int e = 0; e < 4 * num_edges_; ++e) {
        const int f = face_[static_cast<std::size_t>(e)];
        if (f != SENTINEL && f % 2 == 0)
            members[static_cast<std::size_t>(f / 2)].push_back(e);
    }
    for (int r = 0; r < num_faces_; ++r) {
        auto& row = rows[static_cast<std::size_t>(r)];
        const auto& mem = members[static_cast<std::size_t>(r)];
        std::vector<int> starts;
        for (int e : mem)
            if (sigma_inv_[static_cast<std::size_t>(e)] == SENTINEL) starts.push_back(e);
        if (starts.empty()) {
            // closed cycle
            const int start = *std::min_element(mem.begin(), mem.end());
            int e = start;
            do {
                row.push_back(e);
                e = sigma_[static_cast<std::size_t>(e)];
            } while (e != start);
        } else {
            std::sort(starts.begin(), starts.end());
            for (int e : starts) {
                while (e != SENTINEL) {
                    row.push_back(e);
                    e = sigma_[static_cast<std::size_t>(e)];
                }
                row.push_back(SENTINEL);
            }
        }
    }
    return rows;
}

int CellularSurface::face_degree(int f) const {
    int d = 0;
    for (int k = 0; k < num_edges_; ++k)
        for (int j : {0, 2}) {
            // a slot and its mirror carry the two members of one face pair
            int fa = face_[static_cast<std::size_t>(4 * k + j)];
            if (fa == SENTINEL) fa = face_[static_cast<std::size_t>(4 * k + j + 1)];
            if (fa != SENTINEL && fa / 2 == f) ++d;
        }
    return d;
}

void CellularSurface::check_invariants() const {
    const int n = 4 * num_edges_;
    for (int e = 0; e < n; ++e) {
        const int nx = sigma_[static_cast<std::size_t>(e)];
        if (nx != SENTINEL) {
            if (sigma_inv_[static_cast<std::size_t>(nx)] != e)
                throw SurfaceError("sigma inverse mismatch");
            if (face_[static_cast<std::size_t>(nx)] != face_[static_cast<std::size_t>(e)])
                throw SurfaceError("sigma leaves its face");
        }
        // conjugation law  σ(τe) = τ(ι(σ⁻¹(ι(e))))
        {
            const int lhs = sigma_[static_cast<std::size_t>(e ^ 1)];
            const int p = sigma_inv_[static_cast<std::size_t>(e ^ 2)];
            const int rhs = (p == SENTINEL) ? SENTINEL : ((p ^ 2) ^ 1);
            if (lhs != rhs) throw SurfaceError("tau conjugation law violated");
        }
        // mirror law for sigma: σ(x) = (σ⁻¹(x^3))^3 wherever either side exists
        const int q = sigma_inv_[static_cast<std::size_t>(e ^ 3)];
        const int expect = (q == SENTINEL) ? SENTINEL : (q ^ 3);
        if (nx != expect) throw SurfaceError("mirror sheet law violated");
        // mirror faces:  left(τe) = τ(right(e))
        const int lf = face_[static_cast<std::size_t>(e ^ 1)];
        const int rf = face_[static_cast<std::size_t>(e ^ 2)];
        const int want = (rf == SENTINEL) ? SENTINEL : (rf ^ 1);
        if (lf != want) throw SurfaceError("mirror face law violated");
        // mirror vertices: initial(τe) = τ(initial(e))
        if (vertex_[static_cast<std::size_t>(e ^ 1)] !=
            (vertex_[static_cast<std::size_t>(e)] ^ 1))
            throw SurfaceError("mirror vertex law violated");
        // vertex orbit relation
        const int pr = sigma_inv_[static_cast<std::size_t>(e)];
        if (pr != SENTINEL &&
            vertex_[static_cast<std::size_t>(pr ^ 2)] != vertex_[static_cast<std::size_t>(e)])
            throw SurfaceError("vertex orbit relation violated");
    }
}

int navigate(const CellularSurface& s, NavQuery q, int e) {
    switch (q) {
        case NavQuery::kNextInLeftFace: return s.next_in_left_face(e);
        case NavQuery::kPreviousInLeftFace: return s.previous_in_left_face(e);
        case NavQuery::kNextInRightFace: return s.next_in_right_face(e);
        case NavQuery::kPreviousInRightFace: return s.previous_in_right_face(e);
        case NavQuery::kLeftEdgeOfInitialVertex: return s.left_edge_of_initial_vertex(e);
        case NavQuery::kRightEdgeOfInitialVertex: return s.right_edge_of_initial_vertex(e);
        case NavQuery::kLeftEdgeOfTerminalVertex: return s.left_edge_of_terminal_vertex(e);
        case NavQuery::kRightEdgeOfTerminalVertex: return s.right_edge_of_terminal_vertex(e);
        case NavQuery::kLeftFace: return s.left_face(e);
        case NavQuery::kRightFace: return s.right_face(e);
        case NavQuery::kInitialVertex: return s.initial_vertex(e);
        case NavQuery::kTerminalVertex: return s.terminal_vertex(e);
        case NavQuery::kReversed: return CellularSurface::reversed(e);
        case NavQuery::kMirrored: return CellularSurface::mirrored(e);
    }
    throw SurfaceError("unknown navigation query");
}

// --- dual --------------------------------------------------------------------

CellularSurface poincare_dual(const CellularSurface& s) {
    if (!s.is_closed()) throw SurfaceError("dual requires a closed surface");
    const int n = s.oriented_count();
    // m swaps slots 4k+1 <-> 4k+3; σ_dual = m ∘ ι ∘ σ⁻¹ ∘ m satisfies the
    // winged-edge laws and has the vertex cycles of s as its face cycles.
    auto m = [](int e) { return (e & 1) ? (e ^ 2) : e; };
    std::vector<int> sd(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e)
        sd[static_cast<std::size_t>(e)] = m(s.previous_in_left_face(m(e)) ^ 2);

    // Emit one σ_dual-orbit per mirror pair as a face row, ascending by the
    // lowest oriented edge contained.
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> rows;
    for (int e0 = 0; e0 < n; ++e0) {
        if (seen[static_cast<std::size_t>(e0)]) continue;
        std::vector<int> orbit;
        int e = e0;
        do {
            orbit.push_back(e);
            seen[static_cast<std::size_t>(e)] = 1;
            e = sd[static_cast<std::size_t>(e)];
        } while (e != e0);
        // mark the mirror orbit as consumed as well
        for (int x : orbit) seen[static_cast<std::size_t>(x ^ 3)] = 1;
        rows.push_back(std::move(orbit));
    }
    return CellularSurface::build_from_face_boundaries(rows);
}

// --- medial ------------------------------------------------------------------

CellularSurface medial(const CellularSurface& s) {
    if (!s.is_closed() || !s.is_orientable())
        throw SurfaceError("medial requires a closed orientable surface");
    // Medial unoriented edge per corner: the corner cut by the segment
    // mid(e) -> mid(σe) inside the left face of e.  Slot coding: forward
    // traversal of corner(e) gets index 4c(e), with c(4k)=2k, c(4k+2)=2k+1.
    auto forward = [&](int e) {
        const int k = e / 4;
        const int c = 2 * k + ((e & 2) ? 1 : 0);
        return 4 * c;
    };
    std::vector<std::vector<int>> rows;
    // Face polygons, even faces only (one per mirror pair).
    for (const auto& fr : s.face_rows()) {
        std::vector<int> row;
        row.reserve(fr.size());
        for (int e : fr) row.push_back(forward(e));
        rows.push_back(std::move(row));
    }
    // Vertex polygons, even vertices only, traversing corners backward.
    std::vector<char> done(static_cast<std::size_t>(2 * s.num_vertices()), 0);
    for (int v = 0; v < 2 * s.num_vertices(); v += 2) {
        if (done[static_cast<std::size_t>(v)]) continue;
        done[static_cast<std::size_t>(v)] = 1;
        // edges terminating at v, in the backward cyclic order e -> σ⁻¹ ι e
        const int a0 = s.some_edge_of_vertex(v) ^ 2;  // terminal vertex v
        std::vector<int> row;
        int e = a0;
        do {
            row.push_back(forward(e) ^ 2);
            e = s.right_edge_of_terminal_vertex(e);
        } while (e != a0);
        rows.push_back(std::move(row));
    }
    return CellularSurface::build_from_face_boundaries(rows);
}

// --- moves -------------------------------------------------------------------

namespace {

struct RowSet {
    std::vector<std::vector<int>> rows;

    // locate the row entry equal to x; returns (row, pos) or nullopt
    std::optional<std::pair<std::size_t, std::size_t>> find(int x) const {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t i = 0; i < rows[r].size(); ++i)
                if (rows[r][i] == x) return std::make_pair(r, i);
        return std::nullopt;
    }
    void insert_after(std::size_t r, std::size_t i, int x) {
        rows[r].insert(rows[r].begin() + static_cast<std::ptrdiff_t>(i) + 1, x);
    }
    void insert_before(std::size_t r, std::size_t i, int x) {
        rows[r].insert(rows[r].begin() + static_cast<std::ptrdiff_t>(i), x);
    }
    void erase(std::size_t r, std::size_t i) {
        rows[r].erase(rows[r].begin() + static_cast<std::ptrdiff_t>(i));
    }
};

// Remove the unoriented edge `k` from all rows and renumber higher quads down.
void remove_and_compact(RowSet& rs, int k) {
    for (auto& row : rs.rows) {
        std::vector<int> out;
        for (int x : row) {
            if (x != SENTINEL && x / 4 == k) continue;
            if (x != SENTINEL && x / 4 > k) x -= 4;
            out.push_back(x);
        }
        row = std::move(out);
    }
}

MoveResult split_edge_across(const CellularSurface& s, int e) {
    RowSet rs{s.face_rows()};
    const int n = 4 * s.num_edges();  // forward slot of the new edge
    bool touched = false;
    for (int x : {e, e ^ 1, e ^ 2, e ^ 3}) {
        auto loc = rs.find(x);
        if (!loc) continue;
        touched = true;
        const int partner = n ^ (x ^ e);
        if ((x ^ e) & 2)
            rs.insert_before(loc->first, loc->second, partner);  // reverse side
        else
            rs.insert_after(loc->first, loc->second, partner);  // same direction
    }
    if (!touched) throw SurfaceError("split_edge_across: edge not in any face");
    return {CellularSurface::build_from_face_boundaries(rs.rows), s.num_edges()};
}

MoveResult split_edge_along(const CellularSurface& s, int e) {
    RowSet rs{s.face_rows()};
    const int n = 4 * s.num_edges();
    // Move the right side of e over to the new parallel edge.
    for (int x : {e ^ 2, e ^ 3}) {
        auto loc = rs.find(x);
        if (!loc) continue;
        rs.rows[loc->first][loc->second] = n ^ (x ^ e);
    }
    // The bigon between e and the new edge.
    rs.rows.push_back({e ^ 2, n});
    return {CellularSurface::build_from_face_boundaries(rs.rows), s.num_edges()};
}

// The literal cyclic successor / predecessor of a row entry, failing across
// SENTINEL gaps.
std::optional<std::size_t> row_successor(const std::vector<int>& row, std::size_t i) {
    const std::size_t j = (i + 1) % row.size();
    if (row[j] == SENTINEL) return std::nullopt;
    return j;
}
std::optional<std::size_t> row_predecessor(const std::vector<int>& row, std::size_t i) {
    const std::size_t j = (i + row.size() - 1) % row.size();
    if (row[j] == SENTINEL) return std::nullopt;
    return j;
}

MoveResult slide_edge_right(const CellularSurface& s, int e) {
    RowSet rs{s.face_rows()};
    // locate e's side in the rows (either sheet)
    std::optional<std::pair<std::size_t, std::size_t>> loc_l;
    int x_l = SENTINEL;
    for (int x : {e, e ^ 1})
        if ((loc_l = rs.find(x))) {
            x_l = x;
            break;
        }
    if (!loc_l) throw SurfaceError("slide_edge_right: left side is a hole");
    auto succ = row_successor(rs.rows[loc_l->first], loc_l->second);
    if (!succ) throw SurfaceError("slide_edge_right: no successor to slide");
    const int a_lit = rs.rows[loc_l->first][*succ];
    if (a_lit / 4 == e / 4) throw SurfaceError("slide_edge_right not applicable");
    rs.erase(loc_l->first, *succ);

    std::optional<std::pair<std::size_t, std::size_t>> loc_r;
    int x_r = SENTINEL;
    for (int x : {e ^ 2, e ^ 3})
        if ((loc_r = rs.find(x))) {
            x_r = x;
            break;
        }
    if (!loc_r) throw SurfaceError("slide_edge_right: right side is a hole");
    rs.insert_before(loc_r->first, loc_r->second,
                     a_lit ^ (x_l ^ e) ^ (x_r ^ (e ^ 2)));
    return {CellularSurface::build_from_face_boundaries(rs.rows), std::nullopt};
}

MoveResult slide_edge_left(const CellularSurface& s, int e) {
    RowSet rs{s.face_rows()};
    std::optional<std::pair<std::size_t, std::size_t>> loc_r;
    int x_r = SENTINEL;
    for (int x : {e ^ 2, e ^ 3})
        if ((loc_r = rs.find(x))) {
            x_r = x;
            break;
        }
    if (!loc_r) throw SurfaceError("slide_edge_left: right side is a hole");
    auto pred = row_predecessor(rs.rows[loc_r->first], loc_r->second);
    if (!pred) throw SurfaceError("slide_edge_left: no predecessor to slide");
    const int p_lit = rs.rows[loc_r->first][*pred];
    if (p_lit / 4 == e / 4) throw SurfaceError("slide_edge_left not applicable");
    rs.erase(loc_r->first, *pred);

    std::optional<std::pair<std::size_t, std::size_t>> loc_l;
    int x_l = SENTINEL;
    for (int x : {e, e ^ 1})
        if ((loc_l = rs.find(x))) {
            x_l = x;
            break;
        }
    if (!loc_l) throw SurfaceError("slide_edge_left: left side is a hole");
    rs.insert_after(loc_l->first, loc_l->second,
                    p_lit ^ (x_r ^ (e ^ 2)) ^ (x_l ^ e));
    return {CellularSurface::build_from_face_boundaries(rs.rows), std::nullopt};
}

MoveResult contract_edge(const CellularSurface& s, int e) {
    if ((s.initial_vertex(e) / 2) == (s.terminal_vertex(e) / 2))
        throw SurfaceError("contract_edge: cannot contract a loop");
    RowSet rs{s.face_rows()};
    remove_and_compact(rs, e / 4);
    for (auto& row : rs.rows)
        if (row.empty()) throw SurfaceError("contract_edge: face would vanish");
    return {CellularSurface::build_from_face_boundaries(rs.rows), std::nullopt};
}

MoveResult truncate_vertex(const CellularSurface& s, int v) {
    if (v < 0 || v >= s.num_vertices())
        throw SurfaceError("truncate_vertex: vertex index out of range");
    // fan of edges terminating at v, cyclic via the left edge of the
    // terminal vertex
    const int f0 = s.some_edge_of_vertex(2 * v) ^ 2;
    std::vector<int> fan;
    int e = f0;
    do {
        fan.push_back(e);
        e = s.left_edge_of_terminal_vertex(e);
        if (e == SENTINEL)
            throw SurfaceError("truncate_vertex requires an interior vertex");
    } while (e != f0);

    RowSet rs{s.face_rows()};
    const int base = s.num_edges();
    std::vector<int> new_forward(fan.size());
    for (std::size_t i = 0; i < fan.size(); ++i) {
        const int fi = fan[i];
        const int ni = 4 * (base + static_cast<int>(i));
        // locate fi (or its mirror) in the rows and insert the cut edge after
        bool ok = false;
        for (int x : {fi, fi ^ 1}) {
            auto loc = rs.find(x);
            if (!loc) continue;
            const int slot = ni ^ (x ^ fi);
            rs.insert_after(loc->first, loc->second, slot);
            new_forward[i] = ni;
            ok = true;
            break;
        }
        if (!ok) throw SurfaceError("truncate_vertex: fan edge not in rows");
    }
    // The truncation polygon traverses the cut edges reversed, in reversed
    // cyclic order.
    std::vector<int> poly;
    poly.push_back(new_forward[0] ^ 2);
    for (std::size_t i = fan.size(); i-- > 1;) poly.push_back(new_forward[i] ^ 2);
    rs.rows.push_back(std::move(poly));
    return {CellularSurface::build_from_face_boundaries(rs.rows), s.num_faces()};
}

}  // namespace

MoveResult apply_move(const CellularSurface& s, MoveKind kind, int argument) {
    switch (kind) {
        case MoveKind::kSplitEdgeAcross: return split_edge_across(s, argument);
        case MoveKind::kSplitEdgeAlong: return split_edge_along(s, argument);
        case MoveKind::kSlideEdgeRight: return slide_edge_right(s, argument);
        case MoveKind::kSlideEdgeLeft: return slide_edge_left(s, argument);
        case MoveKind::kContractEdge: return contract_edge(s, argument);
        case MoveKind::kTruncateVertex: return truncate_vertex(s, argument);
    }
    throw SurfaceError("unknown move");
}

// --- puncture ----------------------------------------------------------------

PunctureResult puncture_at_vertex(const CellularSurface& s, int v,
                                  const std::vector<double>& theta) {
    if (!s.is_closed()) throw SurfaceError("puncture requires a closed surface");
    if (v < 0 || v >= s.num_vertices())
        throw SurfaceError("puncture: vertex index out of range");
    if (static_cast<int>(theta.size()) != s.num_edges())
        throw SurfaceError("puncture: theta size mismatch");

    std::vector<char> face_removed(static_cast<std::size_t>(s.num_faces()), 0);
    std::vector<char> edge_removed(static_cast<std::size_t>(s.num_edges()), 0);
    for (int e = 0; e < s.oriented_count(); ++e) {
        if (s.initial_vertex(e) / 2 != v) continue;
        edge_removed[static_cast<std::size_t>(e / 4)] = 1;
        if (s.left_face(e) != SENTINEL)
            face_removed[static_cast<std::size_t>(s.left_face(e) / 2)] = 1;
    }

    std::vector<std::vector<int>> old_rows = s.face_rows();
    std::vector<int> edge_map(static_cast<std::size_t>(s.num_edges()), SENTINEL);
    int next_edge = 0;
    for (int k = 0; k < s.num_edges(); ++k)
        if (!edge_removed[static_cast<std::size_t>(k)])
            edge_map[static_cast<std::size_t>(k)] = next_edge++;

    std::vector<std::vector<int>> rows;
    std::vector<int> kept_faces;
    for (int f = 0; f < s.num_faces(); ++f) {
        if (face_removed[static_cast<std::size_t>(f)]) continue;
        kept_faces.push_back(f);
        std::vector<int> row;
        for (int x : old_rows[static_cast<std::size_t>(f)]) {
            if (x == SENTINEL) {
                row.push_back(SENTINEL);
                continue;
            }
            if (edge_removed[static_cast<std::size_t>(x / 4)])
                throw SurfaceError("puncture: surviving face touches the vertex");
            row.push_back(4 * edge_map[static_cast<std::size_t>(x / 4)] + (x % 4));
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw SurfaceError("puncture leaves fewer than two faces");

    PunctureResult out;
    out.surface = CellularSurface::build_from_face_boundaries(rows);
    out.edge_map = std::move(edge_map);
    out.theta.assign(static_cast<std::size_t>(out.surface.num_edges()), 0.0);
    for (int k = 0; k < s.num_edges(); ++k)
        if (out.edge_map[static_cast<std::size_t>(k)] != SENTINEL)
            out.theta[static_cast<std::size_t>(out.edge_map[static_cast<std::size_t>(k)])] =
                theta[static_cast<std::size_t>(k)];

    // Φ_f = 2π − Σ 2(π−θ_e) over hole-rim edges of f; 2π for interior faces.
    out.phi.assign(kept_faces.size(), 2.0 * kPi);
    for (std::size_t i = 0; i < kept_faces.size(); ++i) {
        for (int x : old_rows[static_cast<std::size_t>(kept_faces[i])]) {
            if (x == SENTINEL) continue;
            const int opposite = s.right_face(x);
            if (opposite != SENTINEL &&
                face_removed[static_cast<std::size_t>(opposite / 2)])
                out.phi[i] -= 2.0 * (kPi - theta[static_cast<std::size_t>(x / 4)]);
        }
    }
    return out;
}

// --- homology ----------------------------------------------------------------

namespace {

// rank of a Z2 matrix given as columns of bitsets
int z2_rank(std::vector<std::vector<std::uint64_t>> cols, int nrows) {
    int rank = 0;
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<int> basis_pivot;
    for (auto& col : cols) {
        // reduce against the basis
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const int p = basis_pivot[b];
            if (col[static_cast<std::size_t>(p / 64)] >> (p % 64) & 1u)
                for (std::size_t w = 0; w < col.size(); ++w) col[w] ^= basis[b][w];
        }
        int piv = -1;
        for (int r = 0; r < nrows && piv < 0; ++r)
            if (col[static_cast<std::size_t>(r / 64)] >> (r % 64) & 1u) piv = r;
        if (piv >= 0) {
            basis.push_back(col);
            basis_pivot.push_back(piv);
            ++rank;
        }
    }
    return rank;
}

std::vector<std::uint64_t> make_bits(int n) {
    return std::vector<std::uint64_t>(static_cast<std::size_t>((n + 63) / 64), 0);
}

void toggle(std::vector<std::uint64_t>& bits, int i) {
    bits[static_cast<std::size_t>(i / 64)] ^= (std::uint64_t{1} << (i % 64));
}

}  // namespace

HomologyReport homology(const CellularSurface& s) {
    const int F = s.num_faces(), E = s.num_edges(), V = s.num_vertices();
    std::vector<std::vector<std::uint64_t>> d2(static_cast<std::size_t>(F),
                                               make_bits(E));
    std::vector<std::vector<std::uint64_t>> d1(static_cast<std::size_t>(E),
                                               make_bits(V));
    for (int k = 0; k < E; ++k) {
        for (int e : {4 * k, 4 * k + 2}) {
            const int f = s.left_face(e);
            if (f != SENTINEL) toggle(d2[static_cast<std::size_t>(f / 2)], k);
        }
        const int a = s.initial_vertex(4 * k) / 2;
        const int b = s.terminal_vertex(4 * k) / 2;
        if (a != b) {
            toggle(d1[static_cast<std::size_t>(k)], a);
            toggle(d1[static_cast<std::size_t>(k)], b);
        }
    }
    const int r2 = z2_rank(std::move(d2), E);
    const int r1 = z2_rank(std::move(d1), V);
    HomologyReport h;
    h.h2 = F - r2;
    h.h1 = E - r1 - r2;
    h.h0 = V - r1;
    return h;
}

CutReport cut_along(const CellularSurface& s, const EmbeddedGraph& g) {
    const int F = s.num_faces(), E = s.num_edges(), V = s.num_vertices();
    std::vector<char> in_e(static_cast<std::size_t>(E), 0);
    std::vector<char> in_v(static_cast<std::size_t>(V), 0);
    for (int k : g.edges) {
        if (k < 0 || k >= E) throw SurfaceError("cut_along: edge out of range");
        in_e[static_cast<std::size_t>(k)] = 1;
        in_v[static_cast<std::size_t>(s.initial_vertex(4 * k) / 2)] = 1;
        in_v[static_cast<std::size_t>(s.terminal_vertex(4 * k) / 2)] = 1;
    }
    for (int v : g.vertices) {
        if (v < 0 || v >= V) throw SurfaceError("cut_along: vertex out of range");
        in_v[static_cast<std::size_t>(v)] = 1;
    }

    CutReport rep;
    rep.graph_edges = static_cast<int>(std::count(in_e.begin(), in_e.end(), 1));
    rep.graph_vertices = static_cast<int>(std::count(in_v.begin(), in_v.end(), 1));
    if (rep.graph_vertices == 0) throw SurfaceError("cut_along: empty graph");

    // Relative Z2 homology of the pair.
    std::vector<std::vector<std::uint64_t>> d2(static_cast<std::size_t>(F),
                                               make_bits(E));
    std::vector<std::vector<std::uint64_t>> d1;
    int e_rel = 0, v_rel = 0;
    std::vector<int> vmap(static_cast<std::size_t>(V), -1);
    for (int v = 0; v < V; ++v)
        if (!in_v[static_cast<std::size_t>(v)]) vmap[static_cast<std::size_t>(v)] = v_rel++;
    for (int k = 0; k < E; ++k) {
        if (in_e[static_cast<std::size_t>(k)]) continue;
        ++e_rel;
        auto col = make_bits(V);
        const int a = s.initial_vertex(4 * k) / 2;
        const int b = s.terminal_vertex(4 * k) / 2;
        if (a != b) {
            if (vmap[static_cast<std::size_t>(a)] >= 0)
                toggle(col, vmap[static_cast<std::size_t>(a)]);
            if (vmap[static_cast<std::size_t>(b)] >= 0)
                toggle(col, vmap[static_cast<std::size_t>(b)]);
        }
        d1.push_back(std::move(col));
        for (int e : {4 * k, 4 * k + 2}) {
            const int f = s.left_face(e);
            if (f != SENTINEL) toggle(d2[static_cast<std::size_t>(f / 2)], k);
        }
    }
    const int r2 = z2_rank(std::move(d2), E);
    const int r1 = z2_rank(std::move(d1), v_rel);
    rep.relative.h2 = F - r2;
    rep.relative.h1 = e_rel - r1 - r2;
    rep.relative.h0 = v_rel - r1;

    // Regions: components of the face graph across non-graph edges.
    UnionFind uf(F);
    for (int k = 0; k < E; ++k) {
        if (in_e[static_cast<std::size_t>(k)]) continue;
        const int fl = s.left_face(4 * k);
        const int fr = s.right_face(4 * k);
        if (fl != SENTINEL && fr != SENTINEL) uf.unite(fl / 2, fr / 2);
    }
    std::vector<int> region_of(static_cast<std::size_t>(F));
    std::vector<int> region_index;
    for (int f = 0; f < F; ++f) {
        const int r = uf.find(f);
        auto it = std::find(region_index.begin(), region_index.end(), r);
        if (it == region_index.end()) {
            region_of[static_cast<std::size_t>(f)] = static_cast<int>(region_index.size());
            region_index.push_back(r);
        } else {
            region_of[static_cast<std::size_t>(f)] =
                static_cast<int>(it - region_index.begin());
        }
    }
    rep.regions = static_cast<int>(region_index.size());

    // Per-region Euler characteristic of the cut piece.
    std::vector<int> faces_in(region_index.size(), 0);
    std::vector<int> edges_in(region_index.size(), 0);
    std::vector<int> verts_in(region_index.size(), 0);
    std::vector<char> touches_cut(region_index.size(), 0);
    for (int f = 0; f < F; ++f) ++faces_in[static_cast<std::size_t>(region_of[static_cast<std::size_t>(f)])];
    for (int k = 0; k < E; ++k) {
        const int fl = s.left_face(4 * k);
        const int fr = s.right_face(4 * k);
        if (!in_e[static_cast<std::size_t>(k)]) {
            // counts once, in the region of its face(s)
            const int f = (fl != SENTINEL) ? fl : fr;
            if (f != SENTINEL)
                ++edges_in[static_cast<std::size_t>(region_of[static_cast<std::size_t>(f / 2)])];
            if (fl == SENTINEL || fr == SENTINEL) {
                const int ff = (fl != SENTINEL) ? fl : fr;
                if (ff != SENTINEL)
                    touches_cut[static_cast<std::size_t>(
                        region_of[static_cast<std::size_t>(ff / 2)])] = 1;  // surface boundary
            }
        } else {
            // each side becomes a separate boundary edge of its region
            for (int f : {fl, fr})
                if (f != SENTINEL) {
                    ++edges_in[static_cast<std::size_t>(region_of[static_cast<std::size_t>(f / 2)])];
                    touches_cut[static_cast<std::size_t>(
                        region_of[static_cast<std::size_t>(f / 2)])] = 1;
                }
        }
    }
    for (int v = 0; v < V; ++v) {
        // wedges around the even oriented vertex 2v
        std::vector<int> slots;
        for (int e = 0; e < s.oriented_count(); ++e)
            if (s.initial_vertex(e) == 2 * v && s.left_face(e) != SENTINEL)
                slots.push_back(e);
        if (!in_v[static_cast<std::size_t>(v)]) {
            if (!slots.empty())
                ++verts_in[static_cast<std::size_t>(
                    region_of[static_cast<std::size_t>(s.left_face(slots.front()) / 2)])];
            continue;
        }
        // vertex on the graph: split into arcs separated by graph edges
        if (slots.empty()) continue;
        bool any_cut_edge = false;
        for (int e : slots)
            if (in_e[static_cast<std::size_t>(e / 4)]) any_cut_edge = true;
        for (int e = 0; e < s.oriented_count(); ++e)
            if (s.initial_vertex(e) == 2 * v && in_e[static_cast<std::size_t>(e / 4)])
                any_cut_edge = true;
        if (!any_cut_edge) {
            // isolated graph vertex: puncture, the vertex point is removed
            touches_cut[static_cast<std::size_t>(
                region_of[static_cast<std::size_t>(s.left_face(slots.front()) / 2)])] = 1;
            continue;
        }
        UnionFind wuf(static_cast<int>(slots.size()));
        auto index_of = [&](int e) {
            for (std::size_t i = 0; i < slots.size(); ++i)
                if (slots[i] == e) return static_cast<int>(i);
            return -1;
        };
        for (std::size_t i = 0; i < slots.size(); ++i) {
            // wedge(e) is bounded by slots  ισ⁻¹(e)  and  e; it touches
            // wedge(ισ⁻¹ e) across the slot ισ⁻¹(e)
            const int a = s.left_edge_of_initial_vertex(slots[i]);
            if (a == SENTINEL) continue;
            if (in_e[static_cast<std::size_t>(a / 4)]) continue;
            const int j = index_of(a);
            if (j >= 0) wuf.unite(static_cast<int>(i), j);
        }
        std::set<int> arcs;
        for (std::size_t i = 0; i < slots.size(); ++i)
            arcs.insert(wuf.find(static_cast<int>(i)));
        for (int a : arcs) {
            const int region =
                region_of[static_cast<std::size_t>(s.left_face(slots[static_cast<std::size_t>(a)]) / 2)];
            ++verts_in[static_cast<std::size_t>(region)];
            touches_cut[static_cast<std::size_t>(region)] = 1;
        }
    }
    rep.sum_h1_regions = 0;
    for (std::size_t j = 0; j < region_index.size(); ++j) {
        const int chi = faces_in[j] - edges_in[j] + verts_in[j];
        rep.sum_h1_regions += (touches_cut[j] ? 1 : 2) - chi;
    }
    return rep;
}

// --- examples ----------------------------------------------------------------

CellularSurface surface_from_vertex_cycles(
    const std::vector<std::vector<int>>& faces, bool drop_rim_edges) {
    // Assign unoriented edge numbers to vertex pairs in order of appearance.
    std::vector<std::pair<int, int>> edges;  // directed pair of first use
    std::vector<int> usage;
    auto edge_id = [&](int u, int v, bool create) {
        for (std::size_t k = 0; k < edges.size(); ++k)
            if ((edges[k] == std::make_pair(u, v)) ||
                (edges[k] == std::make_pair(v, u)))
                return static_cast<int>(k);
        if (!create) return -1;
        edges.emplace_back(u, v);
        usage.push_back(0);
        return static_cast<int>(edges.size()) - 1;
    };
    for (const auto& f : faces)
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int u = f[i], v = f[(i + 1) % f.size()];
            ++usage[static_cast<std::size_t>(edge_id(u, v, true))];
        }
    // dropped rim edges must not leave gaps in the edge numbering
    std::vector<int> renumber(edges.size(), SENTINEL);
    int next_id = 0;
    for (std::size_t k = 0; k < edges.size(); ++k)
        if (!drop_rim_edges || usage[k] >= 2) renumber[k] = next_id++;
    std::vector<std::vector<int>> rows;
    for (const auto& f : faces) {
        std::vector<int> row;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int u = f[i], v = f[(i + 1) % f.size()];
            const int k = edge_id(u, v, false);
            if (drop_rim_edges && usage[static_cast<std::size_t>(k)] < 2) {
                if (row.empty() || row.back() != SENTINEL) row.push_back(SENTINEL);
                continue;
            }
            const bool forward = edges[static_cast<std::size_t>(k)] == std::make_pair(u, v);
            row.push_back(4 * renumber[static_cast<std::size_t>(k)] + (forward ? 0 : 2));
        }
        // avoid duplicate sentinel when the cycle wraps around a rim corner
        if (row.size() > 1 && row.front() == SENTINEL && row.back() == SENTINEL)
            row.pop_back();
        rows.push_back(std::move(row));
    }
    return CellularSurface::build_from_face_boundaries(rows);
}

CellularSurface example_cube() {
    return CellularSurface::build_from_face_boundaries({{0, 4, 8, 12},
                                                        {2, 16, 32, 22},
                                                        {6, 20, 36, 26},
                                                        {10, 24, 40, 30},
                                                        {14, 28, 44, 18},
                                                        {34, 46, 42, 38}});
}

CellularSurface example_projectivized_cube() {
    return CellularSurface::build_from_face_boundaries(
        {{0, 4, 8, 12}, {2, 16, 9, 22}, {6, 20, 13, 17}});
}

CellularSurface example_disc_triangle() {
    return CellularSurface::build_from_face_boundaries({{0, 4, 8}});
}

CellularSurface example_dodecahedron() {
    // Faces of the regular dodecahedron as vertex cycles.
    static const std::vector<std::vector<int>> faces = {
        {0, 1, 2, 3, 4},      {0, 5, 10, 6, 1},     {1, 6, 11, 7, 2},
        {2, 7, 12, 8, 3},     {3, 8, 13, 9, 4},     {4, 9, 14, 5, 0},
        {15, 16, 11, 6, 10},  {16, 17, 12, 7, 11},  {17, 18, 13, 8, 12},
        {18, 19, 14, 9, 13},  {19, 15, 10, 5, 14},  {19, 18, 17, 16, 15}};
    return surface_from_vertex_cycles(faces);
}

CellularSurface example_quad_torus(int w, int h) {
    if (w < 2 || h < 2) throw SurfaceError("quad torus needs w, h >= 2");
    auto eh = [&](int i, int j) { return j * w + i; };                // face(i,j)-face(i+1,j)
    auto ev = [&](int i, int j) { return w * h + j * w + i; };       // face(i,j)-face(i,j+1)
    std::vector<std::vector<int>> rows;
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            rows.push_back({4 * eh(i, j), 4 * ev(i, j),
                            4 * eh((i + w - 1) % w, j) + 2,
                            4 * ev(i, (j + h - 1) % h) + 2});
    return CellularSurface::build_from_face_boundaries(rows);
}

CellularSurface example_quadmesh(int w, int h) {
    if (w < 2 || h < 2) throw SurfaceError("quadmesh needs w, h >= 2");
    std::vector<std::vector<int>> faces;
    auto vid = [&](int i, int j) { return j * (w + 1) + i; };
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    return surface_from_vertex_cycles(faces, /*drop_rim_edges=*/true);
}

CellularSurface example_hexgrid(int radius) {
    if (radius < 1) throw SurfaceError("hexgrid needs radius >= 1");
    // Hexagonal cells in axial coordinates |q|,|r|,|q+r| <= radius; corners
    // identified by doubled coordinates so they can be shared between cells.
    std::vector<std::pair<int, int>> corner_ids;
    auto corner = [&](int x, int y) {
        for (std::size_t i = 0; i < corner_ids.size(); ++i)
            if (corner_ids[i] == std::make_pair(x, y)) return static_cast<int>(i);
        corner_ids.emplace_back(x, y);
        return static_cast<int>(corner_ids.size()) - 1;
    };
    std::vector<std::vector<int>> faces;
    for (int q = -radius; q <= radius; ++q)
        for (int r = -radius; r <= radius; ++r) {
            if (std::abs(q + r) > radius) continue;
            // center of the hex in a doubled lattice
            const int cx = 4 * q + 2 * r, cy = 3 * r;
            faces.push_back({corner(cx + 2, cy + 1), corner(cx, cy + 2),
                             corner(cx - 2, cy + 1), corner(cx - 2, cy - 1),
                             corner(cx, cy - 2), corner(cx + 2, cy - 1)});
        }
    return surface_from_vertex_cycles(faces, /*drop_rim_edges=*/true);
}

CellularSurface example_truncated_cube() {
    CellularSurface s = example_cube();
    // Cut every original corner: repeatedly truncate a vertex all of whose
    // faces are larger than triangles (freshly created corner faces are
    // triangles, so each original vertex is cut exactly once).
    for (;;) {
        int pick = SENTINEL;
        for (int v = 0; v < 2 * s.num_vertices() && pick == SENTINEL; v += 2) {
            bool ok = true;
            for (int e = 0; e < s.oriented_count() && ok; ++e)
                if (s.initial_vertex(e) == v && s.left_face(e) != SENTINEL &&
                    s.face_degree(s.left_face(e) / 2) <= 3)
                    ok = false;
            if (ok) pick = v;
        }
        if (pick == SENTINEL) break;
        s = apply_move(s, MoveKind::kTruncateVertex, pick / 2).surface;
    }
    return s;
}

std::optional<CellularSurface> named_example(const std::string& name) {
    if (name == "cube") return example_cube();
    if (name == "projectivized_cube") return example_projectivized_cube();
    if (name == "disc") return example_disc_triangle();
    if (name == "dodecahedron") return example_dodecahedron();
    if (name == "quad_torus") return example_quad_torus(2, 2);
    if (name == "quadmesh") return example_quadmesh(3, 3);
    if (name == "hexgrid") return example_hexgrid(1);
    if (name == "truncated_cube") return example_truncated_cube();
    return std::nullopt;
}

}  // namespace cpat
