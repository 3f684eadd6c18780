#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flagopp/bitset.hpp"
#include "flagopp/graph.hpp"
#include "flagopp/projective.hpp"

namespace flagopp {

// Incident (point, line) pair of a generalized quadrangle.
struct Flag {
    int point_id;
    int line_id;
};

// Abstract incidence representation of a generalized quadrangle of order
// (s,t): every line has s+1 points, every point lies on t+1 lines, two
// points share at most one line, and every non-incident point-line pair
// (P,l) has exactly one point of l collinear with P. Immutable after
// verification.
struct IncidenceGQ {
    int n_points = 0;
    std::vector<std::vector<int>> lines; // sorted point ids per line
    int s = 0, t = 0;
    bool thick = false;
    std::vector<std::vector<int>> point_lines; // sorted line ids per point
    std::vector<Bitset> collinear;             // diagonal set; P ~ P' iff common line
    std::vector<Bitset> line_point_bits;
    std::vector<Bitset> lines_meet; // diagonal set

    bool points_collinear(int p1, int p2) const { return collinear[p1].test(p2); }
    bool lines_disjoint(int l1, int l2) const { return !lines_meet[l1].test(l2); }
    bool incident(int p, int l) const { return line_point_bits[l].test(p); }

    // The unique line through two distinct collinear points.
    int line_through(int p1, int p2) const;

    std::vector<Flag> flags() const; // lexicographic (point_id, line_id)
};

// Checks the GQ axioms on raw incidence data and certifies the order.
// Throws NotGQError naming the first violated axiom and a witness; by
// default non-thick inputs (s < 2 or t < 2) are rejected as well.
IncidenceGQ gq_verify(int n_points, std::vector<std::vector<int>> lines,
                      bool require_thick = true);

// Symplectic quadrangle W(q): all points of PG(3,q), lines totally isotropic
// under x0 y1 - x1 y0 + x2 y3 - x3 y2. Order (q,q). Point/line ids follow the
// PG(3,q) enumeration order (line ids compacted).
IncidenceGQ w_symplectic(int q);

// Parabolic quadrangle Q(4,q): points of PG(4,q) on x0^2 + x1 x2 + x3 x4 = 0
// and the lines of PG(4,q) contained in that quadric. Order (q,q).
IncidenceGQ q4_quadric(int q);

// Hermitian quadrangle H(4,4): points of PG(4,4) on sum x_i * x_i^2 = 0 and
// fully contained lines. Order (4,8).
IncidenceGQ h4_hermitian();

// Mapping from GQ point/line ids back to the ambient geometry's ids, for
// the classical models above.
struct ModelEmbedding {
    std::vector<int> point_to_geom; // GQ point id -> geometry point id
    std::vector<int> line_to_geom;  // GQ line id -> geometry line id
};

IncidenceGQ w_symplectic(int q, const Geometry& g, ModelEmbedding* emb);
IncidenceGQ q4_quadric(int q, const Geometry& g, ModelEmbedding* emb);

// Points and lines exchanged; order (t,s).
IncidenceGQ dual_gq(const IncidenceGQ& gq);

// Opposite flags: disjoint lines and non-collinear points.
bool flag_opposite(const Flag& f1, const Flag& f2, const IncidenceGQ& gq);

// Opposition graph over flags() of a thick verified GQ (guard: <= 2000 flags).
OppositionGraph flag_graph(const IncidenceGQ& gq, int threads = 1);

// Grid subquadrangle of order (s', 1): (s'+1)^2 points, 2(s'+1) lines, every
// grid point on exactly two grid lines.
struct Grid {
    std::vector<int> points; // sorted GQ point ids
    std::vector<int> lines;  // sorted GQ line ids
};

// All grid subquadrangles of order (q,1) of a classical order-(q,q) model,
// obtained as hyperplane sections of the ambient projective space. The
// embedding must come from the same Geometry.
std::vector<Grid> grids_by_hyperplane(const IncidenceGQ& gq, const Geometry& g,
                                      const ModelEmbedding& emb);

// Exhaustive cross-check for order (2,2): all 9-point subsets that close to
// a grid (9 points, 6 fully-contained lines, each point on exactly two).
std::vector<Grid> grids_by_subset_closure(const IncidenceGQ& gq);

// GQ incidence text format: "gq <n_points> <n_lines>" then one line of
// whitespace-separated 0-based point indices per GQ-line; '#' comments.
void write_gq(std::ostream& os, const IncidenceGQ& gq);
std::pair<int, std::vector<std::vector<int>>> read_gq(std::istream& is);

std::string flag_label(const Flag& f);

// A GQ together with its flag list and opposition graph, plus the ambient
// projective geometry for the classical models (used by grid and ovoid
// constructions).
struct GqContext {
    std::string model; // "w" | "q4" | "h4" | "file"
    int q = 0;         // 0 for file inputs
    IncidenceGQ gq;
    std::optional<Geometry> ambient;
    ModelEmbedding emb;
    std::vector<Flag> flags;
    OppositionGraph graph;

    static GqContext w(int q, int threads = 1);
    static GqContext q4(int q, int threads = 1);
    static GqContext h4(int threads = 1);
    static GqContext from_incidence(IncidenceGQ gq, int threads = 1,
                                    std::string name = "file");

    // Graph vertex id of a flag (flags are sorted lexicographically).
    int vertex_of(int point_id, int line_id) const;
};

} // namespace flagopp
