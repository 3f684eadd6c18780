#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagopp/bitset.hpp"
#include "flagopp/field.hpp"
#include "flagopp/graph.hpp"
#include "flagopp/linalg.hpp"

namespace flagopp {

// Projective subspace of PG(n,q), stored as the reduced row echelon basis of
// its underlying (dim+1)-dimensional vector subspace. dim 0 = point,
// 1 = line, 2 = plane.
struct Subspace {
    int dim = 0;
    Mat basis;
    int id = -1;
};

// Incident (point, line, plane) triple of PG(3,q), stored by dense ids.
struct Chamber {
    int point_id;
    int line_id;
    int plane_id;
};

// PG(n,q) for n in {3,4,5}. Enumeration order is deterministic:
//  - points are canonical coordinate vectors (first nonzero entry 1) in
//    lexicographic order, c0 most significant;
//  - lines/planes are RREF bases enumerated by pivot-column pattern
//    (patterns in lexicographic order), then by free entries, last free
//    position varying fastest.
// For n=3 points, lines and planes are enumerated; for n=4 points and
// lines; for n=5 points only.
class Geometry {
public:
    Geometry(int n, int q);

    int n() const { return n_; }
    int q() const { return q_; }
    const Field& gf() const { return *f_; }

    const std::vector<Subspace>& points() const { return points_; }
    const std::vector<Subspace>& lines() const { return lines_; }
    const std::vector<Subspace>& planes() const { return planes_; }

    // Dense id of a point given any nonzero coordinate vector.
    int point_id(std::vector<FieldElement> v) const;

    // Ids of the points on a line / in a plane, ascending.
    const std::vector<int>& line_points(int line_id) const { return line_points_[line_id]; }
    const std::vector<int>& plane_points(int plane_id) const { return plane_points_[plane_id]; }

    const std::vector<int>& point_lines(int point_id) const { return point_lines_[point_id]; }
    const std::vector<int>& line_planes(int line_id) const { return line_planes_[line_id]; }
    const std::vector<int>& plane_lines(int plane_id) const { return plane_lines_[plane_id]; }
    const std::vector<int>& point_planes(int point_id) const { return point_planes_[point_id]; }

    bool point_in_line(int p, int l) const { return line_point_bits_[l].test(p); }
    bool point_in_plane(int p, int pl) const { return plane_point_bits_[pl].test(p); }
    bool line_in_plane(int l, int pl) const;
    bool lines_meet(int l1, int l2) const { return lines_meet_[l1].test(l2); }

    const Bitset& plane_point_bitset(int pl) const { return plane_point_bits_[pl]; }
    const Bitset& line_point_bitset(int l) const { return line_point_bits_[l]; }

    // Orthogonal complement under the standard bilinear form sum(x_i y_i);
    // maps points to planes and vice versa, lines to lines (n=3 only).
    Subspace dual(const Subspace& s) const;

private:
    void enumerate_points();
    void enumerate_lines();
    void enumerate_planes();
    void build_incidence();

    int n_, q_;
    const Field* f_;
    std::vector<Subspace> points_, lines_, planes_;
    std::unordered_map<std::string, int> point_index_, line_index_, plane_index_;
    std::vector<std::vector<int>> line_points_, plane_points_;
    std::vector<std::vector<int>> point_lines_, line_planes_, plane_lines_, point_planes_;
    std::vector<Bitset> line_point_bits_, plane_point_bits_, lines_meet_;

public:
    // Canonical id lookup by RREF basis key; -1 when not present.
    int line_id_by_key(const std::string& key) const;
    int plane_id_by_key(const std::string& key) const;
};

// All chambers of PG(3,q) in lexicographic (point_id, line_id, plane_id)
// order. Count is (q^2+1)(q^2+q+1)(q+1)^2.
std::vector<Chamber> chambers_pg3(const Geometry& g);

// Chambers in general position: P not in pi', lines skew, P' not in pi.
bool opposite_pg(const Chamber& c1, const Chamber& c2, const Geometry& g);

// Opposition graph over chambers_pg3(g). Guarded at q <= 4 unless force.
OppositionGraph chamber_graph(const Geometry& g, int threads = 1, bool force = false);

std::string chamber_label(const Chamber& c);

// Geometry, chamber list and opposition graph of PG(3,q), bundled for the
// construction and verification layers.
struct PgContext {
    Geometry geometry;
    std::vector<Chamber> chambers;
    OppositionGraph graph;

    explicit PgContext(int q, int threads = 1, bool force = false);

    // Graph vertex id of a chamber (chambers are sorted lexicographically).
    int vertex_of(int point_id, int line_id, int plane_id) const;
};

} // namespace flagopp
