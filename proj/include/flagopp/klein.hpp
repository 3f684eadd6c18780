#pragma once

#include <optional>
#include <vector>

#include "flagopp/projective.hpp"

namespace flagopp {

// Chamber of the hyperbolic quadric in PG(5,q): a quadric point lying in a
// greek plane (image of a plane-pencil of lines) and a latin plane (image
// of a point-pencil).
struct KleinChamber {
    int point_id;       // PG(5,q) point id, on the quadric
    int greek_plane_id; // quadric-plane id
    int latin_plane_id; // quadric-plane id
};

// Line-to-point correspondence between PG(3,q) and the quadric
// y0 y5 + y1 y4 + y2 y3 = 0 in PG(5,q), with coordinate order
// (p01, p02, p03, p12, p31, p23). Planes contained in the quadric are
// enumerated deterministically and indexed; latin planes arise from points,
// greek planes from planes of PG(3,q).
class KleinMap {
public:
    explicit KleinMap(const Geometry& pg3);

    const Geometry& space5() const { return space5_; }

    // Plucker coordinates of a line given its 2x4 basis, normalized.
    std::vector<FieldElement> pluecker_coords(const Mat& line_basis) const;

    // PG(5,q) point id of the image of a PG(3,q) line.
    int pluecker_point(int line_id) const { return line_image_[std::size_t(line_id)]; }

    bool on_quadric(int p5_point_id) const;

    // Collinear on the quadric: the joining line lies in the quadric, i.e.
    // the polarization of the quadratic form vanishes.
    bool collinear_on_quadric(int p5a, int p5b) const;

    int quadric_plane_count() const { return int(quadric_plane_basis_.size()); }
    const Bitset& quadric_plane_points(int qp) const {
        return quadric_plane_points_[std::size_t(qp)];
    }
    bool planes_disjoint(int qp1, int qp2) const;

    int latin_plane_of_point(int pg3_point_id) const {
        return latin_of_point_[std::size_t(pg3_point_id)];
    }
    int greek_plane_of_plane(int pg3_plane_id) const {
        return greek_of_plane_[std::size_t(pg3_plane_id)];
    }

    KleinChamber translate(const Chamber& c) const;

    struct TransferReport {
        bool pass = false;
        unsigned long long pairs_checked = 0;
        std::optional<std::pair<int, int>> counterexample; // vertex ids
    };

    // Exhaustive check over all chamber pairs that opposition in PG(3,q)
    // coincides with the quadric-side condition (non-collinear points and
    // empty greek/latin cross-intersections).
    TransferReport opposition_transfer_check(const PgContext& ctx) const;

    // Checks that the pencil of x translates to "all chambers whose quadric
    // point lies in the plane of x", for every point and plane x.
    bool pencil_translation_check(const PgContext& ctx) const;

private:
    const Geometry& pg3_;
    Geometry space5_;
    std::vector<int> line_image_;                // PG3 line id -> PG5 point id
    std::vector<Mat> quadric_plane_basis_;       // RREF 3x6
    std::vector<Bitset> quadric_plane_points_;   // over PG5 point ids
    std::unordered_map<std::string, int> plane_index_;
    std::vector<int> latin_of_point_, greek_of_plane_;
};

} // namespace flagopp
