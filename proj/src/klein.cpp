#include "flagopp/klein.hpp"

#include <algorithm>

#include "flagopp/errors.hpp"

namespace flagopp {

namespace {

FieldElement quadric_form(const std::vector<FieldElement>& y, const Field& f) {
    FieldElement v = f.mul(y[0], y[5]);
    v = f.add(v, f.mul(y[1], y[4]));
    v = f.add(v, f.mul(y[2], y[3]));
    return v;
}

// Polarization B(x,y) = Q(x+y) - Q(x) - Q(y); written out it is symmetric
// and characteristic-independent.
FieldElement bilinear_form(const std::vector<FieldElement>& x, const std::vector<FieldElement>& y,
                           const Field& f) {
    FieldElement v = 0;
    v = f.add(v, f.mul(x[0], y[5]));
    v = f.add(v, f.mul(x[5], y[0]));
    v = f.add(v, f.mul(x[1], y[4]));
    v = f.add(v, f.mul(x[4], y[1]));
    v = f.add(v, f.mul(x[2], y[3]));
    v = f.add(v, f.mul(x[3], y[2]));
    return v;
}

std::vector<FieldElement> point_coords(const Geometry& g, int point_id) {
    const Mat& m = g.points()[std::size_t(point_id)].basis;
    std::vector<FieldElement> v(std::size_t(m.cols));
    for (int c = 0; c < m.cols; ++c) v[std::size_t(c)] = m.at(0, c);
    return v;
}

} // namespace

KleinMap::KleinMap(const Geometry& pg3) : pg3_(pg3), space5_(5, pg3.q()) {
    if (pg3.n() != 3) throw UnsupportedError("KleinMap requires PG(3,q)");
    const Field& f = pg3.gf();

    // line images
    line_image_.reserve(pg3.lines().size());
    for (const auto& l : pg3.lines()) {
        auto y = pluecker_coords(l.basis);
        if (quadric_form(y, f) != 0)
            throw Error("internal: Plucker image off the quadric");
        int pid = space5_.point_id(y);
        if (pid < 0) throw Error("internal: Plucker image not a canonical point");
        line_image_.push_back(pid);
    }

    // planes fully contained in the quadric, in deterministic RREF order
    Bitset quadric_pts(space5_.points().size());
    for (const auto& p : space5_.points())
        if (quadric_form(point_coords(space5_, p.id), f) == 0) quadric_pts.set(std::size_t(p.id));
    enumerate_rref(3, 6, f, [&](const Mat& m) {
        auto pts = subspace_points(m, f);
        Bitset bits(space5_.points().size());
        for (auto& v : pts) {
            std::vector<FieldElement> w = v;
            normalize_point(w, f);
            int pid = space5_.point_id(w);
            if (pid < 0 || !quadric_pts.test(std::size_t(pid))) return;
            bits.set(std::size_t(pid));
        }
        plane_index_.emplace(m.key(), int(quadric_plane_basis_.size()));
        quadric_plane_basis_.push_back(m);
        quadric_plane_points_.push_back(std::move(bits));
    });

    // latin planes: spans of the images of the lines through a point
    auto span_plane = [&](const std::vector<int>& line_ids) {
        Mat m;
        m.rows = 0;
        m.cols = 6;
        for (int l : line_ids) {
            auto y = point_coords(space5_, line_image_[std::size_t(l)]);
            Mat ext = stack_row(m, y);
            if (rank(ext, f) > m.rows) {
                m = ext;
                rref(m, f);
            }
            if (m.rows == 3) break;
        }
        if (m.rows != 3) throw Error("internal: pencil image does not span a plane");
        auto it = plane_index_.find(m.key());
        if (it == plane_index_.end())
            throw Error("internal: pencil image plane is not on the quadric");
        return it->second;
    };

    latin_of_point_.reserve(pg3.points().size());
    for (const auto& p : pg3.points()) {
        int qp = span_plane(pg3.point_lines(p.id));
        // every image of a line through the point must lie in the plane
        for (int l : pg3.point_lines(p.id))
            if (!quadric_plane_points_[std::size_t(qp)].test(
                    std::size_t(line_image_[std::size_t(l)])))
                throw Error("internal: point-pencil image leaves its plane");
        latin_of_point_.push_back(qp);
    }
    greek_of_plane_.reserve(pg3.planes().size());
    for (const auto& pl : pg3.planes()) {
        int qp = span_plane(pg3.plane_lines(pl.id));
        for (int l : pg3.plane_lines(pl.id))
            if (!quadric_plane_points_[std::size_t(qp)].test(
                    std::size_t(line_image_[std::size_t(l)])))
                throw Error("internal: plane-pencil image leaves its plane");
        greek_of_plane_.push_back(qp);
    }
}

std::vector<FieldElement> KleinMap::pluecker_coords(const Mat& line_basis) const {
    const Field& f = pg3_.gf();
    auto minor = [&](int i, int j) {
        return f.sub(f.mul(line_basis.at(0, i), line_basis.at(1, j)),
                     f.mul(line_basis.at(0, j), line_basis.at(1, i)));
    };
    std::vector<FieldElement> y{minor(0, 1), minor(0, 2), minor(0, 3),
                                minor(1, 2), minor(3, 1), minor(2, 3)};
    normalize_point(y, f);
    return y;
}

bool KleinMap::on_quadric(int p5_point_id) const {
    return quadric_form(point_coords(space5_, p5_point_id), pg3_.gf()) == 0;
}

bool KleinMap::collinear_on_quadric(int p5a, int p5b) const {
    return bilinear_form(point_coords(space5_, p5a), point_coords(space5_, p5b), pg3_.gf()) == 0;
}

bool KleinMap::planes_disjoint(int qp1, int qp2) const {
    Mat m = stack(quadric_plane_basis_[std::size_t(qp1)], quadric_plane_basis_[std::size_t(qp2)]);
    return rank(m, pg3_.gf()) == 6;
}

KleinChamber KleinMap::translate(const Chamber& c) const {
    return {line_image_[std::size_t(c.line_id)], greek_of_plane_[std::size_t(c.plane_id)],
            latin_of_point_[std::size_t(c.point_id)]};
}

KleinMap::TransferReport KleinMap::opposition_transfer_check(const PgContext& ctx) const {
    TransferReport rep;
    const std::size_t n = ctx.chambers.size();

    std::vector<KleinChamber> kc;
    kc.reserve(n);
    for (const auto& c : ctx.chambers) kc.push_back(translate(c));

    // quadric-point collinearity and greek/latin disjointness tables
    const std::size_t n5 = space5_.points().size();
    std::vector<Bitset> collin(n5);
    std::vector<int> used_points;
    for (const auto& c : kc) used_points.push_back(c.point_id);
    std::sort(used_points.begin(), used_points.end());
    used_points.erase(std::unique(used_points.begin(), used_points.end()), used_points.end());
    for (int a : used_points) {
        Bitset row(n5);
        for (int b : used_points)
            if (collinear_on_quadric(a, b)) row.set(std::size_t(b));
        collin[std::size_t(a)] = std::move(row);
    }
    const int np = quadric_plane_count();
    std::vector<Bitset> disj(std::size_t(np), Bitset{std::size_t(np)});
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b)
            if (planes_disjoint(a, b)) disj[std::size_t(a)].set(std::size_t(b));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool klein_opposite =
                !collin[std::size_t(kc[i].point_id)].test(std::size_t(kc[j].point_id)) &&
                disj[std::size_t(kc[i].greek_plane_id)].test(std::size_t(kc[j].latin_plane_id)) &&
                disj[std::size_t(kc[j].greek_plane_id)].test(std::size_t(kc[i].latin_plane_id));
            ++rep.pairs_checked;
            if (klein_opposite != ctx.graph.adjacent(i, j)) {
                rep.counterexample = {int(i), int(j)};
                rep.pass = false;
                return rep;
            }
        }
    }
    rep.pass = true;
    return rep;
}

bool KleinMap::pencil_translation_check(const PgContext& ctx) const {
    const std::size_t n = ctx.chambers.size();
    // F(x) for a point x = chambers whose quadric point lies in the latin
    // plane of x; dually for planes with greek planes.
    for (const auto& p : pg3_.points()) {
        const Bitset& plane_pts = quadric_plane_points_[std::size_t(latin_of_point_[std::size_t(p.id)])];
        for (std::size_t v = 0; v < n; ++v) {
            bool in_pencil = pg3_.point_in_line(p.id, ctx.chambers[v].line_id);
            bool in_plane = plane_pts.test(std::size_t(line_image_[std::size_t(ctx.chambers[v].line_id)]));
            if (in_pencil != in_plane) return false;
        }
    }
    for (const auto& pl : pg3_.planes()) {
        const Bitset& plane_pts = quadric_plane_points_[std::size_t(greek_of_plane_[std::size_t(pl.id)])];
        for (std::size_t v = 0; v < n; ++v) {
            bool in_pencil = pg3_.line_in_plane(ctx.chambers[v].line_id, pl.id);
            bool in_plane = plane_pts.test(std::size_t(line_image_[std::size_t(ctx.chambers[v].line_id)]));
            if (in_pencil != in_plane) return false;
        }
    }
    return true;
}

} // namespace flagopp
