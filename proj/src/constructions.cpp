#include "flagopp/constructions.hpp"

#include <algorithm>

#include "flagopp/errors.hpp"

namespace flagopp {

namespace {

Certificate checked_independent(const OppositionGraph& graph, std::vector<int> set,
                                std::string provenance) {
    auto cert = make_independent_set(graph, std::move(set), std::move(provenance));
    auto chk = verify_certificate(graph, cert);
    if (!chk.ok)
        throw Error("construction produced a non-independent set (" + cert.provenance +
                    "): " + chk.violation);
    return cert;
}

} // namespace

std::vector<int> pencil_pg_vertices(PgElement kind, int id, const PgContext& ctx) {
    std::vector<int> out;
    for (std::size_t v = 0; v < ctx.chambers.size(); ++v) {
        int line = ctx.chambers[v].line_id;
        bool hit = kind == PgElement::point ? ctx.geometry.point_in_line(id, line)
                                            : ctx.geometry.line_in_plane(line, id);
        if (hit) out.push_back(int(v));
    }
    return out;
}

Certificate pencil_pg(PgElement kind, int id, const PgContext& ctx) {
    std::string prov = std::string("pencil_pg ") +
                       (kind == PgElement::point ? "point=" : "plane=") + std::to_string(id) +
                       " q=" + std::to_string(ctx.geometry.q());
    return checked_independent(ctx.graph, pencil_pg_vertices(kind, id, ctx), std::move(prov));
}

std::vector<int> pencil_gq_vertices(GqElement kind, int id, const GqContext& ctx) {
    std::vector<int> out;
    for (std::size_t v = 0; v < ctx.flags.size(); ++v) {
        const Flag& f = ctx.flags[v];
        bool hit = kind == GqElement::point ? ctx.gq.incident(id, f.line_id)
                                            : ctx.gq.incident(f.point_id, id);
        if (hit) out.push_back(int(v));
    }
    return out;
}

Certificate pencil_gq(GqElement kind, int id, const GqContext& ctx) {
    std::string prov = std::string("pencil_gq ") +
                       (kind == GqElement::point ? "point=" : "line=") + std::to_string(id) +
                       " model=" + ctx.model;
    return checked_independent(ctx.graph, pencil_gq_vertices(kind, id, ctx), std::move(prov));
}

namespace {

void validate_grid(const Grid& grid, const IncidenceGQ& gq) {
    const std::size_t s1 = gq.lines.empty() ? 0 : gq.lines[0].size();
    if (grid.points.size() != s1 * s1 || grid.lines.size() != 2 * s1)
        throw InvalidGridError("grid must have (s+1)^2 points and 2(s+1) lines");
    Bitset pset(gq.n_points);
    for (int p : grid.points) {
        if (p < 0 || p >= gq.n_points) throw InvalidGridError("grid point out of range");
        pset.set(std::size_t(p));
    }
    for (int l : grid.lines) {
        if (l < 0 || std::size_t(l) >= gq.lines.size())
            throw InvalidGridError("grid line out of range");
        if (!gq.line_point_bits[std::size_t(l)].is_subset_of(pset))
            throw InvalidGridError("grid line " + std::to_string(l) +
                                   " leaves the grid point set");
    }
    for (int p : grid.points) {
        int deg = 0;
        for (int l : grid.lines)
            if (gq.line_point_bits[std::size_t(l)].test(std::size_t(p))) ++deg;
        if (deg != 2)
            throw InvalidGridError("grid point " + std::to_string(p) + " lies on " +
                                   std::to_string(deg) + " grid lines instead of 2");
    }
}

} // namespace

Certificate exceptional_gq22(const Grid& grid, const GqContext& ctx) {
    if (ctx.gq.s != 2 || ctx.gq.t != 2)
        throw InvalidGridError("exceptional_gq22 requires order (2,2)");
    validate_grid(grid, ctx.gq);
    std::vector<int> vertices;
    for (int p : grid.points) {
        int outside = -1;
        for (int l : ctx.gq.point_lines[std::size_t(p)])
            if (std::find(grid.lines.begin(), grid.lines.end(), l) == grid.lines.end()) {
                if (outside >= 0)
                    throw InvalidGridError("grid point " + std::to_string(p) +
                                           " has two non-grid lines");
                outside = l;
            }
        vertices.push_back(ctx.vertex_of(p, outside));
    }
    std::sort(vertices.begin(), vertices.end());
    return checked_independent(ctx.graph, std::move(vertices),
                               "exceptional_gq22 grid_point0=" + std::to_string(grid.points[0]));
}

Certificate sharpness_set(const GqContext& ctx, const Grid& grid, int grid_point) {
    validate_grid(grid, ctx.gq);
    if (std::find(grid.points.begin(), grid.points.end(), grid_point) == grid.points.end())
        throw InvalidGridError("chosen point is not a grid point");

    std::vector<int> through; // the two grid lines h, h' on grid_point
    for (int l : grid.lines)
        if (ctx.gq.line_point_bits[std::size_t(l)].test(std::size_t(grid_point)))
            through.push_back(l);
    if (through.size() != 2) throw InvalidGridError("grid point not on exactly two grid lines");

    std::vector<int> vertices;
    for (int l : ctx.gq.point_lines[std::size_t(grid_point)])
        vertices.push_back(ctx.vertex_of(grid_point, l));
    for (int h : through)
        for (int p : ctx.gq.lines[std::size_t(h)]) {
            if (p == grid_point) continue;
            int other = -1;
            for (int l : grid.lines) {
                if (l == through[0] || l == through[1]) continue;
                if (ctx.gq.line_point_bits[std::size_t(l)].test(std::size_t(p))) other = l;
            }
            if (other < 0) throw InvalidGridError("grid structure broken at point " +
                                                  std::to_string(p));
            vertices.push_back(ctx.vertex_of(p, other));
        }
    std::sort(vertices.begin(), vertices.end());
    auto cert = checked_independent(ctx.graph, std::move(vertices),
                                    "sharpness_set grid_point=" + std::to_string(grid_point) +
                                        " model=" + ctx.model + " q=" + std::to_string(ctx.q));
    if (!is_maximal_independent(ctx.graph, cert.set()))
        throw Error("sharpness_set: constructed set is not maximal");
    return cert;
}

namespace {

// Deterministic element list of the pg covering family: points of the plane
// off the line first (ascending), then the other planes on the line.
std::vector<std::pair<PgElement, int>> cover_elements(int line_id, int plane_id,
                                                      const PgContext& ctx) {
    const Geometry& g = ctx.geometry;
    if (!g.line_in_plane(line_id, plane_id))
        throw Error("pg covering family: line not contained in plane");
    std::vector<std::pair<PgElement, int>> elems;
    for (int p : g.plane_points(plane_id))
        if (!g.point_in_line(p, line_id)) elems.emplace_back(PgElement::point, p);
    for (int pl : g.line_planes(line_id))
        if (pl != plane_id) elems.emplace_back(PgElement::plane, pl);
    return elems;
}

} // namespace

Certificate pg_covering_family(int line_id, int plane_id, const PgContext& ctx) {
    auto elems = cover_elements(line_id, plane_id, ctx);
    // each line of PG(3,q) must be incident with some element
    for (const auto& l : ctx.geometry.lines()) {
        bool covered = false;
        for (const auto& [kind, id] : elems) {
            covered = kind == PgElement::point ? ctx.geometry.point_in_line(id, l.id)
                                               : ctx.geometry.line_in_plane(l.id, id);
            if (covered) break;
        }
        if (!covered)
            throw Error("pg covering family misses line " + std::to_string(l.id));
    }
    Certificate cert;
    cert.kind = CertKind::covering_family;
    cert.graph_fingerprint = ctx.graph.fingerprint();
    cert.provenance = "pg_covering_family line=" + std::to_string(line_id) +
                      " plane=" + std::to_string(plane_id) + " q=" +
                      std::to_string(ctx.geometry.q());
    for (const auto& [kind, id] : elems)
        cert.vertex_sets.push_back(pencil_pg_vertices(kind, id, ctx));
    auto chk = verify_certificate(ctx.graph, cert);
    if (!chk.ok) throw Error("pg covering family failed verification: " + chk.violation);
    return cert;
}

Certificate pg_coloring(int line_id, int plane_id, const PgContext& ctx) {
    Certificate cover = pg_covering_family(line_id, plane_id, ctx);
    Certificate cert;
    cert.kind = CertKind::proper_coloring;
    cert.graph_fingerprint = ctx.graph.fingerprint();
    cert.provenance = "pg_coloring line=" + std::to_string(line_id) + " plane=" +
                      std::to_string(plane_id) + " q=" + std::to_string(ctx.geometry.q());
    cert.vertex_sets.assign(cover.vertex_sets.size(), {});
    std::vector<bool> assigned(ctx.graph.size(), false);
    for (std::size_t k = 0; k < cover.vertex_sets.size(); ++k)
        for (int v : cover.vertex_sets[k]) {
            if (assigned[std::size_t(v)]) continue;
            assigned[std::size_t(v)] = true;
            cert.vertex_sets[k].push_back(v);
        }
    auto chk = verify_certificate(ctx.graph, cert);
    if (!chk.ok) throw Error("pg coloring failed verification: " + chk.violation);
    return cert;
}

std::vector<int> ovoid_q4(const GqContext& ctx) {
    if (ctx.model != "q4" || !ctx.ambient)
        throw UnsupportedError("ovoid_q4 requires a q4 model context");
    const Geometry& g = *ctx.ambient;
    const Field& f = g.gf();
    const std::size_t st1 = std::size_t(ctx.q) * ctx.q + 1;

    // hyperplanes a.x = 0 scanned in canonical dual-vector order
    for (const auto& a : g.points()) {
        std::vector<int> section;
        for (std::size_t i = 0; i < ctx.emb.point_to_geom.size(); ++i) {
            const Mat& pm = g.points()[std::size_t(ctx.emb.point_to_geom[i])].basis;
            FieldElement dot = 0;
            for (int c = 0; c < 5; ++c)
                dot = f.add(dot, f.mul(a.basis.at(0, c), pm.at(0, c)));
            if (dot == 0) section.push_back(int(i));
        }
        if (section.size() != st1) continue;
        Bitset pset(ctx.gq.n_points);
        for (int p : section) pset.set(std::size_t(p));
        bool ovoid = true;
        for (const auto& bits : ctx.gq.line_point_bits)
            if (bits.count_and(pset) != 1) { ovoid = false; break; }
        if (ovoid) return section;
    }
    throw ConstructionFailedError("no elliptic hyperplane section found for q=" +
                                  std::to_string(ctx.q));
}

std::vector<int> find_gq_isomorphism(const IncidenceGQ& from, const IncidenceGQ& to) {
    if (from.n_points != to.n_points || from.lines.size() != to.lines.size() ||
        from.s != to.s || from.t != to.t)
        return {};
    const int n = from.n_points;

    // BFS order over the collinearity graph for strong early pruning
    std::vector<int> order;
    {
        std::vector<bool> seen(std::size_t(n), false);
        std::vector<int> queue{0};
        seen[0] = true;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            order.push_back(u);
            for (int v = 0; v < n; ++v)
                if (!seen[std::size_t(v)] && from.points_collinear(u, v)) {
                    seen[std::size_t(v)] = true;
                    queue.push_back(v);
                }
        }
        for (int v = 0; v < n; ++v)
            if (!seen[std::size_t(v)]) order.push_back(v);
    }

    std::vector<int> map(std::size_t(n), -1);
    std::vector<bool> used(std::size_t(n), false);

    auto compatible = [&](int u, int v, int depth) {
        for (int i = 0; i < depth; ++i) {
            int w = order[std::size_t(i)];
            if (from.points_collinear(u, w) != to.points_collinear(v, map[std::size_t(w)]))
                return false;
        }
        return true;
    };

    std::vector<int> stack_choice(std::size_t(n), -1);
    int depth = 0;
    while (depth >= 0) {
        if (depth == n) break; // complete
        int u = order[std::size_t(depth)];
        int start = stack_choice[std::size_t(depth)] + 1;
        int found = -1;
        for (int v = start; v < n; ++v) {
            if (used[std::size_t(v)]) continue;
            if (compatible(u, v, depth)) { found = v; break; }
        }
        if (found < 0) {
            stack_choice[std::size_t(depth)] = -1;
            --depth;
            if (depth >= 0) {
                int pu = order[std::size_t(depth)];
                used[std::size_t(map[std::size_t(pu)])] = false;
                map[std::size_t(pu)] = -1;
            }
            continue;
        }
        stack_choice[std::size_t(depth)] = found;
        map[std::size_t(u)] = found;
        used[std::size_t(found)] = true;
        ++depth;
    }
    if (depth < 0) return {};

    // collinearity-preserving bijections of thick GQs map lines onto lines;
    // verify anyway
    std::vector<std::vector<int>> to_lines_sorted = to.lines;
    std::sort(to_lines_sorted.begin(), to_lines_sorted.end());
    for (const auto& l : from.lines) {
        std::vector<int> img;
        for (int p : l) img.push_back(map[std::size_t(p)]);
        std::sort(img.begin(), img.end());
        if (!std::binary_search(to_lines_sorted.begin(), to_lines_sorted.end(), img))
            return {};
    }
    return map;
}

std::vector<int> spread_w(const GqContext& w_ctx, const GqContext& q4_ctx,
                          const std::vector<int>& ovoid_points) {
    if (w_ctx.model != "w" || q4_ctx.model != "q4" || w_ctx.q != q4_ctx.q)
        throw UnsupportedError("spread_w needs matching w and q4 contexts");
    IncidenceGQ dual_w = dual_gq(w_ctx.gq);
    auto iso = find_gq_isomorphism(q4_ctx.gq, dual_w);
    if (iso.empty())
        throw ConstructionFailedError("no duality between Q(4,q) and the dual of W(q) found");
    // dual_w point ids are W line ids, so the ovoid maps straight to lines
    std::vector<int> spread;
    for (int p : ovoid_points) spread.push_back(iso[std::size_t(p)]);
    std::sort(spread.begin(), spread.end());

    Bitset covered(w_ctx.gq.n_points);
    for (int l : spread) {
        if (covered.intersects(w_ctx.gq.line_point_bits[std::size_t(l)]))
            throw ConstructionFailedError("duality image is not a partition");
        covered |= w_ctx.gq.line_point_bits[std::size_t(l)];
    }
    if (covered.count() != std::size_t(w_ctx.gq.n_points))
        throw ConstructionFailedError("duality image does not cover all points");
    return spread;
}

Certificate coloring_from_ovoid_or_spread(const GqContext& ctx, GqElement kind,
                                          const std::vector<int>& elements) {
    Certificate cert;
    cert.kind = CertKind::proper_coloring;
    cert.graph_fingerprint = ctx.graph.fingerprint();
    cert.provenance = std::string("coloring_from_") +
                      (kind == GqElement::point ? "ovoid" : "spread") + " model=" + ctx.model +
                      " size=" + std::to_string(elements.size());
    Bitset seen(ctx.graph.size());
    for (int x : elements) {
        auto cls = pencil_gq_vertices(kind, x, ctx);
        for (int v : cls) {
            if (seen.test(std::size_t(v)))
                throw NotPartitionError("flag " + std::to_string(v) +
                                        " covered twice; input is not an ovoid/spread");
            seen.set(std::size_t(v));
        }
        cert.vertex_sets.push_back(std::move(cls));
    }
    if (seen.count() != ctx.graph.size())
        throw NotPartitionError("pencil classes miss " +
                                std::to_string(ctx.graph.size() - seen.count()) + " flags");
    auto chk = verify_certificate(ctx.graph, cert);
    if (!chk.ok) throw Error("ovoid/spread coloring failed verification: " + chk.violation);
    return cert;
}

Certificate h44_cover(int point_id, const GqContext& ctx) {
    if (ctx.model != "h4") throw UnsupportedError("h44_cover requires the h4 model");
    Certificate cert;
    cert.kind = CertKind::covering_family;
    cert.graph_fingerprint = ctx.graph.fingerprint();
    cert.provenance = "h44_cover point=" + std::to_string(point_id);
    for (int x = 0; x < ctx.gq.n_points; ++x) {
        if (x == point_id || !ctx.gq.points_collinear(point_id, x)) continue;
        cert.vertex_sets.push_back(pencil_gq_vertices(GqElement::point, x, ctx));
    }
    auto chk = verify_certificate(ctx.graph, cert);
    if (!chk.ok) throw Error("h44 cover failed verification: " + chk.violation);
    return cert;
}

std::vector<std::vector<int>> line_classes_from_cover(int line_id, int plane_id,
                                                      const PgContext& ctx) {
    auto elems = cover_elements(line_id, plane_id, ctx);
    std::vector<std::vector<int>> classes(elems.size());
    std::vector<bool> taken(ctx.geometry.lines().size(), false);
    for (std::size_t k = 0; k < elems.size(); ++k) {
        auto [kind, id] = elems[k];
        for (const auto& l : ctx.geometry.lines()) {
            if (taken[std::size_t(l.id)]) continue;
            bool hit = kind == PgElement::point ? ctx.geometry.point_in_line(id, l.id)
                                                : ctx.geometry.line_in_plane(l.id, id);
            if (hit) {
                taken[std::size_t(l.id)] = true;
                classes[k].push_back(l.id);
            }
        }
    }
    return classes;
}

Certificate lift_line_coloring(const std::vector<std::vector<int>>& line_classes,
                               const PgContext& ctx) {
    const Geometry& g = ctx.geometry;
    std::vector<int> class_of(g.lines().size(), -1);
    for (std::size_t k = 0; k < line_classes.size(); ++k)
        for (int l : line_classes[k]) {
            if (l < 0 || std::size_t(l) >= g.lines().size())
                throw Error("line id out of range in class " + std::to_string(k));
            if (class_of[std::size_t(l)] != -1)
                throw Error("line " + std::to_string(l) + " appears in two classes");
            class_of[std::size_t(l)] = int(k);
        }
    for (std::size_t l = 0; l < g.lines().size(); ++l)
        if (class_of[l] == -1)
            throw Error("line " + std::to_string(l) + " not covered by any class");
    // each class must be pairwise intersecting
    for (std::size_t k = 0; k < line_classes.size(); ++k) {
        const auto& cls = line_classes[k];
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                if (!g.lines_meet(cls[i], cls[j]))
                    throw NotLineIndependentError(
                        "class " + std::to_string(k) + " contains skew lines " +
                        std::to_string(cls[i]) + " and " + std::to_string(cls[j]));
    }
    Certificate cert;
    cert.kind = CertKind::proper_coloring;
    cert.graph_fingerprint = ctx.graph.fingerprint();
    cert.provenance = "lift_line_coloring classes=" + std::to_string(line_classes.size());
    cert.vertex_sets.assign(line_classes.size(), {});
    for (std::size_t v = 0; v < ctx.chambers.size(); ++v)
        cert.vertex_sets[std::size_t(class_of[std::size_t(ctx.chambers[v].line_id)])]
            .push_back(int(v));
    auto chk = verify_certificate(ctx.graph, cert);
    if (!chk.ok) throw Error("lifted coloring failed verification: " + chk.violation);
    return cert;
}

} // namespace flagopp
