#include "flagopp/quadrangle.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "flagopp/errors.hpp"

namespace flagopp {

int IncidenceGQ::line_through(int p1, int p2) const {
    for (int l : point_lines[p1])
        if (line_point_bits[l].test(p2)) return l;
    return -1;
}

std::vector<Flag> IncidenceGQ::flags() const {
    std::vector<Flag> out;
    for (int p = 0; p < n_points; ++p)
        for (int l : point_lines[p]) out.push_back({p, l});
    return out;
}

IncidenceGQ gq_verify(int n_points, std::vector<std::vector<int>> lines, bool require_thick) {
    if (n_points <= 0 || lines.empty()) throw NotGQError("empty incidence data");

    IncidenceGQ gq;
    gq.n_points = n_points;
    for (auto& l : lines) {
        std::sort(l.begin(), l.end());
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (l[i] < 0 || l[i] >= n_points)
                throw NotGQError("point index out of range on line " +
                                 std::to_string(&l - &lines[0]));
            if (i > 0 && l[i] == l[i - 1])
                throw NotGQError("repeated point " + std::to_string(l[i]) + " on a line");
        }
    }
    gq.lines = std::move(lines);

    const std::size_t nl = gq.lines.size();
    std::size_t line_size = gq.lines[0].size();
    for (std::size_t i = 1; i < nl; ++i)
        if (gq.lines[i].size() != line_size)
            throw NotGQError("line sizes differ: line 0 has " + std::to_string(line_size) +
                             " points, line " + std::to_string(i) + " has " +
                             std::to_string(gq.lines[i].size()));
    if (line_size < 2) throw NotGQError("lines must have at least 2 points");
    gq.s = int(line_size) - 1;

    gq.point_lines.assign(n_points, {});
    gq.line_point_bits.assign(nl, Bitset(n_points));
    for (std::size_t l = 0; l < nl; ++l)
        for (int p : gq.lines[l]) {
            gq.point_lines[p].push_back(int(l));
            gq.line_point_bits[l].set(p);
        }

    std::size_t point_degree = gq.point_lines[0].size();
    for (int p = 1; p < n_points; ++p)
        if (gq.point_lines[p].size() != point_degree)
            throw NotGQError("point degrees differ: point 0 lies on " +
                             std::to_string(point_degree) + " lines, point " +
                             std::to_string(p) + " on " +
                             std::to_string(gq.point_lines[p].size()));
    if (point_degree < 1) throw NotGQError("isolated point 0");
    gq.t = int(point_degree) - 1;

    // two distinct points on at most one common line
    gq.collinear.assign(n_points, Bitset(n_points));
    for (int p = 0; p < n_points; ++p) gq.collinear[p].set(p);
    for (std::size_t l = 0; l < nl; ++l) {
        const auto& pts = gq.lines[l];
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (gq.collinear[pts[i]].test(pts[j]))
                    throw NotGQError("points " + std::to_string(pts[i]) + " and " +
                                     std::to_string(pts[j]) + " lie on two common lines");
                gq.collinear[pts[i]].set(pts[j]);
                gq.collinear[pts[j]].set(pts[i]);
            }
    }

    // main axiom: non-incident (P,l) has exactly one point of l collinear with P
    for (int p = 0; p < n_points; ++p)
        for (std::size_t l = 0; l < nl; ++l) {
            if (gq.line_point_bits[l].test(p)) continue;
            int c = 0;
            for (int x : gq.lines[l])
                if (gq.collinear[p].test(x)) ++c;
            if (c != 1)
                throw NotGQError("point " + std::to_string(p) + " and line " +
                                 std::to_string(l) + ": " + std::to_string(c) +
                                 " collinear points instead of 1");
        }

    gq.thick = gq.s >= 2 && gq.t >= 2;
    if (require_thick && !gq.thick)
        throw NotGQError("non-thick: order (" + std::to_string(gq.s) + "," +
                         std::to_string(gq.t) + ")");

    gq.lines_meet.assign(nl, Bitset(nl));
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t j = 0; j < nl; ++j)
            if (gq.line_point_bits[i].intersects(gq.line_point_bits[j]))
                gq.lines_meet[i].set(j);

    for (auto& v : gq.point_lines) std::sort(v.begin(), v.end());
    return gq;
}

namespace {

FieldElement symplectic_form(const Mat& u_row0, const Mat& u_row1, const Field& f) {
    auto term = [&](int i, int j) {
        return f.sub(f.mul(u_row0.at(0, i), u_row1.at(0, j)),
                     f.mul(u_row0.at(0, j), u_row1.at(0, i)));
    };
    return f.add(term(0, 1), term(2, 3));
}

IncidenceGQ model_from_subsets(const Geometry& g, const std::vector<int>& pts,
                               const std::vector<int>& lns, ModelEmbedding* emb) {
    std::vector<int> point_rank(g.points().size(), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) point_rank[pts[i]] = int(i);
    std::vector<std::vector<int>> lines;
    lines.reserve(lns.size());
    for (int l : lns) {
        std::vector<int> pl;
        for (int p : g.line_points(l)) pl.push_back(point_rank[p]);
        lines.push_back(std::move(pl));
    }
    if (emb) {
        emb->point_to_geom = pts;
        emb->line_to_geom = lns;
    }
    return gq_verify(int(pts.size()), std::move(lines));
}

} // namespace

IncidenceGQ w_symplectic(int q, const Geometry& g, ModelEmbedding* emb) {
    if (q < 2 || q > 4) throw UnsupportedError("w_symplectic: q in {2,3,4}");
    if (g.n() != 3 || g.q() != q) throw UnsupportedError("w_symplectic: geometry must be PG(3,q)");
    const Field& f = g.gf();
    std::vector<int> pts;
    for (const auto& p : g.points()) pts.push_back(p.id);
    std::vector<int> lns;
    for (const auto& l : g.lines()) {
        Mat r0 = row_mat({l.basis.at(0, 0), l.basis.at(0, 1), l.basis.at(0, 2), l.basis.at(0, 3)});
        Mat r1 = row_mat({l.basis.at(1, 0), l.basis.at(1, 1), l.basis.at(1, 2), l.basis.at(1, 3)});
        if (symplectic_form(r0, r1, f) == 0) lns.push_back(l.id);
    }
    return model_from_subsets(g, pts, lns, emb);
}

IncidenceGQ w_symplectic(int q) {
    Geometry g(3, q);
    return w_symplectic(q, g, nullptr);
}

namespace {

FieldElement q4_form(const Mat& pt, const Field& f) {
    FieldElement v = f.mul(pt.at(0, 0), pt.at(0, 0));
    v = f.add(v, f.mul(pt.at(0, 1), pt.at(0, 2)));
    v = f.add(v, f.mul(pt.at(0, 3), pt.at(0, 4)));
    return v;
}

} // namespace

IncidenceGQ q4_quadric(int q, const Geometry& g, ModelEmbedding* emb) {
    if (q < 2 || q > 4) throw UnsupportedError("q4_quadric: q in {2,3,4}");
    if (g.n() != 4 || g.q() != q) throw UnsupportedError("q4_quadric: geometry must be PG(4,q)");
    const Field& f = g.gf();
    std::vector<int> pts;
    Bitset on_quadric(g.points().size());
    for (const auto& p : g.points())
        if (q4_form(p.basis, f) == 0) {
            pts.push_back(p.id);
            on_quadric.set(p.id);
        }
    std::vector<int> lns;
    for (const auto& l : g.lines())
        if (g.line_point_bitset(l.id).is_subset_of(on_quadric)) lns.push_back(l.id);
    return model_from_subsets(g, pts, lns, emb);
}

IncidenceGQ q4_quadric(int q) {
    Geometry g(4, q);
    return q4_quadric(q, g, nullptr);
}

IncidenceGQ h4_hermitian() {
    Geometry g(4, 4);
    const Field& f = g.gf();
    auto hermitian_zero = [&](const Mat& pt) {
        FieldElement v = 0;
        for (int i = 0; i < 5; ++i) {
            FieldElement x = pt.at(0, i);
            v = f.add(v, f.mul(x, f.mul(x, x))); // x * conj(x), conj(a) = a^2
        }
        return v == 0;
    };
    std::vector<int> pts;
    Bitset on_variety(g.points().size());
    for (const auto& p : g.points())
        if (hermitian_zero(p.basis)) {
            pts.push_back(p.id);
            on_variety.set(p.id);
        }
    std::vector<int> lns;
    for (const auto& l : g.lines())
        if (g.line_point_bitset(l.id).is_subset_of(on_variety)) lns.push_back(l.id);
    return model_from_subsets(g, pts, lns, nullptr);
}

IncidenceGQ dual_gq(const IncidenceGQ& gq) {
    std::vector<std::vector<int>> dual_lines(gq.n_points);
    for (int p = 0; p < gq.n_points; ++p) dual_lines[p] = gq.point_lines[p];
    return gq_verify(int(gq.lines.size()), std::move(dual_lines), /*require_thick=*/false);
}

bool flag_opposite(const Flag& f1, const Flag& f2, const IncidenceGQ& gq) {
    return gq.lines_disjoint(f1.line_id, f2.line_id) &&
           !gq.points_collinear(f1.point_id, f2.point_id);
}

std::string flag_label(const Flag& f) {
    return std::to_string(f.point_id) + " " + std::to_string(f.line_id);
}

OppositionGraph flag_graph(const IncidenceGQ& gq, int threads) {
    if (!gq.thick) throw UnsupportedError("flag_graph requires a thick GQ");
    auto fl = gq.flags();
    if (fl.size() > 2000)
        throw UnsupportedError("flag_graph: " + std::to_string(fl.size()) +
                               " flags exceeds the 2000-flag guard");
    auto rows = build_adjacency(fl.size(), threads, [&](std::size_t i, std::size_t j) {
        return flag_opposite(fl[i], fl[j], gq);
    });
    std::vector<std::string> labels;
    labels.reserve(fl.size());
    for (const auto& f : fl) labels.push_back(flag_label(f));
    return OppositionGraph(std::move(rows), std::move(labels));
}

namespace {

// Checks that (points, lines) of the host GQ form a grid of order (s,1):
// (s+1)^2 points, 2(s+1) lines, every point on exactly two of the lines.
bool is_grid(const IncidenceGQ& gq, const std::vector<int>& pts, const std::vector<int>& lns) {
    const std::size_t s1 = gq.lines[0].size(); // s+1
    if (pts.size() != s1 * s1 || lns.size() != 2 * s1) return false;
    Bitset pset(gq.n_points);
    for (int p : pts) pset.set(p);
    for (int l : lns)
        if (!gq.line_point_bits[l].is_subset_of(pset)) return false;
    for (int p : pts) {
        int deg = 0;
        for (int l : lns)
            if (gq.line_point_bits[l].test(p)) ++deg;
        if (deg != 2) return false;
    }
    return true;
}

} // namespace

std::vector<Grid> grids_by_hyperplane(const IncidenceGQ& gq, const Geometry& g,
                                      const ModelEmbedding& emb) {
    if (g.n() != 4) throw UnsupportedError("grids_by_hyperplane: ambient space must be PG(4,q)");
    const Field& f = g.gf();
    std::vector<int> geom_to_gq(g.points().size(), -1);
    for (std::size_t i = 0; i < emb.point_to_geom.size(); ++i)
        geom_to_gq[emb.point_to_geom[i]] = int(i);

    std::vector<Grid> out;
    // hyperplanes a.x = 0, one per canonical dual vector, in point order
    for (const auto& a : g.points()) {
        std::vector<int> pts, lns;
        for (std::size_t i = 0; i < emb.point_to_geom.size(); ++i) {
            const Mat& pm = g.points()[emb.point_to_geom[i]].basis;
            FieldElement dot = 0;
            for (int c = 0; c < 5; ++c)
                dot = f.add(dot, f.mul(a.basis.at(0, c), pm.at(0, c)));
            if (dot == 0) pts.push_back(int(i));
        }
        Bitset pset(gq.n_points);
        for (int p : pts) pset.set(p);
        for (std::size_t l = 0; l < gq.lines.size(); ++l)
            if (gq.line_point_bits[l].is_subset_of(pset)) lns.push_back(int(l));
        if (is_grid(gq, pts, lns)) out.push_back({pts, lns});
    }
    return out;
}

std::vector<Grid> grids_by_subset_closure(const IncidenceGQ& gq) {
    if (gq.s != 2 || gq.t != 2)
        throw UnsupportedError("grids_by_subset_closure: order (2,2) only");
    std::vector<Grid> out;
    std::vector<int> idx = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    const int n = gq.n_points;
    // all 9-subsets of the 15 points
    while (true) {
        Bitset pset(n);
        for (int i : idx) pset.set(i);
        std::vector<int> lns;
        for (std::size_t l = 0; l < gq.lines.size(); ++l)
            if (gq.line_point_bits[l].is_subset_of(pset)) lns.push_back(int(l));
        std::vector<int> pts(idx.begin(), idx.end());
        if (is_grid(gq, pts, lns)) out.push_back({pts, lns});
        // next 9-combination of 0..n-1
        int k = 8;
        while (k >= 0 && idx[k] == n - 9 + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < 9; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace {

GqContext finish_context(GqContext ctx, int threads) {
    ctx.flags = ctx.gq.flags();
    ctx.graph = flag_graph(ctx.gq, threads);
    return ctx;
}

} // namespace

GqContext GqContext::w(int q, int threads) {
    GqContext ctx;
    ctx.model = "w";
    ctx.q = q;
    ctx.ambient.emplace(3, q);
    ctx.gq = w_symplectic(q, *ctx.ambient, &ctx.emb);
    return finish_context(std::move(ctx), threads);
}

GqContext GqContext::q4(int q, int threads) {
    GqContext ctx;
    ctx.model = "q4";
    ctx.q = q;
    ctx.ambient.emplace(4, q);
    ctx.gq = q4_quadric(q, *ctx.ambient, &ctx.emb);
    return finish_context(std::move(ctx), threads);
}

GqContext GqContext::h4(int threads) {
    GqContext ctx;
    ctx.model = "h4";
    ctx.q = 2;
    ctx.gq = h4_hermitian();
    return finish_context(std::move(ctx), threads);
}

GqContext GqContext::from_incidence(IncidenceGQ gq, int threads, std::string name) {
    GqContext ctx;
    ctx.model = std::move(name);
    ctx.gq = std::move(gq);
    return finish_context(std::move(ctx), threads);
}

int GqContext::vertex_of(int point_id, int line_id) const {
    auto key = std::pair{point_id, line_id};
    auto it = std::lower_bound(flags.begin(), flags.end(), key,
                               [](const Flag& f, const std::pair<int, int>& k) {
                                   return std::pair{f.point_id, f.line_id} < k;
                               });
    if (it == flags.end() || std::pair{it->point_id, it->line_id} != key) return -1;
    return int(it - flags.begin());
}

void write_gq(std::ostream& os, const IncidenceGQ& gq) {
    os << "gq " << gq.n_points << ' ' << gq.lines.size() << '\n';
    for (const auto& l : gq.lines) {
        for (std::size_t i = 0; i < l.size(); ++i) os << (i ? " " : "") << l[i];
        os << '\n';
    }
}

std::pair<int, std::vector<std::vector<int>>> read_gq(std::istream& is) {
    std::string line;
    int n_points = -1;
    std::size_t n_lines = 0;
    std::vector<std::vector<int>> lines;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (n_points < 0) {
            std::string tag;
            if (!(ls >> tag)) continue; // blank/comment before header
            if (tag != "gq") throw Error("GQ file: expected 'gq <n_points> <n_lines>' header");
            if (!(ls >> n_points >> n_lines)) throw Error("GQ file: malformed header");
            continue;
        }
        std::vector<int> pts;
        int p;
        while (ls >> p) pts.push_back(p);
        if (!pts.empty()) lines.push_back(std::move(pts));
    }
    if (n_points < 0) throw Error("GQ file: missing header");
    if (lines.size() != n_lines)
        throw Error("GQ file: expected " + std::to_string(n_lines) + " lines, got " +
                    std::to_string(lines.size()));
    return {n_points, std::move(lines)};
}

} // namespace flagopp
