#include "flagopp/projective.hpp"

#include <algorithm>

#include "flagopp/errors.hpp"

namespace flagopp {

namespace {

// Odometer over `positions` values in 0..q-1, last position fastest.
// Returns false when the odometer wraps around to all zeros.
bool advance(std::vector<FieldElement>& digits, int q) {
    for (int i = int(digits.size()) - 1; i >= 0; --i) {
        if (++digits[i] < q) return true;
        digits[i] = 0;
    }
    return false;
}

} // namespace

Geometry::Geometry(int n, int q) : n_(n), q_(q) {
    if (n < 3 || n > 5) throw UnsupportedError("PG(n,q): n must be 3, 4 or 5");
    f_ = &field(q);
    enumerate_points();
    if (n <= 4) enumerate_lines();
    if (n == 3) enumerate_planes();
    build_incidence();
}

void Geometry::enumerate_points() {
    const int cols = n_ + 1;
    std::vector<FieldElement> v(cols, 0);
    // lexicographic order over all tuples, c0 most significant
    while (advance(v, q_)) {
        int lead = -1;
        for (int i = 0; i < cols; ++i)
            if (v[i] != 0) { lead = i; break; }
        if (lead < 0 || v[lead] != 1) continue; // canonical reps only
        Subspace s;
        s.dim = 0;
        s.basis = row_mat(v);
        s.id = int(points_.size());
        point_index_.emplace(s.basis.key(), s.id);
        points_.push_back(std::move(s));
    }
}

void Geometry::enumerate_lines() {
    enumerate_rref(2, n_ + 1, *f_, [&](const Mat& m) {
        Subspace s;
        s.dim = 1;
        s.basis = m;
        s.id = int(lines_.size());
        line_index_.emplace(m.key(), s.id);
        lines_.push_back(std::move(s));
    });
}

void Geometry::enumerate_planes() {
    enumerate_rref(3, n_ + 1, *f_, [&](const Mat& m) {
        Subspace s;
        s.dim = 2;
        s.basis = m;
        s.id = int(planes_.size());
        plane_index_.emplace(m.key(), s.id);
        planes_.push_back(std::move(s));
    });
}

int Geometry::point_id(std::vector<FieldElement> v) const {
    normalize_point(v, *f_);
    auto it = point_index_.find(row_mat(v).key());
    return it == point_index_.end() ? -1 : it->second;
}

int Geometry::line_id_by_key(const std::string& key) const {
    auto it = line_index_.find(key);
    return it == line_index_.end() ? -1 : it->second;
}

int Geometry::plane_id_by_key(const std::string& key) const {
    auto it = plane_index_.find(key);
    return it == plane_index_.end() ? -1 : it->second;
}

void Geometry::build_incidence() {
    const std::size_t np = points_.size();

    line_points_.resize(lines_.size());
    line_point_bits_.assign(lines_.size(), Bitset(np));
    point_lines_.resize(np);
    for (const auto& l : lines_) {
        auto pts = subspace_points(l.basis, *f_);
        for (auto& v : pts) {
            std::vector<FieldElement> w = v;
            normalize_point(w, *f_);
            int pid = point_index_.at(row_mat(w).key());
            line_points_[l.id].push_back(pid);
            line_point_bits_[l.id].set(pid);
        }
        std::sort(line_points_[l.id].begin(), line_points_[l.id].end());
        for (int pid : line_points_[l.id]) point_lines_[pid].push_back(l.id);
    }
    for (auto& v : point_lines_) std::sort(v.begin(), v.end());

    lines_meet_.assign(lines_.size(), Bitset(lines_.size()));
    for (std::size_t i = 0; i < lines_.size(); ++i)
        for (std::size_t j = 0; j < lines_.size(); ++j)
            if (line_point_bits_[i].intersects(line_point_bits_[j]))
                lines_meet_[i].set(j);

    if (planes_.empty()) return;

    plane_points_.resize(planes_.size());
    plane_point_bits_.assign(planes_.size(), Bitset(np));
    point_planes_.resize(np);
    for (const auto& pl : planes_) {
        auto pts = subspace_points(pl.basis, *f_);
        for (auto& v : pts) {
            std::vector<FieldElement> w = v;
            normalize_point(w, *f_);
            int pid = point_index_.at(row_mat(w).key());
            plane_points_[pl.id].push_back(pid);
            plane_point_bits_[pl.id].set(pid);
        }
        std::sort(plane_points_[pl.id].begin(), plane_points_[pl.id].end());
        for (int pid : plane_points_[pl.id]) point_planes_[pid].push_back(pl.id);
    }
    for (auto& v : point_planes_) std::sort(v.begin(), v.end());

    line_planes_.resize(lines_.size());
    plane_lines_.resize(planes_.size());
    for (const auto& l : lines_)
        for (const auto& pl : planes_)
            if (line_point_bits_[l.id].is_subset_of(plane_point_bits_[pl.id])) {
                line_planes_[l.id].push_back(pl.id);
                plane_lines_[pl.id].push_back(l.id);
            }
}

bool Geometry::line_in_plane(int l, int pl) const {
    return line_point_bits_[l].is_subset_of(plane_point_bits_[pl]);
}

Subspace Geometry::dual(const Subspace& s) const {
    if (n_ != 3) throw UnsupportedError("dual: only PG(3,q) enumerates all dual classes");
    // rows of the complement: solutions y of  basis . y^T = 0
    // Solve by RREF of the basis and back-substitution over free columns.
    const int cols = n_ + 1;
    Mat m = s.basis; // already RREF
    std::vector<int> piv;
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (m.at(r, c) != 0) { piv.push_back(c); break; }
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free_cols.push_back(c);

    Mat comp;
    comp.rows = int(free_cols.size());
    comp.cols = cols;
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::vector<FieldElement> y(cols, 0);
        y[free_cols[k]] = 1;
        for (int r = 0; r < m.rows; ++r)
            y[piv[r]] = f_->neg(m.at(r, free_cols[k]));
        for (int c = 0; c < cols; ++c) comp.at(int(k), c) = y[c];
    }
    rref(comp, *f_);

    Subspace d;
    d.dim = comp.rows - 1;
    d.basis = comp;
    if (d.dim == 0) d.id = point_index_.at(comp.key());
    else if (d.dim == 1) d.id = line_index_.at(comp.key());
    else d.id = plane_index_.at(comp.key());
    return d;
}

std::vector<Chamber> chambers_pg3(const Geometry& g) {
    if (g.n() != 3) throw UnsupportedError("chambers_pg3 requires PG(3,q)");
    std::vector<Chamber> out;
    for (const auto& p : g.points())
        for (int l : g.point_lines(p.id))
            for (int pl : g.line_planes(l))
                out.push_back({p.id, l, pl});
    return out;
}

bool opposite_pg(const Chamber& c1, const Chamber& c2, const Geometry& g) {
    return !g.point_in_plane(c1.point_id, c2.plane_id) &&
           !g.point_in_plane(c2.point_id, c1.plane_id) &&
           !g.lines_meet(c1.line_id, c2.line_id);
}

std::string chamber_label(const Chamber& c) {
    return std::to_string(c.point_id) + " " + std::to_string(c.line_id) + " " +
           std::to_string(c.plane_id);
}

PgContext::PgContext(int q, int threads, bool force)
    : geometry(3, q), chambers(chambers_pg3(geometry)),
      graph(chamber_graph(geometry, threads, force)) {}

int PgContext::vertex_of(int point_id, int line_id, int plane_id) const {
    auto key = std::tuple{point_id, line_id, plane_id};
    auto it = std::lower_bound(chambers.begin(), chambers.end(), key,
                               [](const Chamber& c, const std::tuple<int, int, int>& k) {
                                   return std::tuple{c.point_id, c.line_id, c.plane_id} < k;
                               });
    if (it == chambers.end() || std::tuple{it->point_id, it->line_id, it->plane_id} != key)
        return -1;
    return int(it - chambers.begin());
}

OppositionGraph chamber_graph(const Geometry& g, int threads, bool force) {
    if (g.n() != 3) throw UnsupportedError("chamber_graph requires PG(3,q)");
    if (g.q() > 4 && !force)
        throw UnsupportedError("chamber_graph: q > 4 needs force (memory guard)");
    if (g.q() > 5) throw UnsupportedError("chamber_graph: q > 5 not supported");

    auto chambers = chambers_pg3(g);
    auto rows = build_adjacency(chambers.size(), threads, [&](std::size_t i, std::size_t j) {
        return opposite_pg(chambers[i], chambers[j], g);
    });
    std::vector<std::string> labels;
    labels.reserve(chambers.size());
    for (const auto& c : chambers) labels.push_back(chamber_label(c));
    return OppositionGraph(std::move(rows), std::move(labels));
}

} // namespace flagopp
