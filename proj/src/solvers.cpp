#include "flagopp/solvers.hpp"

#include <algorithm>

#include "flagopp/errors.hpp"

namespace flagopp {

namespace {

using Clock = std::chrono::steady_clock;

long elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Shared scratch space for the branch-and-bound and Bron-Kerbosch searches.
// One frame per recursion depth, grown lazily, so the hot loops do not
// allocate.
struct Frame {
    Bitset child_p, child_x;
    std::vector<Bitset> commons; // greedy cover cliques
    std::vector<int> order;      // branch candidates sorted by cover class
    std::vector<int> klass;      // 1-based cover class per candidate
};

struct SearchCtx {
    const OppositionGraph& g;
    std::size_t n;
    std::vector<Frame> frames;
    std::uint64_t nodes = 0;
    Clock::time_point deadline;
    bool timed_out = false;

    explicit SearchCtx(const OppositionGraph& graph, Millis budget)
        : g(graph), n(graph.size()), frames(graph.size() + 2),
          deadline(Clock::now() + budget) {}

    Frame& frame(std::size_t depth) { return frames[depth]; }

    bool check_time() {
        if (timed_out) return true;
        if ((nodes & 1023) == 0 && Clock::now() > deadline) timed_out = true;
        return timed_out;
    }

    // Greedy clique cover of P; fills order/klass of the frame and returns
    // the number of cliques (an upper bound on the independent sets inside
    // P). Vertices are assigned in ascending id order to the first clique
    // all of whose members they are adjacent to.
    int cover_bound(const Bitset& p, Frame& f) {
        f.order.clear();
        f.klass.clear();
        int k = 0;
        std::vector<std::vector<int>> members; // vertex ids per clique, for ordering
        p.for_each([&](std::size_t v) {
            for (int i = 0; i < k; ++i) {
                if (f.commons[i].test(v)) {
                    f.commons[i] &= g.row(v);
                    members[i].push_back(int(v));
                    return;
                }
            }
            if (int(f.commons.size()) <= k) f.commons.emplace_back();
            f.commons[k] = g.row(v);
            members.emplace_back();
            members.back().push_back(int(v));
            ++k;
        });
        for (int i = 0; i < k; ++i)
            for (int v : members[i]) {
                f.order.push_back(v);
                f.klass.push_back(i + 1);
            }
        return k;
    }
};

struct MisSearch {
    SearchCtx ctx;
    std::vector<int> current;
    std::vector<int> best_set;
    std::size_t best;

    MisSearch(const OppositionGraph& g, Millis budget) : ctx(g, budget), best(0) {}

    void expand(const Bitset& p, std::size_t depth) {
        ++ctx.nodes;
        if (ctx.check_time()) return;
        Frame& f = ctx.frame(depth);
        if (p.none()) {
            if (current.size() > best) {
                best = current.size();
                best_set = current;
                std::sort(best_set.begin(), best_set.end());
            }
            return;
        }
        ctx.cover_bound(p, f);
        Bitset rest = p;
        // branch candidates from the highest cover class down; stop once the
        // bound closes, since classes only decrease from here
        for (int i = int(f.order.size()) - 1; i >= 0; --i) {
            if (current.size() + std::size_t(f.klass[i]) <= best) return;
            int v = f.order[i];
            current.push_back(v);
            Bitset& child = ctx.frame(depth + 1).child_p;
            child = rest;
            child.and_not(ctx.g.row(std::size_t(v))); // keep non-neighbours
            child.reset(std::size_t(v));
            expand(child, depth + 1);
            current.pop_back();
            if (ctx.timed_out) return;
            rest.reset(std::size_t(v));
        }
    }
};

} // namespace

SolveResult max_independent_set(const OppositionGraph& graph, std::optional<std::vector<int>> hint,
                                Millis budget) {
    if (graph.size() > 10000)
        throw UnsupportedError("max_independent_set: graph exceeds 10^4 vertices");
    auto start = Clock::now();
    MisSearch search(graph, budget);

    if (hint) {
        auto cert = make_independent_set(graph, *hint, "hint");
        auto chk = verify_certificate(graph, cert);
        if (!chk.ok) throw Error("max_independent_set: hint is not independent: " + chk.violation);
        search.best = hint->size();
        search.best_set = *hint;
        std::sort(search.best_set.begin(), search.best_set.end());
    }

    Bitset all(graph.size());
    all.set_all();
    Frame root_frame;
    SearchCtx root_ctx(graph, budget);
    long root_bound = graph.size() == 0 ? 0 : root_ctx.cover_bound(all, root_frame);

    search.expand(all, 0);

    SolveResult r;
    r.nodes = search.ctx.nodes;
    r.runtime_ms = elapsed_ms(start);
    r.objective = long(search.best);
    r.optimal = !search.ctx.timed_out;
    r.lower_bound = long(search.best);
    r.upper_bound = r.optimal ? long(search.best) : std::max<long>(root_bound, r.lower_bound);
    if (!search.best_set.empty() || graph.size() == 0) {
        auto cert = make_independent_set(graph, search.best_set,
                                         r.optimal ? "max_independent_set (exact)"
                                                   : "max_independent_set (incumbent at timeout)");
        auto chk = verify_certificate(graph, cert); // self-verification
        if (!chk.ok) throw Error("internal: MIS witness failed verification: " + chk.violation);
        r.witness = std::move(cert);
    }
    return r;
}

namespace {

struct BkSearch {
    SearchCtx ctx;
    std::size_t min_size;
    std::vector<int> current;
    std::vector<std::vector<int>> found;
    std::vector<Bitset> nonadj; // complement rows without the diagonal

    BkSearch(const OppositionGraph& g, std::size_t ms, Millis budget)
        : ctx(g, budget), min_size(ms) {
        nonadj.reserve(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) {
            Bitset b(g.size());
            b.set_all();
            b.and_not(g.row(v));
            b.reset(v);
            nonadj.push_back(std::move(b));
        }
    }

    void expand(const Bitset& p, const Bitset& x, std::size_t depth) {
        ++ctx.nodes;
        if (ctx.check_time()) return;
        if (p.none()) {
            if (x.none() && current.size() >= min_size) {
                found.push_back(current);
                std::sort(found.back().begin(), found.back().end());
            }
            return;
        }
        Frame& f = ctx.frame(depth);
        if (min_size > 0 &&
            current.size() + std::size_t(ctx.cover_bound(p, f)) < min_size)
            return; // no maximal set of the required size below this node
        // domination: an excluded vertex compatible with all of P blocks
        // every maximal set in this subtree
        for (std::size_t u = x.first(); u < ctx.n; u = x.next(u))
            if (p.is_subset_of(nonadj[u])) return;
        // pivot: u in P|X maximizing |P & nonadj(u)|, lowest id wins ties
        std::size_t pivot = ctx.n;
        std::size_t best_gain = 0;
        bool have = false;
        auto consider = [&](std::size_t u) {
            std::size_t gain = p.count_and(nonadj[u]);
            if (!have || gain > best_gain) {
                have = true;
                best_gain = gain;
                pivot = u;
            }
        };
        for (std::size_t u = p.first(); u < ctx.n; u = p.next(u)) consider(u);
        for (std::size_t u = x.first(); u < ctx.n; u = x.next(u)) consider(u);

        Bitset cand = p;
        cand.and_not(nonadj[pivot]); // P minus the pivot's non-neighbours
        Bitset rest_p = p, rest_x = x;
        for (std::size_t v = cand.first(); v < ctx.n; v = cand.next(v)) {
            current.push_back(int(v));
            Frame& cf = ctx.frame(depth + 1);
            cf.child_p = rest_p;
            cf.child_p &= nonadj[v];
            cf.child_x = rest_x;
            cf.child_x &= nonadj[v];
            expand(cf.child_p, cf.child_x, depth + 1);
            current.pop_back();
            if (ctx.timed_out) return;
            rest_p.reset(v);
            rest_x.set(v);
        }
    }
};

} // namespace

EnumerateResult enumerate_maximal_is(const OppositionGraph& graph, std::size_t min_size,
                                     Millis budget) {
    if (min_size == 0 && graph.size() > 500)
        throw UnsupportedError("enumerate_maximal_is: full enumeration is guarded at 500 vertices");
    auto start = Clock::now();
    BkSearch search(graph, min_size, budget);
    Bitset p(graph.size()), x(graph.size());
    p.set_all();
    search.expand(p, x, 0);
    EnumerateResult r;
    r.sets = std::move(search.found);
    r.complete = !search.ctx.timed_out;
    r.nodes = search.ctx.nodes;
    r.runtime_ms = elapsed_ms(start);
    return r;
}

namespace {

struct ColorSearch {
    const OppositionGraph& g;
    int k;
    std::size_t n;
    std::vector<int> color;                     // 0 = uncolored, else 1..k
    std::vector<std::vector<std::uint16_t>> nc; // nc[v][c-1]: colored neighbours with c
    std::vector<int> sat;                       // distinct neighbour colors
    std::vector<int> adj_uncolored;
    int used = 0;
    std::uint64_t nodes = 0;
    Clock::time_point deadline;
    bool timed_out = false;

    ColorSearch(const OppositionGraph& graph, int kk, Millis budget)
        : g(graph), k(kk), n(graph.size()), color(n, 0),
          nc(n, std::vector<std::uint16_t>(std::size_t(kk), 0)), sat(n, 0), adj_uncolored(n, 0),
          deadline(Clock::now() + budget) {
        for (std::size_t v = 0; v < n; ++v) adj_uncolored[v] = int(g.degree(v));
    }

    void assign(std::size_t v, int c) {
        color[v] = c;
        g.row(v).for_each([&](std::size_t w) {
            if (nc[w][c - 1]++ == 0) ++sat[w];
            --adj_uncolored[w];
        });
    }

    void unassign(std::size_t v, int c) {
        color[v] = 0;
        g.row(v).for_each([&](std::size_t w) {
            if (--nc[w][c - 1] == 0) --sat[w];
            ++adj_uncolored[w];
        });
    }

    bool dfs(std::size_t colored) {
        ++nodes;
        if ((nodes & 255) == 0 && Clock::now() > deadline) {
            timed_out = true;
            return false;
        }
        if (colored == n) return true;
        // saturation-degree order: max sat, then max uncolored degree, then
        // lowest id
        std::size_t v = n;
        for (std::size_t u = 0; u < n; ++u) {
            if (color[u]) continue;
            if (v == n || sat[u] > sat[v] ||
                (sat[u] == sat[v] && adj_uncolored[u] > adj_uncolored[v]))
                v = u;
        }
        int limit = std::min(k, used + 1); // new color only in first-use order
        for (int c = 1; c <= limit; ++c) {
            if (nc[v][c - 1]) continue;
            int prev_used = used;
            used = std::max(used, c);
            assign(v, c);
            if (dfs(colored + 1)) return true;
            unassign(v, c);
            used = prev_used;
            if (timed_out) return false;
        }
        return false;
    }
};

Certificate coloring_cert(const OppositionGraph& g, const std::vector<int>& color, int k,
                          std::string provenance) {
    Certificate cert;
    cert.kind = CertKind::proper_coloring;
    cert.graph_fingerprint = g.fingerprint();
    cert.provenance = std::move(provenance);
    cert.vertex_sets.assign(std::size_t(k), {});
    for (std::size_t v = 0; v < g.size(); ++v) cert.vertex_sets[std::size_t(color[v] - 1)].push_back(int(v));
    while (!cert.vertex_sets.empty() && cert.vertex_sets.back().empty()) cert.vertex_sets.pop_back();
    return cert;
}

} // namespace

ColorableResult k_colorable(const OppositionGraph& graph, int k, Millis budget) {
    if (graph.size() > 500)
        throw UnsupportedError("k_colorable: exact search is guarded at 500 vertices");
    if (k > 64) throw UnsupportedError("k_colorable: k is guarded at 64");
    auto start = Clock::now();
    ColorableResult r;
    if (k <= 0) {
        r.feasible = graph.size() == 0 ? Feasibility::yes : Feasibility::no;
        return r;
    }
    ColorSearch search(graph, k, budget);
    bool ok = search.dfs(0);
    r.nodes = search.nodes;
    r.runtime_ms = elapsed_ms(start);
    if (ok) {
        r.feasible = Feasibility::yes;
        auto cert = coloring_cert(graph, search.color, k,
                                  "k_colorable k=" + std::to_string(k));
        auto chk = verify_certificate(graph, cert);
        if (!chk.ok) throw Error("internal: coloring witness failed verification: " + chk.violation);
        r.coloring = std::move(cert);
    } else {
        r.feasible = search.timed_out ? Feasibility::unknown : Feasibility::no;
    }
    return r;
}

Certificate greedy_coloring(const OppositionGraph& graph) {
    const std::size_t n = graph.size();
    std::vector<int> color(n, 0);
    std::vector<Bitset> used_by_color; // vertices per color, for conflict checks
    // DSATUR order without backtracking
    std::vector<int> sat(n, 0), deg(n, 0);
    std::vector<std::vector<bool>> seen(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = int(graph.degree(v));
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t v = n;
        for (std::size_t u = 0; u < n; ++u) {
            if (color[u]) continue;
            if (v == n || sat[u] > sat[v] || (sat[u] == sat[v] && deg[u] > deg[v])) v = u;
        }
        int c = 1;
        while (std::size_t(c) <= used_by_color.size() &&
               used_by_color[std::size_t(c - 1)].intersects(graph.row(v)))
            ++c;
        if (std::size_t(c) > used_by_color.size()) used_by_color.emplace_back(n);
        used_by_color[std::size_t(c - 1)].set(v);
        color[v] = c;
        graph.row(v).for_each([&](std::size_t w) {
            if (color[w]) return;
            if (seen[w].size() < std::size_t(c)) seen[w].resize(std::size_t(c), false);
            if (!seen[w][std::size_t(c - 1)]) {
                seen[w][std::size_t(c - 1)] = true;
                ++sat[w];
            }
        });
    }
    return coloring_cert(graph, color, int(used_by_color.size()), "greedy_coloring (dsatur)");
}

SolveResult chromatic_number(const OppositionGraph& graph, std::optional<Certificate> ub_hint,
                             std::optional<std::pair<long, std::string>> lb_hint, Millis budget) {
    auto start = Clock::now();
    SolveResult r;

    Certificate best_coloring = greedy_coloring(graph);
    long ub = long(best_coloring.vertex_sets.size());
    if (ub_hint) {
        auto chk = verify_certificate(graph, *ub_hint);
        if (!chk.ok) throw Error("chromatic_number: upper-bound hint invalid: " + chk.violation);
        if (ub_hint->kind != CertKind::proper_coloring)
            throw Error("chromatic_number: upper-bound hint must be a proper coloring");
        if (long(ub_hint->vertex_sets.size()) < ub) {
            ub = long(ub_hint->vertex_sets.size());
            best_coloring = *ub_hint;
        }
    }

    long lb = graph.size() == 0 ? 0 : 1;
    std::string lb_reason = "trivial";
    auto clique = greedy_clique(graph);
    if (long(clique.size()) > lb) {
        lb = long(clique.size());
        lb_reason = "greedy clique of size " + std::to_string(clique.size());
    }
    if (lb_hint && lb_hint->first > lb) {
        lb = lb_hint->first;
        lb_reason = lb_hint->second;
    }

    std::uint64_t nodes = 0;
    bool timed_out = false;
    auto deadline = start + budget;
    if (graph.size() <= 500) {
        while (lb < ub) {
            auto left = std::chrono::duration_cast<Millis>(deadline - Clock::now());
            if (left.count() <= 0) {
                timed_out = true;
                break;
            }
            auto kc = k_colorable(graph, int(lb), left);
            nodes += kc.nodes;
            if (kc.feasible == Feasibility::yes) {
                ub = lb;
                best_coloring = *kc.coloring;
                break;
            }
            if (kc.feasible == Feasibility::unknown) {
                timed_out = true;
                break;
            }
            lb_reason = "exhausted " + std::to_string(lb) + "-coloring search";
            ++lb;
        }
    }

    r.objective = ub;
    r.optimal = (lb == ub) && !timed_out;
    r.lower_bound = lb;
    r.upper_bound = ub;
    r.lower_bound_reason = lb_reason;
    r.nodes = nodes;
    r.runtime_ms = elapsed_ms(start);
    best_coloring.provenance += r.optimal ? "" : " (upper bound)";
    r.witness = std::move(best_coloring);
    return r;
}

Certificate greedy_clique_cover(const OppositionGraph& graph) {
    const std::size_t n = graph.size();
    Certificate cert;
    cert.kind = CertKind::clique_cover;
    cert.graph_fingerprint = graph.fingerprint();
    cert.provenance = "greedy_clique_cover";
    Bitset uncovered(n);
    uncovered.set_all();
    for (std::size_t v = 0; v < n; ++v) {
        if (!uncovered.test(v)) continue;
        std::vector<int> clique{int(v)};
        Bitset common = graph.row(v);
        common &= uncovered;
        for (std::size_t w = common.first(); w < n; w = common.first()) {
            clique.push_back(int(w));
            common &= graph.row(w);
        }
        for (int u : clique) uncovered.reset(std::size_t(u));
        cert.vertex_sets.push_back(std::move(clique));
    }
    return cert;
}

std::vector<int> greedy_clique(const OppositionGraph& graph, int restarts) {
    std::vector<int> best;
    const std::size_t n = graph.size();
    for (std::size_t s = 0; s < n && int(s) < restarts; ++s) {
        std::vector<int> clique{int(s)};
        Bitset common = graph.row(s);
        for (std::size_t w = common.first(); w < n; w = common.first()) {
            clique.push_back(int(w));
            common &= graph.row(w);
        }
        if (clique.size() > best.size()) best = std::move(clique);
    }
    std::sort(best.begin(), best.end());
    return best;
}

} // namespace flagopp
