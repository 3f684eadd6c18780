// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Budgets are asserted with wide margins over the measured runtimes.

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <set>

#include "flagopp/klein.hpp"
#include "flagopp/reporting.hpp"
#include "flagopp/solvers.hpp"

#include "oracles.hpp"

using namespace flagopp;
using namespace flagopp::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    const char* name;
    const char* summary;
    Clock::time_point t0 = Clock::now();
    int exceptions_before = std::uncaught_exceptions();

    ~Criterion() {
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        bool failed = std::uncaught_exceptions() > exceptions_before;
        std::printf("%s %s: %s (%ld ms)\n", failed ? "FAIL" : "PASS", name, summary, ms);
        std::fflush(stdout);
    }

    long seconds() const {
        return std::chrono::duration_cast<std::chrono::seconds>(Clock::now() - t0).count();
    }
};

std::set<std::vector<int>> gq_pencil_family(const GqContext& ctx) {
    std::set<std::vector<int>> pencils;
    for (int p = 0; p < ctx.gq.n_points; ++p) {
        auto v = pencil_gq_vertices(GqElement::point, p, ctx);
        std::sort(v.begin(), v.end());
        pencils.insert(std::move(v));
    }
    for (std::size_t l = 0; l < ctx.gq.lines.size(); ++l) {
        auto v = pencil_gq_vertices(GqElement::line, int(l), ctx);
        std::sort(v.begin(), v.end());
        pencils.insert(std::move(v));
    }
    return pencils;
}

const Report& find_report(const std::vector<Report>& reports, const std::string& needle) {
    for (const auto& r : reports)
        if (r.check_id.find(needle) != std::string::npos) return r;
    throw std::runtime_error("no report matching " + needle);
}

} // namespace

TEST_CASE("criterion-1: GQ(2,2) full suite") {
    Criterion c{"criterion-1",
                "GQ(2,2): 45 flags, alpha=9, gap (7,9) empty, classification, chi=5"};

    auto w2 = GqContext::w(2);
    REQUIRE(w2.graph.size() == 45);

    auto mis = max_independent_set(w2.graph, pencil_gq_vertices(GqElement::point, 0, w2));
    REQUIRE(mis.optimal);
    REQUIRE(mis.objective == 9); // (s+1)(t+1)

    // complete enumeration: every maximal set has size 9 or at most 7
    auto all = enumerate_maximal_is(w2.graph, 0);
    REQUIRE(all.complete);
    std::set<std::vector<int>> maximum_sets;
    for (const auto& s : all.sets) {
        REQUIRE((s.size() == 9 || s.size() <= 7)); // max{1+s+2t,1+t+2s} = 7, exact
        if (s.size() == 9) maximum_sets.insert(s);
    }

    // every size-9 set is a pencil or a grid set
    auto pencils = gq_pencil_family(w2);
    REQUIRE(pencils.size() == 30);
    std::set<std::vector<int>> expected = pencils;
    for (const auto& grid : grids_by_subset_closure(w2.gq)) {
        auto cert = exceptional_gq22(grid, w2);
        auto v = cert.set();
        std::sort(v.begin(), v.end());
        expected.insert(std::move(v));
    }
    REQUIRE(expected.size() == 40);
    REQUIRE(maximum_sets == expected);

    // chi = 5 = st+1: spread-induced coloring + pigeonhole lower bound
    auto q42 = GqContext::q4(2);
    auto spread = spread_w(w2, q42, ovoid_q4(q42));
    auto coloring = coloring_from_ovoid_or_spread(w2, GqElement::line, spread);
    REQUIRE(coloring.vertex_sets.size() == 5);
    REQUIRE(verify_certificate(w2.graph, coloring).ok);
    long pigeonhole = (45 + mis.objective - 1) / mis.objective;
    REQUIRE(pigeonhole == 5);

    REQUIRE(c.seconds() < 120);
}

TEST_CASE("criterion-2: sharpness sets on Q(4,2) and Q(4,3)") {
    Criterion c{"criterion-2", "sharpness sets of sizes 7 and 10 = t+1+2s, maximal"};

    auto q42 = GqContext::q4(2);
    auto grids2 = grids_by_hyperplane(q42.gq, *q42.ambient, q42.emb);
    REQUIRE(!grids2.empty());
    auto cert2 = sharpness_set(q42, grids2.front(), grids2.front().points.front());
    REQUIRE(cert2.set().size() == 7);
    REQUIRE(verify_certificate(q42.graph, cert2).ok);
    REQUIRE(is_maximal_independent(q42.graph, cert2.set()));

    auto q43 = GqContext::q4(3);
    auto grids3 = grids_by_hyperplane(q43.gq, *q43.ambient, q43.emb);
    REQUIRE(!grids3.empty());
    auto cert3 = sharpness_set(q43, grids3.front(), grids3.front().points.front());
    REQUIRE(cert3.set().size() == 10);
    REQUIRE(verify_certificate(q43.graph, cert3).ok);
    REQUIRE(is_maximal_independent(q43.graph, cert3.set()));

    REQUIRE(c.seconds() < 10);
}

TEST_CASE("criterion-3: GQ(3,3)") {
    Criterion c{"criterion-3", "GQ(3,3): alpha=16, no maximal set of size 11..15, chi=10"};

    auto w3 = GqContext::w(3);
    REQUIRE(w3.graph.size() == 160);

    auto mis = max_independent_set(w3.graph, pencil_gq_vertices(GqElement::point, 0, w3));
    REQUIRE(mis.optimal);
    REQUIRE(mis.objective == 16);

    auto en = enumerate_maximal_is(w3.graph, 11);
    REQUIRE(en.complete);
    for (const auto& s : en.sets) REQUIRE(s.size() == 16); // nothing in 11..15

    // chi = 10 closed with zero search: ovoid coloring ub, pigeonhole lb
    auto q43 = GqContext::q4(3);
    auto spread = spread_w(w3, q43, ovoid_q4(q43));
    auto coloring = coloring_from_ovoid_or_spread(w3, GqElement::line, spread);
    REQUIRE(coloring.vertex_sets.size() == 10);
    long pigeonhole = (160 + 16 - 1) / 16;
    REQUIRE(pigeonhole == 10);

    REQUIRE(c.seconds() < 1800);
}

TEST_CASE("criterion-4: PG(3,2)") {
    Criterion c{"criterion-4",
                "PG(3,2): alpha=63 exact, 30 pencils maximal, 6-coloring, largest non-pencil"};

    VerifyOptions opts;
    opts.timeout_s = 3600;
    auto reports = run_verify_pg(2, opts);

    const auto& alpha = find_report(reports, ".alpha");
    REQUIRE(alpha.status == "verified");
    REQUIRE(alpha.observed.at("alpha").get<long>() == 63);

    const auto& pencils = find_report(reports, ".pencils");
    REQUIRE(pencils.status == "verified");
    REQUIRE(pencils.observed.at("pencils_checked").get<int>() == 30);

    const auto& coloring = find_report(reports, ".coloring");
    REQUIRE(coloring.status == "verified");
    REQUIRE(coloring.observed.at("color_classes").get<long>() == 6);

    const auto& second = find_report(reports, ".second_largest");
    REQUIRE(second.status == "reported-only"); // never asserted below q = 43
    REQUIRE(second.observed.at("largest_nonpencil_size").get<long>() > 0);
    REQUIRE(second.observed.at("largest_nonpencil_size").get<long>() < 63);
    REQUIRE(second.observed.at("maximum_sets").get<long>() == 30);
    REQUIRE(second.observed.at("maximum_sets_that_are_pencils").get<long>() == 30);

    REQUIRE(c.seconds() < 3600);
}

TEST_CASE("criterion-5: PG(3,3) and PG(3,4) colorings and regularity") {
    Criterion c{"criterion-5", "PG(3,3)/PG(3,4): q^2+q colorings proper, degree q^6 everywhere"};

    {
        auto t0 = Clock::now();
        PgContext ctx(3, 4);
        REQUIRE(ctx.graph.size() == 2080);
        for (std::size_t v = 0; v < ctx.graph.size(); ++v) REQUIRE(ctx.graph.degree(v) == 729);
        auto coloring = pg_coloring(0, ctx.geometry.line_planes(0).front(), ctx);
        REQUIRE(coloring.vertex_sets.size() == 12);
        REQUIRE(verify_certificate(ctx.graph, coloring).ok);
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        REQUIRE(ms < 300000);
    }
    {
        auto t0 = Clock::now();
        PgContext ctx(4, 4);
        REQUIRE(ctx.graph.size() == 8925);
        for (std::size_t v = 0; v < ctx.graph.size(); ++v) REQUIRE(ctx.graph.degree(v) == 4096);
        auto coloring = pg_coloring(0, ctx.geometry.line_planes(0).front(), ctx);
        REQUIRE(coloring.vertex_sets.size() == 20);
        REQUIRE(verify_certificate(ctx.graph, coloring).ok);
        long ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        REQUIRE(ms < 300000);
    }
}

TEST_CASE("criterion-6: Klein transfer at q=2 and q=3") {
    Criterion c{"criterion-6", "Klein: bijection, exact opposition transfer, pencil images"};

    for (int q : {2, 3}) {
        PgContext ctx(q, 4);
        KleinMap klein(ctx.geometry);
        // both plane families of the quadric: 2(q+1)(q^2+1)
        REQUIRE(klein.quadric_plane_count() == 2 * (q + 1) * (q * q + 1));

        std::set<std::tuple<int, int, int>> images;
        for (const auto& ch : ctx.chambers) {
            auto kc = klein.translate(ch);
            images.insert({kc.point_id, kc.greek_plane_id, kc.latin_plane_id});
        }
        REQUIRE(images.size() == ctx.chambers.size()); // bijection

        auto rep = klein.opposition_transfer_check(ctx);
        REQUIRE(rep.pass);
        unsigned long long n = ctx.chambers.size();
        REQUIRE(rep.pairs_checked == n * (n - 1) / 2);

        REQUIRE(klein.pencil_translation_check(ctx));
    }
    REQUIRE(c.seconds() < 600);
}

TEST_CASE("criterion-7: H(4,4)") {
    Criterion c{"criterion-7", "H(4,4): order (4,8), 165/297/1485, 36-cover, bracket vs {34,35,36}"};

    auto h4 = GqContext::h4(4);
    REQUIRE(h4.gq.s == 4);
    REQUIRE(h4.gq.t == 8);
    REQUIRE(h4.gq.n_points == 165);
    REQUIRE(h4.gq.lines.size() == 297);
    REQUIRE(h4.flags.size() == 1485);

    auto cover = h44_cover(0, h4);
    REQUIRE(cover.vertex_sets.size() == 36);
    REQUIRE(verify_certificate(h4.graph, cover).ok); // chi <= 36

    // fractional bound from the exact independence number
    auto mis = max_independent_set(h4.graph, pencil_gq_vertices(GqElement::point, 0, h4));
    REQUIRE(mis.optimal);
    REQUIRE(mis.objective == 45);
    long fractional = (1485 + 45 - 1) / 45;
    REQUIRE(fractional == 33);

    // harness report: computed bracket [33,36], cited lower bound 34 annotated
    VerifyOptions opts;
    auto reports = run_verify_gq(h4, opts);
    const auto& chrom = find_report(reports, ".chromatic");
    REQUIRE(chrom.status == "reported-only");
    REQUIRE(chrom.observed.at("fractional_lower_bound").get<long>() == 33);
    REQUIRE(chrom.observed.at("cited_lower_bound").get<long>() == 34);
    REQUIRE(chrom.observed.at("cover_sets").get<long>() == 36);
    REQUIRE(chrom.claim.find("cited, not recomputed") != std::string::npos);

    REQUIRE(c.seconds() < 600);
}

TEST_CASE("criterion-8: solver oracle equivalence") {
    Criterion c{"criterion-8", "solvers match exhaustive oracles on random graphs"};

    Rng rng(0xacce97ed);
    int graphs = 0;
    for (int it = 0; it < 105; ++it) {
        int n = 1 + rng.below(20);
        int percent = 5 + rng.below(90);
        auto g = random_graph(rng, n, percent);
        NaiveOracle oracle(g);

        auto mis = max_independent_set(g);
        REQUIRE(mis.optimal);
        REQUIRE(mis.objective == oracle.alpha());

        std::size_t min_size = std::size_t(rng.below(n + 1) / 2);
        auto en = enumerate_maximal_is(g, min_size);
        REQUIRE(en.complete);
        std::set<std::vector<int>> got(en.sets.begin(), en.sets.end());
        REQUIRE(got.size() == en.sets.size());
        REQUIRE(got == oracle.maximal_sets(min_size));
        ++graphs;
    }
    REQUIRE(graphs >= 100);

    Rng rng2(0xbadc0de5);
    for (int it = 0; it < 40; ++it) {
        int n = 1 + rng2.below(12);
        auto g = random_graph(rng2, n, 10 + rng2.below(80));
        NaiveOracle oracle(g);
        auto chi = chromatic_number(g);
        REQUIRE(chi.optimal);
        REQUIRE(chi.objective == oracle.chi());
    }
}

TEST_CASE("criterion-9: determinism across runs and worker counts") {
    Criterion c{"criterion-9", "byte-identical graphs, certificates and reports"};

    // graph builds are independent of the worker count
    {
        PgContext a(2, 1), b(2, 4);
        REQUIRE(a.graph.fingerprint() == b.graph.fingerprint());
        REQUIRE(a.graph.dimacs() == b.graph.dimacs());
    }
    for (int q : {2, 3}) {
        auto a = GqContext::w(q, 1), b = GqContext::w(q, 4);
        REQUIRE(a.graph.fingerprint() == b.graph.fingerprint());
        REQUIRE(a.graph.dimacs() == b.graph.dimacs());
    }

    // certificates and solver witnesses are byte-identical across runs
    auto once = [](int threads) {
        std::vector<std::string> blobs;
        auto w2 = GqContext::w(2, threads);
        auto q42 = GqContext::q4(2, threads);
        blobs.push_back(pencil_gq(GqElement::point, 3, w2).to_json());
        auto spread = spread_w(w2, q42, ovoid_q4(q42));
        blobs.push_back(coloring_from_ovoid_or_spread(w2, GqElement::line, spread).to_json());
        blobs.push_back(max_independent_set(w2.graph).witness->to_json());
        auto en = enumerate_maximal_is(w2.graph, 9);
        std::string cat;
        for (const auto& s : en.sets)
            for (int v : s) cat += std::to_string(v) + ",";
        blobs.push_back(cat);
        PgContext pg(2, threads);
        blobs.push_back(pg_coloring(0, pg.geometry.line_planes(0).front(), pg).to_json());
        blobs.push_back(max_independent_set(pg.graph,
                                            pencil_pg_vertices(PgElement::point, 0, pg))
                            .witness->to_json());
        auto grids = grids_by_hyperplane(q42.gq, *q42.ambient, q42.emb);
        blobs.push_back(sharpness_set(q42, grids.front(), grids.front().points.front()).to_json());
        PgContext pg3(3, threads);
        blobs.push_back(pg_coloring(0, pg3.geometry.line_planes(0).front(), pg3).to_json());
        blobs.push_back(pg3.graph.fingerprint());
        auto h4 = GqContext::h4(threads);
        blobs.push_back(h44_cover(0, h4).to_json());
        blobs.push_back(h4.graph.fingerprint());
        return blobs;
    };
    auto run1 = once(1);
    auto run2 = once(4);
    REQUIRE(run1 == run2);

    // full verification reports agree modulo runtime fields
    auto report_blob = [](int threads) {
        auto ctx = GqContext::w(2, threads);
        VerifyOptions opts;
        opts.threads = threads;
        auto reports = run_verify_gq(ctx, opts);
        std::string out;
        for (auto& r : reports) {
            auto j = r.to_json();
            j.erase("runtime_ms");
            out += j.dump(2);
        }
        return out;
    };
    REQUIRE(report_blob(1) == report_blob(4));
}
