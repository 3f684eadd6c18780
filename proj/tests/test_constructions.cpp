#include <doctest.h>

#include <algorithm>
#include <set>

#include "flagopp/constructions.hpp"
#include "flagopp/errors.hpp"

using namespace flagopp;

TEST_CASE("pg pencils have the closed-form size and are maximal") {
    PgContext ctx2(2);
    auto c = pencil_pg(PgElement::point, 0, ctx2);
    CHECK(c.set().size() == 63);
    CHECK(verify_certificate(ctx2.graph, c).ok);
    CHECK(is_maximal_independent(ctx2.graph, c.set()));

    PgContext ctx3(3);
    auto c3 = pencil_pg(PgElement::plane, 5, ctx3);
    CHECK(c3.set().size() == 208);
    CHECK(is_maximal_independent(ctx3.graph, c3.set()));

    // every chamber outside F(x) is opposite to some member
    for (int id : {0, 7}) {
        auto cert = pencil_pg(PgElement::point, id, ctx2);
        Bitset in_set(ctx2.graph.size());
        for (int v : cert.set()) in_set.set(std::size_t(v));
        for (std::size_t v = 0; v < ctx2.graph.size(); ++v)
            if (!in_set.test(v)) CHECK(ctx2.graph.row(v).intersects(in_set));
    }
}

TEST_CASE("gq pencils") {
    auto w2 = GqContext::w(2);
    auto cp = pencil_gq(GqElement::point, 0, w2);
    CHECK(cp.set().size() == 9);
    CHECK(is_maximal_independent(w2.graph, cp.set()));
    auto cl = pencil_gq(GqElement::line, 3, w2);
    CHECK(cl.set().size() == 9);

    auto w3 = GqContext::w(3);
    auto c16 = pencil_gq(GqElement::line, 0, w3);
    CHECK(c16.set().size() == 16);
    CHECK(is_maximal_independent(w3.graph, c16.set()));
}

TEST_CASE("point and line pencils always intersect (order (2,2), exhaustive)") {
    auto w2 = GqContext::w(2);
    for (int p = 0; p < w2.gq.n_points; ++p) {
        auto fp = pencil_gq_vertices(GqElement::point, p, w2);
        std::set<int> fps(fp.begin(), fp.end());
        for (std::size_t l = 0; l < w2.gq.lines.size(); ++l) {
            auto fl = pencil_gq_vertices(GqElement::line, int(l), w2);
            bool meets = std::any_of(fl.begin(), fl.end(),
                                     [&](int v) { return fps.count(v) > 0; });
            CHECK(meets);
        }
    }
}

TEST_CASE("exceptional nine-flag sets of the (2,2) quadrangle") {
    auto q42 = GqContext::q4(2);
    auto grids = grids_by_hyperplane(q42.gq, *q42.ambient, q42.emb);
    REQUIRE(grids.size() == 10);

    std::set<std::vector<int>> pencils;
    for (int p = 0; p < q42.gq.n_points; ++p) {
        auto v = pencil_gq_vertices(GqElement::point, p, q42);
        std::sort(v.begin(), v.end());
        pencils.insert(v);
    }
    for (std::size_t l = 0; l < q42.gq.lines.size(); ++l) {
        auto v = pencil_gq_vertices(GqElement::line, int(l), q42);
        std::sort(v.begin(), v.end());
        pencils.insert(v);
    }
    REQUIRE(pencils.size() == 30);

    std::set<std::vector<int>> exceptional;
    for (const auto& grid : grids) {
        auto cert = exceptional_gq22(grid, q42);
        CHECK(cert.set().size() == 9);
        CHECK(verify_certificate(q42.graph, cert).ok);
        CHECK(is_maximal_independent(q42.graph, cert.set()));
        auto v = cert.set();
        std::sort(v.begin(), v.end());
        CHECK(pencils.count(v) == 0); // distinct from every pencil
        exceptional.insert(v);
    }
    CHECK(exceptional.size() == 10);

    Grid not_a_grid{{0, 1, 2, 3, 4, 5, 6, 7, 8}, {0, 1, 2, 3, 4, 5}};
    CHECK_THROWS_AS(exceptional_gq22(not_a_grid, q42), InvalidGridError);
}

TEST_CASE("sharpness sets attain t+1+2s") {
    auto q42 = GqContext::q4(2);
    auto grids2 = grids_by_hyperplane(q42.gq, *q42.ambient, q42.emb);
    auto cert2 = sharpness_set(q42, grids2.front(), grids2.front().points.front());
    CHECK(cert2.set().size() == 7);
    CHECK(is_maximal_independent(q42.graph, cert2.set()));

    auto q43 = GqContext::q4(3);
    auto grids3 = grids_by_hyperplane(q43.gq, *q43.ambient, q43.emb);
    REQUIRE(!grids3.empty());
    auto cert3 = sharpness_set(q43, grids3.front(), grids3.front().points.front());
    CHECK(cert3.set().size() == 10);
    CHECK(is_maximal_independent(q43.graph, cert3.set()));
}

TEST_CASE("pg coloring: q^2+q classes, proper, from a validated line cover") {
    for (int q : {2, 3}) {
        PgContext ctx(q);
        int plane0 = ctx.geometry.line_planes(0).front();
        auto cover = pg_covering_family(0, plane0, ctx);
        CHECK(cover.vertex_sets.size() == std::size_t(q * q + q));
        CHECK(verify_certificate(ctx.graph, cover).ok);
        auto coloring = pg_coloring(0, plane0, ctx);
        CHECK(coloring.vertex_sets.size() == std::size_t(q * q + q));
        CHECK(verify_certificate(ctx.graph, coloring).ok);
    }
}

TEST_CASE("ovoids of Q(4,q)") {
    for (int q : {2, 3}) {
        auto ctx = GqContext::q4(q);
        auto ovoid = ovoid_q4(ctx);
        CHECK(ovoid.size() == std::size_t(q * q + 1));
        // every line meets the ovoid exactly once
        Bitset pset(ctx.gq.n_points);
        for (int p : ovoid) pset.set(std::size_t(p));
        for (const auto& bits : ctx.gq.line_point_bits) CHECK(bits.count_and(pset) == 1);
        // pairwise non-collinear
        for (std::size_t i = 0; i < ovoid.size(); ++i)
            for (std::size_t j = i + 1; j < ovoid.size(); ++j)
                CHECK_FALSE(ctx.gq.points_collinear(ovoid[i], ovoid[j]));
    }
}

TEST_CASE("W(q) and Q(4,q) are isomorphic; spreads come from ovoids by duality") {
    for (int q : {2, 3}) {
        auto wctx = GqContext::w(q);
        auto q4ctx = GqContext::q4(q);
        auto iso = find_gq_isomorphism(q4ctx.gq, wctx.gq);
        // the models are isomorphic exactly when q is even (self-duality)
        CHECK(iso.empty() == (q % 2 == 1));

        auto ovoid = ovoid_q4(q4ctx);
        auto spread = spread_w(wctx, q4ctx, ovoid);
        CHECK(spread.size() == std::size_t(q * q + 1));
        Bitset covered(wctx.gq.n_points);
        for (int l : spread) {
            CHECK_FALSE(covered.intersects(wctx.gq.line_point_bits[std::size_t(l)]));
            covered |= wctx.gq.line_point_bits[std::size_t(l)];
        }
        CHECK(covered.count() == std::size_t(wctx.gq.n_points));
    }
}

TEST_CASE("ovoid/spread colorings have st+1 classes of size (s+1)(t+1)") {
    auto w2 = GqContext::w(2);
    auto q42 = GqContext::q4(2);
    auto spread = spread_w(w2, q42, ovoid_q4(q42));
    auto col = coloring_from_ovoid_or_spread(w2, GqElement::line, spread);
    CHECK(col.vertex_sets.size() == 5);
    for (const auto& cls : col.vertex_sets) CHECK(cls.size() == 9);
    CHECK(verify_certificate(w2.graph, col).ok);

    auto q43 = GqContext::q4(3);
    auto col3 = coloring_from_ovoid_or_spread(q43, GqElement::point, ovoid_q4(q43));
    CHECK(col3.vertex_sets.size() == 10);
    for (const auto& cls : col3.vertex_sets) CHECK(cls.size() == 16);

    // a non-ovoid input must be rejected
    std::vector<int> bad = {0, 1, 2, 3, 4};
    CHECK_THROWS_AS(coloring_from_ovoid_or_spread(q42, GqElement::point, bad),
                    NotPartitionError);
}

TEST_CASE("H(4,4) pencil cover") {
    auto h4 = GqContext::h4();
    auto cover = h44_cover(0, h4);
    CHECK(cover.vertex_sets.size() == 36); // s(t+1) = 36 collinear points
    CHECK(verify_certificate(h4.graph, cover).ok);
}

TEST_CASE("lifting line colorings") {
    PgContext ctx(2);
    int plane0 = ctx.geometry.line_planes(0).front();
    auto classes = line_classes_from_cover(0, plane0, ctx);
    CHECK(classes.size() == 6);
    auto lifted = lift_line_coloring(classes, ctx);
    CHECK(lifted.vertex_sets.size() == 6);
    CHECK(verify_certificate(ctx.graph, lifted).ok);
    // class sizes are (q+1)^2 times the line count of the class
    for (std::size_t k = 0; k < classes.size(); ++k)
        CHECK(lifted.vertex_sets[k].size() == 9 * classes[k].size());

    // two skew lines in one class must be rejected
    std::vector<std::vector<int>> bad = classes;
    int skew = -1;
    for (std::size_t l = 1; l < ctx.geometry.lines().size(); ++l)
        if (!ctx.geometry.lines_meet(0, int(l))) { skew = int(l); break; }
    REQUIRE(skew > 0);
    // move `skew` into the class containing line 0
    for (auto& cls : bad) cls.erase(std::remove(cls.begin(), cls.end(), skew), cls.end());
    for (auto& cls : bad)
        if (std::find(cls.begin(), cls.end(), 0) != cls.end()) cls.push_back(skew);
    CHECK_THROWS_AS(lift_line_coloring(bad, ctx), NotLineIndependentError);
}

TEST_CASE("certificates round-trip byte-identically and bind to the graph") {
    auto w2 = GqContext::w(2);
    auto cert = pencil_gq(GqElement::point, 0, w2);
    std::string json = cert.to_json();
    auto back = Certificate::from_json(json);
    CHECK(back.to_json() == json);
    CHECK(back.graph_fingerprint == w2.graph.fingerprint());

    PgContext pg2(2);
    CHECK_THROWS_AS(verify_certificate(pg2.graph, cert), FingerprintMismatchError);
}
