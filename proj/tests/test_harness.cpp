#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "flagopp/reporting.hpp"
#include "flagopp/solvers.hpp"

using namespace flagopp;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("flagopp_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string cli_path() {
    const char* env = std::getenv("FLAGOPP_CLI");
    REQUIRE(env != nullptr);
    return env;
}

int run_cli(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

// strips the runtime field so deterministic content can be compared
ordered_json strip_runtime(ordered_json j) {
    if (j.is_object()) {
        j.erase("runtime_ms");
        for (auto& [k, v] : j.items()) v = strip_runtime(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_runtime(v);
    }
    return j;
}

} // namespace

TEST_CASE("verify-gq on a GQ read back from the incidence file format") {
    auto dir = temp_dir("gqfile");
    // write W(2) in the exchange format, then verify it as a file model
    auto w2 = GqContext::w(2);
    {
        std::ofstream os(dir / "w2.gq");
        os << "# symplectic quadrangle of order (2,2)\n";
        write_gq(os, w2.gq);
    }
    auto ctx = build_gq_context("file", 0, (dir / "w2.gq").string(), 1);
    CHECK(ctx.gq.s == 2);
    CHECK(ctx.gq.t == 2);
    CHECK(ctx.graph.size() == 45);

    VerifyOptions opts;
    opts.out_dir = (dir / "out").string();
    auto reports = run_verify_gq(ctx, opts);
    CHECK(all_good(reports));
    for (const auto& r : reports) CHECK(r.status != "refuted");
    // generic chromatic check closes the bracket at st+1 = 5 by search
    bool saw_chromatic = false;
    for (const auto& r : reports)
        if (r.check_id.find("chromatic") != std::string::npos) {
            saw_chromatic = true;
            CHECK(r.status == "verified");
            CHECK(r.observed.at("chi").get<long>() == 5);
        }
    CHECK(saw_chromatic);
}

TEST_CASE("CLI: build writes DIMACS, labels and fingerprint") {
    auto dir = temp_dir("build");
    CHECK(run_cli("build --target w --q 2 --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "w_q2.dimacs"));
    CHECK(fs::exists(dir / "w_q2.labels"));
    CHECK(fs::exists(dir / "w_q2.fingerprint"));

    std::ifstream is(dir / "w_q2.dimacs");
    auto graph = OppositionGraph::read_dimacs(is);
    CHECK(graph.size() == 45);
    CHECK(graph.edge_count() == 45 * 16 / 2);

    auto reference = GqContext::w(2);
    CHECK(read_text_file((dir / "w_q2.fingerprint").string()) ==
          reference.graph.fingerprint() + "\n");
}

TEST_CASE("verified reports re-verify from their certificate files alone") {
    auto dir = temp_dir("reverify");
    auto ctx = GqContext::w(2);
    VerifyOptions opts;
    opts.out_dir = dir.string();
    auto reports = run_verify_gq(ctx, opts);
    int reloaded = 0;
    for (const auto& r : reports) {
        if (r.status != "verified") continue;
        for (const auto& rel : r.certificates) {
            auto cert = Certificate::load((dir / rel).string());
            CHECK(verify_certificate(ctx.graph, cert).ok); // pure re-check from disk
            ++reloaded;
        }
    }
    CHECK(reloaded >= 4);
}

TEST_CASE("CLI: build and thresholded verify on W(3)") {
    auto dir = temp_dir("w3");
    CHECK(run_cli("build --target w --q 3 --out " + dir.string()) == 0);
    std::ifstream is(dir / "w_q3.dimacs");
    auto graph = OppositionGraph::read_dimacs(is);
    CHECK(graph.size() == 160);
    CHECK(run_cli("verify-gq --gq w --q 3 --min-size 11 --out " + dir.string()) == 0);
    auto cls = ordered_json::parse(
        read_text_file((dir / "reports/gq.w_q3.classification.json").string()));
    CHECK(cls.at("status").get<std::string>() == "verified");
    CHECK(cls.at("observed").at("sets_found").get<int>() == 80); // the 80 pencils
}

TEST_CASE("exported DIMACS feeds the solvers back losslessly") {
    auto dir = temp_dir("dimacs_loop");
    REQUIRE(run_cli("build --target w --q 2 --out " + dir.string()) == 0);
    std::ifstream is(dir / "w_q2.dimacs");
    auto graph = OppositionGraph::read_dimacs(is);
    auto mis = max_independent_set(graph);
    CHECK(mis.optimal);
    CHECK(mis.objective == 9); // same alpha as the in-memory build
}

TEST_CASE("CLI: verify-gq exit code contract and report consolidation") {
    auto dir = temp_dir("verify");
    CHECK(run_cli("verify-gq --gq w --q 2 --out " + dir.string()) == 0);
    CHECK(run_cli("report --out " + dir.string()) == 0);
    auto doc = ordered_json::parse(read_text_file((dir / "report.json").string()));
    CHECK(doc.at("reports").size() >= 4);
    for (const auto& r : doc.at("reports"))
        CHECK(r.at("status").get<std::string>() != "refuted");
    CHECK(doc.at("certificates").size() > 0);

    // a usage error exits with 2
    CHECK(run_cli("verify-gq --gq nonsense --q 2 --out " + dir.string()) == 2);
    CHECK(run_cli("totally-unknown-verb") == 2);
}

TEST_CASE("CLI: non-GQ input file produces a diagnostic") {
    auto dir = temp_dir("notgq");
    write_text_file((dir / "grid.gq").string(),
                    "gq 9 6\n0 1 2\n3 4 5\n6 7 8\n0 3 6\n1 4 7\n2 5 8\n");
    CHECK(run_cli("build --target file --path " + (dir / "grid.gq").string() + " --out " +
                  dir.string()) == 2);
}

TEST_CASE("CLI: color emits verifiable certificates") {
    auto dir = temp_dir("color");
    CHECK(run_cli("color --target pg --q 2 --out " + dir.string()) == 0);
    auto cert = Certificate::load((dir / "certs/pg_q2_coloring.cert.json").string());
    CHECK(cert.vertex_sets.size() == 6);
    PgContext ctx(2);
    CHECK(verify_certificate(ctx.graph, cert).ok);

    CHECK(run_cli("color --target w --q 2 --out " + dir.string()) == 0);
    auto wcert = Certificate::load((dir / "certs/w_q2_coloring.cert.json").string());
    CHECK(wcert.vertex_sets.size() == 5);
}

TEST_CASE("report: empty workspace gives an empty report and exit 0") {
    auto dir = temp_dir("empty");
    CHECK(run_cli("report --out " + dir.string()) == 0);
    auto doc = ordered_json::parse(read_text_file((dir / "report.json").string()));
    CHECK(doc.at("reports").empty());
    CHECK(doc.at("certificates").empty());
}

TEST_CASE("report: a refuted fragment flips the exit code to 1") {
    auto dir = temp_dir("refuted");
    Report bad;
    bad.check_id = "synthetic.refuted";
    bad.claim = "always fails";
    bad.status = "refuted";
    write_text_file((dir / "reports/synthetic.refuted.json").string(),
                    bad.to_json().dump(2) + "\n");
    CHECK(run_cli("report --out " + dir.string()) == 1);
}

TEST_CASE("reports are deterministic modulo runtime fields") {
    auto dir1 = temp_dir("det1");
    auto dir2 = temp_dir("det2");
    for (const auto& dir : {dir1, dir2}) {
        auto ctx = GqContext::w(2);
        VerifyOptions opts;
        opts.out_dir = dir.string();
        run_verify_gq(ctx, opts);
    }
    auto doc1 = strip_runtime(consolidate_reports(dir1.string()));
    auto doc2 = strip_runtime(consolidate_reports(dir2.string()));
    CHECK(doc1.dump(2) == doc2.dump(2));
}

TEST_CASE("Report JSON round trip") {
    Report r;
    r.check_id = "x.y";
    r.parameters = {{"q", 2}};
    r.claim = "c";
    r.observed = {{"v", 1}};
    r.status = "verified";
    r.certificates = {"certs/a.cert.json"};
    r.runtime_ms = 7;
    auto back = Report::from_json(r.to_json());
    CHECK(back.to_json() == r.to_json());
}
