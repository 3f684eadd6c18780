// flagopp: chamber/flag opposition graphs of PG(3,q) and generalized
// quadrangles, with exact solvers and verifiable certificates.
//
// Verbs:
//   build      construct a graph and write DIMACS + labels + fingerprint
//   verify-gq  run the order/alpha/classification/chromatic checks on a GQ
//   verify-pg  run the pencil/alpha/coloring/Klein checks on PG(3,q)
//   color      emit a coloring certificate for a model
//   report     consolidate reports and certificate digests into one JSON
//
// Exit codes: 0 all checks verified or reported, 1 any check refuted,
// 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "flagopp/errors.hpp"
#include "flagopp/klein.hpp"
#include "flagopp/reporting.hpp"
#include "flagopp/solvers.hpp"

namespace fs = std::filesystem;
using namespace flagopp;

namespace {

void write_graph_files(const OppositionGraph& graph, const std::string& out_dir,
                       const std::string& name) {
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / (name + ".dimacs"), std::ios::binary);
        graph.write_dimacs(os);
    }
    {
        std::ofstream os(fs::path(out_dir) / (name + ".labels"), std::ios::binary);
        graph.write_labels(os);
    }
    write_text_file((fs::path(out_dir) / (name + ".fingerprint")).string(),
                    graph.fingerprint() + "\n");
    std::cout << name << ": " << graph.size() << " vertices, " << graph.edge_count()
              << " edges, fingerprint " << graph.fingerprint() << "\n";
}

void print_reports(const std::vector<Report>& reports) {
    for (const auto& r : reports)
        std::cout << "[" << r.status << "] " << r.check_id << " (" << r.runtime_ms << " ms)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chamber/flag opposition graph workbench"};
    app.require_subcommand(1);

    std::string target = "pg", gq_model = "w", path, out_dir = "out";
    int q = 2, threads = 1, line_id = 0;
    int plane_id = -1;
    long timeout_s = 300;
    int min_size = -1;
    bool force = false, no_enumerate = false;

    auto* build = app.add_subcommand("build", "construct a graph and write it to disk");
    build->add_option("--target", target, "pg | w | q4 | h4 | file")->required();
    build->add_option("--q", q, "field order");
    build->add_option("--path", path, "GQ incidence file for --target file");
    build->add_option("--out", out_dir, "output directory");
    build->add_option("--threads", threads, "worker threads for graph construction");
    build->add_flag("--force", force, "allow q=5 chamber graphs past the memory guard");

    auto* vgq = app.add_subcommand("verify-gq", "verify the GQ theorems on a model");
    vgq->add_option("--gq", gq_model, "w | q4 | h4 | file")->required();
    vgq->add_option("--q", q, "field order");
    vgq->add_option("--path", path, "GQ incidence file for --gq file");
    vgq->add_option("--min-size", min_size, "enumeration threshold override");
    vgq->add_option("--timeout-s", timeout_s, "per-check budget in seconds");
    vgq->add_option("--threads", threads, "worker threads");
    vgq->add_flag("--no-enumerate", no_enumerate, "skip enumeration-based checks");
    vgq->add_option("--out", out_dir, "output directory");

    auto* vpg = app.add_subcommand("verify-pg", "verify the PG(3,q) results");
    vpg->add_option("--q", q, "field order (2, 3 or 4)")->required();
    vpg->add_option("--timeout-s", timeout_s, "per-check budget in seconds");
    vpg->add_option("--threads", threads, "worker threads");
    vpg->add_flag("--no-enumerate", no_enumerate, "skip enumeration-based checks");
    vpg->add_option("--out", out_dir, "output directory");

    auto* color = app.add_subcommand("color", "emit a coloring certificate");
    color->add_option("--target", target, "pg | w | q4")->required();
    color->add_option("--q", q, "field order");
    color->add_option("--line", line_id, "line id for the pg coloring");
    color->add_option("--plane", plane_id, "plane id for the pg coloring (default: first on line)");
    color->add_option("--threads", threads, "worker threads");
    color->add_option("--out", out_dir, "output directory");

    auto* report = app.add_subcommand("report", "consolidate reports into one JSON");
    report->add_option("--out", out_dir, "directory holding reports/ and certs/");
    std::string format = "json";
    report->add_option("--format", format, "output format (json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) {
            if (target == "pg") {
                Geometry g(3, q);
                write_graph_files(chamber_graph(g, threads, force), out_dir,
                                  "pg_q" + std::to_string(q));
            } else {
                auto ctx = build_gq_context(target, q, path, threads);
                std::string name = target == "h4"
                                       ? std::string("h4")
                                       : (target == "file" ? "file_" + ctx.model
                                                           : target + "_q" + std::to_string(q));
                write_graph_files(ctx.graph, out_dir, name);
            }
            return 0;
        }

        VerifyOptions opts;
        opts.threads = threads;
        opts.timeout_s = timeout_s;
        opts.enumerate = !no_enumerate;
        if (min_size >= 0) opts.min_size = min_size;
        opts.out_dir = out_dir;

        if (vgq->parsed()) {
            auto ctx = build_gq_context(gq_model, q, path, threads);
            auto reports = run_verify_gq(ctx, opts);
            print_reports(reports);
            return all_good(reports) ? 0 : 1;
        }

        if (vpg->parsed()) {
            auto reports = run_verify_pg(q, opts);
            print_reports(reports);
            return all_good(reports) ? 0 : 1;
        }

        if (color->parsed()) {
            fs::create_directories(fs::path(out_dir) / "certs");
            if (target == "pg") {
                PgContext ctx(q, threads);
                int pl = plane_id >= 0 ? plane_id : ctx.geometry.line_planes(line_id).front();
                auto cert = pg_coloring(line_id, pl, ctx);
                std::string rel = "certs/pg_q" + std::to_string(q) + "_coloring.cert.json";
                cert.save((fs::path(out_dir) / rel).string());
                std::cout << "proper coloring with " << cert.vertex_sets.size()
                          << " classes -> " << rel << "\n";
            } else if (target == "q4") {
                auto ctx = GqContext::q4(q, threads);
                auto cert = coloring_from_ovoid_or_spread(ctx, GqElement::point, ovoid_q4(ctx));
                std::string rel = "certs/q4_q" + std::to_string(q) + "_coloring.cert.json";
                cert.save((fs::path(out_dir) / rel).string());
                std::cout << "proper coloring with " << cert.vertex_sets.size()
                          << " classes -> " << rel << "\n";
            } else if (target == "w") {
                auto wctx = GqContext::w(q, threads);
                auto q4ctx = GqContext::q4(q, threads);
                auto spread = spread_w(wctx, q4ctx, ovoid_q4(q4ctx));
                auto cert = coloring_from_ovoid_or_spread(wctx, GqElement::line, spread);
                std::string rel = "certs/w_q" + std::to_string(q) + "_coloring.cert.json";
                cert.save((fs::path(out_dir) / rel).string());
                std::cout << "proper coloring with " << cert.vertex_sets.size()
                          << " classes -> " << rel << "\n";
            } else {
                std::cerr << "color: unknown target " << target << "\n";
                return 2;
            }
            return 0;
        }

        if (report->parsed()) {
            if (format != "json") {
                std::cerr << "report: unknown format " << format << "\n";
                return 2;
            }
            auto doc = consolidate_reports(out_dir);
            std::string text = doc.dump(2) + "\n";
            write_text_file((fs::path(out_dir) / "report.json").string(), text);
            std::cout << text;
            for (const auto& rep : doc["reports"])
                if (rep.at("status").get<std::string>() == "refuted") return 1;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
