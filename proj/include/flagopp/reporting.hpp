#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagopp/constructions.hpp"
#include "flagopp/projective.hpp"
#include "flagopp/quadrangle.hpp"

namespace flagopp {

using ordered_json = nlohmann::ordered_json;

// One verification check: what was claimed, what was observed, and whether
// the claim held. "verified" requires the observation to satisfy the claim
// and every referenced certificate to re-verify; claims outside the proven
// range of the underlying theorems are "reported-only" and never asserted.
struct Report {
    std::string check_id;
    ordered_json parameters = ordered_json::object();
    std::string claim;
    ordered_json observed = ordered_json::object();
    std::string status; // verified | refuted | reported-only | timeout
    std::vector<std::string> certificates;
    long runtime_ms = 0;

    ordered_json to_json() const;
    static Report from_json(const ordered_json& j);
};

struct VerifyOptions {
    int threads = 1;
    long timeout_s = 300;
    std::optional<int> min_size; // enumeration threshold override
    bool enumerate = true;
    std::string out_dir; // certificates/reports land here when non-empty
};

// Theorem-verification drivers. Reports are written to
// <out_dir>/reports/<check_id>.json and certificates to <out_dir>/certs/
// when an output directory is configured.
std::vector<Report> run_verify_gq(GqContext& ctx, const VerifyOptions& opts);
std::vector<Report> run_verify_pg(int q, const VerifyOptions& opts);

// Builds a GqContext by model name ("w" | "q4" | "h4" | "file").
GqContext build_gq_context(const std::string& model, int q, const std::string& path,
                           int threads);

// Consolidated report over everything under <out_dir>/reports, with
// certificate digests; stable key order, deterministic except runtime
// fields.
ordered_json consolidate_reports(const std::string& out_dir);

// True when no report in the list is refuted.
bool all_good(const std::vector<Report>& reports);

// Closed forms used by claims.
long pg_pencil_size(int q);             // (q^2+q+1)(q+1)^2
long pg_chamber_count(int q);           // (q^2+1)(q^2+q+1)(q+1)^2
long pg_hilton_milner_form(int q);      // 9(q+1)(5q^2+1)
long gq_hilton_milner_bound(int s, int t); // max{1+s+2t, 1+t+2s}

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace flagopp
