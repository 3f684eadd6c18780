#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flagopp/graph.hpp"

namespace flagopp {

enum class CertKind {
    independent_set,
    proper_coloring,
    clique_cover,
    covering_family,
};

std::string to_string(CertKind k);
CertKind cert_kind_from_string(const std::string& s);

// Verifiable witness bound to a specific graph build via its fingerprint.
// independent_set holds a single vertex set; colorings and clique covers
// partition the vertex set; covering families cover it with independent
// sets.
struct Certificate {
    CertKind kind = CertKind::independent_set;
    std::vector<std::vector<int>> vertex_sets;
    std::string provenance;
    std::string graph_fingerprint;

    const std::vector<int>& set() const { return vertex_sets.at(0); }

    // Canonical JSON; serialization round-trips byte-identically.
    std::string to_json() const;
    static Certificate from_json(const std::string& text);

    void save(const std::string& path) const;
    static Certificate load(const std::string& path);
};

struct VerifyResult {
    bool ok = false;
    std::string violation; // empty when ok
};

// Pure re-check of the invariant for cert.kind against the graph. Throws
// FingerprintMismatchError when the certificate belongs to another build.
VerifyResult verify_certificate(const OppositionGraph& graph, const Certificate& cert);

// True iff `set` is independent and no vertex outside it can be added.
bool is_maximal_independent(const OppositionGraph& graph, const std::vector<int>& set);

Certificate make_independent_set(const OppositionGraph& graph, std::vector<int> set,
                                 std::string provenance);

} // namespace flagopp
