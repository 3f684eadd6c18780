#include "flagopp/certificate.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flagopp/errors.hpp"

namespace flagopp {

using ordered_json = nlohmann::ordered_json;

std::string to_string(CertKind k) {
    switch (k) {
        case CertKind::independent_set: return "independent_set";
        case CertKind::proper_coloring: return "proper_coloring";
        case CertKind::clique_cover: return "clique_cover";
        case CertKind::covering_family: return "covering_family";
    }
    return "?";
}

CertKind cert_kind_from_string(const std::string& s) {
    if (s == "independent_set") return CertKind::independent_set;
    if (s == "proper_coloring") return CertKind::proper_coloring;
    if (s == "clique_cover") return CertKind::clique_cover;
    if (s == "covering_family") return CertKind::covering_family;
    throw Error("unknown certificate kind: " + s);
}

std::string Certificate::to_json() const {
    ordered_json j;
    j["kind"] = to_string(kind);
    j["provenance"] = provenance;
    j["graph_fingerprint"] = graph_fingerprint;
    j["vertex_sets"] = vertex_sets;
    return j.dump(2) + "\n";
}

Certificate Certificate::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    Certificate c;
    c.kind = cert_kind_from_string(j.at("kind").get<std::string>());
    c.provenance = j.at("provenance").get<std::string>();
    c.graph_fingerprint = j.at("graph_fingerprint").get<std::string>();
    c.vertex_sets = j.at("vertex_sets").get<std::vector<std::vector<int>>>();
    return c;
}

void Certificate::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path);
    os << to_json();
}

Certificate Certificate::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return from_json(ss.str());
}

namespace {

VerifyResult fail(std::string msg) { return {false, std::move(msg)}; }

VerifyResult check_independent(const OppositionGraph& g, const std::vector<int>& set,
                               std::size_t set_idx) {
    Bitset b(g.size());
    for (int v : set) {
        if (v < 0 || std::size_t(v) >= g.size())
            return fail("set " + std::to_string(set_idx) + ": vertex " + std::to_string(v) +
                        " out of range");
        if (b.test(std::size_t(v)))
            return fail("set " + std::to_string(set_idx) + ": vertex " + std::to_string(v) +
                        " repeated");
        b.set(std::size_t(v));
    }
    for (int v : set)
        if (g.row(std::size_t(v)).intersects(b)) {
            std::size_t w = (g.row(std::size_t(v)) & b).first();
            return fail("adjacent pair (" + std::to_string(v) + "," + std::to_string(w) +
                        ") inside set " + std::to_string(set_idx));
        }
    return {true, ""};
}

VerifyResult check_clique(const OppositionGraph& g, const std::vector<int>& set,
                          std::size_t set_idx) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (!g.adjacent(std::size_t(set[i]), std::size_t(set[j])))
                return fail("non-adjacent pair (" + std::to_string(set[i]) + "," +
                            std::to_string(set[j]) + ") inside clique " + std::to_string(set_idx));
    return {true, ""};
}

// union covers everything; exact = also requires disjointness (a partition)
VerifyResult check_cover(const OppositionGraph& g, const std::vector<std::vector<int>>& sets,
                         bool exact) {
    Bitset seen(g.size());
    std::size_t total = 0;
    for (std::size_t k = 0; k < sets.size(); ++k)
        for (int v : sets[k]) {
            if (v < 0 || std::size_t(v) >= g.size())
                return fail("set " + std::to_string(k) + ": vertex " + std::to_string(v) +
                            " out of range");
            if (exact && seen.test(std::size_t(v)))
                return fail("vertex " + std::to_string(v) + " appears in two sets");
            seen.set(std::size_t(v));
            ++total;
        }
    if (seen.count() != g.size()) {
        Bitset all(g.size());
        all.set_all();
        all.and_not(seen);
        return fail("vertex " + std::to_string(all.first()) + " not covered");
    }
    (void)total;
    return {true, ""};
}

} // namespace

VerifyResult verify_certificate(const OppositionGraph& graph, const Certificate& cert) {
    if (cert.graph_fingerprint != graph.fingerprint())
        throw FingerprintMismatchError("certificate fingerprint " + cert.graph_fingerprint +
                                       " does not match graph " + graph.fingerprint());
    switch (cert.kind) {
        case CertKind::independent_set: {
            if (cert.vertex_sets.size() != 1)
                return fail("independent_set certificate must hold exactly one set");
            return check_independent(graph, cert.vertex_sets[0], 0);
        }
        case CertKind::proper_coloring: {
            auto cover = check_cover(graph, cert.vertex_sets, /*exact=*/true);
            if (!cover.ok) return cover;
            for (std::size_t k = 0; k < cert.vertex_sets.size(); ++k) {
                auto r = check_independent(graph, cert.vertex_sets[k], k);
                if (!r.ok) return r;
            }
            return {true, ""};
        }
        case CertKind::clique_cover: {
            auto cover = check_cover(graph, cert.vertex_sets, /*exact=*/true);
            if (!cover.ok) return cover;
            for (std::size_t k = 0; k < cert.vertex_sets.size(); ++k) {
                auto r = check_clique(graph, cert.vertex_sets[k], k);
                if (!r.ok) return r;
            }
            return {true, ""};
        }
        case CertKind::covering_family: {
            auto cover = check_cover(graph, cert.vertex_sets, /*exact=*/false);
            if (!cover.ok) return cover;
            for (std::size_t k = 0; k < cert.vertex_sets.size(); ++k) {
                auto r = check_independent(graph, cert.vertex_sets[k], k);
                if (!r.ok) return r;
            }
            return {true, ""};
        }
    }
    return fail("unknown certificate kind");
}

bool is_maximal_independent(const OppositionGraph& graph, const std::vector<int>& set) {
    Bitset b(graph.size());
    for (int v : set) b.set(std::size_t(v));
    for (int v : set)
        if (graph.row(std::size_t(v)).intersects(b)) return false;
    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (b.test(v)) continue;
        if (!graph.row(v).intersects(b)) return false; // v could be added
    }
    return true;
}

Certificate make_independent_set(const OppositionGraph& graph, std::vector<int> set,
                                 std::string provenance) {
    Certificate c;
    c.kind = CertKind::independent_set;
    c.vertex_sets.push_back(std::move(set));
    c.provenance = std::move(provenance);
    c.graph_fingerprint = graph.fingerprint();
    return c;
}

} // namespace flagopp
