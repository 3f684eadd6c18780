#include "flagopp/graph.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "flagopp/errors.hpp"

namespace flagopp {

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

OppositionGraph::OppositionGraph(std::vector<Bitset> rows, std::vector<std::string> labels)
    : rows_(std::move(rows)), labels_(std::move(labels)) {
    if (labels_.empty()) labels_.assign(rows_.size(), std::string());
    if (labels_.size() != rows_.size())
        throw Error("label count does not match vertex count");
    compute_fingerprint();
}

std::size_t OppositionGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
}

void OppositionGraph::compute_fingerprint() {
    std::uint64_t h = 0xcbf29ce484222325ull;
    std::uint64_t n = rows_.size();
    h = fnv1a64(&n, sizeof n, h);
    for (const auto& r : rows_) {
        // word layout is determined by n, so hashing raw words is stable
        h = fnv1a64(r.data(), r.words() * sizeof(std::uint64_t), h);
    }
    for (const auto& s : labels_) {
        h = fnv1a64(s.data(), s.size(), h);
        h = fnv1a64("\n", 1, h);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    fingerprint_ = buf;
}

void OppositionGraph::write_dimacs(std::ostream& os) const {
    os << "p edge " << rows_.size() << ' ' << edge_count() << '\n';
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (std::size_t j = rows_[i].next(i); j < rows_.size(); j = rows_[i].next(j))
            os << "e " << (i + 1) << ' ' << (j + 1) << '\n';
    }
}

std::string OppositionGraph::dimacs() const {
    std::ostringstream os;
    write_dimacs(os);
    return os.str();
}

void OppositionGraph::write_labels(std::ostream& os) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        os << i << ' ' << labels_[i] << '\n';
}

OppositionGraph OppositionGraph::read_dimacs(std::istream& is) {
    std::string line;
    std::size_t n = 0, m = 0;
    bool have_header = false;
    std::vector<Bitset> rows;
    std::size_t edges_seen = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'p') {
            std::string fmt;
            ls >> fmt >> n >> m;
            if (fmt != "edge") throw Error("DIMACS: expected 'p edge'");
            rows.assign(n, Bitset(n));
            have_header = true;
        } else if (tag == 'e') {
            if (!have_header) throw Error("DIMACS: edge before header");
            std::size_t i, j;
            ls >> i >> j;
            if (i < 1 || j < 1 || i > n || j > n || i == j)
                throw Error("DIMACS: bad edge " + line);
            rows[i - 1].set(j - 1);
            rows[j - 1].set(i - 1);
            ++edges_seen;
        }
    }
    if (!have_header) throw Error("DIMACS: missing header");
    if (edges_seen != m) throw Error("DIMACS: edge count mismatch");
    return OppositionGraph(std::move(rows), {});
}

} // namespace flagopp
