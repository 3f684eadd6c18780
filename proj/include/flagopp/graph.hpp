#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flagopp/bitset.hpp"

namespace flagopp {

// Immutable simple graph with one adjacency bitset per vertex. Vertex labels
// describe the underlying chambers/flags; they take part in the fingerprint
// so that certificates are bound to a specific build, not just an adjacency
// pattern.
class OppositionGraph {
public:
    OppositionGraph() = default;
    OppositionGraph(std::vector<Bitset> rows, std::vector<std::string> labels);

    std::size_t size() const { return rows_.size(); }
    const Bitset& row(std::size_t v) const { return rows_[v]; }
    bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
    std::size_t degree(std::size_t v) const { return rows_[v].count(); }
    std::size_t edge_count() const;

    const std::vector<std::string>& labels() const { return labels_; }

    // 64-bit FNV-1a over vertex count, adjacency words and labels; stable
    // across runs and platforms.
    const std::string& fingerprint() const { return fingerprint_; }

    // "p edge n m" header, one "e i j" line per edge with i < j, 1-based.
    void write_dimacs(std::ostream& os) const;
    std::string dimacs() const;

    // One line per vertex: "<index> <label>".
    void write_labels(std::ostream& os) const;

    static OppositionGraph read_dimacs(std::istream& is);

private:
    void compute_fingerprint();

    std::vector<Bitset> rows_;
    std::vector<std::string> labels_;
    std::string fingerprint_;
};

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ull);

} // namespace flagopp

#include <thread>

namespace flagopp {

// Builds the adjacency rows of a graph on n vertices from a symmetric
// predicate, partitioning rows across `threads` workers. Each worker owns a
// disjoint row range, so the result is independent of the worker count.
template <class Pred>
std::vector<Bitset> build_adjacency(std::size_t n, int threads, Pred&& adjacent) {
    std::vector<Bitset> rows(n, Bitset(n));
    auto fill_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && adjacent(i, j)) rows[i].set(j);
    };
    if (threads <= 1 || n < 64) {
        fill_range(0, n);
        return rows;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = std::min(n, std::size_t(t) * chunk);
        std::size_t hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(fill_range, lo, hi);
    }
    for (auto& th : pool) th.join();
    return rows;
}

} // namespace flagopp
