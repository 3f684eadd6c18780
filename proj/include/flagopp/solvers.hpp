#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flagopp/certificate.hpp"
#include "flagopp/graph.hpp"

namespace flagopp {

// All searches are deterministic: vertex order is construction order and
// every tie is broken toward the lowest id. Timeouts return the bounds
// reached so far instead of failing.
struct SolveResult {
    long objective = 0;
    std::optional<Certificate> witness;
    bool optimal = false;
    long lower_bound = 0;
    long upper_bound = 0;
    std::string lower_bound_reason; // filled by chromatic_number
    std::uint64_t nodes = 0;
    long runtime_ms = 0;
};

using Millis = std::chrono::milliseconds;
inline constexpr Millis kDefaultBudget{300'000};

// Exact maximum independent set by branch and bound; the bound function is
// a greedy clique cover of the candidate set. An optional hint set (already
// independent) seeds the incumbent. Guarded at 10^4 vertices.
SolveResult max_independent_set(const OppositionGraph& graph,
                                std::optional<std::vector<int>> hint = std::nullopt,
                                Millis budget = kDefaultBudget);

struct EnumerateResult {
    std::vector<std::vector<int>> sets; // each sorted ascending
    bool complete = false;
    std::uint64_t nodes = 0;
    long runtime_ms = 0;
};

// Every maximal independent set of size >= min_size, each exactly once, in
// deterministic order (Bron-Kerbosch with pivoting). The pruning bound is
// exact: no maximal set of size >= min_size is missed. Full enumeration
// (min_size 0) is guarded at 500 vertices.
EnumerateResult enumerate_maximal_is(const OppositionGraph& graph, std::size_t min_size,
                                     Millis budget = kDefaultBudget);

enum class Feasibility { yes, no, unknown };

struct ColorableResult {
    Feasibility feasible = Feasibility::unknown;
    std::optional<Certificate> coloring;
    std::uint64_t nodes = 0;
    long runtime_ms = 0;
};

// Exact k-colorability by saturation-degree-ordered backtracking; a new
// color is only introduced in first-use order. Guarded at 500 vertices and
// k <= 64.
ColorableResult k_colorable(const OppositionGraph& graph, int k, Millis budget = kDefaultBudget);

// Chromatic number bracketed by hints, a greedy coloring and a greedy
// clique, then closed by k_colorable searches where the graph is small
// enough. On timeout the bracket is returned with optimal = false.
SolveResult chromatic_number(const OppositionGraph& graph,
                             std::optional<Certificate> ub_hint = std::nullopt,
                             std::optional<std::pair<long, std::string>> lb_hint = std::nullopt,
                             Millis budget = kDefaultBudget);

// Greedy clique cover (lowest-id-first). |cover| is an upper bound for the
// independence number.
Certificate greedy_clique_cover(const OppositionGraph& graph);

// Greedy DSATUR coloring without backtracking; always succeeds.
Certificate greedy_coloring(const OppositionGraph& graph);

// Greedy clique (lowest-id extension from each of the first `restarts`
// vertices, best kept).
std::vector<int> greedy_clique(const OppositionGraph& graph, int restarts = 16);

} // namespace flagopp
