#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbx/measure.hpp"

namespace pbx {

/// Node and wall-clock limits for the search engines. Unset members mean
/// unlimited; exhausting either limit never silently truncates a result, the
/// callers report an inconclusive status instead.
struct SearchBudget {
    std::optional<std::uint64_t> nodes;
    std::optional<double> seconds;

    static SearchBudget unlimited() { return {}; }
    static SearchBudget node_limit(std::uint64_t n) { return {n, std::nullopt}; }
    static SearchBudget time_limit(double s) { return {std::nullopt, s}; }
};

/// The graph on all star-free words of S^d joining dichotomous non-twin
/// pairs, with bit-packed adjacency rows. Vertices are indexed in
/// lexicographic word order.
class KellerGraph {
public:
    static KellerGraph build(int d, const Alphabet& alphabet);

    int dim() const { return d_; }
    const Alphabet& alphabet() const { return alphabet_; }
    int vertex_count() const { return n_; }
    int row_words() const { return row_words_; }

    Word word(int v) const;
    int index(const Word& w) const;

    bool adjacent(int u, int v) const {
        return (rows_[static_cast<std::size_t>(u) * row_words_ + static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
    }
    const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * row_words_; }

    int degree(int v) const;

private:
    int d_ = 0;
    Alphabet alphabet_;
    int n_ = 0;
    int row_words_ = 0;
    std::vector<std::uint64_t> rows_;
};

struct CliqueResult {
    PolyboxCode clique;
    bool proven_optimal = false;
    std::uint64_t nodes = 0;
};

/// Branch-and-bound maximum clique with greedy-coloring bounds, exploiting
/// the graph's vertex-transitivity to fix leading vertices. `threads` 0 means
/// hardware concurrency.
CliqueResult max_clique(const KellerGraph& graph, const SearchBudget& budget = {}, int threads = 0);

/// Enumerates cliques (all sizes, in increasing-index order) containing the
/// given seed vertices; stops early when the visitor returns false.
void for_each_clique(const KellerGraph& graph, const std::vector<int>& seed,
                     const std::function<bool(const std::vector<int>&)>& visit);

/// Both inputs must be cliques of the graph; delegates to the measure
/// calculus equivalence.
bool equivalent_cliques(const KellerGraph& graph, const PolyboxCode& a, const PolyboxCode& b);

struct SiblingEdge {
    int u = 0, v = 0;          // indices into the code's word list
    std::vector<int> colors;   // witnessing coordinates
};

/// Graph on a code's words joining i-siblings: pairs whose letters at i are
/// neither equal nor complementary while the words with i removed form a twin
/// pair.
struct SiblingGraph {
    std::vector<Word> vertices;
    std::vector<SiblingEdge> edges;
    std::vector<int> degree;

    bool adjacent(int u, int v) const;
};

SiblingGraph sibling_graph(const PolyboxCode& code);

struct SiblingReport {
    bool ok = true;
    int max_degree = 0;
    bool triangle_free = true;
    int max_adjacent_degree_sum = 0;
    std::vector<std::string> violations;
};

/// Checks the sibling-graph facts that hold for twin-pair-free star-free
/// codes: degree at most d, no triangles, the group-size lower bounds for
/// adjacent degree sums, and the average-degree bound. Any violation is a
/// defect report, not a property of the input.
SiblingReport check_sibling_invariants(const PolyboxCode& code);

/// Looks for a twin pair of a star-free partition code guided by the
/// distribution at coordinate i: inside a group half or across the two halves
/// of one group. When the group count exceeds 2^(d-3)/3 a twin pair is
/// guaranteed, so coming up empty then raises a defect error.
std::optional<std::pair<Word, Word>> twin_pair_by_spread(const PolyboxCode& code, int i);

} // namespace pbx
