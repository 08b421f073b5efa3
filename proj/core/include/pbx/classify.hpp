#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pbx/measure.hpp"

namespace pbx {

/// The forced shape of two disjoint, equivalent, twin-pair-free two-word
/// codes: on the coordinate pair A one code reads {*l2, l1 l2'} and the other
/// {l1 *, l1' l2}; off A all four words share `common`.
struct PairStructure {
    std::array<int, 2> coords{}; // 0-based, increasing
    Letter l1 = 0, l2 = 0;
    std::vector<Letter> common; // fragment on the complement of coords, possibly empty

    /// Rebuilds the two codes in the original dimension.
    std::pair<PolyboxCode, PolyboxCode> reconstruct(const Alphabet& alphabet, int dim) const;
};

/// The forced shape of a five-word twin-pair-free partition code (all words
/// star off A) or of a five-word cover of the ambient word u (words matching
/// u off A, with u's letters substituted for the stars on A).
struct FiveStructure {
    std::array<int, 3> coords{}; // 0-based, increasing
    Letter l1 = 0, l2 = 0, l3 = 0;
    std::optional<Word> ambient;

    PolyboxCode reconstruct(const Alphabet& alphabet, int dim) const;
};

/// The forced shape of a six-word twin-pair-free partition code: a singleton
/// at (coordinate, letter) whose other entries are stars, and a five-word
/// block carrying the complementary letter there. The inner structure's
/// coordinates refer to the original dimension.
struct SixStructure {
    int coordinate = 0;
    Letter letter = 0;
    FiveStructure inner;

    PolyboxCode reconstruct(const Alphabet& alphabet, int dim) const;
};

/// Counts x_i of words v with g(v, w) = 2^(d-i), indexed 1..d.
struct Composition {
    std::vector<int> counts; // counts[i-1] = x_i

    int x(int i) const { return counts[static_cast<std::size_t>(i - 1)]; }
    int word_count() const {
        int k = 0;
        for (int c : counts) k += c;
        return k;
    }
    friend bool operator==(const Composition& a, const Composition& b) { return a.counts == b.counts; }
};

PairStructure classify_pair_structure(const PolyboxCode& u, const PolyboxCode& p);

FiveStructure classify_partition_five(const PolyboxCode& code);

SixStructure classify_partition_six(const PolyboxCode& code);

/// Five-word star-free cover of `ambient`; certifies rigidity of the code.
FiveStructure classify_cover_five(const PolyboxCode& code, const Word& ambient);

/// Replaces every letter matching `u` by a star. Requires star-free inputs,
/// covers(u, code) and nonzero intersection of every word with u; the result
/// is always a partition code (checked, violation reported as a defect).
PolyboxCode induced_partition_code(const PolyboxCode& code, const Word& u);

/// A pair of words of a partition code that agree or are complementary at
/// every coordinate and are strictly complementary an odd number of times.
/// Existence is guaranteed on partition codes of two or more words, so a
/// none-result is the defect signal the property tests watch for.
std::optional<std::pair<Word, Word>> find_odd_complement_pair(const PolyboxCode& code);

/// All solutions of sum x_i 2^(d-i) = 2^d, sum x_i = k with x_i = 0 below
/// min_index. Lexicographically ordered by counts.
std::vector<Composition> cover_compositions(int k, int d, int min_index = 1);

struct CoverEnumeration {
    std::vector<PolyboxCode> codes; // in lexicographic order
    std::uint64_t count = 0;
};

/// All twin-pair-free polybox codes V of k words over {a,a',b,b'} that cover
/// the star-free word w, meet it in every word, and keep every g-value at
/// most 2^(d-2); optionally restricted to one composition. Counts are of
/// distinct word sets, with no isomorphism reduction.
CoverEnumeration enumerate_covers(const Word& w, const Alphabet& alphabet, int k,
                                  const std::optional<Composition>& comp = std::nullopt);

/// Deterministic pseudo-random partition code of 2^d star-free words, built by
/// recursive twin-pair splitting with a random coordinate shuffle on top. The
/// output always contains twin pairs.
PolyboxCode random_partition_code(int d, const Alphabet& alphabet, std::uint64_t seed);

} // namespace pbx
