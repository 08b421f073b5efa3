#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pbx/word.hpp"

namespace pbx {

/// A validated set of pairwise dichotomous words of a common dimension, kept
/// sorted lexicographically. Immutable; cheap to copy at the scales handled
/// here. The empty code is allowed (dimension still tracked).
class PolyboxCode {
public:
    PolyboxCode() = default;

    /// Validates pairwise dichotomy and rejects duplicates; the error message
    /// names the first offending pair in lexicographic order.
    static PolyboxCode validate(Alphabet alphabet, int dim, std::vector<Word> words);

    /// Construction without the O(n^2) dichotomy scan, for callers that hold a
    /// structural guarantee (slices, enumeration engines). Still sorts and
    /// checks dimensions.
    static PolyboxCode trusted(Alphabet alphabet, int dim, std::vector<Word> words);

    const Alphabet& alphabet() const { return alphabet_; }
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(words_.size()); }
    bool empty() const { return words_.empty(); }
    const std::vector<Word>& words() const { return words_; }
    const Word& operator[](int i) const { return words_[static_cast<std::size_t>(i)]; }

    bool contains(const Word& w) const;
    bool star_free() const;

    /// Letters appearing at coordinate i across all words (stars skipped).
    std::vector<Letter> letters_at(int i) const;

    friend bool operator==(const PolyboxCode& a, const PolyboxCode& b) {
        return a.dim_ == b.dim_ && a.words_ == b.words_;
    }
    friend bool operator!=(const PolyboxCode& a, const PolyboxCode& b) { return !(a == b); }
    friend bool operator<(const PolyboxCode& a, const PolyboxCode& b) { return a.words_ < b.words_; }

private:
    Alphabet alphabet_;
    int dim_ = 0;
    std::vector<Word> words_;
};

/// One complementary pair of word groups at a coordinate: the words carrying
/// `letter` there and the words carrying its complement.
struct DistributionGroup {
    Letter letter; // the even-id representative of the pair
    std::vector<Word> with_letter;
    std::vector<Word> with_complement;

    int total() const {
        return static_cast<int>(with_letter.size() + with_complement.size());
    }
};

/// The grouping of a code's words by complementary letter pairs at one
/// coordinate; `leftover` holds the words with a star there.
struct Distribution {
    int coordinate = 0; // 0-based
    std::vector<DistributionGroup> groups;
    std::vector<Word> leftover;

    int group_count() const { return static_cast<int>(groups.size()); }
};

/// First twin pair in lexicographic pair order, if any.
std::optional<std::pair<Word, Word>> find_twin_pair(const PolyboxCode& code);

/// Distribution of the code's words at coordinate i (0-based). Groups are
/// keyed by the even id of each pair and listed in increasing key order.
Distribution distribution(const PolyboxCode& code, int i);

/// Projections v_A in code order; duplicates are kept and the result need not
/// be a polybox code.
std::vector<Word> project(const PolyboxCode& code, const std::vector<int>& coords);

/// A per-coordinate letter bijection commuting with complementation.
/// image[l] is the image of letter id l; stars always map to stars.
class LetterBijection {
public:
    static LetterBijection identity(const Alphabet& alphabet);

    /// Swaps the two letters of the pair containing `base`, fixes the rest.
    static LetterBijection pair_swap(const Alphabet& alphabet, Letter base);

    /// Validates the complement-compatibility h(l') = h(l)'.
    explicit LetterBijection(std::vector<Letter> image);

    Letter operator()(Letter l) const { return l == kStar ? kStar : image_[l]; }
    int size() const { return static_cast<int>(image_.size()); }

private:
    std::vector<Letter> image_;
};

/// Image of the code under coordinate permutation sigma and per-coordinate
/// letter bijections: word i of the image is h_i(v_sigma(i)). sigma[i] is the
/// source coordinate feeding target coordinate i.
PolyboxCode apply_isomorphism(const PolyboxCode& code, const std::vector<int>& sigma,
                              const std::vector<LetterBijection>& maps);

/// The group canonical_form minimises over.
struct CanonicalGroup {
    bool permute_coordinates = true;
    // When false, per-coordinate maps range over all complement-compatible
    // bijections of the alphabet; when true, only the identity and the swap of
    // the designated pair.
    bool swaps_only = false;
    Letter swap_base = 0;

    static CanonicalGroup full() { return {}; }
    static CanonicalGroup complement_swaps(Letter base = 0) {
        return CanonicalGroup{true, true, base};
    }
};

/// Lexicographically least isomorphic image of the code under the group.
/// Idempotent and constant on isomorphism orbits. Brute force over the group;
/// meant for small alphabets and dimensions.
PolyboxCode canonical_form(const PolyboxCode& code, const CanonicalGroup& group = CanonicalGroup::full());

} // namespace pbx
