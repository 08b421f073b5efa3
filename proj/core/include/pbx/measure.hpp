#pragma once

#include <cstdint>
#include <vector>

#include "pbx/code.hpp"
#include "pbx/dyadic.hpp"

namespace pbx {

/// One transversal of the alphabet's complementary pairs: for each pair the
/// cell picks exactly one of its two letters. Cells stand in for the points of
/// the equicomplementary realization; nothing exponential is ever materialised.
class Cell {
public:
    /// choices[p] must be 2p or 2p+1 for every pair index p.
    explicit Cell(std::vector<Letter> choices);

    /// The cell choosing the even letter of every pair.
    static Cell even(const Alphabet& alphabet);

    int pair_count() const { return static_cast<int>(choices_.size()); }
    Letter chosen(int pair) const { return choices_[static_cast<std::size_t>(pair)]; }

    /// True when the cell's transversal contains the letter; stars are in
    /// every cell.
    bool contains(Letter l) const {
        if (l == kStar) return true;
        return choices_[static_cast<std::size_t>(l / 2)] == l;
    }

    Cell with(Letter l) const {
        std::vector<Letter> c = choices_;
        c[static_cast<std::size_t>(l / 2)] = l;
        return Cell(std::move(c));
    }

private:
    std::vector<Letter> choices_;
};

/// |Es ∩ Et| in units of |ES|: 1 when both are stars, 1/2 when exactly one is
/// a star or the letters agree, 0 on complementary letters, 1/4 otherwise.
DyadicRatio letter_intersection_measure(Letter s, Letter t);

/// |Es ∩ Et ∩ Er| in units of |ES|.
DyadicRatio letter_triple_measure(Letter s, Letter t, Letter r);

/// Product of per-coordinate letter measures: the relative volume of the
/// intersection of the two realized boxes. Zero exactly on dichotomous pairs
/// when both words are star-free.
DyadicRatio box_intersection_measure(const Word& u, const Word& v);

/// Per-coordinate factors: 2 when v_i matches w_i or is a star, 0 on the
/// complement, 1 otherwise. w must be star-free; v may carry stars (the star
/// factor 2 reproduces the measure identity).
std::uint64_t g_value(const Word& v, const Word& w);

/// Sum of g_value over the code's words.
std::uint64_t g_sum(const PolyboxCode& code, const Word& w);

/// Factor 2 per star and 1 per letter.
std::uint64_t bar_g_value(const Word& v);

/// True when the realization of w lies inside the union of the code's
/// realization: the intersection measures against the code sum up to the
/// measure of w itself.
bool covers(const Word& w, const PolyboxCode& code);

/// Mutual covering; equal unions in the equicomplementary realization.
bool equivalent(const PolyboxCode& a, const PolyboxCode& b);

/// Σ bar_g over the code equals 2^d.
bool is_partition_code(const PolyboxCode& code);

/// The (d-1)-dimensional code of the words whose realizations meet the slice
/// through cell x at coordinate i: keep v when v_i is a star or x chooses v_i,
/// then drop coordinate i.
PolyboxCode slice(const PolyboxCode& code, int i, const Cell& x);

/// All words star-free at i, and for every letter pair present at i the two
/// projected halves are equivalent.
bool is_cylinder(const PolyboxCode& code, int i);

/// Lower bound m + n on |code| from slice sizes: m minimises |slice| over
/// cells choosing l1 and l2, n over cells choosing their complements.
/// Requires a star-free code and l1 outside l2's pair.
int slice_bound(const PolyboxCode& code, int i, Letter l1, Letter l2);

} // namespace pbx
