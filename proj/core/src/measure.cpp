#include "pbx/measure.hpp"

#include <algorithm>

namespace pbx {

Cell::Cell(std::vector<Letter> choices) : choices_(std::move(choices)) {
    for (std::size_t p = 0; p < choices_.size(); ++p) {
        Letter l = choices_[p];
        if (l == kStar || l / 2 != static_cast<Letter>(p))
            throw UsageError("cell choice does not belong to its pair");
    }
}

Cell Cell::even(const Alphabet& alphabet) {
    std::vector<Letter> c(static_cast<std::size_t>(alphabet.pair_count()));
    for (int p = 0; p < alphabet.pair_count(); ++p) c[static_cast<std::size_t>(p)] = static_cast<Letter>(2 * p);
    return Cell(std::move(c));
}

DyadicRatio letter_intersection_measure(Letter s, Letter t) {
    if (s == kStar && t == kStar) return DyadicRatio::one();
    if (s == kStar || t == kStar) return DyadicRatio::half_power(1);
    if (s == t) return DyadicRatio::half_power(1);
    if (t == complement(s)) return DyadicRatio::zero();
    return DyadicRatio::half_power(2);
}

DyadicRatio letter_triple_measure(Letter s, Letter t, Letter r) {
    // Measure of the common transversals: each distinct non-star pair halves
    // the count; any complementary clash empties it.
    Letter letters[3] = {s, t, r};
    std::vector<Letter> pairs;
    for (Letter l : letters) {
        if (l == kStar) continue;
        Letter key = static_cast<Letter>(l & ~Letter(1));
        bool seen = false;
        for (Letter p : pairs) seen = seen || p == key;
        if (!seen) pairs.push_back(key);
    }
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (complementary(letters[a], letters[b])) return DyadicRatio::zero();
    return DyadicRatio::half_power(static_cast<unsigned>(pairs.size()));
}

DyadicRatio box_intersection_measure(const Word& u, const Word& v) {
    if (u.dim() != v.dim()) throw UsageError("dimension mismatch in box_intersection_measure");
    DyadicRatio m = DyadicRatio::one();
    for (int i = 0; i < u.dim(); ++i) {
        DyadicRatio f = letter_intersection_measure(u[i], v[i]);
        if (f.is_zero()) return DyadicRatio::zero();
        m = m * f;
    }
    return m;
}

std::uint64_t g_value(const Word& v, const Word& w) {
    if (v.dim() != w.dim()) throw UsageError("dimension mismatch in g_value");
    std::uint64_t g = 1;
    for (int i = 0; i < v.dim(); ++i) {
        if (w[i] == kStar) throw UsageError("g_value requires a star-free second word");
        Letter vi = v[i];
        if (vi == w[i] || vi == kStar) {
            g <<= 1;
        } else if (vi == complement(w[i])) {
            return 0;
        }
    }
    return g;
}

std::uint64_t g_sum(const PolyboxCode& code, const Word& w) {
    std::uint64_t s = 0;
    for (const Word& v : code.words()) s += g_value(v, w);
    return s;
}

std::uint64_t bar_g_value(const Word& v) {
    std::uint64_t g = 1;
    for (int i = 0; i < v.dim(); ++i)
        if (v[i] == kStar) g <<= 1;
    return g;
}

bool covers(const Word& w, const PolyboxCode& code) {
    if (w.dim() != code.dim()) throw UsageError("dimension mismatch in covers");
    DyadicRatio total = DyadicRatio::zero();
    for (const Word& v : code.words()) total += box_intersection_measure(w, v);
    return total == box_intersection_measure(w, w);
}

bool equivalent(const PolyboxCode& a, const PolyboxCode& b) {
    if (a.dim() != b.dim() || a.alphabet() != b.alphabet())
        throw UsageError("equivalent needs codes over one alphabet and dimension");
    for (const Word& w : b.words())
        if (!covers(w, a)) return false;
    for (const Word& v : a.words())
        if (!covers(v, b)) return false;
    return true;
}

bool is_partition_code(const PolyboxCode& code) {
    std::uint64_t total = 0;
    for (const Word& v : code.words()) total += bar_g_value(v);
    return total == (std::uint64_t{1} << code.dim());
}

PolyboxCode slice(const PolyboxCode& code, int i, const Cell& x) {
    if (i < 0 || i >= code.dim()) throw UsageError("coordinate out of range in slice");
    if (code.dim() < 2) throw UsageError("slice needs dimension at least 2");
    if (x.pair_count() < (code.alphabet().size() + 1) / 2)
        throw UsageError("cell does not cover the code's alphabet");
    std::vector<Word> kept;
    for (const Word& v : code.words())
        if (x.contains(v[i])) kept.push_back(v.drop(i));
    // Words surviving a slice keep a dichotomy witness away from i.
    return PolyboxCode::trusted(code.alphabet(), code.dim() - 1, std::move(kept));
}

bool is_cylinder(const PolyboxCode& code, int i) {
    if (i < 0 || i >= code.dim()) throw UsageError("coordinate out of range in is_cylinder");
    for (const Word& v : code.words())
        if (v[i] == kStar) throw UsageError("is_cylinder requires no star at the coordinate");
    Distribution dist = distribution(code, i);
    std::vector<int> rest;
    for (int j = 0; j < code.dim(); ++j)
        if (j != i) rest.push_back(j);
    for (const auto& group : dist.groups) {
        std::vector<Word> lo, hi;
        for (const Word& w : group.with_letter) lo.push_back(w.drop(i));
        for (const Word& w : group.with_complement) hi.push_back(w.drop(i));
        PolyboxCode a = PolyboxCode::trusted(code.alphabet(), code.dim() - 1, std::move(lo));
        PolyboxCode b = PolyboxCode::trusted(code.alphabet(), code.dim() - 1, std::move(hi));
        if (!equivalent(a, b)) return false;
    }
    return true;
}

int slice_bound(const PolyboxCode& code, int i, Letter l1, Letter l2) {
    if (!code.star_free()) throw UsageError("slice_bound requires a star-free code");
    if (i < 0 || i >= code.dim()) throw UsageError("coordinate out of range in slice_bound");
    if (l1 / 2 == l2 / 2) throw UsageError("slice_bound letters must come from distinct pairs");
    if (!code.alphabet().contains(l1) || !code.alphabet().contains(l2))
        throw UsageError("slice_bound letters outside alphabet");

    // Only choices at pairs present at coordinate i can change the slice.
    std::vector<Letter> free_pairs;
    for (Letter l : code.letters_at(i)) {
        Letter key = static_cast<Letter>(l & ~Letter(1));
        if (key == (l1 & ~Letter(1)) || key == (l2 & ~Letter(1))) continue;
        if (std::find(free_pairs.begin(), free_pairs.end(), key) == free_pairs.end())
            free_pairs.push_back(key);
    }

    auto min_slice = [&](Letter a, Letter b) {
        int best = code.size() + 1;
        for (unsigned mask = 0; mask < (1u << free_pairs.size()); ++mask) {
            Cell x = Cell::even(code.alphabet()).with(a).with(b);
            for (std::size_t p = 0; p < free_pairs.size(); ++p)
                x = x.with(static_cast<Letter>(free_pairs[p] + ((mask >> p) & 1u)));
            best = std::min(best, slice(code, i, x).size());
        }
        return best;
    };

    return min_slice(l1, l2) + min_slice(complement(l1), complement(l2));
}

} // namespace pbx
