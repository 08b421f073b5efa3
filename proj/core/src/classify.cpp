#include "pbx/classify.hpp"

#include <algorithm>
#include <random>

namespace pbx {

namespace {

// Builds a d-dimensional word from letters on the sorted coordinate set A and
// a fragment for the remaining coordinates.
Word embed(int dim, const std::vector<int>& coords, const std::vector<Letter>& on_a,
           const std::vector<Letter>& rest) {
    std::vector<Letter> e(static_cast<std::size_t>(dim), kStar);
    for (std::size_t k = 0; k < coords.size(); ++k) e[static_cast<std::size_t>(coords[k])] = on_a[k];
    std::size_t r = 0;
    for (int i = 0; i < dim; ++i) {
        if (std::find(coords.begin(), coords.end(), i) == coords.end())
            e[static_cast<std::size_t>(i)] = rest[r++];
    }
    return Word(std::move(e));
}

std::vector<Letter> all_star(int n) { return std::vector<Letter>(static_cast<std::size_t>(n), kStar); }

} // namespace

std::pair<PolyboxCode, PolyboxCode> PairStructure::reconstruct(const Alphabet& alphabet, int dim) const {
    std::vector<int> a{coords[0], coords[1]};
    std::vector<Word> u_words{
        embed(dim, a, {kStar, l2}, common),
        embed(dim, a, {l1, complement(l2)}, common),
    };
    std::vector<Word> p_words{
        embed(dim, a, {l1, kStar}, common),
        embed(dim, a, {complement(l1), l2}, common),
    };
    return {PolyboxCode::validate(alphabet, dim, std::move(u_words)),
            PolyboxCode::validate(alphabet, dim, std::move(p_words))};
}

PolyboxCode FiveStructure::reconstruct(const Alphabet& alphabet, int dim) const {
    std::vector<int> a{coords[0], coords[1], coords[2]};
    const Letter m1 = complement(l1), m2 = complement(l2), m3 = complement(l3);
    std::vector<std::array<Letter, 3>> on_a{
        {l1, l2, l3}, {m1, m2, m3}, {kStar, l2, m3}, {m1, kStar, l3}, {l1, m2, kStar}};
    std::vector<Word> words;
    for (const auto& fragment : on_a) {
        std::vector<Letter> rest;
        if (ambient) {
            for (int i = 0; i < dim; ++i)
                if (std::find(a.begin(), a.end(), i) == a.end()) rest.push_back((*ambient)[i]);
        } else {
            rest = all_star(dim - 3);
        }
        Word w = embed(dim, a, {fragment[0], fragment[1], fragment[2]}, rest);
        if (ambient) {
            // The cover variant carries the ambient letters where the
            // partition variant has stars on A.
            for (std::size_t k = 0; k < 3; ++k)
                if (fragment[k] == kStar) w = w.with(a[k], (*ambient)[a[k]]);
        }
        words.push_back(std::move(w));
    }
    return PolyboxCode::validate(alphabet, dim, std::move(words));
}

PolyboxCode SixStructure::reconstruct(const Alphabet& alphabet, int dim) const {
    PolyboxCode five = inner.reconstruct(alphabet, dim);
    std::vector<Word> words;
    std::vector<Letter> singleton = all_star(dim);
    singleton[static_cast<std::size_t>(coordinate)] = letter;
    words.emplace_back(std::move(singleton));
    for (const Word& w : five.words()) words.push_back(w.with(coordinate, complement(letter)));
    return PolyboxCode::validate(alphabet, dim, std::move(words));
}

PairStructure classify_pair_structure(const PolyboxCode& u, const PolyboxCode& p) {
    if (u.size() != 2 || p.size() != 2)
        throw UsageError("classify_pair_structure needs two words on each side");
    for (const Word& w : p.words())
        if (u.contains(w)) throw UsageError("classify_pair_structure needs disjoint codes");
    if (find_twin_pair(u) || find_twin_pair(p))
        throw UsageError("classify_pair_structure needs twin-pair-free codes");
    if (!equivalent(u, p)) throw UsageError("classify_pair_structure needs equivalent codes");

    const int d = u.dim();
    std::vector<const Word*> all{&u[0], &u[1], &p[0], &p[1]};
    std::vector<int> varying;
    for (int i = 0; i < d; ++i) {
        bool constant = true;
        for (const Word* w : all) constant = constant && (*w)[i] == (*all[0])[i];
        if (!constant) varying.push_back(i);
    }
    if (varying.size() != 2)
        throw TemplateMismatchError("two-word equivalent pair varies on " +
                                    std::to_string(varying.size()) + " coordinates, expected 2");

    std::vector<Letter> common;
    for (int i = 0; i < d; ++i)
        if (i != varying[0] && i != varying[1]) common.push_back(u[0][i]);

    // Try both role assignments and both coordinate orientations.
    for (const auto* first : {&u, &p}) {
        const auto* second = (first == &u) ? &p : &u;
        for (int ori = 0; ori < 2; ++ori) {
            int i1 = varying[static_cast<std::size_t>(ori)];
            int i2 = varying[static_cast<std::size_t>(1 - ori)];
            for (const Word& starred : first->words()) {
                if (starred[i1] != kStar || starred[i2] == kStar) continue;
                Letter l2 = starred[i2];
                const Word& other = (&starred == &(*first)[0]) ? (*first)[1] : (*first)[0];
                if (other[i1] == kStar || other[i2] != complement(l2)) continue;
                Letter l1 = other[i1];
                PairStructure s;
                s.coords = {std::min(i1, i2), std::max(i1, i2)};
                if (i1 > i2) {
                    // Normalise to increasing coordinates: the template with
                    // swapped positions describes the second code's shape.
                    continue;
                }
                s.l1 = l1;
                s.l2 = l2;
                s.common = common;
                auto [ru, rp] = s.reconstruct(u.alphabet(), d);
                if ((ru == *first && rp == *second))
                    return s;
            }
        }
    }
    throw TemplateMismatchError("two-word equivalent pair does not match the forced template");
}

FiveStructure classify_partition_five(const PolyboxCode& code) {
    if (code.size() != 5) throw UsageError("classify_partition_five needs five words");
    if (!is_partition_code(code)) throw UsageError("classify_partition_five needs a partition code");
    if (find_twin_pair(code)) throw UsageError("classify_partition_five needs a twin-pair-free code");

    const int d = code.dim();
    std::vector<int> a;
    for (int i = 0; i < d; ++i) {
        for (const Word& w : code.words()) {
            if (w[i] != kStar) {
                a.push_back(i);
                break;
            }
        }
    }
    if (a.size() != 3)
        throw TemplateMismatchError("five-word partition code occupies " +
                                    std::to_string(a.size()) + " coordinates, expected 3");

    std::vector<const Word*> full;
    for (const Word& w : code.words()) {
        bool star_free_on_a = true;
        for (int i : a) star_free_on_a = star_free_on_a && w[i] != kStar;
        if (star_free_on_a) full.push_back(&w);
    }
    if (full.size() != 2) throw TemplateMismatchError("expected exactly two words filling the support");

    for (const Word* v : full) {
        FiveStructure s;
        s.coords = {a[0], a[1], a[2]};
        s.l1 = (*v)[a[0]];
        s.l2 = (*v)[a[1]];
        s.l3 = (*v)[a[2]];
        PolyboxCode rebuilt = s.reconstruct(code.alphabet(), d);
        if (rebuilt == code) return s;
    }
    throw TemplateMismatchError("five-word partition code does not match the forced template");
}

SixStructure classify_partition_six(const PolyboxCode& code) {
    if (code.size() != 6) throw UsageError("classify_partition_six needs six words");
    if (!is_partition_code(code)) throw UsageError("classify_partition_six needs a partition code");
    if (find_twin_pair(code)) throw UsageError("classify_partition_six needs a twin-pair-free code");

    const int d = code.dim();
    for (int i = 0; i < d; ++i) {
        Distribution dist = distribution(code, i);
        if (!dist.leftover.empty() || dist.groups.size() != 1) continue;
        const auto& g = dist.groups[0];
        const std::vector<Word>* single = nullptr;
        const std::vector<Word>* block = nullptr;
        Letter letter = 0;
        if (g.with_letter.size() == 1 && g.with_complement.size() == 5) {
            single = &g.with_letter;
            block = &g.with_complement;
            letter = g.letter;
        } else if (g.with_complement.size() == 1 && g.with_letter.size() == 5) {
            single = &g.with_complement;
            block = &g.with_letter;
            letter = complement(g.letter);
        } else {
            continue;
        }
        if ((*single)[0].drop(i).star_count() != d - 1) continue;

        std::vector<Word> projected;
        for (const Word& w : *block) projected.push_back(w.drop(i));
        PolyboxCode five = PolyboxCode::trusted(code.alphabet(), d - 1, std::move(projected));
        FiveStructure inner = classify_partition_five(five);
        for (auto& c : inner.coords)
            if (c >= i) ++c;
        SixStructure s;
        s.coordinate = i;
        s.letter = letter;
        s.inner = inner;
        if (s.reconstruct(code.alphabet(), d) == code) return s;
    }
    throw TemplateMismatchError("six-word partition code does not match the forced split");
}

PolyboxCode induced_partition_code(const PolyboxCode& code, const Word& u) {
    if (!code.star_free() || !u.star_free())
        throw UsageError("induced_partition_code requires star-free inputs");
    if (u.dim() != code.dim()) throw UsageError("dimension mismatch in induced_partition_code");
    for (const Word& v : code.words())
        if (box_intersection_measure(v, u).is_zero())
            throw UsageError("induced_partition_code requires every word to meet the base word");
    if (!covers(u, code)) throw UsageError("induced_partition_code requires a covered base word");

    std::vector<Word> bars;
    for (const Word& v : code.words()) {
        std::vector<Letter> e;
        e.reserve(static_cast<std::size_t>(code.dim()));
        for (int i = 0; i < code.dim(); ++i) e.push_back(v[i] == u[i] ? kStar : v[i]);
        bars.emplace_back(std::move(e));
    }
    PolyboxCode bar = PolyboxCode::trusted(code.alphabet(), code.dim(), std::move(bars));
    if (!is_partition_code(bar))
        throw DefectError("induced code failed the partition test; this is a library defect");
    return bar;
}

FiveStructure classify_cover_five(const PolyboxCode& code, const Word& ambient) {
    if (code.size() != 5) throw UsageError("classify_cover_five needs five words");
    if (!code.star_free() || !ambient.star_free())
        throw UsageError("classify_cover_five requires star-free inputs");
    if (find_twin_pair(code)) throw UsageError("classify_cover_five needs a twin-pair-free code");
    if (code.contains(ambient)) throw UsageError("classify_cover_five: base word must lie outside the code");
    for (const Word& v : code.words())
        if (box_intersection_measure(v, ambient).is_zero())
            throw UsageError("classify_cover_five requires every word to meet the base word");
    if (!covers(ambient, code)) throw UsageError("classify_cover_five requires a covered base word");

    PolyboxCode bar = induced_partition_code(code, ambient);
    FiveStructure s = classify_partition_five(bar);
    s.ambient = ambient;
    for (Letter l : {s.l1, s.l2, s.l3})
        if (!code.alphabet().contains(l))
            throw TemplateMismatchError("cover template letters outside alphabet");
    if (s.reconstruct(code.alphabet(), code.dim()) != code)
        throw TemplateMismatchError("five-word cover does not match the forced template");
    return s;
}

std::optional<std::pair<Word, Word>> find_odd_complement_pair(const PolyboxCode& code) {
    if (code.size() < 2) throw UsageError("find_odd_complement_pair needs at least two words");
    if (!is_partition_code(code)) throw UsageError("find_odd_complement_pair needs a partition code");
    const auto& ws = code.words();
    for (std::size_t i = 0; i < ws.size(); ++i) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) {
            int flips = 0;
            bool compatible = true;
            for (int c = 0; c < code.dim() && compatible; ++c) {
                if (ws[i][c] == ws[j][c]) continue;
                if (complementary(ws[i][c], ws[j][c]))
                    ++flips;
                else
                    compatible = false;
            }
            if (compatible && flips % 2 == 1) return std::make_pair(ws[i], ws[j]);
        }
    }
    return std::nullopt;
}

std::vector<Composition> cover_compositions(int k, int d, int min_index) {
    if (k < 1) throw UsageError("cover_compositions needs k >= 1");
    if (d < 1 || d > 40) throw UsageError("cover_compositions dimension out of range");
    if (min_index < 1 || min_index > d) throw UsageError("cover_compositions min_index out of range");

    std::vector<Composition> out;
    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    const std::uint64_t target = std::uint64_t{1} << d;

    // Depth-first over indices min_index..d; sums are exact.
    auto rec = [&](auto&& self, int i, std::uint64_t sum, int words) -> void {
        if (sum > target || words > k) return;
        if (i > d) {
            if (sum == target && words == k) out.push_back(Composition{counts});
            return;
        }
        const std::uint64_t weight = std::uint64_t{1} << (d - i);
        int max_extra = static_cast<int>((target - sum) / weight);
        for (int x = 0; x <= std::min(max_extra, k - words); ++x) {
            counts[static_cast<std::size_t>(i - 1)] = x;
            self(self, i + 1, sum + weight * static_cast<std::uint64_t>(x), words + x);
        }
        counts[static_cast<std::size_t>(i - 1)] = 0;
    };
    rec(rec, min_index, 0, 0);
    std::sort(out.begin(), out.end(),
              [](const Composition& a, const Composition& b) { return a.counts < b.counts; });
    return out;
}

CoverEnumeration enumerate_covers(const Word& w, const Alphabet& alphabet, int k,
                                  const std::optional<Composition>& comp) {
    if (alphabet.pair_count() != 2)
        throw UsageError("enumerate_covers supports two-pair alphabets only");
    if (!w.star_free()) throw UsageError("enumerate_covers needs a star-free base word");
    if (k != 5 && k != 7 && k != 8 && k != 9)
        throw UsageError("enumerate_covers supports k in {5, 7, 8, 9}");
    const int d = w.dim();
    if (d < 3 || d > 16) throw UsageError("enumerate_covers dimension out of range");
    const std::uint64_t target = std::uint64_t{1} << d;
    if (comp) {
        if (static_cast<int>(comp->counts.size()) != d || comp->word_count() != k)
            throw UsageError("composition does not match k and d");
        std::uint64_t s = 0;
        for (int i = 1; i <= d; ++i) {
            if (i < 2 && comp->x(i) != 0)
                throw UsageError("composition exceeds the g-value cap");
            s += static_cast<std::uint64_t>(comp->x(i)) << (d - i);
        }
        if (s != target) throw UsageError("composition does not solve the covering equation");
    }

    struct Candidate {
        Word word;
        std::uint64_t g;
        int cls; // i with g = 2^(d-i)
    };
    std::vector<Candidate> cands;
    {
        // A candidate may carry, per coordinate, w's letter or anything
        // outside its pair; a complementary letter empties the intersection.
        std::vector<std::vector<Letter>> options(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            options[static_cast<std::size_t>(i)].push_back(w[i]);
            for (Letter l = 0; l < alphabet.size(); ++l)
                if (l / 2 != w[i] / 2) options[static_cast<std::size_t>(i)].push_back(l);
        }
        std::vector<Letter> entries(static_cast<std::size_t>(d));
        auto rec = [&](auto&& self, int i, int matches) -> void {
            if (matches > d - 2) return;
            if (i == d) {
                Word v{std::vector<Letter>(entries)};
                cands.push_back(Candidate{v, std::uint64_t{1} << matches, d - matches});
                return;
            }
            for (Letter l : options[static_cast<std::size_t>(i)]) {
                entries[static_cast<std::size_t>(i)] = l;
                self(self, i + 1, matches + (l == w[i] ? 1 : 0));
            }
        };
        rec(rec, 0, 0);
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.g != b.g) return a.g > b.g;
        return a.word < b.word;
    });

    CoverEnumeration result;
    std::vector<int> chosen;
    std::vector<int> class_counts(static_cast<std::size_t>(d + 1), 0);
    const int n = static_cast<int>(cands.size());

    auto rec = [&](auto&& self, int from, std::uint64_t sum, int picked) -> void {
        if (picked == k) {
            if (sum != target) return;
            std::vector<Word> words;
            words.reserve(static_cast<std::size_t>(k));
            for (int idx : chosen) words.push_back(cands[static_cast<std::size_t>(idx)].word);
            result.codes.push_back(PolyboxCode::trusted(alphabet, d, std::move(words)));
            return;
        }
        for (int idx = from; idx < n; ++idx) {
            const Candidate& c = cands[static_cast<std::size_t>(idx)];
            const int left = k - picked - 1;
            // Remaining picks sit at indices > idx, so their g never exceeds c.g.
            if (sum + c.g + static_cast<std::uint64_t>(left) * c.g < target) break;
            if (sum + c.g + static_cast<std::uint64_t>(left) > target) continue;
            if (comp && class_counts[static_cast<std::size_t>(c.cls)] + 1 > comp->x(c.cls)) continue;
            bool ok = true;
            for (int j : chosen) {
                const Word& other = cands[static_cast<std::size_t>(j)].word;
                if (!is_dichotomous(c.word, other) || is_twin_pair(c.word, other)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(idx);
            ++class_counts[static_cast<std::size_t>(c.cls)];
            self(self, idx + 1, sum + c.g, picked + 1);
            --class_counts[static_cast<std::size_t>(c.cls)];
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0, 0);

    std::sort(result.codes.begin(), result.codes.end());
    result.count = result.codes.size();
    return result;
}

PolyboxCode random_partition_code(int d, const Alphabet& alphabet, std::uint64_t seed) {
    if (d < 1 || d > 20) throw UsageError("random_partition_code dimension out of range");
    std::mt19937_64 rng(seed);
    std::vector<Word> words;

    std::vector<Letter> entries(static_cast<std::size_t>(d), kStar);
    std::vector<int> free_coords(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) free_coords[static_cast<std::size_t>(i)] = i;

    auto split = [&](auto&& self, std::vector<int> free) -> void {
        if (free.empty()) {
            words.emplace_back(std::vector<Letter>(entries));
            return;
        }
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        std::size_t at = pick(rng);
        int coord = free[at];
        free.erase(free.begin() + static_cast<std::ptrdiff_t>(at));
        std::uniform_int_distribution<int> pick_letter(0, alphabet.size() - 1);
        Letter l = static_cast<Letter>(pick_letter(rng));
        for (Letter side : {l, complement(l)}) {
            entries[static_cast<std::size_t>(coord)] = side;
            self(self, free);
        }
        entries[static_cast<std::size_t>(coord)] = kStar;
    };
    split(split, free_coords);

    std::vector<int> sigma(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sigma[static_cast<std::size_t>(i)] = i;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<Word> shuffled;
    shuffled.reserve(words.size());
    for (const Word& v : words) {
        std::vector<Letter> e(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i)] = v[sigma[static_cast<std::size_t>(i)]];
        shuffled.emplace_back(std::move(e));
    }
    return PolyboxCode::validate(alphabet, d, std::move(shuffled));
}

} // namespace pbx
