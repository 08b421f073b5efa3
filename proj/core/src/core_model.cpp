#include "pbx/code.hpp"

#include <algorithm>
#include <map>

namespace pbx {

bool is_dichotomous(const Word& u, const Word& v) {
    if (u.dim() != v.dim()) throw UsageError("dimension mismatch in is_dichotomous");
    for (int j = 0; j < u.dim(); ++j)
        if (complementary(u[j], v[j])) return true;
    return false;
}

bool is_twin_pair(const Word& u, const Word& v) {
    if (u.dim() != v.dim()) throw UsageError("dimension mismatch in is_twin_pair");
    int flips = 0;
    for (int j = 0; j < u.dim(); ++j) {
        if (u[j] == v[j]) continue;
        if (complementary(u[j], v[j])) {
            if (++flips > 1) return false;
        } else {
            return false;
        }
    }
    return flips == 1;
}

static void check_words(const Alphabet& alphabet, int dim, const std::vector<Word>& words) {
    for (const Word& w : words) {
        if (w.dim() != dim)
            throw ValidationError("word has dimension " + std::to_string(w.dim()) +
                                  ", expected " + std::to_string(dim));
        for (int i = 0; i < w.dim(); ++i)
            if (w[i] != kStar && !alphabet.contains(w[i]))
                throw ValidationError("word uses a letter outside the alphabet");
    }
}

PolyboxCode PolyboxCode::validate(Alphabet alphabet, int dim, std::vector<Word> words) {
    check_words(alphabet, dim, words);
    std::sort(words.begin(), words.end());
    for (std::size_t i = 0; i + 1 < words.size(); ++i)
        if (words[i] == words[i + 1])
            throw ValidationError("duplicate word: " + words[i].str(alphabet));
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            if (!is_dichotomous(words[i], words[j]))
                throw ValidationError("words are not dichotomous: " + words[i].str(alphabet) +
                                      " | " + words[j].str(alphabet));
    PolyboxCode code;
    code.alphabet_ = std::move(alphabet);
    code.dim_ = dim;
    code.words_ = std::move(words);
    return code;
}

PolyboxCode PolyboxCode::trusted(Alphabet alphabet, int dim, std::vector<Word> words) {
    check_words(alphabet, dim, words);
    std::sort(words.begin(), words.end());
    PolyboxCode code;
    code.alphabet_ = std::move(alphabet);
    code.dim_ = dim;
    code.words_ = std::move(words);
    return code;
}

bool PolyboxCode::contains(const Word& w) const {
    return std::binary_search(words_.begin(), words_.end(), w);
}

bool PolyboxCode::star_free() const {
    for (const Word& w : words_)
        if (!w.star_free()) return false;
    return true;
}

std::vector<Letter> PolyboxCode::letters_at(int i) const {
    std::vector<Letter> out;
    for (const Word& w : words_) {
        Letter l = w[i];
        if (l == kStar) continue;
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::pair<Word, Word>> find_twin_pair(const PolyboxCode& code) {
    const auto& ws = code.words();
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = i + 1; j < ws.size(); ++j)
            if (is_twin_pair(ws[i], ws[j])) return std::make_pair(ws[i], ws[j]);
    return std::nullopt;
}

Distribution distribution(const PolyboxCode& code, int i) {
    if (i < 0 || i >= code.dim()) throw UsageError("coordinate out of range in distribution");
    Distribution dist;
    dist.coordinate = i;
    std::map<Letter, DistributionGroup> by_pair;
    for (const Word& w : code.words()) {
        Letter l = w[i];
        if (l == kStar) {
            dist.leftover.push_back(w);
            continue;
        }
        Letter key = static_cast<Letter>(l & ~Letter(1));
        auto& group = by_pair[key];
        group.letter = key;
        if (l == key)
            group.with_letter.push_back(w);
        else
            group.with_complement.push_back(w);
    }
    for (auto& [key, group] : by_pair) dist.groups.push_back(std::move(group));
    return dist;
}

std::vector<Word> project(const PolyboxCode& code, const std::vector<int>& coords) {
    if (coords.empty()) throw UsageError("projection needs a nonempty coordinate set");
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k] < 0 || coords[k] >= code.dim())
            throw UsageError("projection coordinate out of range");
        if (k > 0 && coords[k] <= coords[k - 1])
            throw UsageError("projection coordinates must be strictly increasing");
    }
    std::vector<Word> out;
    out.reserve(code.words().size());
    for (const Word& w : code.words()) out.push_back(w.project(coords));
    return out;
}

LetterBijection LetterBijection::identity(const Alphabet& alphabet) {
    std::vector<Letter> image(static_cast<std::size_t>(alphabet.size()));
    for (int l = 0; l < alphabet.size(); ++l) image[static_cast<std::size_t>(l)] = static_cast<Letter>(l);
    return LetterBijection(std::move(image));
}

LetterBijection LetterBijection::pair_swap(const Alphabet& alphabet, Letter base) {
    if (!alphabet.contains(base)) throw UsageError("pair_swap letter outside alphabet");
    std::vector<Letter> image(static_cast<std::size_t>(alphabet.size()));
    for (int l = 0; l < alphabet.size(); ++l) image[static_cast<std::size_t>(l)] = static_cast<Letter>(l);
    Letter even = static_cast<Letter>(base & ~Letter(1));
    std::swap(image[even], image[even + 1]);
    return LetterBijection(std::move(image));
}

LetterBijection::LetterBijection(std::vector<Letter> image) : image_(std::move(image)) {
    if (image_.empty() || image_.size() % 2 != 0)
        throw UsageError("letter bijection must cover whole pairs");
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t l = 0; l < image_.size(); ++l) {
        Letter m = image_[l];
        if (m == kStar || m >= image_.size() || seen[m])
            throw UsageError("letter map is not a bijection of the alphabet");
        seen[m] = true;
    }
    for (std::size_t l = 0; l < image_.size(); l += 2)
        if (image_[l + 1] != complement(image_[l]))
            throw UsageError("letter map does not commute with complementation");
}

PolyboxCode apply_isomorphism(const PolyboxCode& code, const std::vector<int>& sigma,
                              const std::vector<LetterBijection>& maps) {
    const int d = code.dim();
    if (static_cast<int>(sigma.size()) != d || static_cast<int>(maps.size()) != d)
        throw UsageError("isomorphism arity does not match code dimension");
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (int s : sigma) {
        if (s < 0 || s >= d || seen[static_cast<std::size_t>(s)])
            throw UsageError("sigma is not a coordinate permutation");
        seen[static_cast<std::size_t>(s)] = true;
    }
    for (const auto& h : maps)
        if (h.size() != code.alphabet().size())
            throw UsageError("letter map size does not match alphabet");

    std::vector<Word> out;
    out.reserve(code.words().size());
    for (const Word& v : code.words()) {
        std::vector<Letter> e(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i)] = maps[static_cast<std::size_t>(i)](v[sigma[static_cast<std::size_t>(i)]]);
        out.emplace_back(std::move(e));
    }
    // Isomorphisms preserve dichotomy, so the image is again a polybox code.
    return PolyboxCode::trusted(code.alphabet(), d, std::move(out));
}

namespace {

// All complement-compatible bijections of an alphabet with `pairs` pairs:
// signed pair permutations, pairs! * 2^pairs of them.
std::vector<LetterBijection> all_letter_bijections(const Alphabet& alphabet) {
    const int pairs = alphabet.pair_count();
    std::vector<int> perm(static_cast<std::size_t>(pairs));
    for (int i = 0; i < pairs; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<LetterBijection> out;
    do {
        for (unsigned flips = 0; flips < (1u << pairs); ++flips) {
            std::vector<Letter> image(static_cast<std::size_t>(2 * pairs));
            for (int p = 0; p < pairs; ++p) {
                Letter target = static_cast<Letter>(2 * perm[static_cast<std::size_t>(p)]);
                bool flip = (flips >> p) & 1u;
                image[static_cast<std::size_t>(2 * p)] = static_cast<Letter>(target + (flip ? 1 : 0));
                image[static_cast<std::size_t>(2 * p + 1)] = static_cast<Letter>(target + (flip ? 0 : 1));
            }
            out.emplace_back(std::move(image));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<Word> apply_to_sorted(const PolyboxCode& code, const std::vector<int>& sigma,
                                  const std::vector<const LetterBijection*>& maps) {
    const int d = code.dim();
    std::vector<Word> out;
    out.reserve(code.words().size());
    for (const Word& v : code.words()) {
        std::vector<Letter> e(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i)] = (*maps[static_cast<std::size_t>(i)])(v[sigma[static_cast<std::size_t>(i)]]);
        out.emplace_back(std::move(e));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

PolyboxCode canonical_form(const PolyboxCode& code, const CanonicalGroup& group) {
    const int d = code.dim();
    if (code.empty()) return code;

    std::vector<LetterBijection> bijections;
    if (group.swaps_only) {
        bijections.push_back(LetterBijection::identity(code.alphabet()));
        bijections.push_back(LetterBijection::pair_swap(code.alphabet(), group.swap_base));
    } else {
        bijections = all_letter_bijections(code.alphabet());
    }

    std::vector<int> sigma(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sigma[static_cast<std::size_t>(i)] = i;

    std::optional<std::vector<Word>> best;
    std::vector<const LetterBijection*> choice(static_cast<std::size_t>(d));
    do {
        // Odometer over per-coordinate bijection choices.
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        while (true) {
            for (int i = 0; i < d; ++i) choice[static_cast<std::size_t>(i)] = &bijections[idx[static_cast<std::size_t>(i)]];
            auto image = apply_to_sorted(code, sigma, choice);
            if (!best || image < *best) best = std::move(image);
            int p = d - 1;
            while (p >= 0 && ++idx[static_cast<std::size_t>(p)] == bijections.size()) {
                idx[static_cast<std::size_t>(p)] = 0;
                --p;
            }
            if (p < 0) break;
        }
        if (!group.permute_coordinates) break;
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    return PolyboxCode::trusted(code.alphabet(), d, std::move(*best));
}

} // namespace pbx
