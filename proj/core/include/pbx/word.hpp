#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "pbx/alphabet.hpp"

namespace pbx {

/// A length-d sequence of letters and stars; the atom every code is built of.
/// Immutable after construction.
class Word {
public:
    Word() = default;

    explicit Word(std::vector<Letter> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw UsageError("word must have positive dimension");
    }

    Word(std::initializer_list<Letter> entries) : Word(std::vector<Letter>(entries)) {}

    int dim() const { return static_cast<int>(entries_.size()); }
    Letter operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
    const std::vector<Letter>& entries() const { return entries_; }

    bool star_free() const {
        for (Letter l : entries_)
            if (l == kStar) return false;
        return true;
    }

    int star_count() const {
        int n = 0;
        for (Letter l : entries_)
            if (l == kStar) ++n;
        return n;
    }

    /// New word with entry i replaced by l.
    Word with(int i, Letter l) const {
        std::vector<Letter> e = entries_;
        e[static_cast<std::size_t>(i)] = l;
        return Word(std::move(e));
    }

    /// Projection onto the sorted coordinate set A (0-based indices).
    Word project(const std::vector<int>& coords) const {
        std::vector<Letter> e;
        e.reserve(coords.size());
        for (int i : coords) e.push_back(entries_[static_cast<std::size_t>(i)]);
        return Word(std::move(e));
    }

    /// Projection that drops coordinate i.
    Word drop(int i) const {
        std::vector<Letter> e;
        e.reserve(entries_.size() - 1);
        for (int j = 0; j < dim(); ++j)
            if (j != i) e.push_back(entries_[static_cast<std::size_t>(j)]);
        return Word(std::move(e));
    }

    std::string str(const Alphabet& alphabet) const {
        std::string out;
        for (int i = 0; i < dim(); ++i) {
            if (i) out.push_back(' ');
            out += alphabet.name(entries_[static_cast<std::size_t>(i)]);
        }
        return out;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.entries_ == b.entries_; }
    friend auto operator<=>(const Word& a, const Word& b) { return a.entries_ <=> b.entries_; }

private:
    std::vector<Letter> entries_;
};

/// True when some coordinate j has u_j a letter and v_j its complement.
bool is_dichotomous(const Word& u, const Word& v);

/// True when exactly one coordinate is complementary (with a real letter) and
/// all the others agree, star matching only star.
bool is_twin_pair(const Word& u, const Word& v);

} // namespace pbx
