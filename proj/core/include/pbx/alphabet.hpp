#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbx/errors.hpp"

namespace pbx {

/// Interned letter id. Letters come in complementary pairs stored at adjacent
/// ids (2k, 2k+1), so complementation is a single xor. The star symbol is a
/// reserved id outside every alphabet and is its own complement.
using Letter = std::uint8_t;

inline constexpr Letter kStar = 0xFF;

inline constexpr Letter complement(Letter l) {
    return l == kStar ? kStar : static_cast<Letter>(l ^ 1u);
}

/// True when the two letters are complements of each other. Star is its own
/// complement, so two stars never count as a complementary pair here.
inline constexpr bool complementary(Letter a, Letter b) {
    return a != kStar && b == complement(a);
}

inline constexpr Letter pair_index_letter(int pair) {
    return static_cast<Letter>(2 * pair);
}

/// A finite alphabet with a fixed-point-free complementation. Constructed from
/// base names; each base name "x" contributes the pair x (even id) and x'
/// (odd id). Star is not a member.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> base_names) : bases_(std::move(base_names)) {
        if (bases_.empty())
            throw UsageError("alphabet needs at least one letter pair");
        if (bases_.size() > 100)
            throw UsageError("alphabet too large (at most 100 letter pairs)");
        for (const auto& b : bases_) {
            if (b.empty() || b == "*" || b.back() == '\'')
                throw UsageError("bad alphabet base name: '" + b + "'");
        }
        for (std::size_t i = 0; i < bases_.size(); ++i)
            for (std::size_t j = i + 1; j < bases_.size(); ++j)
                if (bases_[i] == bases_[j])
                    throw UsageError("duplicate alphabet base name: '" + bases_[i] + "'");
    }

    /// {a, a'} ... one pair per base name a, b, c, ...
    static Alphabet with_pairs(int pairs) {
        std::vector<std::string> names;
        names.reserve(pairs);
        for (int i = 0; i < pairs; ++i) {
            std::string n;
            if (i < 26) {
                n.push_back(static_cast<char>('a' + i));
            } else {
                n = "p" + std::to_string(i);
            }
            names.push_back(std::move(n));
        }
        return Alphabet(std::move(names));
    }

    int pair_count() const { return static_cast<int>(bases_.size()); }
    int size() const { return 2 * pair_count(); }

    bool contains(Letter l) const { return l != kStar && l < size(); }

    std::string name(Letter l) const {
        if (l == kStar) return "*";
        if (!contains(l)) throw UsageError("letter id out of range");
        std::string n = bases_[l / 2];
        if (l & 1) n.push_back('\'');
        return n;
    }

    /// Parses "x", "x'" or "*"; returns kStar for "*". Unknown names throw.
    Letter parse(const std::string& token) const {
        if (token == "*") return kStar;
        bool primed = !token.empty() && token.back() == '\'';
        std::string base = primed ? token.substr(0, token.size() - 1) : token;
        for (std::size_t i = 0; i < bases_.size(); ++i)
            if (bases_[i] == base)
                return static_cast<Letter>(2 * i + (primed ? 1 : 0));
        throw UsageError("undeclared letter: '" + token + "'");
    }

    /// Same letters plus `extra` fresh pairs appended after the existing ones.
    Alphabet extended(int extra) const {
        std::vector<std::string> names = bases_;
        int suffix = 0;
        for (int i = 0; i < extra; ++i) {
            std::string candidate;
            do {
                candidate = "z" + std::to_string(suffix++);
            } while (has_base(candidate));
            names.push_back(candidate);
        }
        return Alphabet(std::move(names));
    }

    const std::vector<std::string>& base_names() const { return bases_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.bases_ == b.bases_; }
    friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

private:
    bool has_base(const std::string& n) const {
        for (const auto& b : bases_)
            if (b == n) return true;
        return false;
    }

    std::vector<std::string> bases_;
};

} // namespace pbx
