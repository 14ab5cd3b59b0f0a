#ifndef COFIN_WORDS_HPP
#define COFIN_WORDS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cofin/errors.hpp"

namespace cofin {

/// Name-spaces letters can live in. Generic letters are interpreted by a
/// finite partial state, ground letters by fixed permutations; group
/// element letters play the generic role in the embedding order but keep
/// a separate tag so they never collide with ground names.
enum class LetterKind { Generic, Ground, GroupElem };

struct Letter {
    LetterKind kind = LetterKind::Generic;
    std::string name;
    int exp = 1;  // +1 or -1

    bool same_base(const Letter& o) const { return kind == o.kind && name == o.name; }
    Letter inverse() const { return Letter{kind, name, -exp}; }

    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

/// Freely reduced word. Construction reduces; a Word never contains an
/// adjacent letter/inverse pair.
class Word {
public:
    Word() = default;
    explicit Word(std::span<const Letter> letters);
    explicit Word(std::initializer_list<Letter> letters);

    static Word empty() { return Word(); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_empty() const { return letters_.empty(); }

    Word concat(const Word& other) const;
    Word inverse() const;

    bool contains_kind(LetterKind kind) const;
    bool contains_base(LetterKind kind, const std::string& name) const;

    /// Bit-exact text form: terms separated by single spaces, inverses as
    /// name^-1.
    std::string str() const;

    /// Parses the textual syntax; kinds are resolved by the callback.
    static Word parse(const std::string& text,
                      const std::function<LetterKind(const std::string&)>& kind_of);

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

/// A good word is a power of a single letter or starts and ends with
/// different base names (exponent signs ignored). Throws EmptyWord.
bool is_good(const Word& w);

/// All good words of length <= max_len over the alphabet, in
/// length-lexicographic order; within a length, letters are ordered by
/// alphabet position with exponent +1 before -1.
std::vector<Word> enumerate_good(const std::vector<Letter>& alphabet, std::size_t max_len);

/// All reduced non-empty words of length <= max_len, same order.
std::vector<Word> enumerate_reduced(const std::vector<Letter>& alphabet, std::size_t max_len);

/// Finite group given by explicit tables; validated on construction.
class FiniteGroupTable {
public:
    FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<std::uint32_t>> mul,
                     std::uint32_t id_index);

    static FiniteGroupTable cyclic(std::uint32_t n);
    static FiniteGroupTable symmetric3();

    std::uint32_t order() const { return static_cast<std::uint32_t>(names_.size()); }
    std::uint32_t id_index() const { return id_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a][b]; }
    std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name_of(std::uint32_t i) const { return names_[i]; }

    /// Throws UnknownElement.
    std::uint32_t index_of(const std::string& name) const;
    bool has_element(const std::string& name) const;

    /// Table product of a word whose letters all name elements of the
    /// group (exponent -1 through the inverse table).
    std::uint32_t product(const Word& w) const;

    bool operator==(const FiniteGroupTable&) const = default;

private:
    void validate() const;

    std::vector<std::string> names_;
    std::vector<std::vector<std::uint32_t>> mul_;
    std::vector<std::uint32_t> inv_;
    std::uint32_t id_ = 0;
};

/// Decides whether the word multiplies out to the identity of H.
bool relation_is_identity(const Word& w, const FiniteGroupTable& h);

} // namespace cofin

#endif
