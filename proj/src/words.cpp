#include "cofin/words.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace cofin {

namespace {

void push_reduced(std::vector<Letter>& out, const Letter& l) {
    if (!out.empty() && out.back().same_base(l) && out.back().exp == -l.exp)
        out.pop_back();
    else
        out.push_back(l);
}

} // namespace

Word::Word(std::span<const Letter> letters) {
    for (const Letter& l : letters) {
        if (l.name.empty())
            throw ParseError("letter with empty name");
        if (l.exp != 1 && l.exp != -1)
            throw ParseError("letter exponent must be +1 or -1");
        push_reduced(letters_, l);
    }
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::concat(const Word& other) const {
    std::vector<Letter> all(letters_);
    for (const Letter& l : other.letters_)
        push_reduced(all, l);
    Word w;
    w.letters_ = std::move(all);
    return w;
}

Word Word::inverse() const {
    std::vector<Letter> rev;
    rev.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        rev.push_back(it->inverse());
    Word w;
    w.letters_ = std::move(rev);  // reversal of a reduced word is reduced
    return w;
}

bool Word::contains_kind(LetterKind kind) const {
    return std::any_of(letters_.begin(), letters_.end(),
                       [&](const Letter& l) { return l.kind == kind; });
}

bool Word::contains_base(LetterKind kind, const std::string& name) const {
    return std::any_of(letters_.begin(), letters_.end(), [&](const Letter& l) {
        return l.kind == kind && l.name == name;
    });
}

std::string Word::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i)
            out << ' ';
        out << letters_[i].name;
        if (letters_[i].exp < 0)
            out << "^-1";
    }
    return out.str();
}

Word Word::parse(const std::string& text,
                 const std::function<LetterKind(const std::string&)>& kind_of) {
    std::vector<Letter> letters;
    std::istringstream in(text);
    std::string term;
    while (in >> term) {
        int exp = 1;
        if (term.size() > 3 && term.substr(term.size() - 3) == "^-1") {
            exp = -1;
            term = term.substr(0, term.size() - 3);
        }
        if (term.empty() || term[0] < 'a' || term[0] > 'z')
            throw ParseError("bad term: " + term);
        for (const char c : term)
            if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')))
                throw ParseError("bad character in name: " + term);
        letters.push_back(Letter{kind_of(term), term, exp});
    }
    return Word(std::span<const Letter>(letters.data(), letters.size()));
}

bool is_good(const Word& w) {
    if (w.is_empty())
        throw EmptyWord("good-word test on the empty word");
    const auto& ls = w.letters();
    const bool single_base =
        std::all_of(ls.begin(), ls.end(), [&](const Letter& l) { return l.same_base(ls.front()); });
    return single_base || !ls.front().same_base(ls.back());
}

namespace {

void enumerate_rec(const std::vector<Letter>& letters, std::size_t max_len,
                   std::vector<Letter>& cur, std::vector<Word>& out, bool good_only) {
    if (!cur.empty()) {
        Word w(std::span<const Letter>(cur.data(), cur.size()));
        if (!good_only || is_good(w))
            out.push_back(std::move(w));
    }
    if (cur.size() == max_len)
        return;
    for (const Letter& l : letters) {
        if (!cur.empty() && cur.back().same_base(l) && cur.back().exp == -l.exp)
            continue;  // keep the sequence reduced
        cur.push_back(l);
        enumerate_rec(letters, max_len, cur, out, good_only);
        cur.pop_back();
    }
}

std::vector<Word> enumerate_impl(const std::vector<Letter>& alphabet, std::size_t max_len,
                                 bool good_only) {
    std::vector<Letter> letters;
    for (const Letter& a : alphabet) {
        letters.push_back(Letter{a.kind, a.name, 1});
        letters.push_back(Letter{a.kind, a.name, -1});
    }
    std::vector<Word> out;
    std::vector<Letter> cur;
    enumerate_rec(letters, max_len, cur, out, good_only);
    std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return a.length() < b.length();
    });
    return out;
}

} // namespace

std::vector<Word> enumerate_good(const std::vector<Letter>& alphabet, std::size_t max_len) {
    return enumerate_impl(alphabet, max_len, true);
}

std::vector<Word> enumerate_reduced(const std::vector<Letter>& alphabet, std::size_t max_len) {
    return enumerate_impl(alphabet, max_len, false);
}

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> names,
                                   std::vector<std::vector<std::uint32_t>> mul,
                                   std::uint32_t id_index)
    : names_(std::move(names)), mul_(std::move(mul)), id_(id_index) {
    validate();
    const std::uint32_t n = order();
    inv_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::uint32_t b = 0; b < n; ++b) {
            if (mul_[a][b] == id_ && mul_[b][a] == id_) {
                inv_[a] = b;
                found = true;
                break;
            }
        }
        if (!found)
            throw BadGroupTable("element without inverse: " + names_[a]);
    }
}

void FiniteGroupTable::validate() const {
    const std::uint32_t n = static_cast<std::uint32_t>(names_.size());
    if (n == 0)
        throw BadGroupTable("empty group");
    if (mul_.size() != n)
        throw BadGroupTable("multiplication table has wrong shape");
    for (const auto& row : mul_) {
        if (row.size() != n)
            throw BadGroupTable("multiplication table has wrong shape");
        for (const std::uint32_t v : row)
            if (v >= n)
                throw BadGroupTable("multiplication table entry out of range");
    }
    if (id_ >= n)
        throw BadGroupTable("identity index out of range");
    for (std::uint32_t a = 0; a < n; ++a)
        if (mul_[id_][a] != a || mul_[a][id_] != a)
            throw BadGroupTable("identity law fails");
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            for (std::uint32_t c = 0; c < n; ++c)
                if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                    throw BadGroupTable("associativity fails");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
        throw BadGroupTable("duplicate element names");
}

FiniteGroupTable FiniteGroupTable::cyclic(std::uint32_t n) {
    if (n == 0)
        throw BadGroupTable("cyclic group of order zero");
    std::vector<std::string> names;
    names.push_back("e");
    for (std::uint32_t k = 1; k < n; ++k)
        names.push_back("g" + std::to_string(k));
    std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            mul[a][b] = (a + b) % n;
    return FiniteGroupTable(std::move(names), std::move(mul), 0);
}

FiniteGroupTable FiniteGroupTable::symmetric3() {
    // Elements as permutations of {0,1,2}: e, the rotations r1, r2 and the
    // transpositions t0 (fixes 0), t1, t2.
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    const std::vector<std::string> names = {"e", "r1", "r2", "t0", "t1", "t2"};
    std::vector<std::vector<std::uint32_t>> mul(6, std::vector<std::uint32_t>(6));
    for (std::uint32_t a = 0; a < 6; ++a) {
        for (std::uint32_t b = 0; b < 6; ++b) {
            std::array<int, 3> c;
            for (int i = 0; i < 3; ++i)
                c[i] = perms[a][perms[b][i]];
            for (std::uint32_t k = 0; k < 6; ++k)
                if (perms[k] == c)
                    mul[a][b] = k;
        }
    }
    return FiniteGroupTable(names, std::move(mul), 0);
}

std::uint32_t FiniteGroupTable::index_of(const std::string& name) const {
    for (std::uint32_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    throw UnknownElement("not a group element: " + name);
}

bool FiniteGroupTable::has_element(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::uint32_t FiniteGroupTable::product(const Word& w) const {
    std::uint32_t acc = id_;
    for (const Letter& l : w.letters()) {
        std::uint32_t idx = index_of(l.name);
        if (l.exp < 0)
            idx = inv_[idx];
        acc = mul_[acc][idx];
    }
    return acc;
}

bool relation_is_identity(const Word& w, const FiniteGroupTable& h) {
    return h.product(w) == h.id_index();
}

} // namespace cofin
