#include "cofin/eval.hpp"

#include <algorithm>

namespace cofin {

void GroundAssignment::set(const std::string& name, const ExactPerm& perm) {
    fwd_[name] = perm;
    inv_[name] = perm.inverse();
}

const ExactPerm& GroundAssignment::perm(const std::string& name, int exp) const {
    const auto& side = exp >= 0 ? fwd_ : inv_;
    const auto it = side.find(name);
    if (it == side.end())
        throw UnknownLetter("undeclared ground name: " + name);
    return it->second;
}

std::vector<std::string> GroundAssignment::names() const {
    std::vector<std::string> out;
    for (const auto& [n, p] : fwd_) {
        (void)p;
        out.push_back(n);
    }
    return out;
}

bool state_contains(const GenericState& super, const GenericState& sub) {
    for (const auto& [name, inj] : sub) {
        if (inj.empty())
            continue;
        const auto it = super.find(name);
        if (it == super.end() || !it->second.contains_all(inj))
            return false;
    }
    return true;
}

namespace {

const PartialInj& state_of(const GenericState& s, const std::string& name) {
    static const PartialInj kEmpty;
    const auto it = s.find(name);
    return it == s.end() ? kEmpty : it->second;
}

} // namespace

std::optional<std::uint64_t> eval_letter(const Letter& l, const GenericState& s,
                                         const GroundAssignment& rho, std::uint64_t v) {
    if (l.kind == LetterKind::Ground)
        return rho.perm(l.name, l.exp).apply(v);
    const PartialInj& inj = state_of(s, l.name);
    return l.exp > 0 ? inj.apply(v) : inj.apply_inv(v);
}

std::optional<std::uint64_t> eval_sequence(std::span<const Letter> letters,
                                           const GenericState& s, const GroundAssignment& rho,
                                           std::uint64_t alpha) {
    std::uint64_t v = alpha;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        const auto next = eval_letter(*it, s, rho, v);
        if (!next)
            return std::nullopt;
        v = *next;
    }
    return v;
}

std::optional<std::uint64_t> eval_word(const Word& w, const GenericState& s,
                                       const GroundAssignment& rho, std::uint64_t alpha) {
    return eval_sequence(w.letters(), s, rho, alpha);
}

std::vector<std::optional<std::uint64_t>> eval_word_sweep(const Word& w, const GenericState& s,
                                                          const GroundAssignment& rho,
                                                          std::uint64_t bound) {
    // Resolve each letter once, then sweep; the per-point semantics is
    // eval_word's.
    struct Step {
        const ExactPerm* perm = nullptr;
        const PartialInj* inj = nullptr;
        bool inverted = false;
    };
    std::vector<Step> steps;
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
        Step step;
        if (it->kind == LetterKind::Ground) {
            step.perm = &rho.perm(it->name, it->exp);
        } else {
            step.inj = &state_of(s, it->name);
            step.inverted = it->exp < 0;
        }
        steps.push_back(step);
    }
    std::vector<std::optional<std::uint64_t>> out(bound);
    for (std::uint64_t alpha = 0; alpha < bound; ++alpha) {
        std::uint64_t v = alpha;
        bool ok = true;
        for (const Step& step : steps) {
            if (step.perm) {
                v = step.perm->apply(v);
            } else {
                const auto next = step.inverted ? step.inj->apply_inv(v) : step.inj->apply(v);
                if (!next) {
                    ok = false;
                    break;
                }
                v = *next;
            }
        }
        if (ok)
            out[alpha] = v;
    }
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> eval_relation(const Word& w,
                                                                   const GenericState& s,
                                                                   const GroundAssignment& rho,
                                                                   std::uint64_t bound) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    const auto sweep = eval_word_sweep(w, s, rho, bound);
    for (std::uint64_t alpha = 0; alpha < bound; ++alpha)
        if (sweep[alpha] && *sweep[alpha] < bound)
            out.emplace_back(alpha, *sweep[alpha]);
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> eval_full_relation(
    std::span<const Letter> letters, const GenericState& s, const GroundAssignment& rho) {
    std::ptrdiff_t rightmost = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(letters.size()) - 1; i >= 0; --i) {
        if (letters[i].kind != LetterKind::Ground) {
            rightmost = i;
            break;
        }
    }
    if (rightmost < 0)
        throw InvalidSpec("full relation requires a generic letter");

    // Letters right of the rightmost generic are ground, hence invertible:
    // each pair available at that step determines at most one start point.
    const auto suffix = letters.subspan(static_cast<std::size_t>(rightmost) + 1);
    const ExactPerm suffix_inv = eval_ground_word(suffix, rho).inverse();

    const Letter& pivot = letters[static_cast<std::size_t>(rightmost)];
    const PartialInj& inj = state_of(s, pivot.name);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& [arg, val] : inj.pairs()) {
        const std::uint64_t entry = pivot.exp > 0 ? arg : val;
        const std::uint64_t alpha = suffix_inv.apply(entry);
        const auto beta = eval_sequence(letters, s, rho, alpha);
        if (beta)
            out.emplace_back(alpha, *beta);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> eval_full_relation(
    const Word& w, const GenericState& s, const GroundAssignment& rho) {
    return eval_full_relation(std::span<const Letter>(w.letters()), s, rho);
}

ExactPerm eval_ground_word(std::span<const Letter> letters, const GroundAssignment& rho) {
    ExactPerm acc;  // identity
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        if (it->kind != LetterKind::Ground)
            throw InvalidSpec("ground evaluation hit a generic letter");
        acc = compose(rho.perm(it->name, it->exp), acc);
    }
    return acc;
}

ExactPerm eval_ground_word(const Word& w, const GroundAssignment& rho) {
    return eval_ground_word(std::span<const Letter>(w.letters()), rho);
}

bool word_is_ground_only(const Word& w) {
    return std::all_of(w.letters().begin(), w.letters().end(),
                       [](const Letter& l) { return l.kind == LetterKind::Ground; });
}

FixedPointReport word_fixed_points(const Word& w, const GenericState& s,
                                   const GroundAssignment& rho) {
    if (w.is_empty())
        throw EmptyWord("fixed points of the empty word");
    if (word_is_ground_only(w)) {
        const ExactPerm p = eval_ground_word(w, rho);
        if (p.is_identity()) {
            FixedPointReport report;
            report.kind = FixedPointReport::Kind::IdentityOnDomain;
            report.period = 1;
            report.witness_residues = {0};
            return report;
        }
        return p.fixed_points();
    }
    FixedPointReport report;
    report.kind = FixedPointReport::Kind::Finite;
    for (const auto& [alpha, beta] : eval_full_relation(w, s, rho))
        if (alpha == beta)
            report.finite_points.insert(alpha);
    return report;
}

std::vector<std::uint64_t> word_fixed_point_list(const Word& w, const GenericState& s,
                                                 const GroundAssignment& rho) {
    const FixedPointReport report = word_fixed_points(w, s, rho);
    if (report.kind != FixedPointReport::Kind::Finite)
        throw InvalidSpec("word has infinitely many fixed points");
    return std::vector<std::uint64_t>(report.finite_points.begin(), report.finite_points.end());
}

} // namespace cofin
