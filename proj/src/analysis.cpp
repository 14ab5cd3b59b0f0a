#include "cofin/analysis.hpp"

#include <algorithm>

namespace cofin {

WordVerdict classify_report(const FixedPointReport& report) {
    WordVerdict v;
    v.period = report.period;
    switch (report.kind) {
    case FixedPointReport::Kind::IdentityOnDomain:
        v.kind = WordVerdict::Kind::Identity;
        break;
    case FixedPointReport::Kind::Infinite:
        v.kind = WordVerdict::Kind::Infinite;
        v.residues.assign(report.witness_residues.begin(), report.witness_residues.end());
        break;
    case FixedPointReport::Kind::Finite:
        v.kind = WordVerdict::Kind::Finite;
        v.fixed_points.assign(report.finite_points.begin(), report.finite_points.end());
        break;
    }
    return v;
}

namespace {

std::vector<Letter> ground_alphabet(const GroundAssignment& rho) {
    std::vector<Letter> alphabet;
    for (const std::string& name : rho.names())
        alphabet.push_back(Letter{LetterKind::Ground, name, 1});
    return alphabet;
}

WordVerdict ground_word_verdict(const Word& w, const GroundAssignment& rho) {
    const ExactPerm p = eval_ground_word(w, rho);
    if (p.is_identity()) {
        // A single letter naming the identity permutation is a degenerate
        // generator, not a relation: it keeps its infinite fixed set.
        if (w.length() > 1) {
            WordVerdict v;
            v.kind = WordVerdict::Kind::Identity;
            v.period = 1;
            return v;
        }
    }
    return classify_report(p.fixed_points());
}

Certificate assemble_cofinitary(const GroundAssignment& rho, std::uint64_t depth,
                                const std::vector<Word>& words,
                                std::vector<WordVerdict> verdicts) {
    Certificate cert;
    cert.subject = "cofinitary";
    cert.depth = depth;
    cert.passed = true;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (verdicts[i].kind == WordVerdict::Kind::Identity)
            cert.relations.push_back(words[i]);
        if (verdicts[i].kind == WordVerdict::Kind::Infinite) {
            cert.passed = false;
            cert.counterexamples.push_back("word " + words[i].str() +
                                           " fixes a whole residue class");
        }
        cert.verdicts.emplace_back(words[i], std::move(verdicts[i]));
    }
    (void)rho;
    return cert;
}

} // namespace

Certificate cofinitary_certificate(const GroundAssignment& rho, std::uint64_t depth) {
    const std::vector<Word> words = enumerate_reduced(ground_alphabet(rho), depth);
    std::vector<WordVerdict> verdicts(words.size());
    const std::int64_t n = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i)
        verdicts[static_cast<std::size_t>(i)] =
            ground_word_verdict(words[static_cast<std::size_t>(i)], rho);
    return assemble_cofinitary(rho, depth, words, std::move(verdicts));
}

Certificate cofinitary_certificate_serial(const GroundAssignment& rho, std::uint64_t depth) {
    const std::vector<Word> words = enumerate_reduced(ground_alphabet(rho), depth);
    std::vector<WordVerdict> verdicts(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        verdicts[i] = ground_word_verdict(words[i], rho);
    return assemble_cofinitary(rho, depth, words, std::move(verdicts));
}

Certificate hitable_certificate(const PeriodicMap& f, const GroundAssignment& rho,
                                std::uint64_t depth) {
    Certificate cert;
    cert.subject = "hitable";
    cert.depth = depth;
    cert.passed = true;

    // The map must differ infinitely from every word-image up to the
    // depth, the identity included.
    if (!f.differs_infinitely(ExactPerm::identity())) {
        cert.passed = false;
        cert.counterexamples.push_back("agrees with the identity up to finitely many points");
    }
    for (const Word& g : enumerate_reduced(ground_alphabet(rho), depth)) {
        if (!f.differs_infinitely(eval_ground_word(g, rho))) {
            cert.passed = false;
            cert.counterexamples.push_back("agrees with " + g.str() +
                                           " up to finitely many points");
        }
    }

    // Words in one extra variable, evaluated with f substituted.
    std::vector<Letter> alphabet = ground_alphabet(rho);
    alphabet.insert(alphabet.begin(), Letter{LetterKind::Generic, "x", 1});
    const PeriodicMap f_inv = f.inverse();
    for (const Word& w : enumerate_reduced(alphabet, depth)) {
        if (!w.contains_base(LetterKind::Generic, "x")) {
            cert.verdicts.emplace_back(w, ground_word_verdict(w, rho));
            continue;
        }
        PeriodicMap acc = PeriodicMap::identity();
        for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
            if (it->kind == LetterKind::Generic)
                acc = compose(it->exp > 0 ? f : f_inv, acc);
            else
                acc = compose(PeriodicMap::from_perm(rho.perm(it->name, it->exp)), acc);
        }
        WordVerdict v = classify_report(acc.fixed_points());
        if (v.kind == WordVerdict::Kind::Identity)
            cert.relations.push_back(w);
        if (v.kind == WordVerdict::Kind::Infinite) {
            cert.passed = false;
            cert.counterexamples.push_back("substituted word " + w.str() +
                                           " fixes a whole residue class");
        }
        cert.verdicts.emplace_back(w, std::move(v));
    }
    return cert;
}

std::vector<std::uint64_t> fixed_point_spectrum(const Word& w,
                                                const std::vector<GenericState>& prefixes,
                                                const GroundAssignment& rho,
                                                std::uint64_t bound) {
    std::vector<std::uint64_t> counts;
    counts.reserve(prefixes.size());
    for (const GenericState& s : prefixes) {
        std::uint64_t count = 0;
        if (word_is_ground_only(w)) {
            const ExactPerm p = eval_ground_word(w, rho);
            for (std::uint64_t n = 0; n < bound; ++n)
                count += p.apply(n) == n ? 1 : 0;
        } else {
            for (const auto& [alpha, beta] : eval_full_relation(w, s, rho))
                count += (alpha == beta && alpha < bound) ? 1 : 0;
        }
        counts.push_back(count);
    }
    return counts;
}

} // namespace cofin
