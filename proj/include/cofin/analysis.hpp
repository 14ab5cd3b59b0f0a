#ifndef COFIN_ANALYSIS_HPP
#define COFIN_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cofin/eval.hpp"
#include "cofin/periodic.hpp"
#include "cofin/words.hpp"

namespace cofin {

/// Verdict for one word: evaluates to the identity (on its domain), has a
/// finite fixed-point set, or fixes a whole residue class.
struct WordVerdict {
    enum class Kind { Identity, Finite, Infinite };

    Kind kind = Kind::Finite;
    std::vector<std::uint64_t> fixed_points;  // Finite
    std::vector<std::uint64_t> residues;      // Infinite
    std::uint64_t period = 0;

    bool operator==(const WordVerdict&) const = default;
};

/// Depth-bounded certificate: verdicts for every reduced non-empty word of
/// length <= depth over the declared alphabet, in enumeration order.
/// Passing at a depth never claims the unbounded property.
struct Certificate {
    std::string subject;
    std::uint64_t depth = 0;
    std::vector<std::pair<Word, WordVerdict>> verdicts;
    bool passed = false;
    std::vector<Word> relations;  // words with an identity verdict
    std::vector<std::string> counterexamples;

    bool operator==(const Certificate&) const = default;
};

WordVerdict classify_report(const FixedPointReport& report);

/// Every word-image over the assignment is the identity or finite-fixed.
/// Identity verdicts are collected as relations (freeness evidence).
/// The word verdicts are independent; this entry point evaluates them in
/// parallel when OpenMP is enabled.
Certificate cofinitary_certificate(const GroundAssignment& rho, std::uint64_t depth);

/// Serial reference implementation; kept verbatim for testing the
/// parallel kernel against it.
Certificate cofinitary_certificate_serial(const GroundAssignment& rho, std::uint64_t depth);

/// Certifies that f differs infinitely from every word-image of the
/// assignment up to the depth (including the identity), and that every
/// word in the extra variable substituted by f is identity-on-domain or
/// finite-fixed.
Certificate hitable_certificate(const PeriodicMap& f, const GroundAssignment& rho,
                                std::uint64_t depth);

/// Fixed points of the word (below `bound`) under each state prefix.
std::vector<std::uint64_t> fixed_point_spectrum(const Word& w,
                                                const std::vector<GenericState>& prefixes,
                                                const GroundAssignment& rho,
                                                std::uint64_t bound);

} // namespace cofin

#endif
