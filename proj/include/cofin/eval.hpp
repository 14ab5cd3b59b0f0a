#ifndef COFIN_EVAL_HPP
#define COFIN_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cofin/perm.hpp"
#include "cofin/words.hpp"

namespace cofin {

/// Assignment of ground names to permutations; inverses are precomputed so
/// letters with exponent -1 apply in constant time.
class GroundAssignment {
public:
    GroundAssignment() = default;

    void set(const std::string& name, const ExactPerm& perm);

    bool has(const std::string& name) const { return fwd_.count(name) != 0; }

    /// Throws UnknownLetter for undeclared names.
    const ExactPerm& perm(const std::string& name, int exp) const;

    std::vector<std::string> names() const;
    const std::map<std::string, ExactPerm>& all() const { return fwd_; }

    bool operator==(const GroundAssignment& o) const { return fwd_ == o.fwd_; }

private:
    std::map<std::string, ExactPerm> fwd_;
    std::map<std::string, ExactPerm> inv_;
};

/// Interpretation of generic (and group-element) names by finite partial
/// injections. Absent names denote the empty map.
using GenericState = std::map<std::string, PartialInj>;

/// True if the state of `sub` is contained pairwise in `super`.
bool state_contains(const GenericState& super, const GenericState& sub);

/// Evaluates one letter at a value; generic letters go through the state,
/// ground letters through the assignment.
std::optional<std::uint64_t> eval_letter(const Letter& l, const GenericState& s,
                                         const GroundAssignment& rho, std::uint64_t v);

/// Rightmost-first evaluation of a letter sequence (not necessarily
/// reduced): the last letter applies first.
std::optional<std::uint64_t> eval_sequence(std::span<const Letter> letters,
                                           const GenericState& s, const GroundAssignment& rho,
                                           std::uint64_t alpha);

/// Evaluation of a reduced word as a partial injection, at one point.
std::optional<std::uint64_t> eval_word(const Word& w, const GenericState& s,
                                       const GroundAssignment& rho, std::uint64_t alpha);

/// All of eval_word(w, s, rho, alpha) for alpha < bound, in one sweep.
std::vector<std::optional<std::uint64_t>> eval_word_sweep(const Word& w, const GenericState& s,
                                                          const GroundAssignment& rho,
                                                          std::uint64_t bound);

/// Brute-force restriction of the evaluation relation to [0, bound)^2.
std::vector<std::pair<std::uint64_t, std::uint64_t>> eval_relation(const Word& w,
                                                                   const GenericState& s,
                                                                   const GroundAssignment& rho,
                                                                   std::uint64_t bound);

/// The exact, finite evaluation relation of a letter sequence containing at
/// least one generic letter: every defined path passes through the
/// rightmost generic letter, so the relation is enumerated from its pairs.
std::vector<std::pair<std::uint64_t, std::uint64_t>> eval_full_relation(
    std::span<const Letter> letters, const GenericState& s, const GroundAssignment& rho);

std::vector<std::pair<std::uint64_t, std::uint64_t>> eval_full_relation(
    const Word& w, const GenericState& s, const GroundAssignment& rho);

/// Composition of the ground permutations named by a ground-only sequence.
ExactPerm eval_ground_word(std::span<const Letter> letters, const GroundAssignment& rho);
ExactPerm eval_ground_word(const Word& w, const GroundAssignment& rho);

bool word_is_ground_only(const Word& w);

/// Exact fixed-point classification of the evaluation of a reduced
/// non-empty word: ground-only words classify as permutations, words with
/// a generic letter have finite domain and enumerate exactly.
FixedPointReport word_fixed_points(const Word& w, const GenericState& s,
                                   const GroundAssignment& rho);

/// Exact fixed points as a set (finite case of word_fixed_points); for
/// ground-only words this requires the fixed-point set to be finite.
std::vector<std::uint64_t> word_fixed_point_list(const Word& w, const GenericState& s,
                                                 const GroundAssignment& rho);

} // namespace cofin

#endif
