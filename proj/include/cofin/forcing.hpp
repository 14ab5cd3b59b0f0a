#ifndef COFIN_FORCING_HPP
#define COFIN_FORCING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cofin/eval.hpp"
#include "cofin/periodic.hpp"
#include "cofin/words.hpp"

namespace cofin {

enum class PosetKind { Free, Embed };

/// A forcing condition: finite generic state plus a finite promise set of
/// good words whose fixed points the extension order freezes. Embed kind
/// additionally carries the group being embedded and requires the pure
/// group relation words in the promise set to evaluate inside the identity.
struct Condition {
    GenericState state;
    std::vector<Word> words;  // sorted, duplicate-free
    PosetKind kind = PosetKind::Free;
    std::shared_ptr<const FiniteGroupTable> group;  // Embed kind only

    static Condition free_condition();
    static Condition embed_condition(std::shared_ptr<const FiniteGroupTable> group);

    const PartialInj& inj(const std::string& name) const;
    bool has_word(const Word& w) const;

    Condition with_word(const Word& w) const;
    Condition with_pair(const std::string& name, std::uint64_t arg, std::uint64_t val) const;

    std::size_t pair_count() const;

    bool operator==(const Condition& o) const;
};

/// Structural and order-relevant validity of a condition.
bool is_condition(const Condition& c, const GroundAssignment& rho);

/// Extension order: stronger has more state and words, and adds no fixed
/// point to any promised word of the weaker condition. Exact.
bool leq(const Condition& stronger, const Condition& weaker, const GroundAssignment& rho);

enum class Direction { Domain, Range };

/// The finite set of values that cannot complete a new pair at `anchor`
/// without breaking injectivity or adding a fixed point to a promised
/// word. For Domain the new pair is (anchor, value), for Range it is
/// (value, anchor). Throws AlreadyDefined if anchor is already used, and
/// UnboundedForbiddenSet if a promised word makes the set infinite.
std::set<std::uint64_t> forbidden_values(const Condition& c, const GroundAssignment& rho,
                                         const std::string& name, std::uint64_t anchor,
                                         Direction direction);

/// One dense-set requirement a build stage must meet.
struct DenseSpec {
    enum class Kind { DomainHit, RangeHit, WordAdd, TargetHit, FunctionHit, RelationClosure };

    Kind kind = Kind::DomainHit;
    std::string name;                // letter the requirement refers to
    std::uint64_t arg = 0;           // DomainHit / RangeHit point
    std::uint64_t floor = 0;         // TargetHit / FunctionHit: witness arg >= floor
    Word word;                       // WordAdd
    PeriodicSet target;              // TargetHit
    PeriodicMap fn;                  // FunctionHit
    std::vector<std::string> names;  // RelationClosure

    static DenseSpec domain_hit(std::string name, std::uint64_t arg);
    static DenseSpec range_hit(std::string name, std::uint64_t arg);
    static DenseSpec word_add(Word w);
    static DenseSpec target_hit(std::string name, PeriodicSet target, std::uint64_t floor);
    static DenseSpec function_hit(std::string name, PeriodicMap fn, std::uint64_t floor);
    static DenseSpec relation_closure(std::vector<std::string> names);

    bool operator==(const DenseSpec&) const = default;
};

/// Whether the condition already meets the requirement.
bool meets(const Condition& c, const DenseSpec& spec);

/// Deterministic completion under group relations: for each named element
/// the closure contains exactly the pairs forced by words that multiply to
/// its inverse, evaluated over the input state. Embed kind only; the group
/// identity element cannot be closed over.
Condition apply_relations(const Condition& c, const GroundAssignment& rho,
                          const std::vector<std::string>& names);

/// Extends the condition to meet the requirement with the least admissible
/// witness. Deterministic; throws SearchExhausted when no witness exists
/// below the bound.
Condition extend_hit(const Condition& c, const GroundAssignment& rho, const DenseSpec& spec,
                     std::uint64_t search_bound);

/// Pairs and words added by one stage.
struct StageDelta {
    std::size_t spec_index = 0;
    std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>> pairs_added;
    std::vector<Word> words_added;

    bool operator==(const StageDelta&) const = default;
};

/// Replayable record of a deterministic build.
struct RunTrace {
    Condition initial;
    std::vector<DenseSpec> schedule;
    std::vector<StageDelta> stages;
    Condition final_condition;
    std::uint64_t search_bound = 0;

    bool operator==(const RunTrace&) const = default;
};

/// Folds extend_hit over the schedule, recording per-stage deltas.
RunTrace generic_run(const Condition& initial, const GroundAssignment& rho,
                     const std::vector<DenseSpec>& schedule, std::uint64_t search_bound);

/// Condition reached after replaying a prefix of the trace's deltas.
Condition replay_condition(const RunTrace& trace, std::size_t stages);

/// Computes the delta between two conditions (next extends prev).
StageDelta delta_between(const Condition& prev, const Condition& next, std::size_t spec_index);

} // namespace cofin

#endif
