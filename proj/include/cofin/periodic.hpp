#ifndef COFIN_PERIODIC_HPP
#define COFIN_PERIODIC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "cofin/perm.hpp"

namespace cofin {

/// Eventually periodic subset of the naturals: explicit membership bits
/// below the head bound, then membership by residue. Canonical form
/// (minimal period, shortest head), so == is extensional.
class PeriodicSet {
public:
    PeriodicSet() : residues_{false} {}  // empty

    PeriodicSet(std::vector<bool> head, std::vector<bool> residues);

    static PeriodicSet all();
    static PeriodicSet finite(const std::set<std::uint64_t>& elems);
    static PeriodicSet multiples(std::uint64_t m);
    static PeriodicSet residue_class(std::uint64_t modulus, std::uint64_t r);

    /// Samples membership from `f`, which must be eventually periodic with
    /// the given head bound and period.
    static PeriodicSet sampled(std::uint64_t head_len, std::uint64_t period,
                               const std::function<bool(std::uint64_t)>& f);

    bool member(std::uint64_t n) const {
        if (n < head_.size())
            return head_[n];
        return residues_[(n - head_.size()) % residues_.size()];
    }

    bool is_infinite() const;
    bool is_empty() const;

    std::uint64_t head_len() const { return head_.size(); }
    std::uint64_t period() const { return residues_.size(); }

    /// Members per full period of the tail.
    std::uint64_t tail_density() const;

    std::optional<std::uint64_t> min() const;
    /// Least member >= n, if any.
    std::optional<std::uint64_t> next(std::uint64_t n) const;
    /// Number of members below n.
    std::uint64_t rank(std::uint64_t n) const;
    /// k-th smallest member (0-based). Requires the set to have > k members.
    std::uint64_t kth(std::uint64_t k) const;

    friend PeriodicSet set_union(const PeriodicSet& a, const PeriodicSet& b);
    friend PeriodicSet set_intersect(const PeriodicSet& a, const PeriodicSet& b);
    friend PeriodicSet set_complement(const PeriodicSet& a);

    bool operator==(const PeriodicSet&) const = default;

    const std::vector<bool>& head_bits() const { return head_; }
    const std::vector<bool>& residue_bits() const { return residues_; }

private:
    void canonicalize();

    std::vector<bool> head_;
    std::vector<bool> residues_;
};

PeriodicSet set_union(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet set_intersect(const PeriodicSet& a, const PeriodicSet& b);
PeriodicSet set_complement(const PeriodicSet& a);

/// Partial injective map of the naturals, eventually periodic: explicit
/// optional images below the head bound, then optional displacements by
/// residue. Closed under composition, inverse and domain restriction.
class PeriodicMap {
public:
    PeriodicMap() : window_{std::nullopt} {}  // empty map

    PeriodicMap(std::vector<std::optional<std::uint64_t>> head,
                std::vector<std::optional<std::int64_t>> window);

    static PeriodicMap identity();
    static PeriodicMap empty_map() { return PeriodicMap(); }
    static PeriodicMap from_pairs(const PartialInj& inj);
    static PeriodicMap from_perm(const ExactPerm& perm);

    /// Samples from `f`, which must be a slope-one eventually periodic
    /// partial map with the given head bound and period.
    static PeriodicMap sampled(std::uint64_t head_len, std::uint64_t period,
                               const std::function<std::optional<std::uint64_t>(std::uint64_t)>& f);

    std::optional<std::uint64_t> apply(std::uint64_t n) const {
        if (n < head_.size())
            return head_[n];
        const auto& d = window_[(n - head_.size()) % window_.size()];
        if (!d)
            return std::nullopt;
        return static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + *d);
    }

    PeriodicMap inverse() const;

    /// n -> p(q(n)) where both steps are defined.
    friend PeriodicMap compose(const PeriodicMap& p, const PeriodicMap& q);

    PeriodicMap restrict_domain(const PeriodicSet& s) const;

    PeriodicSet domain() const;
    PeriodicSet range() const;

    bool is_empty_map() const;
    bool is_total() const;

    /// Exact classification of {n : f(n) == n}.
    FixedPointReport fixed_points() const;

    /// True when f(n) != g(n) for infinitely many n in dom(f).
    bool differs_infinitely(const ExactPerm& g) const;

    std::uint64_t head_len() const { return head_.size(); }
    std::uint64_t period() const { return window_.size(); }
    const std::vector<std::optional<std::uint64_t>>& head() const { return head_; }
    const std::vector<std::optional<std::int64_t>>& window() const { return window_; }

    /// Total and surjective maps convert to a permutation.
    ExactPerm to_exact_perm() const;

    bool operator==(const PeriodicMap&) const = default;

private:
    void validate() const;
    void canonicalize();

    std::vector<std::optional<std::uint64_t>> head_;
    std::vector<std::optional<std::int64_t>> window_;
};

PeriodicMap compose(const PeriodicMap& p, const PeriodicMap& q);

/// {n : m(n) defined and m(n) in target}.
PeriodicSet map_preimage_of(const PeriodicMap& m, const PeriodicSet& target);

/// {m(n) : n in dom(m) and n in source}.
PeriodicSet map_image_of(const PeriodicMap& m, const PeriodicSet& source);

/// {k : piece.kth(k) in s}: s transported into the enumeration
/// coordinates of an infinite piece.
PeriodicSet localize_set(const PeriodicSet& s, const PeriodicSet& piece);

/// The map k -> rank_S(m(kth_S(k))): `m` transported through the
/// enumeration of S. Requires dom(m), ran(m) within S.
PeriodicMap conjugate_through_enumeration(const PeriodicMap& m, const PeriodicSet& s);

/// The inverse transport: pairs of a map on enumeration indices pushed
/// forward into S-coordinates.
PartialInj push_pairs_into_set(const PartialInj& local, const PeriodicSet& s);

} // namespace cofin

#endif
