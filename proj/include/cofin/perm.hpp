#ifndef COFIN_PERM_HPP
#define COFIN_PERM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cofin/errors.hpp"

namespace cofin {

/// Classification of the fixed points of a (possibly partial) map on the
/// naturals. `Infinite` is witnessed by displacement-zero residues of the
/// periodic tail; `Finite` carries the exact fixed-point set;
/// `IdentityOnDomain` means every defined point is fixed.
struct FixedPointReport {
    enum class Kind { IdentityOnDomain, Finite, Infinite };

    Kind kind = Kind::Finite;
    std::set<std::uint64_t> finite_points;     // exact, when kind == Finite
    std::set<std::uint64_t> witness_residues;  // residues mod `period`, when Infinite
    std::set<std::uint64_t> head_points;       // fixed points below the head bound
    std::uint64_t period = 0;                  // tail period the residues refer to

    bool is_infinite() const { return kind == Kind::Infinite; }
};

/// Total permutation of the naturals with a finite head table and a
/// periodic displacement tail: n maps to head[n] for n < head size, and to
/// n + window[(n - head size) mod period] beyond. Values are kept in
/// canonical form (minimal period, shortest head), so extensional equality
/// coincides with memberwise equality.
class ExactPerm {
public:
    ExactPerm() = default;  // identity

    ExactPerm(std::vector<std::uint64_t> head, std::vector<std::int64_t> window);

    static ExactPerm identity() { return ExactPerm(); }

    /// Permutes each consecutive block of `size` values by `pattern`
    /// (a permutation of 0..size-1).
    static ExactPerm block(std::uint64_t size, const std::vector<std::uint64_t>& pattern);

    /// Finite table of pairs applied over the identity. Arguments and
    /// values must form the same set.
    static ExactPerm table_over_identity(
        const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

    std::uint64_t apply(std::uint64_t n) const {
        if (n < head_.size())
            return head_[n];
        const std::uint64_t r = (n - head_.size()) % window_.size();
        return static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + window_[r]);
    }

    std::uint64_t operator()(std::uint64_t n) const { return apply(n); }

    ExactPerm inverse() const;

    /// n -> p(q(n))
    friend ExactPerm compose(const ExactPerm& p, const ExactPerm& q);

    std::uint64_t head_len() const { return head_.size(); }
    std::uint64_t period() const { return static_cast<std::uint64_t>(window_.size()); }
    const std::vector<std::uint64_t>& head() const { return head_; }
    const std::vector<std::int64_t>& window() const { return window_; }

    bool is_identity() const { return head_.empty() && window_.size() == 1 && window_[0] == 0; }

    bool operator==(const ExactPerm&) const = default;

    FixedPointReport fixed_points() const;

private:
    void validate() const;
    void canonicalize();

    std::vector<std::uint64_t> head_;
    std::vector<std::int64_t> window_ = {0};
};

ExactPerm compose(const ExactPerm& p, const ExactPerm& q);

/// Finite injective partial map on the naturals.
class PartialInj {
public:
    PartialInj() = default;

    explicit PartialInj(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

    /// Copy with (arg, val) added. Throws DuplicateArg / DuplicateVal.
    PartialInj with(std::uint64_t arg, std::uint64_t val) const;

    std::optional<std::uint64_t> apply(std::uint64_t arg) const;
    std::optional<std::uint64_t> apply_inv(std::uint64_t val) const;

    bool defined_at(std::uint64_t arg) const { return fwd_.count(arg) != 0; }
    bool takes_value(std::uint64_t val) const { return inv_.count(val) != 0; }
    bool contains(std::uint64_t arg, std::uint64_t val) const;

    std::size_t size() const { return fwd_.size(); }
    bool empty() const { return fwd_.empty(); }

    const std::map<std::uint64_t, std::uint64_t>& pairs() const { return fwd_; }

    /// True if every pair of `other` is a pair of *this.
    bool contains_all(const PartialInj& other) const;

    /// Least natural outside the argument set / value set.
    std::uint64_t mex_args() const;
    std::uint64_t mex_vals() const;

    std::set<std::uint64_t> args() const;
    std::set<std::uint64_t> vals() const;

    bool operator==(const PartialInj&) const = default;

private:
    std::map<std::uint64_t, std::uint64_t> fwd_;
    std::map<std::uint64_t, std::uint64_t> inv_;
};

} // namespace cofin

#endif
