#ifndef COFIN_TESTS_HELPERS_HPP
#define COFIN_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "cofin/eval.hpp"
#include "cofin/perm.hpp"

namespace cofin::tests {

inline ExactPerm b2() { return ExactPerm::block(2, {1, 0}); }
inline ExactPerm b3cycle() { return ExactPerm::block(3, {1, 2, 0}); }

/// Single two-sided infinite chain: 0 -> 2 -> 4 -> ... fed by the odds.
inline ExactPerm zshift() { return ExactPerm({2, 0}, {2, -2}); }

/// Fixes exactly 7: head permutes [0,8) fixing only 7, tail swaps pairs.
inline ExactPerm fix7() { return ExactPerm({1, 0, 3, 2, 6, 4, 5, 7}, {1, -1}); }

inline std::vector<ExactPerm> catalog() {
    return {ExactPerm::identity(), b2(), b3cycle(), zshift(), fix7(),
            ExactPerm::table_over_identity({{0, 3}, {3, 0}})};
}

/// Deterministic mix of catalog members.
inline ExactPerm random_perm(std::mt19937_64& rng, int factors = 3) {
    const auto cat = catalog();
    ExactPerm p = ExactPerm::identity();
    std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(factors));
    for (int i = 0; i < n; ++i) {
        ExactPerm q = cat[pick(rng)];
        if (flip(rng))
            q = q.inverse();
        p = compose(p, q);
    }
    return p;
}

/// Brute-force bijectivity check on [0, bound).
inline bool looks_bijective(const ExactPerm& p, std::uint64_t bound) {
    std::vector<int> hits(bound, 0);
    for (std::uint64_t n = 0; n < bound; ++n) {
        const std::uint64_t v = p.apply(n);
        if (v < bound)
            hits[v] += 1;
    }
    // Every value below bound minus the largest displacement must be hit
    // exactly once.
    std::int64_t slack = 0;
    for (const std::int64_t d : p.window())
        slack = std::max(slack, d > 0 ? d : -d);
    slack += static_cast<std::int64_t>(p.head_len());
    for (std::uint64_t v = 0; v + static_cast<std::uint64_t>(slack) < bound; ++v)
        if (hits[v] != 1)
            return false;
    return true;
}

inline GroundAssignment ground_bz() {
    GroundAssignment rho;
    rho.set("b", b2());
    rho.set("z", zshift());
    return rho;
}

inline GroundAssignment ground_bcz() {
    GroundAssignment rho;
    rho.set("b", b2());
    rho.set("c", b3cycle());
    rho.set("z", zshift());
    return rho;
}

} // namespace cofin::tests

#endif
