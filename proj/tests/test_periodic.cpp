#include <doctest.h>

#include <random>

#include "cofin/periodic.hpp"
#include "helpers.hpp"

using namespace cofin;
using namespace cofin::tests;

namespace {

/// The canonical agreement target: 2k -> 2k+1.
PeriodicMap evens_up() {
    return PeriodicMap({}, {std::optional<std::int64_t>(1), std::nullopt});
}

} // namespace

TEST_CASE("periodic set basics") {
    const PeriodicSet t = PeriodicSet::multiples(3);
    CHECK(t.member(0));
    CHECK(t.member(9));
    CHECK(!t.member(10));
    CHECK(t.is_infinite());
    CHECK(t.min() == 0);
    CHECK(t.next(4) == 6);
    CHECK(t.rank(10) == 4);  // 0 3 6 9
    CHECK(t.kth(4) == 12);

    const PeriodicSet fin = PeriodicSet::finite({1, 5});
    CHECK(!fin.is_infinite());
    CHECK(fin.rank(6) == 2);
    CHECK(!fin.next(6).has_value());
}

TEST_CASE("periodic set algebra") {
    const PeriodicSet evens = PeriodicSet::residue_class(2, 0);
    const PeriodicSet thirds = PeriodicSet::multiples(3);
    const PeriodicSet both = set_intersect(evens, thirds);
    for (std::uint64_t n = 0; n < 60; ++n)
        CHECK(both.member(n) == (n % 6 == 0));
    const PeriodicSet either = set_union(evens, thirds);
    for (std::uint64_t n = 0; n < 60; ++n)
        CHECK(either.member(n) == (n % 2 == 0 || n % 3 == 0));
    const PeriodicSet comp = set_complement(evens);
    for (std::uint64_t n = 0; n < 20; ++n)
        CHECK(comp.member(n) == (n % 2 == 1));
    CHECK(set_intersect(evens, comp).is_empty());
}

TEST_CASE("periodic map application and domain") {
    const PeriodicMap f = evens_up();
    CHECK(f.apply(4) == 5);
    CHECK(!f.apply(5).has_value());
    CHECK(f.domain() == PeriodicSet::residue_class(2, 0));
    CHECK(f.range() == PeriodicSet::residue_class(2, 1));
    CHECK(!f.is_total());
    CHECK(PeriodicMap::identity().is_total());
}

TEST_CASE("periodic map inverse and composition") {
    const PeriodicMap f = evens_up();
    const PeriodicMap inv = f.inverse();
    CHECK(inv.apply(5) == 4);
    CHECK(!inv.apply(4).has_value());
    for (std::uint64_t n = 0; n < 40; n += 2)
        CHECK(inv.apply(*f.apply(n)) == n);

    // x^2 with f substituted has empty domain: odd values leave dom(f).
    const PeriodicMap ff = compose(f, f);
    CHECK(ff.is_empty_map());

    const PeriodicMap bf = compose(PeriodicMap::from_perm(b2()), f);
    for (std::uint64_t n = 0; n < 20; ++n) {
        if (n % 2 == 0)
            CHECK(bf.apply(n) == n);  // b2(2k+1) = 2k
        else
            CHECK(!bf.apply(n).has_value());
    }
    const auto report = bf.fixed_points();
    CHECK(report.kind == FixedPointReport::Kind::IdentityOnDomain);
}

TEST_CASE("difference against permutations") {
    const PeriodicMap f = evens_up();
    CHECK(f.differs_infinitely(ExactPerm::identity()));
    CHECK(!f.differs_infinitely(b2()));  // f is b2 restricted to evens
    CHECK(PeriodicMap::empty_map().is_empty_map());
    CHECK(!PeriodicMap::empty_map().differs_infinitely(ExactPerm::identity()));
}

TEST_CASE("maps built from pairs and restriction") {
    const PartialInj inj({{0, 4}, {7, 2}});
    const PeriodicMap m = PeriodicMap::from_pairs(inj);
    CHECK(m.apply(0) == 4);
    CHECK(m.apply(7) == 2);
    CHECK(!m.apply(1).has_value());
    CHECK(!m.domain().is_infinite());

    const PeriodicMap f = evens_up();
    const PeriodicMap g = f.restrict_domain(PeriodicSet::multiples(4));
    CHECK(g.apply(4) == 5);
    CHECK(!g.apply(2).has_value());
}

TEST_CASE("transport through an enumeration") {
    const PeriodicSet evens = PeriodicSet::residue_class(2, 0);
    // 4k -> 4k+2 inside the evens becomes 2j -> 2j+1 on indices.
    const PeriodicMap on_evens =
        PeriodicMap({}, {std::optional<std::int64_t>(2), std::nullopt, std::nullopt, std::nullopt});
    const PeriodicMap local = conjugate_through_enumeration(on_evens, evens);
    CHECK(local == evens_up());

    // And the double-block swap becomes the plain block swap.
    const ExactPerm parity_preserving = ExactPerm::block(4, {2, 3, 0, 1});
    const PeriodicMap local2 =
        conjugate_through_enumeration(PeriodicMap::from_perm(parity_preserving), evens);
    CHECK(local2.to_exact_perm() == b2());

    // Pairs transported back land inside the set.
    const PartialInj local_pairs({{0, 1}, {3, 2}});
    const PartialInj global = push_pairs_into_set(local_pairs, evens);
    CHECK(global.contains(0, 2));
    CHECK(global.contains(6, 4));
}

TEST_CASE("set transport and images") {
    const PeriodicSet evens = PeriodicSet::residue_class(2, 0);
    const PeriodicSet odds = PeriodicSet::residue_class(2, 1);
    const PeriodicMap f = evens_up();
    CHECK(map_preimage_of(f, odds) == evens);
    CHECK(map_preimage_of(f, evens).is_empty());
    CHECK(map_image_of(f, evens) == odds);

    const PeriodicSet sixths = PeriodicSet::multiples(6);
    const PeriodicSet local = localize_set(sixths, evens);  // indices of 6k among evens
    CHECK(local == PeriodicSet::multiples(3));
}

TEST_CASE("random closure of partial map algebra") {
    std::mt19937_64 rng(7771);
    const std::vector<PeriodicMap> base = {
        evens_up(), PeriodicMap::from_perm(b2()), PeriodicMap::from_perm(zshift()),
        PeriodicMap::from_perm(b3cycle()).restrict_domain(PeriodicSet::multiples(3))};
    for (int trial = 0; trial < 40; ++trial) {
        const PeriodicMap& p = base[rng() % base.size()];
        const PeriodicMap& q = base[rng() % base.size()];
        const PeriodicMap c = compose(p, q);
        const std::uint64_t bound = c.head_len() + 4 * c.period() + 8;
        for (std::uint64_t n = 0; n < bound; ++n) {
            const auto mid = q.apply(n);
            std::optional<std::uint64_t> direct;
            if (mid)
                direct = p.apply(*mid);
            CHECK(c.apply(n) == direct);
        }
        // Inverse round trip on the domain.
        const PeriodicMap inv = c.inverse();
        for (std::uint64_t n = 0; n < bound; ++n)
            if (const auto v = c.apply(n))
                CHECK(inv.apply(*v) == n);
    }
}
