#include <doctest.h>

#include "cofin/stage.hpp"
#include "helpers.hpp"

using namespace cofin;
using namespace cofin::tests;

namespace {

PartitionSpec parity() {
    return PartitionSpec::mixed(
        {}, {PeriodicSet::residue_class(2, 0), PeriodicSet::residue_class(2, 1)});
}

/// 4k -> 4k+2: stays inside the evens.
PeriodicMap quarters_up() {
    return PeriodicMap({}, {std::optional<std::int64_t>(2), std::nullopt, std::nullopt,
                            std::nullopt});
}

/// 2k -> 2k+1: crosses from the evens to the odds.
PeriodicMap evens_up() {
    return PeriodicMap({}, {std::optional<std::int64_t>(1), std::nullopt});
}

} // namespace

TEST_CASE("self-respecting maps take the agreement branch") {
    StageStepParams params;
    params.alpha_range = 4;
    params.word_len = 2;
    params.hits = 5;
    const GroundAssignment rho;  // trivial ground group

    const StageStepReport report = stage_step(parity(), quarters_up(), rho, params);
    CHECK(report.case_id == 2);
    CHECK(report.case_piece == 0);
    CHECK(report.certificate_passed);
    CHECK(report.pieces.size() == 2);

    // The built map respects the pieces.
    const auto p = parity();
    for (const auto& [x, y] : report.h.pairs())
        CHECK(p.orbit_of(x) == p.orbit_of(y));

    // Agreements with f were scheduled and met.
    const PeriodicMap f = quarters_up();
    std::uint64_t agreements = 0;
    for (const auto& [x, y] : report.h.pairs())
        agreements += f.apply(x) == std::optional<std::uint64_t>(y) ? 1 : 0;
    CHECK(agreements >= params.hits);

    // Per-piece traces replay inside their own coordinates.
    for (const PieceBuild& b : report.pieces) {
        CHECK(!b.trace.stages.empty());
        CHECK(b.pairs.size() == b.trace.final_condition.inj("a").size());
    }
}

TEST_CASE("crossing maps are redirected through the target piece") {
    StageStepParams params;
    params.alpha_range = 4;
    params.word_len = 2;
    params.hits = 4;
    const GroundAssignment rho;

    const StageStepReport report = stage_step(parity(), evens_up(), rho, params);
    CHECK(report.case_id == 3);
    CHECK(report.case_piece == 0);
    CHECK(report.case_piece_other == 1);
    // The finite composite cannot certify as hitable, which the report
    // records; the extension still blocks the map.
    CHECK(!report.certificate_passed);
    CHECK(!report.notes.empty());

    // Target hits: the odd-side build meets the image of f in pairs.
    std::uint64_t inside = 0;
    for (const auto& [x, y] : report.h.pairs())
        inside += (x % 2 == 1 && y % 2 == 1) ? 1 : 0;
    CHECK(inside >= params.hits);
    for (const auto& [x, y] : report.h.pairs())
        CHECK(x % 2 == y % 2);
}

TEST_CASE("finite interaction falls back to plain builds") {
    StageStepParams params;
    params.alpha_range = 3;
    params.word_len = 2;
    const GroundAssignment rho;

    const PeriodicMap f = PeriodicMap::from_pairs(PartialInj({{0, 2}, {1, 3}}));
    const StageStepReport report = stage_step(parity(), f, rho, params);
    CHECK(report.case_id == 1);
    CHECK(report.pieces.size() == 2);
    for (const PieceBuild& b : report.pieces)
        CHECK(b.trace.final_condition.inj("a").size() >= params.alpha_range);
}

TEST_CASE("bounded pieces copy a respecting generator") {
    StageStepParams params;
    params.alpha_range = 2;
    params.word_len = 1;
    GroundAssignment rho;
    // Swaps within blocks of four keep parity and fix the bounded piece
    // {0,1,2,3} setwise only if it is a union of blocks; use head values.
    rho.set("p", ExactPerm::block(4, {2, 3, 0, 1}));

    const PartitionSpec mixed = PartitionSpec::mixed(
        {{0, 1, 2, 3}},
        {PeriodicSet::sampled(4, 2, [](std::uint64_t n) { return n >= 4 && n % 2 == 0; }),
         PeriodicSet::sampled(4, 2, [](std::uint64_t n) { return n >= 4 && n % 2 == 1; })});
    const StageStepReport report =
        stage_step(mixed, quarters_up().restrict_domain(PeriodicSet::sampled(
                              4, 4, [](std::uint64_t n) { return n >= 4 && n % 4 == 0; })),
                   rho, params);
    // The bounded piece is covered by the copied generator.
    for (const std::uint64_t n : {0, 1, 2, 3})
        CHECK(report.bounded_pairs.defined_at(n));
    CHECK(report.bounded_pairs.contains(0, 2));
    CHECK(report.bounded_pairs.contains(2, 0));

    // Ground permutations that break a piece are rejected.
    GroundAssignment bad;
    bad.set("b", b2());
    CHECK_THROWS_AS(stage_step(parity(), quarters_up(), bad, StageStepParams{}),
                    UnsupportedDescriptor);
}
