#include <doctest.h>

#include <random>

#include "cofin/analysis.hpp"
#include "cofin/forcing.hpp"
#include "helpers.hpp"

using namespace cofin;
using namespace cofin::tests;

namespace {

Letter gen(const std::string& n, int e = 1) { return Letter{LetterKind::Generic, n, e}; }
Letter grd(const std::string& n, int e = 1) { return Letter{LetterKind::Ground, n, e}; }

const WordVerdict* verdict_of(const Certificate& cert, const Word& w) {
    for (const auto& [word, v] : cert.verdicts)
        if (word == w)
            return &v;
    return nullptr;
}

PeriodicMap evens_up() {
    return PeriodicMap({}, {std::optional<std::int64_t>(1), std::nullopt});
}

} // namespace

TEST_CASE("cofinitary certificate for an involution") {
    GroundAssignment rho;
    rho.set("b", b2());
    const Certificate cert = cofinitary_certificate(rho, 2);
    CHECK(cert.passed);
    CHECK(cert.verdicts.size() == 4);  // b, b^-1, bb, b^-1 b^-1

    const auto* vb = verdict_of(cert, Word{grd("b")});
    REQUIRE(vb != nullptr);
    CHECK(vb->kind == WordVerdict::Kind::Finite);
    CHECK(vb->fixed_points.empty());

    const auto* vbb = verdict_of(cert, Word{grd("b"), grd("b")});
    REQUIRE(vbb != nullptr);
    CHECK(vbb->kind == WordVerdict::Kind::Identity);
    CHECK(cert.relations.size() == 2);  // bb and its inverse
}

TEST_CASE("identity generator fails") {
    GroundAssignment rho;
    rho.set("i", ExactPerm::identity());
    const Certificate cert = cofinitary_certificate(rho, 1);
    CHECK(!cert.passed);
    const auto* vi = verdict_of(cert, Word{grd("i")});
    REQUIRE(vi != nullptr);
    CHECK(vi->kind == WordVerdict::Kind::Infinite);
}

TEST_CASE("certificate verdicts agree with brute scans") {
    GroundAssignment rho;
    rho.set("b", b2());
    rho.set("c", b3cycle());
    const Certificate cert = cofinitary_certificate(rho, 6);
    for (const auto& [word, v] : cert.verdicts) {
        const ExactPerm p = eval_ground_word(word, rho);
        for (const std::uint64_t bound :
             {p.head_len() + 4 * p.period(), p.head_len() + 8 * p.period()}) {
            std::set<std::uint64_t> scanned;
            for (std::uint64_t n = 0; n < bound; ++n)
                if (p.apply(n) == n)
                    scanned.insert(n);
            switch (v.kind) {
            case WordVerdict::Kind::Identity:
                CHECK(scanned.size() == bound);
                break;
            case WordVerdict::Kind::Finite:
                CHECK(scanned == std::set<std::uint64_t>(v.fixed_points.begin(),
                                                         v.fixed_points.end()));
                break;
            case WordVerdict::Kind::Infinite:
                CHECK(scanned.size() >= 4);
                break;
            }
        }
    }
}

TEST_CASE("parallel kernel equals the serial reference") {
    GroundAssignment rho;
    rho.set("b", b2());
    rho.set("c", b3cycle());
    rho.set("z", zshift());
    for (const std::uint64_t depth : {1ull, 3ull, 5ull})
        CHECK(cofinitary_certificate(rho, depth) == cofinitary_certificate_serial(rho, depth));
}

TEST_CASE("hitable certificate basics") {
    const PeriodicMap f = evens_up();

    GroundAssignment trivial;
    const Certificate pass = hitable_certificate(f, trivial, 3);
    CHECK(pass.passed);
    // x^2 has empty domain and classifies as finite.
    const auto* xx = verdict_of(pass, Word{gen("x"), gen("x")});
    REQUIRE(xx != nullptr);
    CHECK(xx->kind == WordVerdict::Kind::Finite);
    CHECK(xx->fixed_points.empty());

    GroundAssignment with_b;
    with_b.set("b", b2());
    const Certificate fail = hitable_certificate(f, with_b, 3);
    CHECK(!fail.passed);  // f is b2 restricted to the evens

    const Certificate empty_fail = hitable_certificate(PeriodicMap::empty_map(), trivial, 3);
    CHECK(!empty_fail.passed);
}

TEST_CASE("hitable certificate is monotone in depth") {
    const PeriodicMap f = evens_up();
    GroundAssignment rho;
    rho.set("z", zshift());
    std::vector<bool> passed;
    for (std::uint64_t depth = 1; depth <= 4; ++depth)
        passed.push_back(hitable_certificate(f, rho, depth).passed);
    for (std::size_t i = 0; i + 1 < passed.size(); ++i)
        if (passed[i + 1])
            CHECK(passed[i]);
}

TEST_CASE("certified maps never exhaust the agreement search") {
    std::mt19937_64 rng(4242);
    const PeriodicMap f = evens_up();
    GroundAssignment rho;
    rho.set("z", zshift());
    REQUIRE(hitable_certificate(f, rho, 3).passed);

    const std::vector<Letter> alphabet = {gen("a"), grd("z")};
    const auto pool = enumerate_good(alphabet, 3);
    for (int trial = 0; trial < 30; ++trial) {
        Condition c = Condition::free_condition();
        for (int i = 0; i < 3; ++i)
            c = c.with_word(pool[rng() % pool.size()]);
        for (int i = 0; i < 4; ++i) {
            const std::uint64_t x = rng() % 40;
            const std::uint64_t y = rng() % 40;
            if (!c.inj("a").defined_at(x) && !c.inj("a").takes_value(y))
                c = c.with_pair("a", x, y);
        }
        const std::uint64_t floor = rng() % 16;
        const Condition hit =
            extend_hit(c, rho, DenseSpec::function_hit("a", f, floor), 1 << 16);
        CHECK(meets(hit, DenseSpec::function_hit("a", f, floor)));
        CHECK(leq(hit, c, rho));
    }
}

TEST_CASE("spectrum over state prefixes") {
    GroundAssignment rho;
    rho.set("b", b2());

    std::vector<GenericState> prefixes;
    GenericState s;
    prefixes.push_back(s);
    s["a"] = PartialInj({{0, 2}});
    prefixes.push_back(s);
    s["a"] = s["a"].with(3, 4);
    prefixes.push_back(s);

    // Ground-only word: constant histogram.
    const auto ground_counts = fixed_point_spectrum(Word{grd("b"), grd("b")}, prefixes, rho, 64);
    CHECK(ground_counts == std::vector<std::uint64_t>{64, 64, 64});

    // No pair of the state is a fixed pair, so the counts stay zero.
    const auto a_counts = fixed_point_spectrum(Word{gen("a")}, prefixes, rho, 64);
    CHECK(a_counts == std::vector<std::uint64_t>{0, 0, 0});

    s["a"] = s["a"].with(9, 9);
    prefixes.push_back(s);
    const auto with_fixed = fixed_point_spectrum(Word{gen("a")}, prefixes, rho, 64);
    CHECK(with_fixed == std::vector<std::uint64_t>{0, 0, 0, 1});
}

TEST_CASE("spectrum along a replayed build") {
    GroundAssignment rho;
    rho.set("b", b2());
    rho.set("z", zshift());

    const Word watched{Letter{LetterKind::Generic, "a", 1}, Letter{LetterKind::Ground, "b", 1}};
    std::vector<DenseSpec> schedule;
    for (std::uint64_t k = 0; k < 5; ++k)
        schedule.push_back(DenseSpec::domain_hit("a", k));
    const std::size_t add_stage = schedule.size();
    schedule.push_back(DenseSpec::word_add(watched));
    for (std::uint64_t k = 5; k < 20; ++k) {
        schedule.push_back(DenseSpec::domain_hit("a", k));
        schedule.push_back(DenseSpec::range_hit("a", k));
    }
    const RunTrace trace = generic_run(Condition::free_condition(), rho, schedule, 1 << 16);

    std::vector<GenericState> prefixes;
    for (std::size_t i = 0; i <= trace.stages.size(); ++i)
        prefixes.push_back(replay_condition(trace, i).state);
    const auto counts = fixed_point_spectrum(watched, prefixes, rho, 512);
    // Frozen after the word joins the promise set.
    for (std::size_t i = add_stage + 1; i + 1 < counts.size(); ++i)
        CHECK(counts[i + 1] == counts[i]);
}
