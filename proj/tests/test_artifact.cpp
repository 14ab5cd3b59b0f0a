#include <doctest.h>

#include "cofin/artifact.hpp"
#include "helpers.hpp"

using namespace cofin;
using namespace cofin::tests;

namespace {

Letter gen(const std::string& n, int e = 1) { return Letter{LetterKind::Generic, n, e}; }
Letter grd(const std::string& n, int e = 1) { return Letter{LetterKind::Ground, n, e}; }

} // namespace

TEST_CASE("value round trips") {
    for (const ExactPerm& p : catalog())
        CHECK(perm_from_json(perm_to_json(p)) == p);

    const PartialInj inj({{0, 3}, {7, 1}});
    CHECK(pinj_from_json(pinj_to_json(inj)) == inj);

    const PeriodicSet t = PeriodicSet::multiples(3);
    CHECK(pset_from_json(pset_to_json(t)) == t);
    const PeriodicSet fin = PeriodicSet::finite({2, 9});
    CHECK(pset_from_json(pset_to_json(fin)) == fin);

    const PeriodicMap f({std::optional<std::uint64_t>(5), std::nullopt},
                        {std::nullopt, std::optional<std::int64_t>(3)});
    CHECK(pmap_from_json(pmap_to_json(f)) == f);

    const GroundAssignment rho = ground_bcz();
    const GroundAssignment back = ground_from_json(ground_to_json(rho));
    CHECK(back.all() == rho.all());

    const FiniteGroupTable s3 = FiniteGroupTable::symmetric3();
    CHECK(*group_from_json(group_to_json(s3)) == s3);
    CHECK(*group_from_json(Json{{"kind", "cyclic"}, {"order", 4}}) ==
          FiniteGroupTable::cyclic(4));
}

TEST_CASE("condition and trace round trip") {
    const GroundAssignment rho = ground_bz();
    std::vector<DenseSpec> schedule = {
        DenseSpec::word_add(Word{gen("a"), grd("b")}),
        DenseSpec::domain_hit("a", 0),
        DenseSpec::range_hit("a", 5),
        DenseSpec::function_hit(
            "a", PeriodicMap({}, {std::optional<std::int64_t>(1), std::nullopt, std::nullopt}),
            2),
        DenseSpec::target_hit("a", PeriodicSet::multiples(3), 1),
    };
    const RunTrace trace = generic_run(Condition::free_condition(), rho, schedule, 1 << 16);

    const Json j = trace_to_json(trace, rho);
    const TraceArtifact back = trace_from_json(j);
    CHECK(back.trace == trace);
    CHECK(back.rho.all() == rho.all());

    // Deterministic bytes.
    CHECK(artifact_text(j) == artifact_text(trace_to_json(back.trace, back.rho)));
}

TEST_CASE("embed trace round trip") {
    const GroundAssignment rho;
    auto z3 = std::make_shared<const FiniteGroupTable>(FiniteGroupTable::cyclic(3));
    std::vector<DenseSpec> schedule = {
        DenseSpec::relation_closure({"g1"}),
        DenseSpec::domain_hit("g1", 0),
        DenseSpec::domain_hit("g2", 0),
    };
    const RunTrace trace =
        generic_run(Condition::embed_condition(z3), rho, schedule, 1 << 16);
    const TraceArtifact back = trace_from_json(trace_to_json(trace, rho));
    CHECK(back.trace == trace);
}

TEST_CASE("schema version is enforced") {
    const std::string path = "/tmp/cofin_test_schema.json";
    write_artifact(path, Json{{"schema_version", 1}, {"kind", "certificate"}});
    CHECK(read_artifact(path).at("kind") == "certificate");
    write_artifact(path, Json{{"schema_version", 2}, {"kind", "certificate"}});
    CHECK_THROWS_AS(read_artifact(path), ParseError);
    write_artifact(path, Json{{"kind", "certificate"}});
    CHECK_THROWS_AS(read_artifact(path), ParseError);
}

TEST_CASE("config loading") {
    const Json cfg_json{
        {"schema_version", 1},
        {"ground",
         Json::array({Json{{"name", "b"}, {"kind", "block"}, {"size", 2},
                           {"pattern", Json::array({1, 0})}},
                      Json{{"name", "z"},
                           {"kind", "head_periodic"},
                           {"head", Json::array({2, 0})},
                           {"window", Json::array({2, -2})}}})},
        {"generics", Json::array({"a"})},
        {"poset", "free"},
        {"schedule", Json::array({Json{{"kind", "word_add"}, {"word", "a b^-1"}},
                                  Json{{"kind", "domain_hit"}, {"name", "a"}, {"arg", 3}}})},
        {"stages", 7},
        {"depth", 4}};
    const RunConfig cfg = config_from_json(cfg_json);
    CHECK(cfg.rho.all().at("b") == tests::b2());
    CHECK(cfg.rho.all().at("z") == tests::zshift());
    CHECK(cfg.schedule.size() == 2);
    CHECK(cfg.schedule[0].word == Word{gen("a"), grd("b", -1)});
    CHECK(cfg.stages == 7);
    CHECK(cfg.depth == 4);

    // Colliding name spaces are rejected.
    Json collide = cfg_json;
    collide["generics"] = Json::array({"b"});
    CHECK_THROWS_AS(config_from_json(collide), ParseError);

    // Embed configs need a group.
    Json embed = cfg_json;
    embed["poset"] = "embed";
    embed["schedule"] = Json::array();
    CHECK_THROWS_AS(config_from_json(embed), ParseError);
    embed["group"] = Json{{"kind", "cyclic"}, {"order", 3}};
    embed["generics"] = Json::array();
    CHECK(config_from_json(embed).group->order() == 3);
}

TEST_CASE("partition descriptors") {
    for (const auto& p :
         {PartitionSpec::singletons(), PartitionSpec::blocks(3), PartitionSpec::residues(5),
          PartitionSpec::explicit_periodic({0, 0, 1}, {2, 1})}) {
        const PartitionSpec back = partition_from_json(partition_to_json(p));
        CHECK(back.kind() == p.kind());
        for (std::uint64_t n = 0; n < 24; ++n)
            CHECK(back.orbit_of(n) == p.orbit_of(n));
    }
    const auto mixed = PartitionSpec::mixed(
        {{0, 1}}, {PeriodicSet::sampled(2, 2, [](std::uint64_t n) { return n >= 2 && n % 2 == 0; }),
                   PeriodicSet::sampled(2, 2, [](std::uint64_t n) { return n >= 2 && n % 2 == 1; })});
    const PartitionSpec back = partition_from_json(partition_to_json(mixed));
    for (std::uint64_t n = 0; n < 24; ++n)
        CHECK(back.orbit_of(n) == mixed.orbit_of(n));
}
