#ifndef COFIN_ARTIFACT_HPP
#define COFIN_ARTIFACT_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "cofin/analysis.hpp"
#include "cofin/forcing.hpp"
#include "cofin/orbits.hpp"
#include "cofin/stage.hpp"

namespace cofin {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Resolves bare names in word syntax to their letter kind. Names must be
/// unambiguous across the three spaces.
struct NameContext {
    std::set<std::string> generics;
    std::set<std::string> ground;
    std::set<std::string> group_elems;

    LetterKind kind_of(const std::string& name) const;
    static NameContext merged(std::set<std::string> generics, std::set<std::string> ground,
                              std::set<std::string> group_elems);
};

Json perm_to_json(const ExactPerm& p);
ExactPerm perm_from_json(const Json& j);

Json pinj_to_json(const PartialInj& s);
PartialInj pinj_from_json(const Json& j);

Json pset_to_json(const PeriodicSet& s);
PeriodicSet pset_from_json(const Json& j);

Json pmap_to_json(const PeriodicMap& m);
PeriodicMap pmap_from_json(const Json& j);

Json ground_to_json(const GroundAssignment& rho);
GroundAssignment ground_from_json(const Json& j);

Json group_to_json(const FiniteGroupTable& h);
std::shared_ptr<const FiniteGroupTable> group_from_json(const Json& j);

Json condition_to_json(const Condition& c);
Condition condition_from_json(const Json& j, const NameContext& ctx,
                              std::shared_ptr<const FiniteGroupTable> group);

Json spec_to_json(const DenseSpec& s);
DenseSpec spec_from_json(const Json& j, const NameContext& ctx);

Json delta_to_json(const StageDelta& d);
StageDelta delta_from_json(const Json& j, const NameContext& ctx);

/// Self-contained trace artifact: ground assignment, name spaces, group,
/// schedule and per-stage deltas.
Json trace_to_json(const RunTrace& trace, const GroundAssignment& rho);

struct TraceArtifact {
    RunTrace trace;
    GroundAssignment rho;
};
TraceArtifact trace_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);

Json partition_to_json(const PartitionSpec& p);
PartitionSpec partition_from_json(const Json& j);

Json claims_to_json(const ClaimsReport& r);
Json orbit_graph_to_json(const OrbitGraph& g);

Json stage_report_to_json(const StageStepReport& r, const GroundAssignment& rho);

/// Serializes with sorted keys and a trailing newline so equal values give
/// byte-identical files.
std::string artifact_text(const Json& j);
void write_artifact(const std::string& path, const Json& j);

/// Parses and enforces the schema version. Throws ParseError.
Json read_artifact(const std::string& path);

/// Run configuration for the command-line front end.
struct RunConfig {
    GroundAssignment rho;
    std::set<std::string> generics;
    PosetKind poset = PosetKind::Free;
    std::shared_ptr<const FiniteGroupTable> group;
    std::optional<PartitionSpec> partition;
    std::vector<DenseSpec> schedule;
    std::uint64_t stages = 100;
    std::uint64_t search_bound = 65536;
    std::uint64_t scan_bound = 256;
    std::uint64_t depth = 3;
    std::optional<PeriodicMap> fn;
    StageStepParams stage_params;

    NameContext names() const;
};

RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

} // namespace cofin

#endif
