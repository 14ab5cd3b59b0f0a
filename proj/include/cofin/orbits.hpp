#ifndef COFIN_ORBITS_HPP
#define COFIN_ORBITS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cofin/periodic.hpp"
#include "cofin/perm.hpp"

namespace cofin {

/// Partition of the naturals into orbits, in one of the catalog shapes.
class PartitionSpec {
public:
    enum class Kind { Singletons, Blocks, Residues, ExplicitPeriodic, Mixed };

    static PartitionSpec singletons();
    static PartitionSpec blocks(std::uint64_t size);
    static PartitionSpec residues(std::uint64_t modulus);
    /// Orbit indices assigned explicitly below the head bound, then by
    /// residue; finitely many orbits.
    static PartitionSpec explicit_periodic(std::vector<std::uint64_t> head_assign,
                                           std::vector<std::uint64_t> window_assign);
    /// Finitely many pieces: bounded ones as finite sets (listed first),
    /// unbounded ones as periodic sets. Must partition the naturals.
    static PartitionSpec mixed(std::vector<std::set<std::uint64_t>> bounded,
                               std::vector<PeriodicSet> unbounded);

    Kind kind() const { return kind_; }

    std::uint64_t orbit_of(std::uint64_t n) const;
    std::uint64_t min_of_orbit(std::uint64_t index) const;

    /// Number of orbits; nullopt when infinite.
    std::optional<std::uint64_t> orbit_count() const;

    /// Least orbit index whose orbit avoids `used`. Throws NoDisjointOrbit.
    std::uint64_t next_disjoint_orbit(const std::set<std::uint64_t>& used) const;

    // Mixed-kind accessors.
    const std::vector<std::set<std::uint64_t>>& bounded_pieces() const { return bounded_; }
    const std::vector<PeriodicSet>& unbounded_pieces() const { return unbounded_; }

    std::uint64_t param() const { return param_; }
    const std::vector<std::uint64_t>& head_assign() const { return head_assign_; }
    const std::vector<std::uint64_t>& window_assign() const { return window_assign_; }

private:
    PartitionSpec() = default;

    Kind kind_ = Kind::Singletons;
    std::uint64_t param_ = 0;  // block size / modulus
    std::vector<std::uint64_t> head_assign_;
    std::vector<std::uint64_t> window_assign_;
    std::vector<std::set<std::uint64_t>> bounded_;
    std::vector<PeriodicSet> unbounded_;
};

/// One step of the greedy construction: connect the least uncovered value
/// to the minimum of the least untouched orbit.
PartialInj greedy_step(const PartialInj& h, const PartitionSpec& p);

PartialInj greedy_build(const PartitionSpec& p, std::uint64_t stages);

/// Build that stops early when every orbit is touched.
struct GreedyResult {
    PartialInj h;
    std::uint64_t stages_done = 0;
    bool exhausted = false;
};
GreedyResult greedy_build_partial(const PartitionSpec& p, std::uint64_t stages);

/// Graph on orbit indices with an edge (and multiplicity) for each pair of
/// the map crossing two distinct orbits.
struct OrbitGraph {
    std::set<std::uint64_t> vertices;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> edges;
};

OrbitGraph orbit_graph(const PartialInj& h, const PartitionSpec& p);

struct ClaimsReport {
    bool acyclic = true;
    bool one_edge_per_pair = true;
    std::vector<std::string> violations;

    bool all_hold() const { return acyclic && one_edge_per_pair; }
};

/// Checks that no two orbits are connected twice and that the simple graph
/// underneath is acyclic.
ClaimsReport check_claims(const PartialInj& h, const PartitionSpec& p);

} // namespace cofin

#endif
