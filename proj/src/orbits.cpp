#include "cofin/orbits.hpp"

#include <algorithm>

namespace cofin {

PartitionSpec PartitionSpec::singletons() {
    PartitionSpec p;
    p.kind_ = Kind::Singletons;
    return p;
}

PartitionSpec PartitionSpec::blocks(std::uint64_t size) {
    if (size == 0)
        throw UnsupportedDescriptor("block size must be positive");
    PartitionSpec p;
    p.kind_ = Kind::Blocks;
    p.param_ = size;
    return p;
}

PartitionSpec PartitionSpec::residues(std::uint64_t modulus) {
    if (modulus == 0)
        throw UnsupportedDescriptor("modulus must be positive");
    PartitionSpec p;
    p.kind_ = Kind::Residues;
    p.param_ = modulus;
    return p;
}

PartitionSpec PartitionSpec::explicit_periodic(std::vector<std::uint64_t> head_assign,
                                               std::vector<std::uint64_t> window_assign) {
    if (window_assign.empty())
        throw UnsupportedDescriptor("window assignment must be non-empty");
    PartitionSpec p;
    p.kind_ = Kind::ExplicitPeriodic;
    p.head_assign_ = std::move(head_assign);
    p.window_assign_ = std::move(window_assign);
    std::uint64_t max_index = 0;
    for (const std::uint64_t i : p.head_assign_)
        max_index = std::max(max_index, i);
    for (const std::uint64_t i : p.window_assign_)
        max_index = std::max(max_index, i);
    p.param_ = max_index + 1;
    // Indices must be contiguous so every orbit is non-empty.
    std::vector<bool> seen(p.param_, false);
    for (const std::uint64_t i : p.head_assign_)
        seen[i] = true;
    for (const std::uint64_t i : p.window_assign_)
        seen[i] = true;
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw UnsupportedDescriptor("orbit indices must be contiguous");
    return p;
}

PartitionSpec PartitionSpec::mixed(std::vector<std::set<std::uint64_t>> bounded,
                                   std::vector<PeriodicSet> unbounded) {
    PartitionSpec p;
    p.kind_ = Kind::Mixed;
    p.bounded_ = std::move(bounded);
    p.unbounded_ = std::move(unbounded);
    for (const auto& b : p.bounded_)
        if (b.empty())
            throw UnsupportedDescriptor("bounded piece must be non-empty");
    PeriodicSet covered = PeriodicSet::finite({});
    for (const auto& b : p.bounded_) {
        const PeriodicSet piece = PeriodicSet::finite(b);
        if (!set_intersect(covered, piece).is_empty())
            throw UnsupportedDescriptor("pieces are not disjoint");
        covered = set_union(covered, piece);
    }
    for (const auto& u : p.unbounded_) {
        if (!u.is_infinite())
            throw UnsupportedDescriptor("unbounded piece must be infinite");
        if (!set_intersect(covered, u).is_empty())
            throw UnsupportedDescriptor("pieces are not disjoint");
        covered = set_union(covered, u);
    }
    if (!set_complement(covered).is_empty())
        throw UnsupportedDescriptor("pieces do not cover the naturals");
    return p;
}

std::uint64_t PartitionSpec::orbit_of(std::uint64_t n) const {
    switch (kind_) {
    case Kind::Singletons:
        return n;
    case Kind::Blocks:
        return n / param_;
    case Kind::Residues:
        return n % param_;
    case Kind::ExplicitPeriodic:
        if (n < head_assign_.size())
            return head_assign_[n];
        return window_assign_[(n - head_assign_.size()) % window_assign_.size()];
    case Kind::Mixed:
        for (std::size_t i = 0; i < bounded_.size(); ++i)
            if (bounded_[i].count(n))
                return i;
        for (std::size_t i = 0; i < unbounded_.size(); ++i)
            if (unbounded_[i].member(n))
                return bounded_.size() + i;
        throw UnsupportedDescriptor("value not covered by the partition");
    }
    throw UnsupportedDescriptor("bad partition kind");
}

std::uint64_t PartitionSpec::min_of_orbit(std::uint64_t index) const {
    switch (kind_) {
    case Kind::Singletons:
        return index;
    case Kind::Blocks:
        return index * param_;
    case Kind::Residues:
        if (index >= param_)
            throw NoDisjointOrbit("orbit index out of range");
        return index;
    case Kind::ExplicitPeriodic: {
        if (index >= param_)
            throw NoDisjointOrbit("orbit index out of range");
        for (std::uint64_t n = 0; n < head_assign_.size() + window_assign_.size(); ++n)
            if (orbit_of(n) == index)
                return n;
        throw NoDisjointOrbit("orbit is empty");
    }
    case Kind::Mixed: {
        if (index < bounded_.size())
            return *bounded_[index].begin();
        const std::size_t j = index - bounded_.size();
        if (j >= unbounded_.size())
            throw NoDisjointOrbit("orbit index out of range");
        return *unbounded_[j].min();
    }
    }
    throw UnsupportedDescriptor("bad partition kind");
}

std::optional<std::uint64_t> PartitionSpec::orbit_count() const {
    switch (kind_) {
    case Kind::Singletons:
    case Kind::Blocks:
        return std::nullopt;
    case Kind::Residues:
    case Kind::ExplicitPeriodic:
        return param_;
    case Kind::Mixed:
        return bounded_.size() + unbounded_.size();
    }
    return std::nullopt;
}

std::uint64_t PartitionSpec::next_disjoint_orbit(const std::set<std::uint64_t>& used) const {
    std::set<std::uint64_t> used_orbits;
    for (const std::uint64_t n : used)
        used_orbits.insert(orbit_of(n));
    const auto count = orbit_count();
    for (std::uint64_t index = 0;; ++index) {
        if (count && index >= *count)
            throw NoDisjointOrbit("every orbit meets the used set");
        if (!used_orbits.count(index))
            return index;
    }
}

PartialInj greedy_step(const PartialInj& h, const PartitionSpec& p) {
    const std::uint64_t xi = std::min(h.mex_args(), h.mex_vals());
    std::set<std::uint64_t> used = h.args();
    const std::set<std::uint64_t> vals = h.vals();
    used.insert(vals.begin(), vals.end());
    used.insert(xi);
    const std::uint64_t eta = p.next_disjoint_orbit(used);
    const std::uint64_t zeta = p.min_of_orbit(eta);
    if (!h.defined_at(xi))
        return h.with(xi, zeta);
    return h.with(zeta, xi);
}

namespace {

/// Incremental form of the step rule for long builds: the covered sets,
/// their least gaps and the touched orbits are carried across stages.
struct GreedyEngine {
    const PartitionSpec& p;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::set<std::uint64_t> dom, ran, used_orbits;
    std::uint64_t mex_dom = 0, mex_ran = 0, free_orbit = 0;

    explicit GreedyEngine(const PartitionSpec& p) : p(p) {}

    void step() {
        while (dom.count(mex_dom))
            ++mex_dom;
        while (ran.count(mex_ran))
            ++mex_ran;
        const std::uint64_t xi = std::min(mex_dom, mex_ran);
        const std::uint64_t xi_orbit = p.orbit_of(xi);

        while (used_orbits.count(free_orbit))
            ++free_orbit;
        std::uint64_t eta = free_orbit;
        while (used_orbits.count(eta) || eta == xi_orbit)
            ++eta;
        const auto count = p.orbit_count();
        if (count && eta >= *count)
            throw NoDisjointOrbit("every orbit meets the used set");
        const std::uint64_t zeta = p.min_of_orbit(eta);

        if (!dom.count(xi))
            pairs.emplace_back(xi, zeta);
        else
            pairs.emplace_back(zeta, xi);
        dom.insert(pairs.back().first);
        ran.insert(pairs.back().second);
        used_orbits.insert(xi_orbit);
        used_orbits.insert(eta);
    }
};

} // namespace

GreedyResult greedy_build_partial(const PartitionSpec& p, std::uint64_t stages) {
    GreedyEngine engine(p);
    GreedyResult result;
    for (std::uint64_t i = 0; i < stages; ++i) {
        try {
            engine.step();
        } catch (const NoDisjointOrbit&) {
            result.exhausted = true;
            break;
        }
        ++result.stages_done;
    }
    result.h = PartialInj(engine.pairs);
    return result;
}

PartialInj greedy_build(const PartitionSpec& p, std::uint64_t stages) {
    GreedyEngine engine(p);
    for (std::uint64_t i = 0; i < stages; ++i)
        engine.step();
    return PartialInj(engine.pairs);
}

OrbitGraph orbit_graph(const PartialInj& h, const PartitionSpec& p) {
    OrbitGraph graph;
    for (const auto& [arg, val] : h.pairs()) {
        const std::uint64_t a = p.orbit_of(arg);
        const std::uint64_t b = p.orbit_of(val);
        graph.vertices.insert(a);
        graph.vertices.insert(b);
        if (a == b)
            continue;
        const auto key = std::minmax(a, b);
        graph.edges[{key.first, key.second}] += 1;
    }
    return graph;
}

namespace {

struct DisjointSets {
    std::map<std::uint64_t, std::uint64_t> parent;

    std::uint64_t find(std::uint64_t x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        while (it->second != x) {
            x = it->second;
            it = parent.find(x);
        }
        return x;
    }

    /// Returns false when both were already connected.
    bool unite(std::uint64_t a, std::uint64_t b) {
        const std::uint64_t ra = find(a);
        const std::uint64_t rb = find(b);
        if (ra == rb)
            return false;
        parent[ra] = rb;
        return true;
    }
};

} // namespace

ClaimsReport check_claims(const PartialInj& h, const PartitionSpec& p) {
    ClaimsReport report;
    const OrbitGraph graph = orbit_graph(h, p);
    for (const auto& [edge, count] : graph.edges) {
        if (count > 1) {
            report.one_edge_per_pair = false;
            report.violations.push_back("orbits " + std::to_string(edge.first) + " and " +
                                        std::to_string(edge.second) + " connected " +
                                        std::to_string(count) + " times");
        }
    }
    DisjointSets sets;
    for (const auto& [edge, count] : graph.edges) {
        (void)count;
        if (!sets.unite(edge.first, edge.second)) {
            report.acyclic = false;
            report.violations.push_back("cycle through orbits " + std::to_string(edge.first) +
                                        " and " + std::to_string(edge.second));
        }
    }
    return report;
}

} // namespace cofin
