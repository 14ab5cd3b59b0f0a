#include "cofin/stage.hpp"

#include <algorithm>

namespace cofin {

namespace {

GroundAssignment localized_ground(const GroundAssignment& rho, const PeriodicSet& piece) {
    GroundAssignment local;
    for (const auto& [name, perm] : rho.all()) {
        const PeriodicMap as_map = PeriodicMap::from_perm(perm);
        if (!(map_preimage_of(as_map, piece) == piece))
            throw UnsupportedDescriptor("ground permutation " + name +
                                        " does not respect a partition piece");
        local.set(name, conjugate_through_enumeration(as_map, piece).to_exact_perm());
    }
    return local;
}

std::vector<DenseSpec> base_schedule(const GroundAssignment& local_rho,
                                     const StageStepParams& params) {
    std::vector<Letter> alphabet{Letter{LetterKind::Generic, "a", 1}};
    for (const std::string& name : local_rho.names())
        alphabet.push_back(Letter{LetterKind::Ground, name, 1});
    std::vector<DenseSpec> schedule;
    for (const Word& w : enumerate_good(alphabet, params.word_len))
        schedule.push_back(DenseSpec::word_add(w));
    for (std::uint64_t alpha = 0; alpha < params.alpha_range; ++alpha) {
        schedule.push_back(DenseSpec::domain_hit("a", alpha));
        schedule.push_back(DenseSpec::range_hit("a", alpha));
    }
    return schedule;
}

PieceBuild run_piece(std::uint64_t orbit, const GroundAssignment& local_rho,
                     std::vector<DenseSpec> schedule, std::uint64_t search_bound) {
    PieceBuild build;
    build.piece_orbit = orbit;
    build.schedule = std::move(schedule);
    build.trace =
        generic_run(Condition::free_condition(), local_rho, build.schedule, search_bound);
    return build;
}

/// Appends one requirement per round, the floor always one past the last
/// witness, so every round adds a fresh agreement (or target pair).
void append_escalating_hits(PieceBuild& build, const GroundAssignment& local_rho,
                            const DenseSpec& proto, std::uint64_t rounds,
                            std::uint64_t search_bound) {
    Condition current = build.trace.final_condition;
    for (std::uint64_t k = 0; k < rounds; ++k) {
        DenseSpec spec = proto;
        spec.floor = 0;
        for (const auto& [x, y] : current.inj(spec.name).pairs()) {
            const bool counts = proto.kind == DenseSpec::Kind::FunctionHit
                                    ? proto.fn.apply(x) == std::optional<std::uint64_t>(y)
                                    : proto.target.member(x) && proto.target.member(y);
            if (counts)
                spec.floor = std::max(spec.floor, x + 1);
        }
        const Condition next = extend_hit(current, local_rho, spec, search_bound);
        build.trace.stages.push_back(delta_between(current, next, build.schedule.size()));
        build.schedule.push_back(spec);
        build.trace.schedule.push_back(spec);
        current = next;
    }
    build.trace.final_condition = current;
}

} // namespace

StageStepReport stage_step(const PartitionSpec& partition, const PeriodicMap& f,
                           const GroundAssignment& rho, const StageStepParams& params) {
    if (partition.kind() != PartitionSpec::Kind::Mixed)
        throw UnsupportedDescriptor("stage step needs a mixed partition");
    const auto& unbounded = partition.unbounded_pieces();
    const auto& bounded = partition.bounded_pieces();
    if (unbounded.empty())
        throw UnsupportedDescriptor("stage step needs an unbounded piece");

    StageStepReport report;

    // How f interacts with the pieces decides the stage shape: an
    // unbounded self-respecting part gives direct agreement hits (case 2),
    // an unbounded crossing between two pieces is redirected through the
    // crossing (case 3), otherwise plain fresh-generator builds (case 1).
    std::optional<std::uint64_t> self_piece;
    PeriodicSet self_domain;
    for (std::uint64_t j = 0; j < unbounded.size(); ++j) {
        const PeriodicSet d = set_intersect(unbounded[j], map_preimage_of(f, unbounded[j]));
        if (d.is_infinite()) {
            self_piece = j;
            self_domain = d;
            break;
        }
    }
    std::optional<std::pair<std::uint64_t, std::uint64_t>> crossing;
    PeriodicSet crossing_domain;
    if (!self_piece) {
        for (std::uint64_t g = 0; g < unbounded.size() && !crossing; ++g) {
            for (std::uint64_t x = 0; x < unbounded.size() && !crossing; ++x) {
                if (g == x)
                    continue;
                const PeriodicSet d =
                    set_intersect(unbounded[g], map_preimage_of(f, unbounded[x]));
                if (d.is_infinite()) {
                    crossing = {{g, x}};
                    crossing_domain = d;
                }
            }
        }
    }

    std::vector<std::optional<PieceBuild>> builds(unbounded.size());

    if (self_piece) {
        report.case_id = 2;
        report.case_piece = *self_piece;
        const std::uint64_t j = *self_piece;
        const GroundAssignment local_rho = localized_ground(rho, unbounded[j]);
        const PeriodicMap f_local =
            conjugate_through_enumeration(f.restrict_domain(self_domain), unbounded[j]);
        report.certificate = hitable_certificate(f_local, local_rho, params.depth);
        report.certificate_passed = report.certificate.passed;
        builds[j] = run_piece(bounded.size() + j, local_rho, base_schedule(local_rho, params),
                              params.search_bound);
        if (report.certificate_passed) {
            append_escalating_hits(*builds[j], local_rho,
                                   DenseSpec::function_hit("a", f_local, 0), params.hits,
                                   params.search_bound);
        } else {
            report.notes.push_back("agreement hits skipped: map not hitable at this depth");
        }
        builds[j]->pairs =
            push_pairs_into_set(builds[j]->trace.final_condition.inj("a"), unbounded[j]);
    } else if (crossing) {
        report.case_id = 3;
        const auto [g, x] = *crossing;
        report.case_piece = g;
        report.case_piece_other = x;

        // Target piece first: make the build meet the image of f often.
        const GroundAssignment local_rho_x = localized_ground(rho, unbounded[x]);
        const PeriodicSet image = map_image_of(f.restrict_domain(crossing_domain), crossing_domain);
        const PeriodicSet image_local = localize_set(image, unbounded[x]);
        builds[x] = run_piece(bounded.size() + x, local_rho_x,
                              base_schedule(local_rho_x, params), params.search_bound);
        append_escalating_hits(*builds[x], local_rho_x,
                               DenseSpec::target_hit("a", image_local, 0), params.hits,
                               params.search_bound);
        builds[x]->pairs =
            push_pairs_into_set(builds[x]->trace.final_condition.inj("a"), unbounded[x]);

        // Composite back through f; agreement hits only when it certifies.
        const PeriodicMap h_x = PeriodicMap::from_pairs(builds[x]->pairs);
        const PeriodicMap composite =
            compose(f.inverse(), compose(h_x, f.restrict_domain(crossing_domain)));
        const GroundAssignment local_rho_g = localized_ground(rho, unbounded[g]);
        const PeriodicMap composite_local =
            conjugate_through_enumeration(composite, unbounded[g]);
        report.certificate = hitable_certificate(composite_local, local_rho_g, params.depth);
        report.certificate_passed = report.certificate.passed;
        builds[g] = run_piece(bounded.size() + g, local_rho_g,
                              base_schedule(local_rho_g, params), params.search_bound);
        if (report.certificate_passed) {
            append_escalating_hits(*builds[g], local_rho_g,
                                   DenseSpec::function_hit("a", composite_local, 0), params.hits,
                                   params.search_bound);
        } else {
            report.notes.push_back(
                "composite not hitable at this depth; extension already blocks the map");
        }
        builds[g]->pairs =
            push_pairs_into_set(builds[g]->trace.final_condition.inj("a"), unbounded[g]);
    } else {
        report.case_id = 1;
    }

    for (std::uint64_t j = 0; j < unbounded.size(); ++j) {
        if (builds[j])
            continue;
        const GroundAssignment local_rho = localized_ground(rho, unbounded[j]);
        builds[j] = run_piece(bounded.size() + j, local_rho, base_schedule(local_rho, params),
                              params.search_bound);
        builds[j]->pairs =
            push_pairs_into_set(builds[j]->trace.final_condition.inj("a"), unbounded[j]);
    }

    // Bounded pieces copy a ground generator (the identity when there is
    // none); finitely many fixed points are harmless there.
    for (const auto& piece : bounded) {
        ExactPerm g = ExactPerm::identity();
        for (const auto& [name, perm] : rho.all()) {
            const bool invariant = std::all_of(piece.begin(), piece.end(), [&](std::uint64_t n) {
                return piece.count(perm.apply(n)) != 0;
            });
            if (invariant) {
                g = perm;
                break;
            }
        }
        for (const std::uint64_t n : piece)
            report.bounded_pairs = report.bounded_pairs.with(n, g.apply(n));
    }

    report.h = report.bounded_pairs;
    for (auto& build : builds) {
        for (const auto& [a, v] : build->pairs.pairs())
            report.h = report.h.with(a, v);
        report.pieces.push_back(std::move(*build));
    }
    return report;
}

} // namespace cofin
