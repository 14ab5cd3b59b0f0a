#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cofin/artifact.hpp"

namespace {

using namespace cofin;

int classify_error(const std::exception& e) {
    if (dynamic_cast<const SearchExhausted*>(&e) || dynamic_cast<const NoDisjointOrbit*>(&e) ||
        dynamic_cast<const UnboundedForbiddenSet*>(&e))
        return 1;
    return 2;
}

int cmd_certify(const std::string& config_path, const std::string& out_path,
                std::uint64_t depth_override) {
    RunConfig cfg = load_config(config_path);
    const std::uint64_t depth = depth_override ? depth_override : cfg.depth;
    const Certificate cert = cofinitary_certificate(cfg.rho, depth);
    if (!out_path.empty())
        write_artifact(out_path, certificate_to_json(cert));
    std::cout << (cert.passed ? "passed" : "failed") << " at depth " << depth << "\n";
    return cert.passed ? 0 : 1;
}

int cmd_hitable(const std::string& config_path, const std::string& out_path,
                std::uint64_t depth_override) {
    RunConfig cfg = load_config(config_path);
    if (!cfg.fn)
        throw ParseError("config has no map f");
    const std::uint64_t depth = depth_override ? depth_override : cfg.depth;
    const Certificate cert = hitable_certificate(*cfg.fn, cfg.rho, depth);
    if (!out_path.empty())
        write_artifact(out_path, certificate_to_json(cert));
    std::cout << (cert.passed ? "passed" : "failed") << " at depth " << depth << "\n";
    return cert.passed ? 0 : 1;
}

int cmd_build_generic(const RunConfig& cfg, const std::string& out_path, std::uint64_t bound) {
    const Condition initial = cfg.poset == PosetKind::Embed
                                  ? Condition::embed_condition(cfg.group)
                                  : Condition::free_condition();
    const RunTrace trace = generic_run(initial, cfg.rho, cfg.schedule, bound);
    if (!out_path.empty())
        write_artifact(out_path, trace_to_json(trace, cfg.rho));
    std::cout << "built " << trace.stages.size() << " stages, "
              << trace.final_condition.pair_count() << " pairs\n";
    return 0;
}

int cmd_build_greedy(const RunConfig& cfg, const std::string& out_path, std::uint64_t stages) {
    if (!cfg.partition)
        throw ParseError("config has no partition");
    const GreedyResult result = greedy_build_partial(*cfg.partition, stages);
    const OrbitGraph graph = orbit_graph(result.h, *cfg.partition);
    const ClaimsReport claims = check_claims(result.h, *cfg.partition);
    Json out{{"schema_version", kSchemaVersion},
             {"kind", "orbit_report"},
             {"partition", partition_to_json(*cfg.partition)},
             {"stages_requested", stages},
             {"stages_done", result.stages_done},
             {"exhausted", result.exhausted},
             {"pairs", pinj_to_json(result.h)},
             {"graph", orbit_graph_to_json(graph)},
             {"claims", claims_to_json(claims)}};
    if (!out_path.empty())
        write_artifact(out_path, out);
    std::cout << "built " << result.stages_done << " stages"
              << (result.exhausted ? " (orbits exhausted)" : "") << "\n";
    if (result.exhausted) {
        std::cerr << "no disjoint orbit at stage " << result.stages_done << "\n";
        return 1;
    }
    return 0;
}

int cmd_build_stage_step(const RunConfig& cfg, const std::string& out_path) {
    if (!cfg.partition)
        throw ParseError("config has no partition");
    if (!cfg.fn)
        throw ParseError("config has no map f");
    StageStepParams params = cfg.stage_params;
    params.search_bound = cfg.search_bound;
    const StageStepReport report = stage_step(*cfg.partition, *cfg.fn, cfg.rho, params);
    if (!out_path.empty())
        write_artifact(out_path, stage_report_to_json(report, cfg.rho));
    std::cout << "case " << report.case_id << ", " << report.h.size() << " pairs\n";
    return 0;
}

int cmd_orbit_graph(const RunConfig& cfg, const std::string& out_path, std::uint64_t stages) {
    if (!cfg.partition)
        throw ParseError("config has no partition");
    const GreedyResult result = greedy_build_partial(*cfg.partition, stages);
    const OrbitGraph graph = orbit_graph(result.h, *cfg.partition);
    const ClaimsReport claims = check_claims(result.h, *cfg.partition);
    Json out{{"schema_version", kSchemaVersion},
             {"kind", "orbit_report"},
             {"partition", partition_to_json(*cfg.partition)},
             {"stages_requested", stages},
             {"stages_done", result.stages_done},
             {"exhausted", result.exhausted},
             {"pairs", pinj_to_json(result.h)},
             {"graph", orbit_graph_to_json(graph)},
             {"claims", claims_to_json(claims)}};
    if (!out_path.empty())
        write_artifact(out_path, out);
    std::cout << (claims.all_hold() ? "claims hold" : "claims violated") << "\n";
    return claims.all_hold() ? 0 : 1;
}

int cmd_verify(const std::string& trace_path) {
    Json j;
    TraceArtifact art;
    std::string original;
    try {
        j = read_artifact(trace_path);
        if (j.value("kind", "") != "run_trace") {
            std::cerr << "not a run trace\n";
            return 2;
        }
        std::ifstream in(trace_path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        original = buf.str();
        art = trace_from_json(j);
    } catch (const std::exception& e) {
        std::cerr << "unreadable: " << e.what() << "\n";
        return 2;
    }

    try {
        if (!is_condition(art.trace.initial, art.rho)) {
            std::cerr << "initial condition invalid\n";
            return 1;
        }
        const RunTrace replay =
            generic_run(art.trace.initial, art.rho, art.trace.schedule, art.trace.search_bound);
        if (replay.stages != art.trace.stages) {
            std::cerr << "stage deltas differ from replay\n";
            return 1;
        }
        if (!(replay.final_condition == art.trace.final_condition)) {
            std::cerr << "final condition differs from replay\n";
            return 1;
        }
        // Chain invariants and scheduled requirements.
        Condition prev = art.trace.initial;
        for (std::size_t i = 0; i < replay.stages.size(); ++i) {
            const Condition cur = replay_condition(replay, i + 1);
            if (!is_condition(cur, art.rho) || !leq(cur, prev, art.rho)) {
                std::cerr << "stage " << i << " breaks the extension order\n";
                return 1;
            }
            prev = cur;
        }
        for (const DenseSpec& spec : art.trace.schedule) {
            if (!meets(replay.final_condition, spec)) {
                std::cerr << "final condition misses a scheduled requirement\n";
                return 1;
            }
        }
        if (artifact_text(trace_to_json(replay, art.rho)) != original) {
            std::cerr << "artifact bytes differ from canonical form\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 1;
    }
    std::cout << "verified\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact desk-scale toolkit for cofinitary group constructions"};
    app.require_subcommand(1);

    std::string config_path, out_path, trace_path, mode;
    std::uint64_t depth = 0, stages = 0, bound = 0;

    auto* certify = app.add_subcommand("certify", "certify a ground assignment cofinitary");
    certify->add_option("--config", config_path)->required();
    certify->add_option("--out", out_path);
    certify->add_option("--depth", depth);

    auto* hitable = app.add_subcommand("hitable", "certify a partial map hitable");
    hitable->add_option("--config", config_path)->required();
    hitable->add_option("--out", out_path);
    hitable->add_option("--depth", depth);

    auto* build = app.add_subcommand("build", "run a deterministic build");
    build->add_option("mode", mode, "generic | greedy-h | embed | stage-step")->required();
    build->add_option("--config", config_path)->required();
    build->add_option("--out", out_path);
    build->add_option("--stages", stages);
    build->add_option("--bound", bound);

    auto* verify = app.add_subcommand("verify", "replay and check a trace artifact");
    verify->add_option("trace", trace_path)->required();

    auto* orbit = app.add_subcommand("orbit-graph", "greedy build and claim checks");
    orbit->add_option("--config", config_path)->required();
    orbit->add_option("--out", out_path);
    orbit->add_option("--stages", stages);

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed())
            return cmd_certify(config_path, out_path, depth);
        if (hitable->parsed())
            return cmd_hitable(config_path, out_path, depth);
        if (verify->parsed())
            return cmd_verify(trace_path);
        if (orbit->parsed()) {
            RunConfig cfg = load_config(config_path);
            return cmd_orbit_graph(cfg, out_path, stages ? stages : cfg.stages);
        }
        if (build->parsed()) {
            RunConfig cfg = load_config(config_path);
            if (mode == "generic" || mode == "embed") {
                if (mode == "embed" && cfg.poset != cofin::PosetKind::Embed)
                    throw cofin::ParseError("embed build needs an embed config");
                if (mode == "generic" && cfg.poset != cofin::PosetKind::Free)
                    throw cofin::ParseError("generic build needs a free config");
                return cmd_build_generic(cfg, out_path, bound ? bound : cfg.search_bound);
            }
            if (mode == "greedy-h")
                return cmd_build_greedy(cfg, out_path, stages ? stages : cfg.stages);
            if (mode == "stage-step")
                return cmd_build_stage_step(cfg, out_path);
            throw cofin::ParseError("unknown build mode: " + mode);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e);
    }
    return 2;
}
