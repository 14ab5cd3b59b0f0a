#include "cofin/artifact.hpp"

#include <fstream>

namespace cofin {

LetterKind NameContext::kind_of(const std::string& name) const {
    const int hits = (generics.count(name) ? 1 : 0) + (ground.count(name) ? 1 : 0) +
                     (group_elems.count(name) ? 1 : 0);
    if (hits > 1)
        throw ParseError("ambiguous name: " + name);
    if (generics.count(name))
        return LetterKind::Generic;
    if (ground.count(name))
        return LetterKind::Ground;
    if (group_elems.count(name))
        return LetterKind::GroupElem;
    throw ParseError("undeclared name: " + name);
}

NameContext NameContext::merged(std::set<std::string> generics, std::set<std::string> ground,
                                std::set<std::string> group_elems) {
    NameContext ctx;
    ctx.generics = std::move(generics);
    ctx.ground = std::move(ground);
    ctx.group_elems = std::move(group_elems);
    return ctx;
}

Json perm_to_json(const ExactPerm& p) {
    return Json{{"head", p.head()}, {"window", p.window()}};
}

ExactPerm perm_from_json(const Json& j) {
    return ExactPerm(j.at("head").get<std::vector<std::uint64_t>>(),
                     j.at("window").get<std::vector<std::int64_t>>());
}

Json pinj_to_json(const PartialInj& s) {
    Json out = Json::array();
    for (const auto& [a, v] : s.pairs())
        out.push_back(Json::array({a, v}));
    return out;
}

PartialInj pinj_from_json(const Json& j) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (const auto& e : j)
        pairs.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>());
    return PartialInj(pairs);
}

Json pset_to_json(const PeriodicSet& s) {
    std::vector<std::uint64_t> head_members;
    for (std::uint64_t n = 0; n < s.head_len(); ++n)
        if (s.head_bits()[n])
            head_members.push_back(n);
    std::vector<std::uint64_t> residues;
    for (std::uint64_t r = 0; r < s.period(); ++r)
        if (s.residue_bits()[r])
            residues.push_back(r);
    return Json{{"head_len", s.head_len()},
                {"head", head_members},
                {"period", s.period()},
                {"residues", residues}};
}

PeriodicSet pset_from_json(const Json& j) {
    const auto head_len = j.at("head_len").get<std::uint64_t>();
    const auto period = j.at("period").get<std::uint64_t>();
    std::vector<bool> head(head_len, false);
    for (const auto& e : j.at("head")) {
        const auto n = e.get<std::uint64_t>();
        if (n >= head_len)
            throw ParseError("set member beyond head bound");
        head[n] = true;
    }
    std::vector<bool> residues(period, false);
    for (const auto& e : j.at("residues")) {
        const auto r = e.get<std::uint64_t>();
        if (r >= period)
            throw ParseError("residue beyond period");
        residues[r] = true;
    }
    return PeriodicSet(std::move(head), std::move(residues));
}

Json pmap_to_json(const PeriodicMap& m) {
    Json head = Json::array();
    for (std::uint64_t n = 0; n < m.head_len(); ++n)
        if (m.head()[n])
            head.push_back(Json::array({n, *m.head()[n]}));
    Json window = Json::array();
    for (const auto& d : m.window())
        window.push_back(d ? Json(*d) : Json(nullptr));
    return Json{{"head_len", m.head_len()}, {"head", head}, {"window", window}};
}

PeriodicMap pmap_from_json(const Json& j) {
    const auto head_len = j.at("head_len").get<std::uint64_t>();
    std::vector<std::optional<std::uint64_t>> head(head_len);
    for (const auto& e : j.at("head")) {
        const auto n = e.at(0).get<std::uint64_t>();
        if (n >= head_len)
            throw ParseError("map pair beyond head bound");
        head[n] = e.at(1).get<std::uint64_t>();
    }
    std::vector<std::optional<std::int64_t>> window;
    for (const auto& e : j.at("window")) {
        if (e.is_null())
            window.push_back(std::nullopt);
        else
            window.push_back(e.get<std::int64_t>());
    }
    return PeriodicMap(std::move(head), std::move(window));
}

Json ground_to_json(const GroundAssignment& rho) {
    Json out = Json::object();
    for (const auto& [name, perm] : rho.all())
        out[name] = perm_to_json(perm);
    return out;
}

GroundAssignment ground_from_json(const Json& j) {
    GroundAssignment rho;
    for (const auto& [name, val] : j.items())
        rho.set(name, perm_from_json(val));
    return rho;
}

Json group_to_json(const FiniteGroupTable& h) {
    return Json{{"names", h.names()},
                {"mul", [&] {
                     Json rows = Json::array();
                     for (std::uint32_t a = 0; a < h.order(); ++a) {
                         Json row = Json::array();
                         for (std::uint32_t b = 0; b < h.order(); ++b)
                             row.push_back(h.mul(a, b));
                         rows.push_back(row);
                     }
                     return rows;
                 }()},
                {"id", h.id_index()}};
}

std::shared_ptr<const FiniteGroupTable> group_from_json(const Json& j) {
    if (j.is_null())
        return nullptr;
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "cyclic")
            return std::make_shared<const FiniteGroupTable>(
                FiniteGroupTable::cyclic(j.at("order").get<std::uint32_t>()));
        if (kind == "symmetric3")
            return std::make_shared<const FiniteGroupTable>(FiniteGroupTable::symmetric3());
        if (kind != "table")
            throw ParseError("unknown group kind: " + kind);
    }
    return std::make_shared<const FiniteGroupTable>(
        j.at("names").get<std::vector<std::string>>(),
        j.at("mul").get<std::vector<std::vector<std::uint32_t>>>(),
        j.at("id").get<std::uint32_t>());
}

Json condition_to_json(const Condition& c) {
    Json state = Json::object();
    for (const auto& [name, inj] : c.state)
        if (!inj.empty())
            state[name] = pinj_to_json(inj);
    Json words = Json::array();
    for (const Word& w : c.words)
        words.push_back(w.str());
    return Json{{"kind", c.kind == PosetKind::Free ? "free" : "embed"},
                {"state", state},
                {"words", words}};
}

Condition condition_from_json(const Json& j, const NameContext& ctx,
                              std::shared_ptr<const FiniteGroupTable> group) {
    Condition c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "embed") {
        c = Condition::embed_condition(std::move(group));
    } else if (kind != "free") {
        throw ParseError("unknown condition kind: " + kind);
    }
    for (const auto& [name, pairs] : j.at("state").items())
        c.state[name] = pinj_from_json(pairs);
    for (const auto& w : j.at("words"))
        c = c.with_word(Word::parse(w.get<std::string>(),
                                    [&](const std::string& n) { return ctx.kind_of(n); }));
    return c;
}

Json spec_to_json(const DenseSpec& s) {
    switch (s.kind) {
    case DenseSpec::Kind::DomainHit:
        return Json{{"kind", "domain_hit"}, {"name", s.name}, {"arg", s.arg}};
    case DenseSpec::Kind::RangeHit:
        return Json{{"kind", "range_hit"}, {"name", s.name}, {"arg", s.arg}};
    case DenseSpec::Kind::WordAdd:
        return Json{{"kind", "word_add"}, {"word", s.word.str()}};
    case DenseSpec::Kind::TargetHit:
        return Json{{"kind", "target_hit"},
                    {"name", s.name},
                    {"floor", s.floor},
                    {"target", pset_to_json(s.target)}};
    case DenseSpec::Kind::FunctionHit:
        return Json{{"kind", "function_hit"},
                    {"name", s.name},
                    {"floor", s.floor},
                    {"fn", pmap_to_json(s.fn)}};
    case DenseSpec::Kind::RelationClosure:
        return Json{{"kind", "relation_closure"}, {"names", s.names}};
    }
    throw ParseError("bad dense spec");
}

DenseSpec spec_from_json(const Json& j, const NameContext& ctx) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "domain_hit")
        return DenseSpec::domain_hit(j.at("name").get<std::string>(),
                                     j.at("arg").get<std::uint64_t>());
    if (kind == "range_hit")
        return DenseSpec::range_hit(j.at("name").get<std::string>(),
                                    j.at("arg").get<std::uint64_t>());
    if (kind == "word_add")
        return DenseSpec::word_add(Word::parse(
            j.at("word").get<std::string>(),
            [&](const std::string& n) { return ctx.kind_of(n); }));
    if (kind == "target_hit")
        return DenseSpec::target_hit(j.at("name").get<std::string>(),
                                     pset_from_json(j.at("target")),
                                     j.at("floor").get<std::uint64_t>());
    if (kind == "function_hit")
        return DenseSpec::function_hit(j.at("name").get<std::string>(),
                                       pmap_from_json(j.at("fn")),
                                       j.at("floor").get<std::uint64_t>());
    if (kind == "relation_closure")
        return DenseSpec::relation_closure(j.at("names").get<std::vector<std::string>>());
    throw ParseError("unknown dense spec kind: " + kind);
}

Json delta_to_json(const StageDelta& d) {
    Json pairs = Json::array();
    for (const auto& [name, x, y] : d.pairs_added)
        pairs.push_back(Json::array({name, x, y}));
    Json words = Json::array();
    for (const Word& w : d.words_added)
        words.push_back(w.str());
    return Json{{"spec_index", d.spec_index}, {"pairs", pairs}, {"words", words}};
}

StageDelta delta_from_json(const Json& j, const NameContext& ctx) {
    StageDelta d;
    d.spec_index = j.at("spec_index").get<std::size_t>();
    for (const auto& e : j.at("pairs"))
        d.pairs_added.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::uint64_t>(),
                                   e.at(2).get<std::uint64_t>());
    for (const auto& e : j.at("words"))
        d.words_added.push_back(Word::parse(
            e.get<std::string>(), [&](const std::string& n) { return ctx.kind_of(n); }));
    return d;
}

namespace {

void collect_names(const Word& w, std::set<std::string>& generics) {
    for (const Letter& l : w.letters())
        if (l.kind == LetterKind::Generic)
            generics.insert(l.name);
}

std::set<std::string> trace_generics(const RunTrace& trace) {
    std::set<std::string> generics;
    const auto from_condition = [&](const Condition& c) {
        if (c.kind == PosetKind::Free)
            for (const auto& [name, inj] : c.state) {
                (void)inj;
                generics.insert(name);
            }
        for (const Word& w : c.words)
            collect_names(w, generics);
    };
    from_condition(trace.initial);
    from_condition(trace.final_condition);
    for (const DenseSpec& s : trace.schedule) {
        if (s.kind == DenseSpec::Kind::WordAdd)
            collect_names(s.word, generics);
        else if (!s.name.empty() && trace.initial.kind == PosetKind::Free)
            generics.insert(s.name);
    }
    return generics;
}

} // namespace

Json trace_to_json(const RunTrace& trace, const GroundAssignment& rho) {
    Json schedule = Json::array();
    for (const DenseSpec& s : trace.schedule)
        schedule.push_back(spec_to_json(s));
    Json stages = Json::array();
    for (const StageDelta& d : trace.stages)
        stages.push_back(delta_to_json(d));
    Json out{{"schema_version", kSchemaVersion},
             {"kind", "run_trace"},
             {"ground", ground_to_json(rho)},
             {"generics", trace_generics(trace)},
             {"search_bound", trace.search_bound},
             {"initial", condition_to_json(trace.initial)},
             {"schedule", schedule},
             {"stages", stages},
             {"final", condition_to_json(trace.final_condition)}};
    if (trace.initial.group)
        out["group"] = group_to_json(*trace.initial.group);
    else
        out["group"] = nullptr;
    return out;
}

TraceArtifact trace_from_json(const Json& j) {
    TraceArtifact art;
    art.rho = ground_from_json(j.at("ground"));
    const auto group = group_from_json(j.value("group", Json()));

    NameContext ctx;
    for (const auto& g : j.at("generics"))
        ctx.generics.insert(g.get<std::string>());
    for (const std::string& n : art.rho.names())
        ctx.ground.insert(n);
    if (group)
        for (const std::string& n : group->names())
            ctx.group_elems.insert(n);

    art.trace.initial = condition_from_json(j.at("initial"), ctx, group);
    art.trace.final_condition = condition_from_json(j.at("final"), ctx, group);
    art.trace.search_bound = j.at("search_bound").get<std::uint64_t>();
    for (const auto& s : j.at("schedule"))
        art.trace.schedule.push_back(spec_from_json(s, ctx));
    for (const auto& d : j.at("stages"))
        art.trace.stages.push_back(delta_from_json(d, ctx));
    return art;
}

Json certificate_to_json(const Certificate& cert) {
    Json verdicts = Json::array();
    for (const auto& [word, v] : cert.verdicts) {
        Json entry{{"word", word.str()}};
        switch (v.kind) {
        case WordVerdict::Kind::Identity:
            entry["verdict"] = "identity";
            break;
        case WordVerdict::Kind::Finite:
            entry["verdict"] = "finite";
            entry["fixed_points"] = v.fixed_points;
            break;
        case WordVerdict::Kind::Infinite:
            entry["verdict"] = "infinite";
            entry["residues"] = v.residues;
            entry["period"] = v.period;
            break;
        }
        verdicts.push_back(entry);
    }
    Json relations = Json::array();
    for (const Word& w : cert.relations)
        relations.push_back(w.str());
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "certificate"},
                {"subject", cert.subject},
                {"depth", cert.depth},
                {"passed", cert.passed},
                {"verdicts", verdicts},
                {"relations", relations},
                {"counterexamples", cert.counterexamples}};
}

Json partition_to_json(const PartitionSpec& p) {
    switch (p.kind()) {
    case PartitionSpec::Kind::Singletons:
        return Json{{"kind", "singletons"}};
    case PartitionSpec::Kind::Blocks:
        return Json{{"kind", "blocks"}, {"size", p.param()}};
    case PartitionSpec::Kind::Residues:
        return Json{{"kind", "residues"}, {"modulus", p.param()}};
    case PartitionSpec::Kind::ExplicitPeriodic:
        return Json{{"kind", "explicit_periodic"},
                    {"head", p.head_assign()},
                    {"window", p.window_assign()}};
    case PartitionSpec::Kind::Mixed: {
        Json bounded = Json::array();
        for (const auto& b : p.bounded_pieces())
            bounded.push_back(b);
        Json unbounded = Json::array();
        for (const auto& u : p.unbounded_pieces())
            unbounded.push_back(pset_to_json(u));
        return Json{{"kind", "mixed"}, {"bounded", bounded}, {"unbounded", unbounded}};
    }
    }
    throw ParseError("bad partition");
}

PartitionSpec partition_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "singletons")
        return PartitionSpec::singletons();
    if (kind == "blocks")
        return PartitionSpec::blocks(j.at("size").get<std::uint64_t>());
    if (kind == "residues")
        return PartitionSpec::residues(j.at("modulus").get<std::uint64_t>());
    if (kind == "explicit_periodic")
        return PartitionSpec::explicit_periodic(
            j.at("head").get<std::vector<std::uint64_t>>(),
            j.at("window").get<std::vector<std::uint64_t>>());
    if (kind == "mixed") {
        std::vector<std::set<std::uint64_t>> bounded;
        for (const auto& b : j.at("bounded"))
            bounded.push_back(b.get<std::set<std::uint64_t>>());
        std::vector<PeriodicSet> unbounded;
        for (const auto& u : j.at("unbounded"))
            unbounded.push_back(pset_from_json(u));
        return PartitionSpec::mixed(std::move(bounded), std::move(unbounded));
    }
    throw ParseError("unknown partition kind: " + kind);
}

Json claims_to_json(const ClaimsReport& r) {
    return Json{{"acyclic", r.acyclic},
                {"one_edge_per_pair", r.one_edge_per_pair},
                {"violations", r.violations}};
}

Json orbit_graph_to_json(const OrbitGraph& g) {
    Json edges = Json::array();
    for (const auto& [edge, count] : g.edges)
        edges.push_back(Json::array({edge.first, edge.second, count}));
    return Json{{"vertices", g.vertices}, {"edges", edges}};
}

Json stage_report_to_json(const StageStepReport& r, const GroundAssignment& rho) {
    Json pieces = Json::array();
    for (const PieceBuild& b : r.pieces) {
        Json schedule = Json::array();
        for (const DenseSpec& s : b.schedule)
            schedule.push_back(spec_to_json(s));
        pieces.push_back(Json{{"orbit", b.piece_orbit},
                              {"schedule", schedule},
                              {"final", condition_to_json(b.trace.final_condition)},
                              {"pairs", pinj_to_json(b.pairs)}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "stage_step"},
                {"ground", ground_to_json(rho)},
                {"case", r.case_id},
                {"case_piece", r.case_piece ? Json(*r.case_piece) : Json(nullptr)},
                {"case_piece_other",
                 r.case_piece_other ? Json(*r.case_piece_other) : Json(nullptr)},
                {"certificate", certificate_to_json(r.certificate)},
                {"certificate_passed", r.certificate_passed},
                {"notes", r.notes},
                {"pieces", pieces},
                {"bounded_pairs", pinj_to_json(r.bounded_pairs)},
                {"h", pinj_to_json(r.h)}};
}

std::string artifact_text(const Json& j) { return j.dump(2) + "\n"; }

void write_artifact(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot open for writing: " + path);
    out << artifact_text(j);
}

Json read_artifact(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed artifact: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version"))
        throw ParseError("missing schema_version");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw ParseError("unsupported schema_version");
    return j;
}

namespace {

ExactPerm compile_ground_rule(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity")
        return ExactPerm::identity();
    if (kind == "block")
        return ExactPerm::block(j.at("size").get<std::uint64_t>(),
                                j.at("pattern").get<std::vector<std::uint64_t>>());
    if (kind == "head_periodic") {
        const auto window = j.at("window").get<std::vector<std::int64_t>>();
        if (j.contains("period") && j.at("period").get<std::uint64_t>() != window.size())
            throw ParseError("head_periodic: period does not match the window");
        return ExactPerm(j.at("head").get<std::vector<std::uint64_t>>(), window);
    }
    if (kind == "table_over_identity") {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
        for (const auto& e : j.at("pairs"))
            pairs.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>());
        return ExactPerm::table_over_identity(pairs);
    }
    throw ParseError("unknown ground rule kind: " + kind);
}

} // namespace

NameContext RunConfig::names() const {
    NameContext ctx;
    ctx.generics = generics;
    for (const std::string& n : rho.names())
        ctx.ground.insert(n);
    if (group)
        for (const std::string& n : group->names())
            ctx.group_elems.insert(n);
    return ctx;
}

RunConfig config_from_json(const Json& j) {
    RunConfig cfg;
    if (j.contains("ground"))
        for (const auto& rule : j.at("ground"))
            cfg.rho.set(rule.at("name").get<std::string>(), compile_ground_rule(rule));
    if (j.contains("generics"))
        for (const auto& g : j.at("generics"))
            cfg.generics.insert(g.get<std::string>());
    if (j.contains("poset")) {
        const std::string p = j.at("poset").get<std::string>();
        if (p == "embed")
            cfg.poset = PosetKind::Embed;
        else if (p != "free")
            throw ParseError("unknown poset kind: " + p);
    }
    if (j.contains("group") && !j.at("group").is_null())
        cfg.group = group_from_json(j.at("group"));
    if (cfg.poset == PosetKind::Embed && !cfg.group)
        throw ParseError("embed poset needs a group");
    if (j.contains("partition"))
        cfg.partition = partition_from_json(j.at("partition"));
    cfg.stages = j.value("stages", cfg.stages);
    cfg.search_bound = j.value("search_bound", cfg.search_bound);
    cfg.scan_bound = j.value("scan_bound", cfg.scan_bound);
    cfg.depth = j.value("depth", cfg.depth);
    if (j.contains("f"))
        cfg.fn = pmap_from_json(j.at("f"));
    if (j.contains("stage_params")) {
        const Json& sp = j.at("stage_params");
        cfg.stage_params.alpha_range = sp.value("alpha_range", cfg.stage_params.alpha_range);
        cfg.stage_params.word_len = sp.value("word_len", cfg.stage_params.word_len);
        cfg.stage_params.hits = sp.value("hits", cfg.stage_params.hits);
        cfg.stage_params.depth = sp.value("depth", cfg.stage_params.depth);
        cfg.stage_params.search_bound = cfg.search_bound;
    }
    // Name spaces must be disjoint for the word syntax to resolve.
    const NameContext ctx = cfg.names();
    for (const std::string& n : ctx.generics)
        if (ctx.ground.count(n) || ctx.group_elems.count(n))
            throw ParseError("name in two spaces: " + n);
    for (const std::string& n : ctx.ground)
        if (ctx.group_elems.count(n))
            throw ParseError("name in two spaces: " + n);
    if (j.contains("schedule"))
        for (const auto& s : j.at("schedule"))
            cfg.schedule.push_back(spec_from_json(s, ctx));
    return cfg;
}

RunConfig load_config(const std::string& path) { return config_from_json(read_artifact(path)); }

} // namespace cofin
