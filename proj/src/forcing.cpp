#include "cofin/forcing.hpp"

#include <algorithm>
#include <deque>

namespace cofin {

Condition Condition::free_condition() { return Condition{}; }

Condition Condition::embed_condition(std::shared_ptr<const FiniteGroupTable> group) {
    Condition c;
    c.kind = PosetKind::Embed;
    c.group = std::move(group);
    if (!c.group)
        throw NotEmbedKind("embed condition requires a group table");
    return c;
}

const PartialInj& Condition::inj(const std::string& name) const {
    static const PartialInj kEmpty;
    const auto it = state.find(name);
    return it == state.end() ? kEmpty : it->second;
}

bool Condition::has_word(const Word& w) const {
    return std::binary_search(words.begin(), words.end(), w);
}

Condition Condition::with_word(const Word& w) const {
    Condition out(*this);
    const auto it = std::lower_bound(out.words.begin(), out.words.end(), w);
    if (it == out.words.end() || !(*it == w))
        out.words.insert(it, w);
    return out;
}

Condition Condition::with_pair(const std::string& name, std::uint64_t arg,
                               std::uint64_t val) const {
    Condition out(*this);
    out.state[name] = inj(name).with(arg, val);
    return out;
}

std::size_t Condition::pair_count() const {
    std::size_t n = 0;
    for (const auto& [name, inj] : state) {
        (void)name;
        n += inj.size();
    }
    return n;
}

bool Condition::operator==(const Condition& o) const {
    if (kind != o.kind || words != o.words)
        return false;
    const bool g1 = group != nullptr, g2 = o.group != nullptr;
    if (g1 != g2 || (g1 && !(*group == *o.group)))
        return false;
    // Names bound to the empty map are the same as absent names.
    for (const auto& [name, inj] : state)
        if (!inj.empty() && !(o.inj(name) == inj))
            return false;
    for (const auto& [name, inj] : o.state)
        if (!inj.empty() && !(this->inj(name) == inj))
            return false;
    return true;
}

namespace {

bool word_letters_fit(const Word& w, const Condition& c, const GroundAssignment& rho) {
    for (const Letter& l : w.letters()) {
        switch (l.kind) {
        case LetterKind::Ground:
            if (!rho.has(l.name))
                return false;
            break;
        case LetterKind::Generic:
            if (c.kind != PosetKind::Free)
                return false;
            break;
        case LetterKind::GroupElem:
            if (c.kind != PosetKind::Embed || !c.group->has_element(l.name))
                return false;
            break;
        }
    }
    return true;
}

bool word_is_pure_group(const Word& w) {
    return std::all_of(w.letters().begin(), w.letters().end(),
                       [](const Letter& l) { return l.kind == LetterKind::GroupElem; });
}

} // namespace

bool is_condition(const Condition& c, const GroundAssignment& rho) {
    if (c.kind == PosetKind::Embed) {
        if (!c.group)
            return false;
        for (const auto& [name, inj] : c.state) {
            (void)inj;
            if (!c.group->has_element(name))
                return false;
        }
    }
    for (const Word& w : c.words) {
        if (w.is_empty() || !is_good(w) || !word_letters_fit(w, c, rho))
            return false;
    }
    if (c.kind == PosetKind::Embed) {
        for (const Word& w : c.words) {
            if (!word_is_pure_group(w) || !relation_is_identity(w, *c.group))
                continue;
            for (const auto& [alpha, beta] : eval_full_relation(w, c.state, rho))
                if (alpha != beta)
                    return false;
        }
    }
    return true;
}

namespace {

void require_same_kind(const Condition& a, const Condition& b) {
    if (a.kind != b.kind)
        throw KindMismatch("conditions from different orders");
    const bool g1 = a.group != nullptr, g2 = b.group != nullptr;
    if (g1 != g2 || (g1 && !(*a.group == *b.group)))
        throw KindMismatch("conditions over different groups");
}

} // namespace

bool leq(const Condition& stronger, const Condition& weaker, const GroundAssignment& rho) {
    require_same_kind(stronger, weaker);
    if (!state_contains(stronger.state, weaker.state))
        return false;
    if (!std::includes(stronger.words.begin(), stronger.words.end(), weaker.words.begin(),
                       weaker.words.end()))
        return false;
    for (const Word& w : weaker.words) {
        if (word_is_ground_only(w))
            continue;  // evaluation does not depend on the state
        // Relation words of the embedded group are meant to grow into the
        // identity; the sub-identity validity clause governs them, not the
        // fixed-point freeze.
        if (stronger.kind == PosetKind::Embed && word_is_pure_group(w) &&
            relation_is_identity(w, *stronger.group))
            continue;
        for (const auto& [alpha, beta] : eval_full_relation(w, stronger.state, rho)) {
            if (alpha != beta)
                continue;
            const auto old_val = eval_word(w, weaker.state, rho, alpha);
            if (!old_val || *old_val != alpha)
                return false;
        }
    }
    return true;
}

DenseSpec DenseSpec::domain_hit(std::string name, std::uint64_t arg) {
    DenseSpec s;
    s.kind = Kind::DomainHit;
    s.name = std::move(name);
    s.arg = arg;
    return s;
}

DenseSpec DenseSpec::range_hit(std::string name, std::uint64_t arg) {
    DenseSpec s;
    s.kind = Kind::RangeHit;
    s.name = std::move(name);
    s.arg = arg;
    return s;
}

DenseSpec DenseSpec::word_add(Word w) {
    DenseSpec s;
    s.kind = Kind::WordAdd;
    s.word = std::move(w);
    return s;
}

DenseSpec DenseSpec::target_hit(std::string name, PeriodicSet target, std::uint64_t floor) {
    DenseSpec s;
    s.kind = Kind::TargetHit;
    s.name = std::move(name);
    s.target = std::move(target);
    s.floor = floor;
    return s;
}

DenseSpec DenseSpec::function_hit(std::string name, PeriodicMap fn, std::uint64_t floor) {
    DenseSpec s;
    s.kind = Kind::FunctionHit;
    s.name = std::move(name);
    s.fn = std::move(fn);
    s.floor = floor;
    return s;
}

DenseSpec DenseSpec::relation_closure(std::vector<std::string> names) {
    DenseSpec s;
    s.kind = Kind::RelationClosure;
    s.names = std::move(names);
    return s;
}

bool meets(const Condition& c, const DenseSpec& spec) {
    switch (spec.kind) {
    case DenseSpec::Kind::DomainHit:
        return c.inj(spec.name).defined_at(spec.arg);
    case DenseSpec::Kind::RangeHit:
        return c.inj(spec.name).takes_value(spec.arg);
    case DenseSpec::Kind::WordAdd:
        return c.has_word(spec.word);
    case DenseSpec::Kind::TargetHit:
        for (const auto& [x, y] : c.inj(spec.name).pairs())
            if (x >= spec.floor && spec.target.member(x) && spec.target.member(y))
                return true;
        return false;
    case DenseSpec::Kind::FunctionHit:
        for (const auto& [x, y] : c.inj(spec.name).pairs())
            if (x >= spec.floor && spec.fn.apply(x) == std::optional<std::uint64_t>(y))
                return true;
        return false;
    case DenseSpec::Kind::RelationClosure:
        return true;  // an operation, not a persistent membership
    }
    return false;
}

// --- forbidden values ------------------------------------------------------

namespace {

// Candidate values that could participate in a new fixed point of w when a
// pair with one unknown side is added to s_a. Any fixed point whose
// evaluation path uses the new pair induces, between two consecutive uses,
// an equation through a segment of the word evaluated over the old state;
// each equation form contributes finitely many values of the unknown side.
void collect_word_candidates(const Word& w, const GenericState& s, const GroundAssignment& rho,
                             const std::string& name, std::uint64_t anchor, Direction direction,
                             std::set<std::uint64_t>& out) {
    const auto& ls = w.letters();
    std::vector<std::size_t> occ;
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i].kind != LetterKind::Ground && ls[i].name == name)
            occ.push_back(i);
    if (occ.empty())
        return;

    // Whether the input side of a use at exponent e is the known anchor.
    const auto in_known = [&](int e) { return (e > 0) == (direction == Direction::Domain); };

    const auto solve = [&](std::span<const Letter> seg, bool out_is_known, bool in_is_known) {
        if (out_is_known && in_is_known)
            return;
        const bool has_generic = std::any_of(seg.begin(), seg.end(), [](const Letter& l) {
            return l.kind != LetterKind::Ground;
        });
        if (out_is_known) {
            // unknown = e_seg(anchor)
            const auto v = eval_sequence(seg, s, rho, anchor);
            if (v)
                out.insert(*v);
        } else if (in_is_known) {
            // e_seg(unknown) = anchor
            if (has_generic) {
                for (const auto& [x, y] : eval_full_relation(seg, s, rho))
                    if (y == anchor)
                        out.insert(x);
            } else {
                out.insert(eval_ground_word(seg, rho).inverse().apply(anchor));
            }
        } else {
            // e_seg(unknown) = unknown: solutions are the fixed points.
            if (has_generic) {
                for (const auto& [x, y] : eval_full_relation(seg, s, rho))
                    if (x == y)
                        out.insert(x);
            } else {
                const FixedPointReport report = eval_ground_word(seg, rho).fixed_points();
                if (report.kind != FixedPointReport::Kind::Finite)
                    throw UnboundedForbiddenSet(
                        "promised word " + w.str() +
                        " admits unboundedly many bad extension values");
                for (const std::uint64_t x : report.finite_points)
                    out.insert(x);
            }
        }
    };

    const std::span<const Letter> all(ls);
    // Segments between an earlier use (applied later) and a later use.
    for (const std::size_t lo : occ) {
        for (const std::size_t hi : occ) {
            if (lo >= hi)
                continue;
            solve(all.subspan(lo + 1, hi - lo - 1), !in_known(ls[hi].exp), in_known(ls[lo].exp));
        }
    }
    // Wrap segments: from the leftmost use through the word boundary (via
    // the fixed point itself) to the rightmost use.
    std::vector<Letter> wrap;
    for (const std::size_t left : occ) {
        for (const std::size_t right : occ) {
            if (left > right)
                continue;
            wrap.clear();
            wrap.insert(wrap.end(), ls.begin() + static_cast<std::ptrdiff_t>(right) + 1, ls.end());
            wrap.insert(wrap.end(), ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(left));
            solve(std::span<const Letter>(wrap), !in_known(ls[left].exp),
                  in_known(ls[right].exp));
        }
    }
}

bool extension_admissible(const Condition& c, const GroundAssignment& rho,
                          const std::string& name, std::uint64_t arg, std::uint64_t val) {
    const PartialInj& inj = c.inj(name);
    if (inj.defined_at(arg) || inj.takes_value(val))
        return false;
    const Condition ext = c.with_pair(name, arg, val);
    return leq(ext, c, rho);
}

} // namespace

std::set<std::uint64_t> forbidden_values(const Condition& c, const GroundAssignment& rho,
                                         const std::string& name, std::uint64_t anchor,
                                         Direction direction) {
    const PartialInj& inj = c.inj(name);
    if (direction == Direction::Domain && inj.defined_at(anchor))
        throw AlreadyDefined("anchor already in the domain");
    if (direction == Direction::Range && inj.takes_value(anchor))
        throw AlreadyDefined("anchor already in the range");

    std::set<std::uint64_t> forbidden =
        direction == Direction::Domain ? inj.vals() : inj.args();

    std::set<std::uint64_t> candidates;
    for (const Word& w : c.words)
        collect_word_candidates(w, c.state, rho, name, anchor, direction, candidates);

    for (const std::uint64_t beta : candidates) {
        if (forbidden.count(beta))
            continue;
        const std::uint64_t arg = direction == Direction::Domain ? anchor : beta;
        const std::uint64_t val = direction == Direction::Domain ? beta : anchor;
        if (!extension_admissible(c, rho, name, arg, val))
            forbidden.insert(beta);
    }
    return forbidden;
}

// --- relation closure ------------------------------------------------------

Condition apply_relations(const Condition& c, const GroundAssignment& rho,
                          const std::vector<std::string>& names) {
    (void)rho;
    if (c.kind != PosetKind::Embed)
        throw NotEmbedKind("relation closure needs the embedding order");
    const FiniteGroupTable& h = *c.group;
    for (const std::string& a : names) {
        if (h.index_of(a) == h.id_index())
            throw InvalidSpec("cannot close over the group identity element");
    }

    // Values reachable through the state, labelled by the group element of
    // the letter sequence applied so far.
    std::set<std::uint64_t> support;
    for (const auto& [name, inj] : c.state) {
        (void)name;
        for (const auto& [x, y] : inj.pairs()) {
            support.insert(x);
            support.insert(y);
        }
    }

    Condition out(c);
    for (const std::uint64_t beta : support) {
        // BFS over (value, group element) states starting from (beta, id).
        std::set<std::pair<std::uint64_t, std::uint32_t>> seen;
        std::deque<std::pair<std::uint64_t, std::uint32_t>> queue;
        seen.insert({beta, h.id_index()});
        queue.push_back({beta, h.id_index()});
        while (!queue.empty()) {
            const auto [v, g] = queue.front();
            queue.pop_front();
            for (const auto& [lname, inj] : c.state) {
                const std::uint32_t idx = h.index_of(lname);
                if (const auto fwd = inj.apply(v)) {
                    const std::pair<std::uint64_t, std::uint32_t> nxt{*fwd, h.mul(idx, g)};
                    if (seen.insert(nxt).second)
                        queue.push_back(nxt);
                }
                if (const auto bwd = inj.apply_inv(v)) {
                    const std::pair<std::uint64_t, std::uint32_t> nxt{*bwd, h.mul(h.inv(idx), g)};
                    if (seen.insert(nxt).second)
                        queue.push_back(nxt);
                }
            }
        }
        for (const std::string& a : names) {
            const std::uint32_t want = h.inv(h.index_of(a));
            for (const auto& [alpha, g] : seen) {
                if (g != want || out.inj(a).contains(alpha, beta))
                    continue;
                out = out.with_pair(a, alpha, beta);
            }
        }
    }
    return out;
}

// --- extension -------------------------------------------------------------

namespace {

Condition extend_point_hit(const Condition& c, const GroundAssignment& rho, const DenseSpec& spec,
                           std::uint64_t search_bound) {
    const bool domain = spec.kind == DenseSpec::Kind::DomainHit;
    Condition base = c;
    if (c.kind == PosetKind::Embed)
        base = apply_relations(c, rho, {spec.name});
    if (meets(base, spec))
        return base;

    const Direction dir = domain ? Direction::Domain : Direction::Range;
    const auto forbidden = forbidden_values(base, rho, spec.name, spec.arg, dir);

    std::uint64_t start = 0;
    if (c.kind == PosetKind::Embed) {
        // Fresh witness strictly above everything the letter mentions.
        std::uint64_t top = spec.arg;
        const PartialInj& inj = base.inj(spec.name);
        for (const auto& [x, y] : inj.pairs())
            top = std::max({top, x, y});
        start = top + 1;
    }
    for (std::uint64_t beta = start; beta < search_bound; ++beta) {
        if (forbidden.count(beta))
            continue;
        const std::uint64_t arg = domain ? spec.arg : beta;
        const std::uint64_t val = domain ? beta : spec.arg;
        const Condition ext = base.with_pair(spec.name, arg, val);
        if (is_condition(ext, rho) && leq(ext, base, rho))
            return ext;
    }
    throw SearchExhausted(search_bound, "no admissible witness below the search bound");
}

Condition extend_target_hit(const Condition& c, const GroundAssignment& rho,
                            const DenseSpec& spec, std::uint64_t search_bound) {
    if (meets(c, spec))
        return c;
    const PartialInj& inj = c.inj(spec.name);
    for (auto x = spec.target.next(spec.floor); x && *x < search_bound;
         x = spec.target.next(*x + 1)) {
        if (inj.defined_at(*x))
            continue;
        std::set<std::uint64_t> forbidden;
        try {
            forbidden = forbidden_values(c, rho, spec.name, *x, Direction::Domain);
        } catch (const AlreadyDefined&) {
            continue;
        }
        for (auto y = spec.target.min(); y && *y < search_bound; y = spec.target.next(*y + 1)) {
            if (forbidden.count(*y))
                continue;
            const Condition ext = c.with_pair(spec.name, *x, *y);
            if (is_condition(ext, rho) && leq(ext, c, rho))
                return ext;
        }
    }
    throw SearchExhausted(search_bound, "no target pair below the search bound");
}

Condition extend_function_hit(const Condition& c, const GroundAssignment& rho,
                              const DenseSpec& spec, std::uint64_t search_bound) {
    if (meets(c, spec))
        return c;
    const PartialInj& inj = c.inj(spec.name);
    const PeriodicSet dom = spec.fn.domain();
    for (auto x = dom.next(spec.floor); x && *x < search_bound; x = dom.next(*x + 1)) {
        if (inj.defined_at(*x))
            continue;
        const auto y = spec.fn.apply(*x);
        if (!y || inj.takes_value(*y))
            continue;
        const auto forbidden = forbidden_values(c, rho, spec.name, *x, Direction::Domain);
        if (forbidden.count(*y))
            continue;
        const Condition ext = c.with_pair(spec.name, *x, *y);
        if (is_condition(ext, rho) && leq(ext, c, rho))
            return ext;
    }
    throw SearchExhausted(search_bound, "no agreement point below the search bound");
}

} // namespace

Condition extend_hit(const Condition& c, const GroundAssignment& rho, const DenseSpec& spec,
                     std::uint64_t search_bound) {
    switch (spec.kind) {
    case DenseSpec::Kind::WordAdd: {
        if (c.has_word(spec.word))
            return c;
        const Condition ext = c.with_word(spec.word);
        if (!is_condition(ext, rho))
            throw InvalidSpec("word cannot be promised on this condition: " + spec.word.str());
        return ext;
    }
    case DenseSpec::Kind::DomainHit:
    case DenseSpec::Kind::RangeHit:
        return extend_point_hit(c, rho, spec, search_bound);
    case DenseSpec::Kind::TargetHit:
        return extend_target_hit(c, rho, spec, search_bound);
    case DenseSpec::Kind::FunctionHit:
        return extend_function_hit(c, rho, spec, search_bound);
    case DenseSpec::Kind::RelationClosure:
        return apply_relations(c, rho, spec.names);
    }
    throw InvalidSpec("unknown dense spec kind");
}

StageDelta delta_between(const Condition& prev, const Condition& next, std::size_t spec_index) {
    StageDelta delta;
    delta.spec_index = spec_index;
    for (const auto& [name, inj] : next.state) {
        const PartialInj& before = prev.inj(name);
        for (const auto& [x, y] : inj.pairs())
            if (!before.contains(x, y))
                delta.pairs_added.emplace_back(name, x, y);
    }
    for (const Word& w : next.words)
        if (!prev.has_word(w))
            delta.words_added.push_back(w);
    return delta;
}

RunTrace generic_run(const Condition& initial, const GroundAssignment& rho,
                     const std::vector<DenseSpec>& schedule, std::uint64_t search_bound) {
    if (!is_condition(initial, rho))
        throw InvalidSpec("initial condition is invalid");
    RunTrace trace;
    trace.initial = initial;
    trace.schedule = schedule;
    trace.search_bound = search_bound;
    Condition current = initial;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        Condition next;
        try {
            next = extend_hit(current, rho, schedule[i], search_bound);
        } catch (const SearchExhausted& e) {
            throw SearchExhausted(e.bound, "stage " + std::to_string(i) + ": " +
                                               std::string(e.what()));
        }
        trace.stages.push_back(delta_between(current, next, i));
        current = std::move(next);
    }
    trace.final_condition = current;
    return trace;
}

Condition replay_condition(const RunTrace& trace, std::size_t stages) {
    Condition current = trace.initial;
    for (std::size_t i = 0; i < stages && i < trace.stages.size(); ++i) {
        for (const auto& [name, x, y] : trace.stages[i].pairs_added)
            current = current.with_pair(name, x, y);
        for (const Word& w : trace.stages[i].words_added)
            current = current.with_word(w);
    }
    return current;
}

} // namespace cofin
