#include "cofin/periodic.hpp"

#include <algorithm>
#include <numeric>

namespace cofin {

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        const std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

} // namespace

PeriodicSet::PeriodicSet(std::vector<bool> head, std::vector<bool> residues)
    : head_(std::move(head)), residues_(std::move(residues)) {
    if (residues_.empty())
        throw UnsupportedDescriptor("periodic set: empty residue window");
    canonicalize();
}

PeriodicSet PeriodicSet::all() { return PeriodicSet({}, {true}); }

PeriodicSet PeriodicSet::finite(const std::set<std::uint64_t>& elems) {
    std::uint64_t bound = 0;
    for (const std::uint64_t e : elems)
        bound = std::max(bound, e + 1);
    std::vector<bool> head(bound, false);
    for (const std::uint64_t e : elems)
        head[e] = true;
    return PeriodicSet(std::move(head), {false});
}

PeriodicSet PeriodicSet::multiples(std::uint64_t m) { return residue_class(m, 0); }

PeriodicSet PeriodicSet::residue_class(std::uint64_t modulus, std::uint64_t r) {
    if (modulus == 0 || r >= modulus)
        throw UnsupportedDescriptor("residue class: bad modulus");
    std::vector<bool> residues(modulus, false);
    residues[r] = true;
    return PeriodicSet({}, std::move(residues));
}

PeriodicSet PeriodicSet::sampled(std::uint64_t head_len, std::uint64_t period,
                                 const std::function<bool(std::uint64_t)>& f) {
    std::vector<bool> head(head_len);
    for (std::uint64_t n = 0; n < head_len; ++n)
        head[n] = f(n);
    std::vector<bool> residues(period);
    for (std::uint64_t i = 0; i < period; ++i) {
        residues[i] = f(head_len + i);
        if (f(head_len + period + i) != residues[i])
            throw UnsupportedDescriptor("sampled set is not periodic at the stated bound");
    }
    return PeriodicSet(std::move(head), std::move(residues));
}

void PeriodicSet::canonicalize() {
    const std::uint64_t p = residues_.size();
    for (std::uint64_t d = 1; d <= p; ++d) {
        if (p % d != 0)
            continue;
        bool ok = true;
        for (std::uint64_t i = d; i < p && ok; ++i)
            ok = (residues_[i] == residues_[i % d]);
        if (ok) {
            residues_.resize(d);
            break;
        }
    }
    // Absorb head positions whose membership already follows the tail rule
    // re-anchored one position earlier.
    while (!head_.empty() && head_.back() == residues_.back()) {
        std::rotate(residues_.rbegin(), residues_.rbegin() + 1, residues_.rend());
        head_.pop_back();
    }
}

bool PeriodicSet::is_infinite() const {
    return std::find(residues_.begin(), residues_.end(), true) != residues_.end();
}

bool PeriodicSet::is_empty() const {
    if (is_infinite())
        return false;
    return std::find(head_.begin(), head_.end(), true) == head_.end();
}

std::uint64_t PeriodicSet::tail_density() const {
    return static_cast<std::uint64_t>(std::count(residues_.begin(), residues_.end(), true));
}

std::optional<std::uint64_t> PeriodicSet::min() const { return next(0); }

std::optional<std::uint64_t> PeriodicSet::next(std::uint64_t n) const {
    for (std::uint64_t m = n; m < head_.size(); ++m)
        if (head_[m])
            return m;
    if (!is_infinite())
        return std::nullopt;
    std::uint64_t m = std::max<std::uint64_t>(n, head_.size());
    while (!member(m))
        ++m;
    return m;
}

std::uint64_t PeriodicSet::rank(std::uint64_t n) const {
    std::uint64_t count = 0;
    const std::uint64_t h = std::min<std::uint64_t>(n, head_.size());
    for (std::uint64_t m = 0; m < h; ++m)
        count += head_[m] ? 1 : 0;
    if (n <= head_.size())
        return count;
    const std::uint64_t span = n - head_.size();
    const std::uint64_t p = residues_.size();
    const std::uint64_t full = span / p;
    count += full * tail_density();
    for (std::uint64_t i = 0; i < span % p; ++i)
        count += residues_[i] ? 1 : 0;
    return count;
}

std::uint64_t PeriodicSet::kth(std::uint64_t k) const {
    std::uint64_t seen = 0;
    for (std::uint64_t m = 0; m < head_.size(); ++m) {
        if (head_[m]) {
            if (seen == k)
                return m;
            ++seen;
        }
    }
    const std::uint64_t d = tail_density();
    if (d == 0)
        throw UnsupportedDescriptor("kth: set has too few members");
    std::vector<std::uint64_t> offsets;
    for (std::uint64_t i = 0; i < residues_.size(); ++i)
        if (residues_[i])
            offsets.push_back(i);
    const std::uint64_t j = k - seen;
    return head_.size() + (j / d) * residues_.size() + offsets[j % d];
}

PeriodicSet set_union(const PeriodicSet& a, const PeriodicSet& b) {
    const std::uint64_t h = std::max(a.head_len(), b.head_len());
    const std::uint64_t p = lcm_u64(a.period(), b.period());
    return PeriodicSet::sampled(h, p, [&](std::uint64_t n) { return a.member(n) || b.member(n); });
}

PeriodicSet set_intersect(const PeriodicSet& a, const PeriodicSet& b) {
    const std::uint64_t h = std::max(a.head_len(), b.head_len());
    const std::uint64_t p = lcm_u64(a.period(), b.period());
    return PeriodicSet::sampled(h, p, [&](std::uint64_t n) { return a.member(n) && b.member(n); });
}

PeriodicSet set_complement(const PeriodicSet& a) {
    return PeriodicSet::sampled(a.head_len(), a.period(),
                                [&](std::uint64_t n) { return !a.member(n); });
}

PeriodicMap::PeriodicMap(std::vector<std::optional<std::uint64_t>> head,
                         std::vector<std::optional<std::int64_t>> window)
    : head_(std::move(head)), window_(std::move(window)) {
    if (window_.empty())
        throw UnsupportedDescriptor("periodic map: empty window");
    validate();
    canonicalize();
}

PeriodicMap PeriodicMap::identity() {
    return PeriodicMap({}, {std::optional<std::int64_t>(0)});
}

PeriodicMap PeriodicMap::from_pairs(const PartialInj& inj) {
    std::uint64_t bound = 0;
    for (const auto& [a, v] : inj.pairs()) {
        (void)v;
        bound = std::max(bound, a + 1);
    }
    std::vector<std::optional<std::uint64_t>> head(bound);
    for (const auto& [a, v] : inj.pairs())
        head[a] = v;
    return PeriodicMap(std::move(head), {std::nullopt});
}

PeriodicMap PeriodicMap::from_perm(const ExactPerm& perm) {
    std::vector<std::optional<std::uint64_t>> head(perm.head().begin(), perm.head().end());
    std::vector<std::optional<std::int64_t>> window(perm.window().begin(), perm.window().end());
    return PeriodicMap(std::move(head), std::move(window));
}

PeriodicMap PeriodicMap::sampled(
    std::uint64_t head_len, std::uint64_t period,
    const std::function<std::optional<std::uint64_t>(std::uint64_t)>& f) {
    std::vector<std::optional<std::uint64_t>> head(head_len);
    for (std::uint64_t n = 0; n < head_len; ++n)
        head[n] = f(n);
    std::vector<std::optional<std::int64_t>> window(period);
    for (std::uint64_t i = 0; i < period; ++i) {
        const std::uint64_t n = head_len + i;
        const auto v = f(n);
        if (v)
            window[i] = static_cast<std::int64_t>(*v) - static_cast<std::int64_t>(n);
        const auto v2 = f(n + period);
        const bool match =
            (!v && !v2) ||
            (v && v2 && static_cast<std::int64_t>(*v2) - static_cast<std::int64_t>(n + period) ==
                            *window[i]);
        if (!match)
            throw UnsupportedDescriptor("sampled map is not periodic at the stated bound");
    }
    return PeriodicMap(std::move(head), std::move(window));
}

void PeriodicMap::validate() const {
    const std::uint64_t p = window_.size();
    const std::int64_t P = static_cast<std::int64_t>(p);
    const std::int64_t n0 = static_cast<std::int64_t>(head_.size());

    // Tail classes with defined displacement must land in distinct residue
    // classes, else two progressions eventually collide.
    std::vector<bool> target_res(p, false);
    std::vector<std::int64_t> base(p, -1);
    for (std::uint64_t r = 0; r < p; ++r) {
        if (!window_[r])
            continue;
        const std::int64_t b = n0 + static_cast<std::int64_t>(r) + *window_[r];
        if (b < 0)
            throw UnsupportedDescriptor("periodic map: tail image below zero");
        base[r] = b;
        const std::uint64_t s = static_cast<std::uint64_t>(((b % P) + P) % P);
        if (target_res[s])
            throw UnsupportedDescriptor("periodic map: tail not injective");
        target_res[s] = true;
    }
    // Head values distinct and clash-free against the tail progressions.
    std::set<std::uint64_t> head_vals;
    for (const auto& v : head_) {
        if (!v)
            continue;
        if (!head_vals.insert(*v).second)
            throw UnsupportedDescriptor("periodic map: head not injective");
        for (std::uint64_t r = 0; r < p; ++r) {
            if (base[r] < 0)
                continue;
            const std::uint64_t b = static_cast<std::uint64_t>(base[r]);
            if (*v >= b && (*v - b) % p == 0)
                throw UnsupportedDescriptor("periodic map: head value collides with tail");
        }
    }
}

void PeriodicMap::canonicalize() {
    const std::uint64_t p = window_.size();
    for (std::uint64_t d = 1; d <= p; ++d) {
        if (p % d != 0)
            continue;
        bool ok = true;
        for (std::uint64_t i = d; i < p && ok; ++i)
            ok = (window_[i] == window_[i % d]);
        if (ok) {
            window_.resize(d);
            break;
        }
    }
    while (!head_.empty()) {
        const std::uint64_t n = head_.size() - 1;
        const auto& d = window_.back();
        // Re-anchoring must not turn a defined entry into a negative image.
        if (d && static_cast<std::int64_t>(n) + *d < 0)
            break;
        std::optional<std::uint64_t> cand;
        if (d)
            cand = static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + *d);
        if (head_[n] != cand)
            break;
        head_.pop_back();
        std::rotate(window_.rbegin(), window_.rbegin() + 1, window_.rend());
    }
}

PeriodicMap PeriodicMap::inverse() const {
    const std::uint64_t p = window_.size();
    const std::int64_t P = static_cast<std::int64_t>(p);
    const std::int64_t n0 = static_cast<std::int64_t>(head_.size());

    std::int64_t max_up = 0;
    std::int64_t max_down = 0;
    for (const auto& d : window_) {
        if (!d)
            continue;
        max_up = std::max(max_up, *d);
        max_down = std::max(max_down, -*d);
    }
    std::uint64_t max_head_img = 0;
    for (const auto& v : head_)
        if (v)
            max_head_img = std::max(max_head_img, *v + 1);

    const std::uint64_t inv_head_len =
        std::max<std::uint64_t>(static_cast<std::uint64_t>(n0 + max_up), max_head_img);

    std::vector<std::optional<std::int64_t>> disp_for_residue(p);
    for (std::uint64_t r = 0; r < p; ++r) {
        if (!window_[r])
            continue;
        const std::int64_t rel = static_cast<std::int64_t>(r) + *window_[r];
        const std::uint64_t s = static_cast<std::uint64_t>(((rel % P) + P) % P);
        disp_for_residue[s] = -*window_[r];
    }
    std::vector<std::optional<std::int64_t>> inv_window(p);
    for (std::uint64_t i = 0; i < p; ++i) {
        const std::uint64_t s = (inv_head_len - static_cast<std::uint64_t>(n0) + i) % p;
        inv_window[i] = disp_for_residue[s];
    }

    const std::uint64_t scan =
        std::max<std::uint64_t>(static_cast<std::uint64_t>(n0),
                                inv_head_len + static_cast<std::uint64_t>(max_down)) +
        p + 1;
    std::vector<std::optional<std::uint64_t>> inv_head(inv_head_len);
    for (std::uint64_t n = 0; n < scan; ++n) {
        const auto m = apply(n);
        if (m && *m < inv_head_len)
            inv_head[*m] = n;
    }

    return PeriodicMap(std::move(inv_head), std::move(inv_window));
}

PeriodicMap compose(const PeriodicMap& p, const PeriodicMap& q) {
    std::int64_t q_max_down = 0;
    for (const auto& d : q.window_)
        if (d)
            q_max_down = std::max(q_max_down, -*d);
    const std::uint64_t n0 = std::max<std::uint64_t>(
        q.head_len(), p.head_len() + static_cast<std::uint64_t>(q_max_down));
    const std::uint64_t L = lcm_u64(p.period(), q.period());
    return PeriodicMap::sampled(n0, L, [&](std::uint64_t n) -> std::optional<std::uint64_t> {
        const auto mid = q.apply(n);
        if (!mid)
            return std::nullopt;
        return p.apply(*mid);
    });
}

PeriodicMap PeriodicMap::restrict_domain(const PeriodicSet& s) const {
    const std::uint64_t n0 = std::max<std::uint64_t>(head_.size(), s.head_len());
    const std::uint64_t L = lcm_u64(period(), s.period());
    return PeriodicMap::sampled(n0, L, [&](std::uint64_t n) -> std::optional<std::uint64_t> {
        if (!s.member(n))
            return std::nullopt;
        return apply(n);
    });
}

PeriodicSet PeriodicMap::domain() const {
    std::vector<bool> head(head_.size());
    for (std::uint64_t n = 0; n < head_.size(); ++n)
        head[n] = head_[n].has_value();
    std::vector<bool> res(window_.size());
    for (std::uint64_t r = 0; r < window_.size(); ++r)
        res[r] = window_[r].has_value();
    return PeriodicSet(std::move(head), std::move(res));
}

PeriodicSet PeriodicMap::range() const { return inverse().domain(); }

bool PeriodicMap::is_empty_map() const { return domain().is_empty(); }

bool PeriodicMap::is_total() const {
    for (const auto& v : head_)
        if (!v)
            return false;
    for (const auto& d : window_)
        if (!d)
            return false;
    return true;
}

FixedPointReport PeriodicMap::fixed_points() const {
    FixedPointReport report;
    report.period = period();
    bool any_defined = false;
    bool all_fixed = true;
    for (std::uint64_t n = 0; n < head_.size(); ++n) {
        if (!head_[n])
            continue;
        any_defined = true;
        if (*head_[n] == n)
            report.head_points.insert(n);
        else
            all_fixed = false;
    }
    for (std::uint64_t r = 0; r < window_.size(); ++r) {
        if (!window_[r])
            continue;
        any_defined = true;
        if (*window_[r] == 0)
            report.witness_residues.insert(r);
        else
            all_fixed = false;
    }
    if (any_defined && all_fixed) {
        report.kind = FixedPointReport::Kind::IdentityOnDomain;
    } else if (!report.witness_residues.empty()) {
        report.kind = FixedPointReport::Kind::Infinite;
    } else {
        report.kind = FixedPointReport::Kind::Finite;
        report.finite_points = report.head_points;
    }
    return report;
}

bool PeriodicMap::differs_infinitely(const ExactPerm& g) const {
    const std::uint64_t n0 = std::max<std::uint64_t>(head_.size(), g.head_len());
    const std::uint64_t L = lcm_u64(period(), g.period());
    for (std::uint64_t i = 0; i < L; ++i) {
        const std::uint64_t n = n0 + i;
        const auto v = apply(n);
        if (v && *v != g.apply(n))
            return true;
    }
    return false;
}

ExactPerm PeriodicMap::to_exact_perm() const {
    if (!is_total())
        throw UnsupportedDescriptor("to_exact_perm: map is not total");
    std::vector<std::uint64_t> head(head_.size());
    for (std::uint64_t n = 0; n < head_.size(); ++n)
        head[n] = *head_[n];
    std::vector<std::int64_t> window(window_.size());
    for (std::uint64_t r = 0; r < window_.size(); ++r)
        window[r] = *window_[r];
    return ExactPerm(std::move(head), std::move(window));
}

PeriodicSet map_preimage_of(const PeriodicMap& m, const PeriodicSet& target) {
    std::int64_t max_down = 0;
    for (const auto& w : m.window())
        if (w)
            max_down = std::max(max_down, -*w);
    const std::uint64_t n0 = std::max<std::uint64_t>(
        m.head_len(), target.head_len() + static_cast<std::uint64_t>(max_down));
    const std::uint64_t p = lcm_u64(m.period(), target.period());
    return PeriodicSet::sampled(n0, p, [&](std::uint64_t n) {
        const auto v = m.apply(n);
        return v && target.member(*v);
    });
}

PeriodicSet map_image_of(const PeriodicMap& m, const PeriodicSet& source) {
    return map_preimage_of(m.inverse(), source);
}

PeriodicSet localize_set(const PeriodicSet& s, const PeriodicSet& piece) {
    if (!piece.is_infinite())
        throw UnsupportedDescriptor("localize: piece must be infinite");
    const std::uint64_t d = piece.tail_density();
    const std::uint64_t x0 = std::max(piece.head_len(), s.head_len());
    const std::uint64_t k0 = piece.rank(x0) + d;
    const std::uint64_t local_period = d * (lcm_u64(piece.period(), s.period()) / piece.period());
    return PeriodicSet::sampled(k0, local_period,
                                [&](std::uint64_t k) { return s.member(piece.kth(k)); });
}

PeriodicMap conjugate_through_enumeration(const PeriodicMap& m, const PeriodicSet& s) {
    if (!s.is_infinite())
        throw UnsupportedDescriptor("conjugate: enumeration set must be infinite");
    const std::uint64_t d = s.tail_density();
    const std::uint64_t L = lcm_u64(s.period(), m.period());

    std::int64_t max_down = 0;
    for (const auto& w : m.window())
        if (w)
            max_down = std::max(max_down, -*w);
    const std::uint64_t x0 = std::max<std::uint64_t>(
        {m.head_len(), s.head_len(), s.head_len() + static_cast<std::uint64_t>(max_down)});
    const std::uint64_t k0 = s.rank(x0) + d;
    const std::uint64_t local_period = d * (L / s.period());

    return PeriodicMap::sampled(k0, local_period,
                                [&](std::uint64_t k) -> std::optional<std::uint64_t> {
                                    const std::uint64_t x = s.kth(k);
                                    const auto y = m.apply(x);
                                    if (!y || !s.member(*y))
                                        return std::nullopt;
                                    return s.rank(*y);
                                });
}

PartialInj push_pairs_into_set(const PartialInj& local, const PeriodicSet& s) {
    PartialInj out;
    for (const auto& [a, v] : local.pairs())
        out = out.with(s.kth(a), s.kth(v));
    return out;
}

} // namespace cofin
