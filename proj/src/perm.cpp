#include "cofin/perm.hpp"

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

} // namespace

ExactPerm::ExactPerm(std::vector<std::uint64_t> head, std::vector<std::int64_t> window)
    : head_(std::move(head)), window_(std::move(window)) {
    validate();
    canonicalize();
}

ExactPerm ExactPerm::block(std::uint64_t size, const std::vector<std::uint64_t>& pattern) {
    if (size == 0 || pattern.size() != size)
        throw InvalidPerm("block: pattern length must equal block size");
    std::vector<std::int64_t> window(size);
    for (std::uint64_t r = 0; r < size; ++r)
        window[r] = static_cast<std::int64_t>(pattern[r]) - static_cast<std::int64_t>(r);
    return ExactPerm({}, window);
}

ExactPerm ExactPerm::table_over_identity(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
    std::uint64_t bound = 0;
    for (const auto& [a, v] : pairs)
        bound = std::max({bound, a + 1, v + 1});
    std::vector<std::uint64_t> head(bound);
    for (std::uint64_t n = 0; n < bound; ++n)
        head[n] = n;
    for (const auto& [a, v] : pairs)
        head[a] = v;
    return ExactPerm(std::move(head), {0});
}

void ExactPerm::validate() const {
    const std::uint64_t p = static_cast<std::uint64_t>(window_.size());
    if (p == 0)
        throw InvalidPerm("window must be non-empty");
    const std::int64_t n0 = static_cast<std::int64_t>(head_.size());

    // Tail image bases and residue balance. The image of the tail class r
    // is the progression b_r, b_r + p, ... with b_r = n0 + r + window[r];
    // the tail map is injective exactly when the b_r are distinct mod p.
    std::vector<std::int64_t> base(p);
    std::vector<bool> residue_seen(p, false);
    for (std::uint64_t r = 0; r < p; ++r) {
        base[r] = n0 + static_cast<std::int64_t>(r) + window_[r];
        if (base[r] < 0)
            throw InvalidPerm("tail image below zero");
        const std::uint64_t res = static_cast<std::uint64_t>(base[r]) % p;
        if (residue_seen[res])
            throw InvalidPerm("window residues not balanced");
        residue_seen[res] = true;
    }

    // The naturals missed by the tail form a finite set M; the head must be
    // exactly a bijection onto M.
    std::set<std::uint64_t> missed;
    for (std::uint64_t r = 0; r < p; ++r) {
        const std::uint64_t b = static_cast<std::uint64_t>(base[r]);
        for (std::uint64_t m = b % p; m < b; m += p)
            missed.insert(m);
    }
    if (missed.size() != head_.size())
        throw InvalidPerm("head does not cover the tail gaps");
    std::set<std::uint64_t> head_vals(head_.begin(), head_.end());
    if (head_vals.size() != head_.size())
        throw InvalidPerm("head images not distinct");
    if (head_vals != missed)
        throw InvalidPerm("head images must equal the tail gaps");
}

void ExactPerm::canonicalize() {
    // Minimal period: smallest divisor d of p with a d-periodic window.
    const std::uint64_t p = static_cast<std::uint64_t>(window_.size());
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
    // Shortest head: absorb positions that already follow the periodic rule.
    while (!head_.empty()) {
        const std::uint64_t n = head_.size() - 1;
        const std::int64_t cand = static_cast<std::int64_t>(n) + window_.back();
        if (cand < 0 || head_[n] != static_cast<std::uint64_t>(cand))
            break;
        head_.pop_back();
        // Re-anchor the window one position earlier.
        std::rotate(window_.rbegin(), window_.rbegin() + 1, window_.rend());
    }
}

ExactPerm ExactPerm::inverse() const {
    const std::uint64_t p = period();
    const std::int64_t n0 = static_cast<std::int64_t>(head_.size());

    std::int64_t max_up = 0;
    std::int64_t max_down = 0;
    for (const std::int64_t d : window_) {
        max_up = std::max(max_up, d);
        max_down = std::max(max_down, -d);
    }
    std::uint64_t max_head_img = 0;
    for (const std::uint64_t v : head_)
        max_head_img = std::max(max_head_img, v + 1);

    // Beyond inv_head_len every preimage lies in the tail of *this.
    const std::uint64_t inv_head_len =
        std::max<std::uint64_t>(static_cast<std::uint64_t>(n0 + max_up), max_head_img);

    // Tail window of the inverse: class s is hit by the unique tail class r
    // with (r + window[r]) = s (mod p), with displacement -window[r].
    std::vector<std::int64_t> inv_window(p);
    std::vector<std::int64_t> disp_for_residue(p);
    const std::int64_t P = static_cast<std::int64_t>(p);
    for (std::uint64_t r = 0; r < p; ++r) {
        const std::int64_t rel = static_cast<std::int64_t>(r) + window_[r];
        const std::uint64_t s = static_cast<std::uint64_t>(((rel % P) + P) % P);
        disp_for_residue[s] = -window_[r];
    }
    for (std::uint64_t i = 0; i < p; ++i) {
        const std::uint64_t s = (inv_head_len - static_cast<std::uint64_t>(n0) + i) % p;
        inv_window[i] = disp_for_residue[s];
    }

    // Head by exhaustive preimage search over a range covering all of them.
    const std::uint64_t scan =
        std::max<std::uint64_t>(static_cast<std::uint64_t>(n0),
                                inv_head_len + static_cast<std::uint64_t>(max_down)) +
        p + 1;
    std::vector<std::uint64_t> inv_head(inv_head_len);
    std::vector<bool> found(inv_head_len, false);
    for (std::uint64_t n = 0; n < scan; ++n) {
        const std::uint64_t m = apply(n);
        if (m < inv_head_len) {
            inv_head[m] = n;
            found[m] = true;
        }
    }
    for (std::uint64_t m = 0; m < inv_head_len; ++m)
        if (!found[m])
            throw InvalidPerm("inverse: preimage not found (perm not surjective)");

    return ExactPerm(std::move(inv_head), std::move(inv_window));
}

ExactPerm compose(const ExactPerm& p, const ExactPerm& q) {
    std::int64_t q_max_down = 0;
    for (const std::int64_t d : q.window_)
        q_max_down = std::max(q_max_down, -d);

    // Beyond n0 both steps use their periodic rule.
    const std::uint64_t n0 = std::max<std::uint64_t>(
        q.head_len(), p.head_len() + static_cast<std::uint64_t>(q_max_down));
    const std::uint64_t lcm = p.period() / gcd_u64(p.period(), q.period()) * q.period();

    std::vector<std::uint64_t> head(n0);
    for (std::uint64_t n = 0; n < n0; ++n)
        head[n] = p.apply(q.apply(n));
    std::vector<std::int64_t> window(lcm);
    for (std::uint64_t i = 0; i < lcm; ++i) {
        const std::uint64_t n = n0 + i;
        window[i] = static_cast<std::int64_t>(p.apply(q.apply(n))) - static_cast<std::int64_t>(n);
    }
    return ExactPerm(std::move(head), std::move(window));
}

FixedPointReport ExactPerm::fixed_points() const {
    FixedPointReport report;
    report.period = period();
    for (std::uint64_t n = 0; n < head_.size(); ++n)
        if (head_[n] == n)
            report.head_points.insert(n);
    for (std::uint64_t r = 0; r < window_.size(); ++r)
        if (window_[r] == 0)
            report.witness_residues.insert(r);
    if (!report.witness_residues.empty()) {
        report.kind = FixedPointReport::Kind::Infinite;
    } else {
        report.kind = FixedPointReport::Kind::Finite;
        report.finite_points = report.head_points;
    }
    return report;
}

PartialInj::PartialInj(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
    for (const auto& [a, v] : pairs) {
        if (fwd_.count(a))
            throw DuplicateArg("duplicate argument " + std::to_string(a));
        if (inv_.count(v))
            throw DuplicateVal("duplicate value " + std::to_string(v));
        fwd_.emplace(a, v);
        inv_.emplace(v, a);
    }
}

PartialInj PartialInj::with(std::uint64_t arg, std::uint64_t val) const {
    if (fwd_.count(arg))
        throw DuplicateArg("duplicate argument " + std::to_string(arg));
    if (inv_.count(val))
        throw DuplicateVal("duplicate value " + std::to_string(val));
    PartialInj out(*this);
    out.fwd_.emplace(arg, val);
    out.inv_.emplace(val, arg);
    return out;
}

std::optional<std::uint64_t> PartialInj::apply(std::uint64_t arg) const {
    const auto it = fwd_.find(arg);
    if (it == fwd_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::uint64_t> PartialInj::apply_inv(std::uint64_t val) const {
    const auto it = inv_.find(val);
    if (it == inv_.end())
        return std::nullopt;
    return it->second;
}

bool PartialInj::contains(std::uint64_t arg, std::uint64_t val) const {
    const auto it = fwd_.find(arg);
    return it != fwd_.end() && it->second == val;
}

bool PartialInj::contains_all(const PartialInj& other) const {
    for (const auto& [a, v] : other.fwd_)
        if (!contains(a, v))
            return false;
    return true;
}

namespace {

std::uint64_t mex_of(const std::map<std::uint64_t, std::uint64_t>& m) {
    std::uint64_t expect = 0;
    for (const auto& [k, v] : m) {
        (void)v;
        if (k != expect)
            return expect;
        ++expect;
    }
    return expect;
}

} // namespace

std::uint64_t PartialInj::mex_args() const { return mex_of(fwd_); }
std::uint64_t PartialInj::mex_vals() const { return mex_of(inv_); }

std::set<std::uint64_t> PartialInj::args() const {
    std::set<std::uint64_t> out;
    for (const auto& [a, v] : fwd_) {
        (void)v;
        out.insert(a);
    }
    return out;
}

std::set<std::uint64_t> PartialInj::vals() const {
    std::set<std::uint64_t> out;
    for (const auto& [v, a] : inv_) {
        (void)a;
        out.insert(v);
    }
    return out;
}

} // namespace cofin
