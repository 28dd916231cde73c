#include "cellcast/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <string>

#include "cellcast/error.hpp"
#include "cellcast/log.hpp"
#include "cellcast/table.hpp"

namespace cellcast {

void validate_catalog(std::span<const Content> catalog)
{
    std::set<ContentId> seen;
    for (const auto& c : catalog) {
        if (!seen.insert(c.id).second)
            throw ParameterError("duplicate content id " + std::to_string(c.id));
        if (!(c.popularity >= 0.0) || !std::isfinite(c.popularity))
            throw ParameterError("content " + std::to_string(c.id) +
                                 " has invalid popularity " + format_real(c.popularity));
    }
}

std::vector<Content> rank_by_popularity(std::span<const Content> catalog)
{
    validate_catalog(catalog);
    std::vector<Content> ranked(catalog.begin(), catalog.end());
    std::sort(ranked.begin(), ranked.end(), [](const Content& a, const Content& b) {
        if (a.popularity != b.popularity)
            return a.popularity > b.popularity;
        return a.id < b.id;
    });
    return ranked;
}

std::map<ContentId, std::size_t> BroadcastSchedule::counts() const
{
    std::map<ContentId, std::size_t> out;
    for (auto id : slots)
        ++out[id];
    return out;
}

namespace {

std::vector<Content> top_n(std::span<const Content> catalog, std::size_t n, std::size_t period)
{
    if (n == 0)
        throw ParameterError("top-n must be >= 1");
    if (n > catalog.size())
        throw ParameterError("top-n (" + std::to_string(n) + ") exceeds catalog size (" +
                             std::to_string(catalog.size()) + ")");
    if (period < n)
        throw ParameterError("period (" + std::to_string(period) + ") must be >= top-n (" +
                             std::to_string(n) + ")");
    auto ranked = rank_by_popularity(catalog);
    ranked.resize(n);
    return ranked;
}

} // namespace

BroadcastSchedule schedule_equal(std::span<const Content> catalog, std::size_t n,
                                 std::size_t period_slots)
{
    const auto top = top_n(catalog, n, period_slots);
    BroadcastSchedule s{period_slots, {}};
    s.slots.reserve(period_slots);
    for (std::size_t i = 0; i < period_slots; ++i)
        s.slots.push_back(top[i % n].id);
    return s;
}

std::vector<std::size_t> apportion_largest_remainder(std::span<const double> weights,
                                                     std::span<const ContentId> ids,
                                                     std::size_t seats)
{
    const std::size_t n = weights.size();
    if (ids.size() != n)
        throw ParameterError("weights and ids differ in length");
    if (n == 0)
        throw ParameterError("cannot apportion among zero contents");
    if (seats < n)
        throw ParameterError("need at least one seat per content");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0))
        throw ParameterError("weights are all zero");

    // Seat priority q_i - s_i scaled by the total weight: seats * w_i - s_i * W.
    // With integer-valued weights every term is exact, so ties are genuine.
    const double seats_d = static_cast<double>(seats);
    std::vector<std::size_t> counts(n, 1);
    auto priority = [&](std::size_t i) {
        return seats_d * weights[i] - static_cast<double>(counts[i]) * total;
    };
    auto lower = [&](std::size_t a, std::size_t b) {
        const double pa = priority(a), pb = priority(b);
        if (pa != pb)
            return pa < pb;
        return ids[a] > ids[b];
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(lower)> heap(lower);
    for (std::size_t i = 0; i < n; ++i)
        heap.push(i);
    for (std::size_t assigned = n; assigned < seats; ++assigned) {
        const std::size_t i = heap.top();
        heap.pop();
        ++counts[i];
        heap.push(i);
    }
    return counts;
}

std::vector<ContentId> interleave(std::span<const ContentId> ids, std::span<const std::size_t> counts)
{
    if (ids.size() != counts.size())
        throw ParameterError("ids and counts differ in length");
    struct Occurrence
    {
        std::size_t owner;
        std::size_t index;  // m-th copy; ideal position (m + 1/2) / counts[owner]
    };
    std::vector<Occurrence> occ;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t m = 0; m < counts[i]; ++m)
            occ.push_back({i, m});
    std::stable_sort(occ.begin(), occ.end(), [&](const Occurrence& a, const Occurrence& b) {
        // (2a.index + 1) / (2 counts[a]) < (2b.index + 1) / (2 counts[b]), in integers.
        const auto lhs = (2 * a.index + 1) * counts[b.owner];
        const auto rhs = (2 * b.index + 1) * counts[a.owner];
        if (lhs != rhs)
            return lhs < rhs;
        return a.owner < b.owner;
    });
    std::vector<ContentId> out;
    out.reserve(occ.size());
    for (const auto& o : occ)
        out.push_back(ids[o.owner]);
    return out;
}

BroadcastSchedule schedule_weighted(std::span<const Content> catalog, std::size_t n,
                                    std::size_t period_slots)
{
    const auto top = top_n(catalog, n, period_slots);
    std::vector<double> weights;
    std::vector<ContentId> ids;
    for (const auto& c : top) {
        weights.push_back(c.popularity);
        ids.push_back(c.id);
    }
    if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
        log::warn("all top-n popularities are zero; using equal weights");
        return schedule_equal(catalog, n, period_slots);
    }
    const auto counts = apportion_largest_remainder(weights, ids, period_slots);
    return {period_slots, interleave(ids, counts)};
}

std::optional<ContentId> plurality_winner(const VoteTally& tally)
{
    std::optional<ContentId> best;
    std::uint64_t best_votes = 0;
    // std::map iterates ids in increasing order, so strict '>' keeps the lower id on ties.
    for (const auto& [id, votes] : tally.counts) {
        if (votes > best_votes) {
            best = id;
            best_votes = votes;
        }
    }
    return best;
}

std::vector<VotingRound> run_voting(std::span<const Content> catalog, const VotingConfig& config,
                                    RandomStream& rng)
{
    if (catalog.empty())
        throw ParameterError("voting needs a non-empty catalog");
    if (config.rounds == 0)
        throw ParameterError("voting needs at least one round");
    if (!(config.zipf_exponent >= 0.0) || !std::isfinite(config.zipf_exponent))
        throw ParameterError("zipf exponent must be >= 0, got " + format_real(config.zipf_exponent));
    const auto ranked = rank_by_popularity(catalog);

    std::vector<VotingRound> out;
    out.reserve(config.rounds);
    std::optional<ContentId> previous;
    for (std::size_t r = 0; r < config.rounds; ++r) {
        std::vector<ContentId> ballot;
        for (const auto& c : ranked)
            if (!(config.exclude_previous_winner && previous && *previous == c.id))
                ballot.push_back(c.id);
        // A single-content catalog cannot exclude its only entry.
        if (ballot.empty())
            ballot.push_back(ranked.front().id);

        std::vector<double> cdf(ballot.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < ballot.size(); ++i) {
            acc += std::pow(static_cast<double>(i + 1), -config.zipf_exponent);
            cdf[i] = acc;
        }

        VoteTally tally;
        for (auto id : ballot)
            tally.counts[id] = 0;
        for (std::uint64_t v = 0; v < config.voters; ++v) {
            const double u = rng.uniform(acc);
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end())
                --it;
            ++tally.counts[ballot[static_cast<std::size_t>(it - cdf.begin())]];
        }

        auto winner = plurality_winner(tally);
        const bool degenerate = !winner.has_value();
        if (degenerate) {
            log::warn("voting round " + std::to_string(r) +
                      " received no votes; defaulting to the most popular content");
            winner = ballot.front();
        }
        out.push_back({r, std::move(tally), *winner, degenerate});
        previous = *winner;
    }
    return out;
}

std::vector<ContentId> voting_playlist(std::span<const VotingRound> rounds)
{
    std::vector<ContentId> out;
    out.reserve(rounds.size());
    for (const auto& r : rounds)
        out.push_back(r.winner);
    return out;
}

EfficiencyReport schedule_efficiency(std::span<const ContentId> slots,
                                     const std::map<ContentId, double>& demand,
                                     const ModelParams& model, const EconParams& econ)
{
    EfficiencyReport rep;
    rep.per_slot.reserve(slots.size());
    for (auto id : slots) {
        auto it = demand.find(id);
        if (it == demand.end())
            throw ParameterError("no audience rating for content " + std::to_string(id));
        const double a = it->second;
        if (!(a >= 0.0 && a <= 1.0))
            throw ParameterError("audience rating for content " + std::to_string(id) +
                                 " must lie in [0, 1], got " + format_real(a));
        const double cr = cost_reduction(model.with_alpha(a), econ);
        rep.per_slot.push_back(cr);
        rep.total += cr;
    }
    return rep;
}

void write_schedule_csv(std::ostream& os, std::span<const ContentId> slots)
{
    os << "slot,content_id\n";
    for (std::size_t i = 0; i < slots.size(); ++i)
        write_row(os, {std::to_string(i), std::to_string(slots[i])});
}

void write_transcript_csv(std::ostream& os, std::span<const VotingRound> rounds)
{
    os << "round,content_id,votes,winner_flag\n";
    for (const auto& r : rounds)
        for (const auto& [id, votes] : r.tally.counts)
            write_row(os, {std::to_string(r.round), std::to_string(id), std::to_string(votes),
                           id == r.winner ? "1" : "0"});
}

} // namespace cellcast
