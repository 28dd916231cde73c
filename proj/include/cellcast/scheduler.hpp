#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cellcast/analytic.hpp"
#include "cellcast/economics.hpp"
#include "cellcast/random.hpp"

namespace cellcast {

using ContentId = std::int64_t;

struct Content
{
    ContentId id;
    double popularity;  ///< non-negative weight, e.g. cumulative views
};

/// Throws ParameterError on duplicate ids or negative/non-finite popularity.
void validate_catalog(std::span<const Content> catalog);

/// Catalog sorted by decreasing popularity; equal popularity ranks the
/// lower id first.
std::vector<Content> rank_by_popularity(std::span<const Content> catalog);

struct BroadcastSchedule
{
    std::size_t period_slots = 0;
    std::vector<ContentId> slots;

    /// Occurrences per content id.
    std::map<ContentId, std::size_t> counts() const;
};

/// Top-n contents in round-robin order; higher-ranked contents take the
/// extra slots when n does not divide the period.
BroadcastSchedule schedule_equal(std::span<const Content> catalog, std::size_t n,
                                 std::size_t period_slots);

/// Largest-remainder apportionment of `seats` proportional to `weights`,
/// with at least one seat each (requires seats >= weights.size()).
/// Equal priorities go to the entry with the lower id. Weights must not be
/// all zero.
std::vector<std::size_t> apportion_largest_remainder(std::span<const double> weights,
                                                     std::span<const ContentId> ids,
                                                     std::size_t seats);

/// Orders `counts[i]` copies of `ids[i]` so repeats of one content are
/// spread evenly over the period.
std::vector<ContentId> interleave(std::span<const ContentId> ids,
                                  std::span<const std::size_t> counts);

/// Top-n contents with slot counts proportional to popularity. Falls back to
/// schedule_equal when every top-n popularity is zero.
BroadcastSchedule schedule_weighted(std::span<const Content> catalog, std::size_t n,
                                    std::size_t period_slots);

struct VoteTally
{
    std::map<ContentId, std::uint64_t> counts;
};

/// Plurality winner, ties to the lower id. Empty when no votes were cast.
std::optional<ContentId> plurality_winner(const VoteTally& tally);

struct VotingConfig
{
    std::uint64_t voters = 0;
    std::size_t rounds = 1;
    double zipf_exponent = 1.0;
    /// Remove the previous round's winner from the ballot.
    bool exclude_previous_winner = false;
};

struct VotingRound
{
    std::size_t round;
    VoteTally tally;
    ContentId winner;
    bool degenerate;  ///< no votes cast; winner is the top-ranked eligible content
};

/// Each round every voter picks one eligible content with probability
/// proportional to rank^-s (rank by popularity). The round's winner is
/// broadcast in the following period.
std::vector<VotingRound> run_voting(std::span<const Content> catalog, const VotingConfig& config,
                                    RandomStream& rng);

/// Content played in each period: period r + 1 carries round r's winner.
/// Entry 0 corresponds to period 1.
std::vector<ContentId> voting_playlist(std::span<const VotingRound> rounds);

struct EfficiencyReport
{
    std::vector<double> per_slot;
    double total = 0.0;
};

/// Cost reduction of broadcasting each slot's content at its audience
/// rating `demand.at(id)`; `model`'s own alpha is ignored.
EfficiencyReport schedule_efficiency(std::span<const ContentId> slots,
                                     const std::map<ContentId, double>& demand,
                                     const ModelParams& model, const EconParams& econ);

/// `slot,content_id`
void write_schedule_csv(std::ostream& os, std::span<const ContentId> slots);

/// `round,content_id,votes,winner_flag`, one row per ballot entry.
void write_transcript_csv(std::ostream& os, std::span<const VotingRound> rounds);

} // namespace cellcast
