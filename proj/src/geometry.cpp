#include "cellcast/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "cellcast/error.hpp"
#include "cellcast/log.hpp"
#include "cellcast/table.hpp"

namespace cellcast {

Window::Window(double side_length) : side_(side_length)
{
    if (!(side_length > 0.0) || !std::isfinite(side_length))
        throw ParameterError("window side length must be positive and finite, got " +
                             format_real(side_length));
}

double torus_distance_sq(Point a, Point b, double side)
{
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    dx = std::min(dx, side - dx);
    dy = std::min(dy, side - dy);
    return dx * dx + dy * dy;
}

PointPattern::PointPattern(Role role, Window window, std::vector<Point> points)
    : role_(role), window_(window), points_(std::move(points))
{
    const double s = window_.side();
    for (const auto& p : points_) {
        if (!(p.x >= 0.0 && p.x < s && p.y >= 0.0 && p.y < s))
            throw ParameterError("point (" + format_real(p.x) + ", " + format_real(p.y) +
                                 ") lies outside the window");
    }
}

namespace {

double wrap(double v, double side)
{
    double r = std::fmod(v, side);
    if (r < 0.0)
        r += side;
    // fmod of a tiny negative value can round up to exactly `side`.
    return r < side ? r : 0.0;
}

} // namespace

PointPattern PointPattern::translated(double dx, double dy) const
{
    const double s = window_.side();
    std::vector<Point> moved;
    moved.reserve(points_.size());
    for (const auto& p : points_)
        moved.push_back({wrap(p.x + dx, s), wrap(p.y + dy, s)});
    return PointPattern(role_, window_, std::move(moved));
}

std::uint64_t CellCensus::total() const
{
    std::uint64_t sum = 0;
    for (auto c : counts)
        sum += c;
    return sum;
}

PointPattern sample_ppp(double density, const Window& window, Role role, RandomStream& rng)
{
    if (!(density > 0.0) || !std::isfinite(density))
        throw ParameterError("PPP density must be positive, got " + format_real(density));
    const double side = window.side();
    const std::uint64_t n = rng.poisson(density * window.area());
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        double x = rng.uniform(side);
        double y = rng.uniform(side);
        pts.push_back({x, y});
    }
    return PointPattern(role, window, std::move(pts));
}

PointPattern thin(const PointPattern& pattern, double alpha, RandomStream& rng)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ParameterError("thinning probability must lie in [0, 1], got " + format_real(alpha));
    std::vector<Point> kept;
    kept.reserve(static_cast<std::size_t>(alpha * static_cast<double>(pattern.size())) + 16);
    for (const auto& p : pattern.points()) {
        // One draw per point regardless of alpha keeps streams aligned.
        if (rng.uniform() < alpha)
            kept.push_back(p);
    }
    return PointPattern(pattern.role(), pattern.window(), std::move(kept));
}

PointPattern sample_bs_nonempty(double density, const Window& window, RandomStream& rng,
                                std::size_t* redraws)
{
    std::size_t empty_draws = 0;
    for (;;) {
        auto bss = sample_ppp(density, window, Role::BS, rng);
        if (!bss.empty()) {
            if (redraws)
                *redraws = empty_draws;
            return bss;
        }
        ++empty_draws;
        log::warn("empty BS pattern drawn (stream " + std::to_string(rng.stream_index()) +
                  "), resampling");
    }
}

namespace {

/// Uniform bucket grid over BS positions for nearest-neighbour queries.
class BucketGrid
{
  public:
    BucketGrid(std::span<const Point> sites, double side) : sites_(sites), side_(side)
    {
        // About two sites per bucket.
        auto g = static_cast<std::size_t>(std::sqrt(static_cast<double>(sites.size()) / 2.0));
        dim_ = std::clamp<std::size_t>(g, 1, 4096);
        bucket_side_ = side_ / static_cast<double>(dim_);

        std::vector<std::size_t> fill(dim_ * dim_ + 1, 0);
        for (const auto& p : sites_)
            ++fill[bucket_of(p) + 1];
        for (std::size_t i = 1; i < fill.size(); ++i)
            fill[i] += fill[i - 1];
        offsets_ = fill;
        members_.resize(sites_.size());
        // Stable fill keeps members of each bucket in increasing index order.
        for (std::size_t i = 0; i < sites_.size(); ++i)
            members_[fill[bucket_of(sites_[i])]++] = i;
    }

    std::size_t nearest(Point q) const
    {
        const std::size_t cx = coord_of(q.x);
        const std::size_t cy = coord_of(q.y);
        double best_d2 = std::numeric_limits<double>::infinity();
        std::size_t best = std::numeric_limits<std::size_t>::max();

        auto consider_bucket = [&](std::size_t bx, std::size_t by) {
            const std::size_t b = by * dim_ + bx;
            for (std::size_t k = offsets_[b]; k < offsets_[b + 1]; ++k) {
                const std::size_t idx = members_[k];
                const double d2 = torus_distance_sq(q, sites_[idx], side_);
                if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
                    best_d2 = d2;
                    best = idx;
                }
            }
        };

        const auto dim = static_cast<std::ptrdiff_t>(dim_);
        for (std::ptrdiff_t r = 0;; ++r) {
            if (2 * r + 1 >= dim) {
                // Ring wraps onto itself: finish with every bucket not yet visited.
                for (std::size_t by = 0; by < dim_; ++by)
                    for (std::size_t bx = 0; bx < dim_; ++bx)
                        if (ring_distance(bx, cx) >= r || ring_distance(by, cy) >= r)
                            consider_bucket(bx, by);
                return best;
            }
            for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
                const bool edge_row = (dy == -r || dy == r);
                for (std::ptrdiff_t dx = -r; dx <= r; dx += (edge_row || r == 0) ? 1 : 2 * r) {
                    consider_bucket(wrap_index(static_cast<std::ptrdiff_t>(cx) + dx),
                                    wrap_index(static_cast<std::ptrdiff_t>(cy) + dy));
                    if (r == 0)
                        break;
                }
            }
            // Unvisited sites are at least r bucket widths away; the margin
            // absorbs rounding in bucket placement.
            const double reach = static_cast<double>(r) * bucket_side_;
            if (best_d2 < reach * reach * (1.0 - 1e-9))
                return best;
        }
    }

  private:
    std::size_t coord_of(double v) const
    {
        auto c = static_cast<std::size_t>(v / bucket_side_);
        return std::min(c, dim_ - 1);
    }
    std::size_t bucket_of(Point p) const { return coord_of(p.y) * dim_ + coord_of(p.x); }
    std::size_t wrap_index(std::ptrdiff_t i) const
    {
        const auto d = static_cast<std::ptrdiff_t>(dim_);
        return static_cast<std::size_t>(((i % d) + d) % d);
    }
    std::ptrdiff_t ring_distance(std::size_t a, std::size_t b) const
    {
        const auto d = static_cast<std::ptrdiff_t>(dim_);
        std::ptrdiff_t diff = std::abs(static_cast<std::ptrdiff_t>(a) - static_cast<std::ptrdiff_t>(b));
        return std::min(diff, d - diff);
    }

    std::span<const Point> sites_;
    double side_;
    std::size_t dim_ = 1;
    double bucket_side_ = 0.0;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> members_;
};

} // namespace

CellCensus assign_nearest(const PointPattern& users, const PointPattern& bss)
{
    if (bss.empty())
        throw DegenerateInputError("nearest-BS assignment needs at least one BS");
    if (!(users.window() == bss.window()))
        throw ParameterError("user and BS patterns use different windows");

    CellCensus census;
    census.counts.assign(bss.size(), 0);
    census.assignment.reserve(users.size());
    const BucketGrid grid(bss.points(), bss.window().side());
    for (const auto& u : users.points()) {
        const std::size_t b = grid.nearest(u);
        census.assignment.push_back(b);
        ++census.counts[b];
    }
    return census;
}

std::vector<SnapshotRow> snapshot_export(const PointPattern& bss, const PointPattern& users,
                                         const CellCensus& census)
{
    if (census.counts.size() != bss.size() || census.assignment.size() != users.size())
        throw ParameterError("census does not match the supplied patterns");
    std::vector<SnapshotRow> rows;
    rows.reserve(bss.size() + users.size());
    for (const auto& p : bss.points())
        rows.push_back({Role::BS, p, std::nullopt});
    for (std::size_t j = 0; j < users.size(); ++j)
        rows.push_back({Role::MU, users.points()[j], census.assignment[j]});
    return rows;
}

void write_snapshot_csv(std::ostream& os, std::span<const SnapshotRow> rows)
{
    os << "role,x,y,cell\n";
    for (const auto& r : rows) {
        const std::string cell = r.cell ? std::to_string(*r.cell) : std::string();
        write_row(os, {r.role == Role::BS ? "bs" : "mu", format_real(r.position.x),
                       format_real(r.position.y), cell});
    }
}

} // namespace cellcast
