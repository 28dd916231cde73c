#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cellcast/random.hpp"

namespace cellcast {

/// Square observation window with periodic (torus) boundary.
class Window
{
  public:
    explicit Window(double side_length);

    double side() const { return side_; }
    double area() const { return side_ * side_; }

    friend bool operator==(const Window&, const Window&) = default;

  private:
    double side_;
};

struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

enum class Role { BS, MU };

/// Squared shortest distance between two points on the torus of side `side`.
double torus_distance_sq(Point a, Point b, double side);

/// Finite point set inside a torus window.
class PointPattern
{
  public:
    PointPattern(Role role, Window window, std::vector<Point> points = {});

    Role role() const { return role_; }
    const Window& window() const { return window_; }
    std::span<const Point> points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    /// Copy with every point shifted by (dx, dy), wrapped into the window.
    PointPattern translated(double dx, double dy) const;

  private:
    Role role_;
    Window window_;
    std::vector<Point> points_;
};

/// Realization-level subscriber census: counts[i] is the number of users
/// whose nearest BS is BS i; assignment[j] is the BS index of user j.
struct CellCensus
{
    std::vector<std::uint64_t> counts;
    std::vector<std::size_t> assignment;

    std::uint64_t total() const;
};

/// Homogeneous PPP of `density` points per unit area on `window`.
PointPattern sample_ppp(double density, const Window& window, Role role, RandomStream& rng);

/// Independent thinning: each point kept with probability `alpha`.
PointPattern thin(const PointPattern& pattern, double alpha, RandomStream& rng);

/// Nearest-BS assignment under the torus metric. Ties go to the lowest BS
/// index. Throws DegenerateInputError when `bss` is empty.
CellCensus assign_nearest(const PointPattern& users, const PointPattern& bss);

/// Samples a BS pattern, redrawing (and logging) while the draw is empty.
/// `redraws` receives the number of empty draws discarded.
PointPattern sample_bs_nonempty(double density, const Window& window, RandomStream& rng,
                                std::size_t* redraws = nullptr);

struct SnapshotRow
{
    Role role;
    Point position;
    std::optional<std::size_t> cell;
};

/// Row set for plotting a network snapshot: BS rows first, then users with
/// their serving BS index.
std::vector<SnapshotRow> snapshot_export(const PointPattern& bss, const PointPattern& users,
                                         const CellCensus& census);

/// Writes rows as `role,x,y,cell` text.
void write_snapshot_csv(std::ostream& os, std::span<const SnapshotRow> rows);

} // namespace cellcast
