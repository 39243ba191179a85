#ifndef JUNCTION_GLOBAL_PLANNER_HPP
#define JUNCTION_GLOBAL_PLANNER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "junction/geometry.hpp"
#include "junction/motion_primitives.hpp"
#include "junction/vehicle_model.hpp"

namespace junction {

struct Configuration {
  double x{0.0};
  double y{0.0};
  double theta{0.0};

  Pose pose() const { return {x, y, theta}; }
};

/// Deduplication key for the closed set. Position bins are half the
/// primitive arc length; heading bins are 10 degrees.
struct DiscreteKey {
  int ix{0};
  int iy{0};
  int itheta{0};

  bool operator==(const DiscreteKey&) const = default;
};

struct DiscreteKeyHash {
  size_t operator()(const DiscreteKey& k) const {
    size_t h = static_cast<size_t>(k.ix) * 73856093u;
    h ^= static_cast<size_t>(k.iy) * 19349663u;
    h ^= static_cast<size_t>(k.itheta) * 83492791u;
    return h;
  }
};

struct PlannerWeights {
  // heuristic: spatial proximity, orientation alignment, steering effort
  double w_hd{1.0};
  double w_htheta{2.7};
  double w_hphi{15.0};
  // transition cost: path length, steering effort, obstacle clearance
  double w_cd{1.0};
  double w_cphi{5.0};
  double w_cc{0.0};
  double d_safe{2.0};  // clearance distance used by the w_cc term
};

struct GoalSpec {
  Point2 center;
  double theta_G{0.0};
  double epsilon{1.0};                       // m
  double delta_theta{15.0 * M_PI / 180.0};   // rad
};

struct Bounds {
  double x_min{0.0};
  double x_max{0.0};
  double y_min{0.0};
  double y_max{0.0};

  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

struct Environment {
  std::vector<Segment> obstacles;
  std::vector<std::vector<Point2>> forbidden_regions;  // convex polygons
  Bounds bounds;
};

struct PlannedPath {
  std::vector<Configuration> configurations;
  std::vector<int> primitive_ids;  // one per transition
  std::vector<Pose> dense_poses;
  double cost{0.0};
  long nodes_expanded{0};
};

struct SearchLimits {
  long max_expansions{200000};
  double max_seconds{20.0};
};

enum class SearchStatus { Success, NoPath, StartInvalid };

struct ExpansionRecord {
  DiscreteKey key;
  double g{0.0};
  double h{0.0};
  DiscreteKey parent;
  bool has_parent{false};
};

struct SearchResult {
  SearchStatus status{SearchStatus::NoPath};
  PlannedPath path;
  long nodes_expanded{0};
  double seconds{0.0};
};

/// True iff every pose of the primitive applied at q keeps the dual-circle
/// footprint clear of all obstacle segments, stays inside the bounds, and no
/// sampled point lies inside a forbidden region.
bool is_valid(const Configuration& q, const MotionPrimitive& m,
              const Environment& env, const VehicleParams& params);

double transition_cost(const Configuration& q, const MotionPrimitive& m,
                       const Environment& env, const PlannerWeights& weights);

struct Successor {
  Configuration config;
  double cost{0.0};
  int primitive_id{-1};
};

/// Valid successors of q, generated on demand (the lattice is never
/// materialized up front).
std::vector<Successor> neighbors(const Configuration& q,
                                 const PrimitiveSet& set,
                                 const Environment& env,
                                 const PlannerWeights& weights,
                                 const VehicleParams& params);

/// Multi-criteria heuristic. min_turn_radius = L / tan(delta_max) converts
/// the bearing misalignment into a turn-effort length for the h_phi term.
/// Near the goal (inside 3 epsilon) the orientation term blends from
/// bearing alignment to goal-heading alignment.
double heuristic(const Configuration& q, const GoalSpec& goal,
                 const PlannerWeights& weights, double min_turn_radius);

bool is_goal(const Configuration& q, const GoalSpec& goal);

DiscreteKey make_key(const Configuration& q, double position_resolution);

/// Successor provider. The default expands the lattice lazily through
/// neighbors(); tests may inject a pre-materialized graph instead.
using NeighborFn = std::function<std::vector<Successor>(const Configuration&)>;

SearchResult search(const Configuration& start, const GoalSpec& goal,
                    const PrimitiveSet& set, const Environment& env,
                    const PlannerWeights& weights, const SearchLimits& limits,
                    const VehicleParams& params,
                    std::vector<ExpansionRecord>* trace = nullptr,
                    const NeighborFn* custom_neighbors = nullptr);

}  // namespace junction

#endif  // JUNCTION_GLOBAL_PLANNER_HPP
