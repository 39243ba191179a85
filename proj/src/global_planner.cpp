#include "junction/global_planner.hpp"

#include <chrono>
#include <cmath>
#include <queue>
#include <unordered_map>

namespace junction {

namespace {

constexpr double kHeadingResolution = 10.0 * M_PI / 180.0;

bool pose_clear(const Pose& pose, const Environment& env,
                const VehicleParams& params) {
  if (!env.bounds.contains(pose.x, pose.y)) return false;
  const Footprint fp = footprint_at(pose.x, pose.y, pose.theta, params);
  if (footprint_hits_infrastructure(fp, env.obstacles)) return false;
  const Point2 p{pose.x, pose.y};
  for (const auto& poly : env.forbidden_regions) {
    if (point_in_convex_polygon(p, poly)) return false;
  }
  return true;
}

double nearest_obstacle_distance(const Point2& p, const Environment& env) {
  double best = kInf;
  for (const Segment& s : env.obstacles) {
    best = std::min(best, point_segment_distance(p, s));
  }
  return best;
}

}  // namespace

bool is_valid(const Configuration& q, const MotionPrimitive& m,
              const Environment& env, const VehicleParams& params) {
  const GlobalPrimitive g = transform_to_global(m, q.pose());
  for (const Pose& pose : g.poses) {
    if (!pose_clear(pose, env, params)) return false;
  }
  return true;
}

double transition_cost(const Configuration& q, const MotionPrimitive& m,
                       const Environment& env, const PlannerWeights& weights) {
  double cost = weights.w_cd * m.arc_length + weights.w_cphi * std::abs(m.delta);
  if (weights.w_cc > 0.0 && !env.obstacles.empty()) {
    const GlobalPrimitive g = transform_to_global(m, q.pose());
    const double spacing =
        m.arc_length / static_cast<double>(g.collision_points.size() - 1);
    double penalty = 0.0;
    for (const Point2& p : g.collision_points) {
      const double d = nearest_obstacle_distance(p, env);
      penalty += std::max(0.0, weights.d_safe - d) * spacing;
    }
    cost += weights.w_cc * penalty;
  }
  return cost;
}

std::vector<Successor> neighbors(const Configuration& q,
                                 const PrimitiveSet& set,
                                 const Environment& env,
                                 const PlannerWeights& weights,
                                 const VehicleParams& params) {
  std::vector<Successor> out;
  out.reserve(set.primitives.size());
  for (const MotionPrimitive& m : set.primitives) {
    if (!is_valid(q, m, env, params)) continue;
    const Pose end = compose(q.pose(), m.end_pose);
    out.push_back({{end.x, end.y, end.theta},
                   transition_cost(q, m, env, weights),
                   m.id});
  }
  return out;
}

double heuristic(const Configuration& q, const GoalSpec& goal,
                 const PlannerWeights& weights, double min_turn_radius) {
  const double dx = goal.center.x - q.x;
  const double dy = goal.center.y - q.y;
  const double dist = std::hypot(dx, dy);
  // distance to the goal *disk*: any accepting configuration lies within
  // epsilon of the center, so this stays a lower bound on path length
  const double h_d = std::max(0.0, dist - goal.epsilon);
  const double bearing = dist < 1e-9 ? goal.theta_G : std::atan2(dy, dx);
  const double bearing_misalign = std::abs(wrap_to_pi(q.theta - bearing));

  const double blend = std::min(1.0, dist / (3.0 * goal.epsilon));
  const double goal_misalign = std::abs(wrap_to_pi(q.theta - goal.theta_G));
  const double h_theta = blend * bearing_misalign + (1.0 - blend) * goal_misalign;
  const double h_phi = bearing_misalign * min_turn_radius;

  return weights.w_hd * h_d + weights.w_htheta * h_theta +
         weights.w_hphi * h_phi;
}

bool is_goal(const Configuration& q, const GoalSpec& goal) {
  const double dist = std::hypot(q.x - goal.center.x, q.y - goal.center.y);
  return dist <= goal.epsilon &&
         std::abs(wrap_to_pi(q.theta - goal.theta_G)) <= goal.delta_theta;
}

DiscreteKey make_key(const Configuration& q, double position_resolution) {
  const double th = wrap_to_pi(q.theta);
  const int bins = static_cast<int>(std::round(2.0 * M_PI / kHeadingResolution));
  int it = static_cast<int>(std::floor((th + M_PI) / kHeadingResolution)) % bins;
  if (it < 0) it += bins;
  return {static_cast<int>(std::floor(q.x / position_resolution)),
          static_cast<int>(std::floor(q.y / position_resolution)), it};
}

namespace {

struct Node {
  Configuration config;
  double g{kInf};
  double h{0.0};
  DiscreteKey parent;
  int via_primitive{-1};
  bool has_parent{false};
  bool closed{false};
};

struct QueueEntry {
  double f{0.0};
  double h{0.0};
  uint64_t seq{0};
  DiscreteKey key;
};

struct QueueCompare {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;  // lower h first on ties
    return a.seq > b.seq;              // then insertion order
  }
};

PlannedPath reconstruct(
    const std::unordered_map<DiscreteKey, Node, DiscreteKeyHash>& nodes,
    const DiscreteKey& goal_key, const PrimitiveSet& set) {
  std::vector<std::pair<Configuration, int>> chain;  // (config, via primitive)
  DiscreteKey key = goal_key;
  while (true) {
    const Node& n = nodes.at(key);
    chain.push_back({n.config, n.via_primitive});
    if (!n.has_parent) break;
    key = n.parent;
  }
  std::reverse(chain.begin(), chain.end());

  PlannedPath path;
  path.configurations.reserve(chain.size());
  for (const auto& [config, via] : chain) {
    path.configurations.push_back(config);
    if (via >= 0) path.primitive_ids.push_back(via);
  }
  path.dense_poses.push_back(chain.front().first.pose());
  for (size_t i = 1; i < chain.size(); ++i) {
    const auto g = transform_to_global(set.primitives[chain[i].second],
                                       chain[i - 1].first.pose());
    // each primitive's first sample repeats the predecessor pose
    for (size_t k = 1; k < g.poses.size(); ++k) {
      path.dense_poses.push_back(g.poses[k]);
    }
  }
  return path;
}

}  // namespace

SearchResult search(const Configuration& start, const GoalSpec& goal,
                    const PrimitiveSet& set, const Environment& env,
                    const PlannerWeights& weights, const SearchLimits& limits,
                    const VehicleParams& params,
                    std::vector<ExpansionRecord>* trace,
                    const NeighborFn* custom_neighbors) {
  SearchResult result;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  if (!pose_clear(start.pose(), env, params)) {
    result.status = SearchStatus::StartInvalid;
    return result;
  }

  const double res_xy = set.arc_length / 2.0;
  const double r_min = set.wheelbase / std::tan(set.delta_max);

  if (is_goal(start, goal)) {
    result.status = SearchStatus::Success;
    result.path.configurations.push_back(start);
    result.path.dense_poses.push_back(start.pose());
    result.seconds = elapsed();
    return result;
  }

  std::unordered_map<DiscreteKey, Node, DiscreteKeyHash> nodes;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueCompare> open;
  uint64_t seq = 0;

  // Cost-to-go vanishes anywhere inside the goal region, which keeps the
  // distance term a true lower bound for region acceptance.
  auto h_of = [&](const Configuration& q) {
    return is_goal(q, goal) ? 0.0 : heuristic(q, goal, weights, r_min);
  };

  const DiscreteKey start_key = make_key(start, res_xy);
  Node& sn = nodes[start_key];
  sn.config = start;
  sn.g = 0.0;
  sn.h = h_of(start);
  open.push({sn.h, sn.h, seq++, start_key});

  long expanded = 0;
  while (!open.empty()) {
    const QueueEntry entry = open.top();
    open.pop();
    {
      Node& node = nodes[entry.key];
      if (node.closed) continue;
      if (entry.f > node.g + node.h + 1e-12) continue;  // stale entry
    }

    if (expanded >= limits.max_expansions || elapsed() > limits.max_seconds) {
      result.status = SearchStatus::NoPath;
      result.nodes_expanded = expanded;
      result.seconds = elapsed();
      return result;
    }
    ++expanded;

    Configuration cur;
    double cur_g;
    {
      Node& node = nodes[entry.key];
      node.closed = true;
      cur = node.config;
      cur_g = node.g;
      if (trace) {
        trace->push_back(
            {entry.key, node.g, node.h, node.parent, node.has_parent});
      }
      if (is_goal(node.config, goal)) {
        result.status = SearchStatus::Success;
        result.path = reconstruct(nodes, entry.key, set);
        result.path.cost = node.g;
        result.path.nodes_expanded = expanded;
        result.nodes_expanded = expanded;
        result.seconds = elapsed();
        return result;
      }
    }

    const std::vector<Successor> succs =
        custom_neighbors ? (*custom_neighbors)(cur)
                         : neighbors(cur, set, env, weights, params);
    for (const Successor& s : succs) {
      const DiscreteKey skey = make_key(s.config, res_xy);
      const double tentative = cur_g + s.cost;
      auto [it, inserted] = nodes.try_emplace(skey);
      Node& succ = it->second;
      if (!inserted && tentative >= succ.g - 1e-12) continue;
      succ.config = s.config;
      succ.g = tentative;
      succ.h = h_of(s.config);
      succ.parent = entry.key;
      succ.via_primitive = s.primitive_id;
      succ.has_parent = true;
      succ.closed = false;  // reopen on improvement
      open.push({succ.g + succ.h, succ.h, seq++, skey});
    }
  }

  result.status = SearchStatus::NoPath;
  result.nodes_expanded = expanded;
  result.seconds = elapsed();
  return result;
}

}  // namespace junction
