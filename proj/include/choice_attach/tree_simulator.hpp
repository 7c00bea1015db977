#pragma once

#include "choice_attach/model.hpp"
#include "choice_attach/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace choice_attach {

using VertexId = std::uint32_t;
using Degree = std::uint32_t;
using Time = std::int64_t;

/// Largest number of growth steps a single simulation may take. The
/// endpoint array holds 2m ids, so this bounds memory near 1.2 GB.
inline constexpr Time kMaxSimulationSteps = 100'000'000;

/// The growing tree. Vertex ids are 0..m; `endpoints` lists every edge
/// endpoint, so vertex v occurs degrees[v] times and a uniform entry is a
/// preferential draw.
struct TreeState {
  ModelParams params;
  std::uint64_t seed = 0;
  Time m = 1;
  std::vector<Degree> degrees;
  std::vector<VertexId> endpoints;
  Rng rng;

  std::int64_t vertex_count() const { return static_cast<std::int64_t>(degrees.size()); }
  std::int64_t degree_sum() const { return static_cast<std::int64_t>(endpoints.size()); }
};

/// Two vertices joined by one edge at time 1.
TreeState new_tree(const ModelParams& params, std::uint64_t seed);

/// Vertex drawn with probability degree / 2m.
VertexId sample_preferential(TreeState& state);

struct TupleEntry {
  VertexId vertex = 0;
  Degree degree = 0;
};

/// Position in `tuple` of the rank-s entry (s = 1 is the highest degree).
/// Each entry gets an independent uniform key; entries are ordered by
/// degree descending, then key. Duplicated vertices are separate entries.
std::size_t select_rank_s(std::span<const TupleEntry> tuple, int s, Rng& rng);

/// What one growth step did.
struct StepRecord {
  /// Degrees of the tuple that was used, in draw order.
  std::vector<Degree> tuple_degrees;
  VertexId chosen_vertex = 0;
  /// Degree of the chosen vertex before it received the new edge.
  Degree chosen_degree = 0;
  /// Whether the first i.i.d. tuple drawn had all-distinct vertices.
  bool first_tuple_distinct = true;
  /// Whole tuples discarded in AllDistinct mode.
  std::uint64_t rejected_tuples = 0;

  /// F_{m+1}(k) - F_m(k): 2 if the target had degree < k, 1 - k if exactly
  /// k, and 1 if above k. Requires k >= 1.
  std::int64_t delta_F(std::int64_t k) const;
};

/// Samples a tuple, attaches a new vertex to its rank-s entry and advances
/// m. In AllDistinct mode whole tuples are redrawn until their vertices
/// differ; while fewer than r vertices exist that is impossible and the
/// i.i.d. tuple is kept.
StepRecord grow_step(TreeState& state);
/// Same, reusing `record`'s storage.
void grow_step(TreeState& state, StepRecord& record);

/// Degree census at one time. Vectors are indexed by k = 0..kmax.
struct DegreeCensus {
  Time m = 0;
  /// F[k]: total degree of vertices with degree <= k.
  std::vector<std::int64_t> F;
  /// N[k]: number of vertices with degree exactly k.
  std::vector<std::int64_t> N;
  std::int64_t max_degree = 0;
  std::int64_t degree_sum = 0;

  std::int64_t kmax() const { return static_cast<std::int64_t>(F.size()) - 1; }
  double fraction(std::int64_t k) const { return static_cast<double>(F.at(k)) / static_cast<double>(2 * m); }
};

/// Single pass over the degree array. Requires kmax >= 1.
DegreeCensus census(const TreeState& state, std::int64_t kmax);

struct Checkpoint {
  DegreeCensus census;
  /// Fraction of steps so far whose first tuple had distinct vertices.
  double pm_estimate = 1.0;
};

struct SimCensus {
  ModelParams params;
  std::uint64_t seed = 0;
  std::vector<Checkpoint> checkpoints;  // ordered by m
  double pm_estimate = 1.0;
  std::uint64_t rejected_tuples = 0;
  Time total_steps = 0;
};

/// Times 10, 100, ... below 1 + steps, followed by 1 + steps itself.
std::vector<Time> default_checkpoints(Time steps);

/// Grows to m = 1 + steps, recording a census at each requested time m in
/// (1, 1 + steps] (others are ignored). The census is maintained
/// incrementally from a degree histogram. ResourceCap past
/// kMaxSimulationSteps.
SimCensus run_sim(const ModelParams& params, Time steps, std::uint64_t seed,
                  std::vector<Time> checkpoints, std::int64_t kmax);

/// Runs seeds base_seed, base_seed+1, ... on worker threads. Results are
/// in seed order and independent of the thread count.
std::vector<SimCensus> run_sims(const ModelParams& params, Time steps, std::uint64_t base_seed,
                                int n_seeds, const std::vector<Time>& checkpoints,
                                std::int64_t kmax, unsigned threads = 0);

}  // namespace choice_attach
