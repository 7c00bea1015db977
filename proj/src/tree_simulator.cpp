#include "choice_attach/tree_simulator.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <string>
#include <thread>

namespace choice_attach {

TreeState new_tree(const ModelParams& params, std::uint64_t seed) {
  params.validate();
  TreeState state{params, seed, 1, {1, 1}, {0, 1}, Rng(seed)};
  return state;
}

VertexId sample_preferential(TreeState& state) {
  return state.endpoints[state.rng.uniform_below(state.endpoints.size())];
}

std::size_t select_rank_s(std::span<const TupleEntry> tuple, int s, Rng& rng) {
  if (s < 1 || static_cast<std::size_t>(s) > tuple.size())
    throw ConfigError("select_rank_s: need 1 <= s <= tuple size");
  struct Keyed {
    Degree degree;
    std::uint64_t key;
    std::size_t index;
  };
  std::vector<Keyed> keyed(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) keyed[i] = {tuple[i].degree, rng.next_u64(), i};
  auto nth = keyed.begin() + (s - 1);
  std::nth_element(keyed.begin(), nth, keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.key != b.key) return a.key < b.key;
    return a.index < b.index;
  });
  return nth->index;
}

std::int64_t StepRecord::delta_F(std::int64_t k) const {
  const auto d = static_cast<std::int64_t>(chosen_degree);
  if (d < k) return 2;
  if (d == k) return 1 - k;
  return 1;
}

namespace {

void draw_tuple(TreeState& state, std::vector<TupleEntry>& tuple) {
  for (auto& e : tuple) {
    e.vertex = sample_preferential(state);
    e.degree = state.degrees[e.vertex];
  }
}

bool all_distinct(const std::vector<TupleEntry>& tuple) {
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      if (tuple[i].vertex == tuple[j].vertex) return false;
  return true;
}

}  // namespace

void grow_step(TreeState& state, StepRecord& record) {
  const int r = state.params.r;
  thread_local std::vector<TupleEntry> tuple;
  tuple.resize(static_cast<std::size_t>(r));
  draw_tuple(state, tuple);
  record.first_tuple_distinct = all_distinct(tuple);
  record.rejected_tuples = 0;
  if (state.params.sampling == SamplingMode::AllDistinct && state.vertex_count() >= r) {
    bool distinct = record.first_tuple_distinct;
    while (!distinct) {
      ++record.rejected_tuples;
      draw_tuple(state, tuple);
      distinct = all_distinct(tuple);
    }
  }
  const std::size_t pick = select_rank_s(tuple, state.params.s, state.rng);
  record.tuple_degrees.resize(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) record.tuple_degrees[i] = tuple[i].degree;
  record.chosen_vertex = tuple[pick].vertex;
  record.chosen_degree = tuple[pick].degree;

  const auto fresh = static_cast<VertexId>(state.degrees.size());
  state.degrees.push_back(1);
  ++state.degrees[record.chosen_vertex];
  state.endpoints.push_back(record.chosen_vertex);
  state.endpoints.push_back(fresh);
  ++state.m;
}

StepRecord grow_step(TreeState& state) {
  StepRecord record;
  grow_step(state, record);
  return record;
}

DegreeCensus census(const TreeState& state, std::int64_t kmax) {
  if (kmax < 1) throw ConfigError("census: kmax must be >= 1");
  DegreeCensus c;
  c.m = state.m;
  c.N.assign(static_cast<std::size_t>(kmax) + 1, 0);
  for (Degree d : state.degrees) {
    if (d <= kmax) ++c.N[d];
    c.max_degree = std::max<std::int64_t>(c.max_degree, d);
    c.degree_sum += d;
  }
  c.F.assign(static_cast<std::size_t>(kmax) + 1, 0);
  // Mass above kmax is absent from N; F[k] only sums degrees <= k.
  std::int64_t acc = 0;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    acc += k * c.N[k];
    c.F[k] = acc;
  }
  return c;
}

std::vector<Time> default_checkpoints(Time steps) {
  std::vector<Time> out;
  const Time final_m = 1 + steps;
  for (Time t = 10; t < final_m; t *= 10) out.push_back(t);
  out.push_back(final_m);
  return out;
}

SimCensus run_sim(const ModelParams& params, Time steps, std::uint64_t seed,
                  std::vector<Time> checkpoints, std::int64_t kmax) {
  if (steps < 1) throw ConfigError("run_sim: steps must be >= 1");
  if (steps > kMaxSimulationSteps)
    throw ResourceCap("run_sim: " + std::to_string(steps) + " steps exceeds the cap of " +
                      std::to_string(kMaxSimulationSteps));
  if (kmax < 1) throw ConfigError("run_sim: kmax must be >= 1");

  const Time final_m = 1 + steps;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  std::erase_if(checkpoints, [&](Time t) { return t <= 1 || t > final_m; });

  TreeState state = new_tree(params, seed);
  state.degrees.reserve(static_cast<std::size_t>(final_m) + 1);
  state.endpoints.reserve(2 * static_cast<std::size_t>(final_m));

  // histogram[d] = number of vertices of degree d.
  std::vector<std::int64_t> histogram{0, 2};
  std::int64_t max_degree = 1;
  std::uint64_t distinct_first = 0;

  SimCensus out{params, seed, {}, 1.0, 0, steps};
  auto snapshot = [&] {
    DegreeCensus c;
    c.m = state.m;
    c.max_degree = max_degree;
    c.degree_sum = state.degree_sum();
    c.N.assign(static_cast<std::size_t>(kmax) + 1, 0);
    c.F.assign(static_cast<std::size_t>(kmax) + 1, 0);
    std::int64_t acc = 0;
    for (std::int64_t k = 0; k <= kmax; ++k) {
      c.N[k] = k < static_cast<std::int64_t>(histogram.size()) ? histogram[k] : 0;
      acc += k * c.N[k];
      c.F[k] = acc;
    }
    const double pm = static_cast<double>(distinct_first) / static_cast<double>(state.m - 1);
    out.checkpoints.push_back({std::move(c), pm});
  };

  StepRecord record;
  auto next_checkpoint = checkpoints.begin();
  for (Time step = 0; step < steps; ++step) {
    grow_step(state, record);
    if (record.first_tuple_distinct) ++distinct_first;
    out.rejected_tuples += record.rejected_tuples;
    const Degree d = record.chosen_degree;
    --histogram[d];
    if (d + 1 >= histogram.size()) histogram.resize(d + 2, 0);
    ++histogram[d + 1];
    ++histogram[1];
    max_degree = std::max<std::int64_t>(max_degree, d + 1);
    if (next_checkpoint != checkpoints.end() && state.m == *next_checkpoint) {
      snapshot();
      ++next_checkpoint;
    }
  }
  out.pm_estimate = static_cast<double>(distinct_first) / static_cast<double>(steps);
  return out;
}

std::vector<SimCensus> run_sims(const ModelParams& params, Time steps, std::uint64_t base_seed,
                                int n_seeds, const std::vector<Time>& checkpoints,
                                std::int64_t kmax, unsigned threads) {
  if (n_seeds < 1) throw ConfigError("run_sims: need at least one seed");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SimCensus> results(static_cast<std::size_t>(n_seeds));
  // Static striping: worker w handles seeds w, w + threads, ...
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n_seeds));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < results.size(); i += workers)
        results[i] = run_sim(params, steps, base_seed + i, checkpoints, kmax);
    }));
  }
  for (auto& j : jobs) j.get();
  return results;
}

}  // namespace choice_attach
