#include "netdis/disintegration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <queue>
#include <random>
#include <thread>

#include "netdis/error.hpp"
#include "netdis/rank_aggregation.hpp"

namespace netdis {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_baseline(const PerformanceEvaluator& eval, const BaselineEstimate& baseline, std::size_t n) {
  if (baseline.n != n) {
    throw InvalidArgument("baseline strength " + std::to_string(baseline.n) + " does not match n=" +
                          std::to_string(n));
  }
  // Surfaces a degenerate denominator before any enumeration work.
  disintegration_effect(eval.original(), eval.original(), baseline.mean);
}

}  // namespace

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw InvalidArgument("C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

void for_each_combination(const NodeSet& s, std::size_t n,
                          const std::function<void(std::span<const NodeId>)>& fn) {
  const std::size_t m = s.size();
  if (n > m) {
    throw InvalidArgument("cannot choose " + std::to_string(n) + " of " + std::to_string(m) + " nodes");
  }
  std::vector<std::size_t> idx(n);
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) ids[i] = s[idx[i]];
    fn(ids);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == m - n + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<NodeSet> enumerate_combinations(const NodeSet& s, std::size_t n) {
  std::vector<NodeSet> out;
  out.reserve(static_cast<std::size_t>(binomial(s.size(), n)));
  for_each_combination(s, n, [&](std::span<const NodeId> ids) {
    out.emplace_back(std::vector<NodeId>(ids.begin(), ids.end()));
  });
  return out;
}

std::size_t log10_strength(std::size_t node_count) {
  if (node_count < 2) throw InvalidArgument("log schedule needs N >= 2");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log10(double(node_count)) - 1e-9)));
}

std::size_t ln_strength(std::size_t node_count) {
  if (node_count < 2) throw InvalidArgument("log schedule needs N >= 2");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(double(node_count)) - 1e-9)));
}

double doubling_alpha(std::size_t node_count, std::size_t n) {
  if (2 * n > node_count) throw InvalidArgument("2n exceeds N");
  return static_cast<double>(n) / static_cast<double>(node_count - n);
}

nlohmann::json to_json(const DisintegrationResult& r, const Graph& g) {
  nlohmann::json removed = nlohmann::json::array();
  for (NodeId v : r.removed) removed.push_back(g.label(v));
  return {{"strategy", r.strategy},
          {"removed", removed},
          {"phi", r.phi},
          {"gamma_original", r.gamma_original},
          {"gamma_residual", r.gamma_residual},
          {"gamma_baseline", r.gamma_baseline},
          {"evaluations", r.evaluations},
          {"wall_time_s", r.wall_time_s},
          {"seed", r.seed},
          {"params", r.params}};
}

DisintegrationResult evaluate_removal(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                      std::string strategy, NodeSet removed) {
  const auto start = Clock::now();
  DisintegrationResult r;
  r.strategy = std::move(strategy);
  r.gamma_original = eval.original();
  r.gamma_residual = eval.residual(removed);
  r.gamma_baseline = baseline.mean;
  r.phi = disintegration_effect(r.gamma_original, r.gamma_residual, r.gamma_baseline);
  r.removed = std::move(removed);
  r.evaluations = 1;
  r.wall_time_s = seconds_since(start);
  return r;
}

// Entries form a front: ascending ids with strictly ascending Φ. Anything
// lexicographically larger and no better can never be the answer.
void BestSetTracker::offer(double phi, std::span<const NodeId> ids) {
  if (!near_.empty() && phi < max_ - kPhiTieWindow) return;
  auto pos = std::lower_bound(near_.begin(), near_.end(), ids, [](const Entry& e, std::span<const NodeId> key) {
    return std::lexicographical_compare(e.ids.begin(), e.ids.end(), key.begin(), key.end());
  });
  if (pos != near_.begin() && std::prev(pos)->phi >= phi) return;
  if (pos != near_.end() && std::equal(pos->ids.begin(), pos->ids.end(), ids.begin(), ids.end())) {
    if (pos->phi >= phi) return;
    pos = near_.erase(pos);
  }
  auto stop = pos;
  while (stop != near_.end() && stop->phi <= phi) ++stop;
  pos = near_.erase(pos, stop);
  near_.insert(pos, Entry{phi, std::vector<NodeId>(ids.begin(), ids.end())});
  if (near_.size() == 1 || phi > max_) max_ = phi;
  prune();
}

void BestSetTracker::prune() {
  auto keep = std::find_if(near_.begin(), near_.end(), [&](const Entry& e) { return e.phi >= max_ - kPhiTieWindow; });
  near_.erase(near_.begin(), keep);
}

void BestSetTracker::merge(const BestSetTracker& other) {
  for (const auto& e : other.near_) offer(e.phi, e.ids);
}

double BestSetTracker::best_phi() const {
  if (near_.empty()) throw InvalidArgument("no set offered");
  return near_.front().phi;
}

std::vector<NodeId> BestSetTracker::best_ids() const {
  if (near_.empty()) throw InvalidArgument("no set offered");
  return near_.front().ids;
}

namespace {

struct EnumerationWorker {
  const PerformanceEvaluator& eval;
  double gamma_original;
  double gamma_baseline;
  const std::vector<NodeId>& cand;
  std::size_t n;
  std::size_t max_batch;

  BestSetTracker tracker;
  std::uint64_t evaluations = 0;

  // Leaves below one prefix: every pair (n >= 2) or single (n == 1) drawn
  // from candidates after the prefix, evaluated in batches.
  void run_prefix(std::span<const std::size_t> prefix) {
    const std::size_t m = cand.size();
    const std::size_t g_nodes = eval.graph().node_count();
    std::vector<std::uint8_t> alive(g_nodes, 1);
    for (std::size_t i : prefix) alive[cand[i]] = 0;
    const std::size_t first = prefix.empty() ? 0 : prefix.back() + 1;
    const std::size_t tail = n - prefix.size();

    std::vector<NodeId> extra;
    std::vector<NodeId> ids(n);
    for (std::size_t k = 0; k < prefix.size(); ++k) ids[k] = cand[prefix[k]];
    auto flush = [&] {
      if (extra.empty()) return;
      const auto gammas = eval.induced_batch(alive, extra, tail);
      for (std::size_t c = 0; c < gammas.size(); ++c) {
        std::copy(extra.begin() + static_cast<long>(c * tail), extra.begin() + static_cast<long>((c + 1) * tail),
                  ids.begin() + static_cast<long>(prefix.size()));
        tracker.offer((gamma_original - gammas[c]) / (gamma_original - gamma_baseline), ids);
      }
      evaluations += gammas.size();
      extra.clear();
    };
    if (tail == 1) {
      for (std::size_t a = first; a < m; ++a) {
        extra.push_back(cand[a]);
        if (extra.size() == max_batch) flush();
      }
    } else {
      for (std::size_t a = first; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          extra.push_back(cand[a]);
          extra.push_back(cand[b]);
          if (extra.size() == 2 * max_batch) flush();
        }
      }
    }
    flush();
  }
};

}  // namespace

EnumerationOutcome best_combination(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                    const NodeSet& candidates, std::size_t n, const EnumerationOptions& opts) {
  if (n == 0) throw InvalidArgument("disintegration strength must be at least 1");
  if (n > candidates.size()) {
    throw InvalidArgument("cannot choose " + std::to_string(n) + " of " + std::to_string(candidates.size()) +
                          " candidates");
  }
  if (n >= eval.graph().node_count()) throw InvalidArgument("strength n must be below N");
  if (!candidates.empty() && candidates.ids().back() >= eval.graph().node_count()) {
    throw InvalidArgument("candidate node out of range");
  }
  check_baseline(eval, baseline, n);

  const std::vector<NodeId> cand(candidates.begin(), candidates.end());
  const std::size_t m = cand.size();
  const std::size_t p = n >= 2 ? n - 2 : 0;
  const std::size_t threads = std::max<std::size_t>(1, opts.threads);
  const std::size_t batch = std::max<std::size_t>(1, opts.max_batch);

  std::vector<EnumerationWorker> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.push_back({eval, eval.original(), baseline.mean, cand, n, batch, {}, 0});
  }

  // Prefixes are dealt round-robin; each worker walks the full prefix
  // sequence and handles its share.
  auto work = [&](std::size_t t) {
    std::vector<std::size_t> prefix(p);
    for (std::size_t i = 0; i < p; ++i) prefix[i] = i;
    std::size_t counter = 0;
    const std::size_t tail = n - p;
    if (p + tail > m) return;
    while (true) {
      if (counter++ % threads == t) workers[t].run_prefix(prefix);
      // Advance the prefix, leaving room for the tail after its last element.
      std::size_t i = p;
      while (i > 0 && prefix[i - 1] == m - tail - p + i - 1) --i;
      if (i == 0) return;
      ++prefix[i - 1];
      for (std::size_t j = i; j < p; ++j) prefix[j] = prefix[j - 1] + 1;
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  BestSetTracker total;
  std::uint64_t evaluations = 0;
  for (auto& w : workers) {
    total.merge(w.tracker);
    evaluations += w.evaluations;
  }
  if (evaluations != binomial(m, n)) throw Error("enumeration visited the wrong number of combinations");

  EnumerationOutcome out;
  out.best = NodeSet(total.best_ids(), eval.graph().node_count());
  out.phi = total.best_phi();
  out.evaluations = evaluations;
  return out;
}

DisintegrationResult targeted_enumeration(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                          const Ranking& consensus, std::size_t n, double alpha,
                                          const EnumerationOptions& opts) {
  const auto start = Clock::now();
  if (consensus.size() != eval.graph().node_count()) throw InvalidArgument("ranking does not cover the graph");
  const NodeSet candidates = candidate_set(consensus, n, alpha);
  const EnumerationOutcome best = best_combination(eval, baseline, candidates, n, opts);

  DisintegrationResult r;
  r.strategy = "TE";
  r.removed = best.best;
  r.gamma_original = eval.original();
  // Recomputed from the set so the stored triple reproduces Φ exactly.
  r.gamma_residual = eval.residual(best.best);
  r.gamma_baseline = baseline.mean;
  r.phi = best.phi;
  r.evaluations = best.evaluations;
  r.seed = baseline.seed;
  r.params = {{"alpha", alpha}, {"n", n}, {"candidate_size", candidates.size()}};
  r.wall_time_s = seconds_since(start);
  return r;
}

DisintegrationResult targeted_enumeration(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                          std::span<const Criterion> criteria, std::size_t n, double alpha,
                                          const EnumerationOptions& opts) {
  const auto start = Clock::now();
  const Ranking consensus = aggregated_ranking(eval.graph(), criteria);
  DisintegrationResult r = targeted_enumeration(eval, baseline, consensus, n, alpha, opts);
  r.params["criteria"] = criteria_string(criteria);
  r.wall_time_s = seconds_since(start);
  return r;
}

NodeSet centrality_attack(const Graph& g, Criterion criterion, std::size_t n) {
  if (n >= g.node_count()) throw InvalidArgument("strength n must be below N");
  return top_nodes(rank_from_scores(compute_centrality(g, criterion)), n);
}

std::vector<double> collective_influence_scores(const Graph& g, std::span<const std::uint8_t> alive,
                                                std::size_t ell) {
  const std::size_t n = g.node_count();
  if (alive.size() != n) throw InvalidArgument("alive mask size differs from node count");
  if (ell == 0) throw InvalidArgument("CI radius must be at least 1");
  std::vector<std::size_t> k(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (NodeId u : g.neighbors(v)) k[v] += alive[u] ? 1 : 0;
  }
  std::vector<double> score(n, 0.0);
  std::vector<long> dist(n, -1);
  std::vector<NodeId> touched;
  std::queue<NodeId> frontier;
  for (NodeId i = 0; i < n; ++i) {
    if (!alive[i] || k[i] <= 1) continue;
    double boundary = 0.0;
    dist[i] = 0;
    touched.assign(1, i);
    frontier.push(i);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      if (static_cast<std::size_t>(dist[v]) == ell) {
        boundary += static_cast<double>(k[v]) - 1.0;
        continue;
      }
      for (NodeId u : g.neighbors(v)) {
        if (alive[u] && dist[u] < 0) {
          dist[u] = dist[v] + 1;
          touched.push_back(u);
          frontier.push(u);
        }
      }
    }
    for (NodeId v : touched) dist[v] = -1;
    score[i] = (static_cast<double>(k[i]) - 1.0) * boundary;
  }
  return score;
}

NodeSet collective_influence(const Graph& g, std::size_t ell, std::size_t n) {
  if (n >= g.node_count()) throw InvalidArgument("strength n must be below N");
  std::vector<std::uint8_t> alive(g.node_count(), 1);
  std::vector<NodeId> picked;
  for (std::size_t round = 0; round < n; ++round) {
    const auto score = collective_influence_scores(g, alive, ell);
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (!alive[v]) continue;
      if (!found || score[v] > score[best]) {
        best = v;
        found = true;
      }
    }
    alive[best] = 0;
    picked.push_back(best);
  }
  return NodeSet(std::move(picked), g.node_count());
}

void TabuParams::validate() const {
  if (tabu_length == 0 || candidates == 0 || stall_limit == 0) {
    throw InvalidArgument("tabu length, candidate count and stall limit must be positive");
  }
}

DisintegrationResult tabu_search(const PerformanceEvaluator& eval, const BaselineEstimate& baseline,
                                 const Ranking& initial, std::size_t n, const TabuParams& params) {
  const auto start = Clock::now();
  params.validate();
  const Graph& g = eval.graph();
  const std::size_t nodes = g.node_count();
  if (n == 0 || n >= nodes) throw InvalidArgument("tabu search needs 1 <= n < N");
  if (initial.size() != nodes) throw InvalidArgument("ranking does not cover the graph");
  check_baseline(eval, baseline, n);

  const double g0 = eval.original();
  auto phi_of = [&](double gamma) { return (g0 - gamma) / (g0 - baseline.mean); };

  std::vector<NodeId> members(initial.order.begin(), initial.order.begin() + static_cast<long>(n));
  std::vector<NodeId> outside(initial.order.begin() + static_cast<long>(n), initial.order.end());
  const std::vector<std::uint8_t> all(nodes, 1);

  std::uint64_t evaluations = 1;
  double current_phi = phi_of(eval.induced_batch(all, members, n).front());
  std::vector<NodeId> best = members;
  double best_phi = current_phi;

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick_in(0, n - 1);
  std::uniform_int_distribution<std::size_t> pick_out(0, outside.size() - 1);
  std::deque<NodeId> tabu;

  struct Move {
    std::size_t in_pos;
    std::size_t out_pos;
  };
  std::vector<Move> moves(params.candidates);
  std::vector<NodeId> columns(params.candidates * n);
  std::size_t stall = 0;
  std::size_t iterations = 0;
  while (stall < params.stall_limit) {
    ++iterations;
    for (std::size_t c = 0; c < params.candidates; ++c) {
      moves[c] = {pick_in(rng), pick_out(rng)};
      std::copy(members.begin(), members.end(), columns.begin() + static_cast<long>(c * n));
      columns[c * n + moves[c].in_pos] = outside[moves[c].out_pos];
    }
    const auto gammas = eval.induced_batch(all, columns, n);
    evaluations += gammas.size();

    std::size_t chosen = params.candidates;
    double chosen_phi = 0.0;
    for (std::size_t c = 0; c < params.candidates; ++c) {
      const double phi = phi_of(gammas[c]);
      const NodeId entering = outside[moves[c].out_pos];
      const bool is_tabu = std::find(tabu.begin(), tabu.end(), entering) != tabu.end();
      if (is_tabu && !(phi > best_phi)) continue;
      if (chosen == params.candidates || phi > chosen_phi) {
        chosen = c;
        chosen_phi = phi;
      }
    }
    if (chosen == params.candidates) {
      ++stall;
      continue;
    }
    const Move mv = moves[chosen];
    const NodeId entering = outside[mv.out_pos];
    std::swap(members[mv.in_pos], outside[mv.out_pos]);
    current_phi = chosen_phi;
    tabu.push_back(entering);
    if (tabu.size() > params.tabu_length) tabu.pop_front();
    if (current_phi > best_phi) {
      best_phi = current_phi;
      best = members;
      stall = 0;
    } else {
      ++stall;
    }
  }

  DisintegrationResult r;
  r.strategy = "TS";
  r.removed = NodeSet(best, nodes);
  r.gamma_original = g0;
  r.gamma_residual = eval.residual(r.removed);
  r.gamma_baseline = baseline.mean;
  r.phi = best_phi;
  r.evaluations = evaluations;
  r.seed = params.seed;
  r.params = {{"tabu_length", params.tabu_length},
              {"candidates", params.candidates},
              {"stall_limit", params.stall_limit},
              {"iterations", iterations}};
  r.wall_time_s = seconds_since(start);
  return r;
}

NodeSet random_attack(const Graph& g, std::size_t n, std::uint64_t seed) {
  return random_subset(g.node_count(), n, seed);
}

}  // namespace netdis
