#include "netdis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netdis/error.hpp"

namespace netdis {

Eigen::MatrixXd dense_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) a(u, v) = 1.0;
  }
  return a;
}

Eigen::VectorXd adjacency_spectrum(const Graph& g) {
  if (g.node_count() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(g), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return solver.eigenvalues();
}

SpectralDecomposition adjacency_eigendecomposition(const Graph& g) {
  if (g.node_count() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_adjacency(g));
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

void masked_multiply(const Graph& g, std::span<const std::uint8_t> alive, std::span<const double> x,
                     std::span<double> y) {
  const auto offsets = g.offsets();
  const auto adj = g.adjacency();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    double sum = 0.0;
    if (alive[v]) {
      for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) {
        sum += x[adj[e]];
      }
    }
    y[v] = sum;
  }
}

namespace {

// Last LDL^T pivot of (T - x I) and its derivative in x, plus the number of
// eigenvalues of T above x (Sturm count).
struct PivotEval {
  double pivot;
  double slope;
  std::size_t above;
};

PivotEval evaluate_pivot(std::span<const double> diag, std::span<const double> offdiag, double x) {
  double d = 1.0, dd = 0.0;
  std::size_t below = 0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (i == 0) {
      d = diag[0] - x;
      dd = -1.0;
    } else {
      const double inv = 1.0 / d;
      const double q = offdiag[i - 1] * offdiag[i - 1] * inv;
      dd = -1.0 + q * dd * inv;
      d = diag[i] - x - q;
    }
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++below;
  }
  return {d, dd, diag.size() - below};
}

}  // namespace

double largest_tridiagonal_eigenvalue(std::span<const double> diag, std::span<const double> offdiag,
                                      double lower) {
  const std::size_t m = diag.size();
  if (m == 0) throw InvalidArgument("empty tridiagonal matrix");
  if (m == 1) return diag[0];
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < m ? std::abs(offdiag[i]) : 0.0);
    hi = std::max(hi, diag[i] + r);
    lo = std::min(lo, diag[i] - r);
  }
  if (lower > lo && lower < hi && evaluate_pivot(diag, offdiag, lower).above > 0) lo = lower;

  // The last pivot f(x) = det(T - x)/det(T' - x), T' the leading block, has
  // its rightmost pole at lambda_max(T') (= `lower`) and decreases to its
  // root beyond it. Each step fits f ~ a - x + c/(x - pole) to the value and
  // slope at x and jumps to the model's root, kept inside a Sturm bracket.
  const double pole = lower;
  double x = lo == pole ? std::min(hi, pole + 1e-3 * std::max(1.0, std::abs(pole))) : hi;
  for (int it = 0; it < 200; ++it) {
    const PivotEval f = evaluate_pivot(diag, offdiag, x);
    if (f.above > 0) {
      lo = std::max(lo, x);
    } else {
      hi = std::min(hi, x);
    }
    double next;
    if (x > pole) {
      const double dx = x - pole;
      const double c = std::max(0.0, -(f.slope + 1.0) * dx * dx);
      const double a = f.pivot + x - c / dx;
      next = 0.5 * ((a + pole) + std::sqrt((a - pole) * (a - pole) + 4.0 * c));
    } else {
      next = x - f.pivot / f.slope;
    }
    if (!(next >= lo && next <= hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(x));
    if (std::abs(next - x) <= 4 * std::numeric_limits<double>::epsilon() * scale ||
        hi - lo <= 4 * std::numeric_limits<double>::epsilon() * scale) {
      return next;
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

namespace {

void add_into(double* __restrict dst, const double* __restrict src, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) dst[i] += src[i];
}

// Per-column Lanczos bookkeeping.
struct LaneState {
  std::vector<double> diag, off;
  double theta = 0.0;
  int quiet = 0;
  std::size_t alive_count = 0;
  bool done = false;
  DominantEigenvalue result;
};

}  // namespace

std::vector<DominantEigenvalue> dominant_eigenvalues(const Graph& g, std::span<const std::uint8_t> alive,
                                                     std::span<const NodeId> extra_dead, std::size_t per_column,
                                                     const LanczosOptions& opts) {
  const std::size_t n = g.node_count();
  if (alive.size() != n) throw InvalidArgument("alive mask size differs from node count");
  if (per_column == 0 || extra_dead.size() % per_column != 0) {
    throw InvalidArgument("extra dead list is not a whole number of columns");
  }
  const std::size_t b = extra_dead.size() / per_column;
  std::vector<DominantEigenvalue> out(b);
  if (b == 0) return out;

  std::size_t base_alive = 0;
  for (auto a : alive) base_alive += a ? 1 : 0;

  std::vector<LaneState> lanes(b);
  std::size_t active = 0;
  for (std::size_t c = 0; c < b; ++c) {
    std::size_t dropped = 0;
    for (std::size_t k = 0; k < per_column; ++k) {
      const NodeId x = extra_dead[c * per_column + k];
      if (x == kNoNode) continue;
      if (x >= n) throw InvalidArgument("batch node out of range");
      for (std::size_t k2 = 0; k2 < k; ++k2) {
        if (extra_dead[c * per_column + k2] == x) throw InvalidArgument("batch column repeats a node");
      }
      if (alive[x]) ++dropped;
    }
    lanes[c].alive_count = base_alive - dropped;
    lanes[c].diag.reserve(64);
    lanes[c].off.reserve(64);
    if (lanes[c].alive_count == 0) {
      lanes[c].done = true;
    } else {
      ++active;
    }
  }
  if (active == 0) return out;

  // Row-major n x b blocks: entry (v, c) at v * b + c.
  std::vector<double> q(n * b, 0.0), q_prev(n * b, 0.0), w(n * b, 0.0);
  std::vector<double> alpha(b), beta(b), beta_prev(b, 0.0), scale(b), residual_norm(b);
  // The first step runs on the unnormalized all-ones vector: A 1 holds
  // integer degrees, so the first Rayleigh quotient 2W/N is exact (and so is
  // the answer for regular graphs).
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (std::size_t c = 0; c < b; ++c) q[v * b + c] = 1.0;
  }
  auto clear_extra = [&](std::vector<double>& m) {
    for (std::size_t c = 0; c < b; ++c) {
      for (std::size_t k = 0; k < per_column; ++k) {
        const NodeId x = extra_dead[c * per_column + k];
        if (x != kNoNode) m[std::size_t{x} * b + c] = 0.0;
      }
    }
  };
  clear_extra(q);

  const auto offsets = g.offsets();
  const auto adj = g.adjacency();
  const std::size_t max_steps = std::min(opts.max_steps, base_alive);
  for (std::size_t j = 0; j < max_steps && active > 0; ++j) {
    // w = A q, rows of dead nodes zero.
    if (b == 1) {
      for (std::size_t v = 0; v < n; ++v) {
        double sum = 0.0;
        if (alive[v]) {
          for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) sum += q[adj[e]];
        }
        w[v] = sum;
      }
    } else {
      for (std::size_t v = 0; v < n; ++v) {
        double* wr = w.data() + v * b;
        std::fill(wr, wr + b, 0.0);
        if (!alive[v]) continue;
        for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) {
          add_into(wr, q.data() + std::size_t{adj[e]} * b, b);
        }
      }
    }
    clear_extra(w);
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      const double* qr = q.data() + v * b;
      const double* wr = w.data() + v * b;
      for (std::size_t c = 0; c < b; ++c) alpha[c] += qr[c] * wr[c];
    }
    if (j == 0) {
      for (std::size_t c = 0; c < b; ++c) {
        if (lanes[c].alive_count) alpha[c] /= static_cast<double>(lanes[c].alive_count);
      }
    }
    std::fill(beta.begin(), beta.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      const double* qr = q.data() + v * b;
      const double* pr = q_prev.data() + v * b;
      double* wr = w.data() + v * b;
      for (std::size_t c = 0; c < b; ++c) {
        wr[c] -= alpha[c] * qr[c] + beta_prev[c] * pr[c];
        beta[c] += wr[c] * wr[c];
      }
    }
    for (std::size_t c = 0; c < b; ++c) {
      beta[c] = std::sqrt(beta[c]);
      residual_norm[c] = beta[c];
      if (j == 0 && lanes[c].alive_count) beta[c] /= std::sqrt(static_cast<double>(lanes[c].alive_count));
      LaneState& lane = lanes[c];
      if (lane.done) continue;
      ++lane.result.iterations;
      lane.diag.push_back(alpha[c]);
      const double next = largest_tridiagonal_eigenvalue(lane.diag, lane.off, j == 0 ? alpha[c] : lane.theta);
      const double sc = std::max(1.0, std::abs(next));
      if (j > 0 && std::abs(next - lane.theta) <= opts.tolerance * sc) {
        ++lane.quiet;
      } else {
        lane.quiet = 0;
      }
      lane.theta = next;
      if (lane.quiet >= 2 || beta[c] <= 1e-14 * sc || j + 1 == lane.alive_count) {
        lane.done = true;
        lane.result.value = lane.theta;
        --active;
        continue;
      }
      lane.off.push_back(beta[c]);
    }
    if (active == 0) break;
    if (j + 1 == max_steps) throw ConvergenceError("Lanczos did not converge", j + 1);
    std::swap(q_prev, q);
    if (j == 0) {
      for (std::size_t c = 0; c < b; ++c) {
        scale[c] = lanes[c].alive_count ? 1.0 / std::sqrt(static_cast<double>(lanes[c].alive_count)) : 0.0;
      }
      for (std::size_t v = 0; v < n; ++v) {
        double* pr = q_prev.data() + v * b;
        for (std::size_t c = 0; c < b; ++c) pr[c] *= scale[c];
      }
    }
    for (std::size_t c = 0; c < b; ++c) scale[c] = residual_norm[c] > 0.0 ? 1.0 / residual_norm[c] : 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const double* wr = w.data() + v * b;
      double* qr = q.data() + v * b;
      for (std::size_t c = 0; c < b; ++c) qr[c] = wr[c] * scale[c];
    }
    beta_prev = beta;
  }
  for (std::size_t c = 0; c < b; ++c) out[c] = lanes[c].result;
  return out;
}

DominantEigenvalue dominant_eigenvalue(const Graph& g, std::span<const std::uint8_t> alive,
                                       const LanczosOptions& opts) {
  const NodeId none[1] = {kNoNode};
  return dominant_eigenvalues(g, alive, none, 1, opts).front();
}

}  // namespace netdis
