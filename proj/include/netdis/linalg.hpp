#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "netdis/graph.hpp"

namespace netdis {

/// Dense adjacency matrix of g.
Eigen::MatrixXd dense_adjacency(const Graph& g);

/// All adjacency eigenvalues, ascending. Throws NumericalError if the
/// symmetric eigensolver does not converge.
Eigen::VectorXd adjacency_spectrum(const Graph& g);

/// Full eigendecomposition (eigenvalues ascending, orthonormal columns).
struct SpectralDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
SpectralDecomposition adjacency_eigendecomposition(const Graph& g);

/// y = A x restricted to nodes with alive[v] != 0; y is zero on dead nodes.
/// x must already vanish on dead nodes.
void masked_multiply(const Graph& g, std::span<const std::uint8_t> alive,
                     std::span<const double> x, std::span<double> y);

/// Largest eigenvalue of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal. `lower` must be a lower bound of the answer
/// (the previous Lanczos Ritz value works, by interlacing).
double largest_tridiagonal_eigenvalue(std::span<const double> diag, std::span<const double> offdiag,
                                      double lower);

struct LanczosOptions {
  /// Stop once the largest Ritz value moves by at most tolerance * max(1, theta)
  /// on two consecutive steps.
  double tolerance = 1e-12;
  std::size_t max_steps = 5000;
};

struct DominantEigenvalue {
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Marks a batch column that removes no extra node.
inline constexpr NodeId kNoNode = ~NodeId{0};

/**
 * Largest adjacency eigenvalue of the subgraph induced by the alive nodes,
 * for a batch of node deletions. Column c additionally drops the nodes
 * extra_dead[c * per_column, (c + 1) * per_column), kNoNode entries ignored.
 *
 * Each column runs the Lanczos three-term recurrence from the uniform vector
 * over its own alive nodes. Without reorthogonalization converged Ritz values
 * only repeat, so the largest one stays valid. The columns share one block
 * sparse product but never mix: a column's result is bit-identical to
 * running it alone, and does not depend on how its dead nodes are split
 * between `alive` and `extra_dead`. It is a function of the node set only.
 */
std::vector<DominantEigenvalue> dominant_eigenvalues(const Graph& g, std::span<const std::uint8_t> alive,
                                                     std::span<const NodeId> extra_dead, std::size_t per_column = 1,
                                                     const LanczosOptions& opts = {});

/// Single-column form of dominant_eigenvalues(). Zero when no node is alive.
DominantEigenvalue dominant_eigenvalue(const Graph& g, std::span<const std::uint8_t> alive,
                                       const LanczosOptions& opts = {});

}  // namespace netdis
