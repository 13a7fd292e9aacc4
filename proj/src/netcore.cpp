#include "macronet/netcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "macronet/errors.hpp"

namespace macronet {

namespace {

constexpr double kIterTol = 1e-12;
constexpr int kIterCap = 100000;
constexpr double kDegenerateTol = 1e-12;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Connected components of the nonzero off-diagonal pattern.
std::vector<int> components(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (w(i, j) != 0.0) uf.unite(i, j);
    }
  }
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = uf.find(i);
  return label;
}

// Dominant eigenpair of a symmetric matrix by shifted power iteration.
// Returns (eigenvalue of b, converged vector); the shift is handled by the
// caller.
std::pair<double, Eigen::VectorXd> power_iterate(const Eigen::MatrixXd& b) {
  const Eigen::Index n = b.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  // Deterministic perturbation breaks symmetry when the uniform vector is
  // orthogonal to the dominant eigenvector.
  for (Eigen::Index i = 0; i < n; ++i) v(i) += 1e-4 * static_cast<double>(i + 1) / static_cast<double>(n);
  v.normalize();

  for (int iter = 0; iter < kIterCap; ++iter) {
    Eigen::VectorXd next = b * v;
    double norm = next.norm();
    if (!(norm > 0.0)) {
      // Annihilated: restart orthogonal to the current direction.
      next = Eigen::VectorXd::Zero(n);
      next(iter % n) = 1.0;
      norm = 1.0;
    }
    next /= norm;
    if (next.dot(v) < 0.0) next = -next;
    double delta = (next - v).lpNorm<Eigen::Infinity>();
    v = next;
    if (delta < kIterTol) {
      double lambda = v.dot(b * v);  // Rayleigh quotient
      return {lambda, v};
    }
  }
  raise(errc::no_convergence, "power iteration did not converge in " +
                                  std::to_string(kIterCap) + " iterations");
}

// Bounded-iteration Rayleigh-quotient estimate of the second eigenvalue,
// used only to detect a degenerate dominant pair.  Projecting out e1 each
// step keeps the estimate at or below lambda_2 up to rounding, and when
// lambda_2 ~ lambda_3 any vector in their span already has the right
// quotient, so a fixed cap suffices.
double second_eigenvalue(const Eigen::MatrixXd& b, const Eigen::VectorXd& e1, double l1) {
  const Eigen::Index n = b.rows();
  if (n < 2) return l1 - 1.0;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = 1.0 + 0.37 * static_cast<double>((i * 13) % 7);
  }
  v -= e1.dot(v) * e1;
  if (v.norm() < 1e-12) v = Eigen::VectorXd::Unit(n, 0) - e1(0) * e1;
  v.normalize();
  for (int iter = 0; iter < 300; ++iter) {
    v = b * v;
    v -= e1.dot(v) * e1;
    double norm = v.norm();
    if (!(norm > 0.0)) return 0.0;
    v /= norm;
  }
  return v.dot(b * v);
}

}  // namespace

const char* layer_kind_name(LayerKind kind) noexcept {
  switch (kind) {
    case LayerKind::ReturnCorrelation: return "return_correlation";
    case LayerKind::Trade: return "trade";
    case LayerKind::Fdi: return "fdi";
    case LayerKind::Other: return "other";
  }
  return "other";
}

const char* band_name(Band band) noexcept {
  switch (band) {
    case Band::Low: return "low";
    case Band::Mid: return "mid";
    case Band::High: return "high";
  }
  return "mid";
}

LayerMatrix::LayerMatrix(std::vector<std::string> entities_, LayerKind kind_,
                         Eigen::MatrixXd weights_, std::string tag_)
    : entities(std::move(entities_)), kind(kind_), tag(std::move(tag_)),
      weights(std::move(weights_)) {
  const Eigen::Index n = weights.rows();
  if (weights.cols() != n || static_cast<Eigen::Index>(entities.size()) != n) {
    raise(errc::invalid_params, "layer shape does not match entity count");
  }
  if (kind == LayerKind::Trade || kind == LayerKind::Fdi) {
    if ((weights.array() < 0.0).any()) {
      raise(errc::invalid_params, "negative flow in trade/FDI layer");
    }
    weights = 0.5 * (weights + weights.transpose()).eval();
  } else if (kind == LayerKind::ReturnCorrelation) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (weights(i, i) != 1.0) raise(errc::invalid_params, "correlation layer diagonal not unit");
      for (Eigen::Index j = 0; j < n; ++j) {
        if (weights(i, j) < -1.0 || weights(i, j) > 1.0) {
          raise(errc::invalid_params, "correlation layer entry outside [-1, 1]");
        }
      }
    }
  }
}

LayerMatrix LayerMatrix::from_correlation(const CorrelationMatrix& rho) {
  return LayerMatrix(rho.entities, LayerKind::ReturnCorrelation, rho.rho);
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> entities_, Eigen::MatrixXd d_)
    : entities(std::move(entities_)), d(std::move(d_)) {
  const Eigen::Index n = d.rows();
  if (d.cols() != n || static_cast<Eigen::Index>(entities.size()) != n) {
    raise(errc::invalid_params, "distance matrix shape does not match entities");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) raise(errc::invalid_params, "distance diagonal not zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (d(i, j) < 0.0 || d(i, j) > 2.0) raise(errc::invalid_params, "distance outside [0, 2]");
    }
  }
}

double SpanningTree::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.weight;
  return total;
}

DistanceMatrix distance_from_correlation(const CorrelationMatrix& rho) {
  const Eigen::Index n = rho.rho.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      d(i, j) = std::sqrt(2.0 * (1.0 - rho.rho(i, j)));
    }
    d(i, i) = 0.0;
  }
  return DistanceMatrix(rho.entities, std::move(d));
}

SpanningTree minimum_spanning_tree(const DistanceMatrix& dist) {
  const int n = static_cast<int>(dist.size());
  if (n < 2) raise(errc::too_few_nodes, "MST needs at least 2 nodes");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!std::isfinite(dist.d(i, j))) raise(errc::invalid_params, "non-finite distance");
    }
  }

  std::vector<SpanningTree::Edge> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      candidates.push_back({i, j, dist.d(i, j)});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  SpanningTree tree;
  tree.entities = dist.entities;
  UnionFind uf(n);
  for (const auto& e : candidates) {
    if (uf.unite(e.i, e.j)) {
      tree.edges.push_back(e);
      if (static_cast<int>(tree.edges.size()) == n - 1) break;
    }
  }
  return tree;
}

CentralityVector eigenvector_centrality(const LayerMatrix& layer, Normalization normalization) {
  const Eigen::Index n = layer.size();
  if (n < 1) raise(errc::too_few_nodes, "empty layer");

  // Restrict flow layers to the largest connected component; everything
  // outside it gets centrality 0.
  std::vector<Eigen::Index> active;
  if (layer.kind == LayerKind::Trade || layer.kind == LayerKind::Fdi) {
    std::vector<int> label = components(layer.weights);
    std::vector<int> count(n, 0);
    for (Eigen::Index i = 0; i < n; ++i) count[label[i]]++;
    int best = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (count[label[i]] > count[label[best]] ||
          (count[label[i]] == count[label[best]] && label[i] < label[best])) {
        best = static_cast<int>(i);
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (label[i] == label[best]) active.push_back(i);
    }
  } else {
    active.resize(n);
    std::iota(active.begin(), active.end(), 0);
  }

  const Eigen::Index m = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd w(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) w(a, b) = layer.weights(active[a], active[b]);
  }

  CentralityVector out;
  out.entities = layer.entities;
  out.normalization = normalization;
  out.values = Eigen::VectorXd::Zero(n);

  if (m == 1) {
    if (layer.kind == LayerKind::Trade || layer.kind == LayerKind::Fdi) {
      // Edgeless flow layer: every node is isolated and scores 0.
      out.eigenvalue = 0.0;
      return out;
    }
    out.eigenvalue = w(0, 0);
    out.values(active[0]) = 1.0;
    return out;
  }

  // Gershgorin shift makes every eigenvalue of w + sigma*I nonnegative, so
  // the dominant-in-magnitude eigenpair is the algebraically largest of w.
  double sigma = w.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::MatrixXd shifted = w + sigma * Eigen::MatrixXd::Identity(m, m);
  auto [shifted_lambda, vec] = power_iterate(shifted);
  double lambda = shifted_lambda - sigma;

  double scale = std::max(1.0, std::fabs(shifted_lambda));
  double l2 = second_eigenvalue(shifted, vec, shifted_lambda);
  if (std::fabs(shifted_lambda - l2) <= kDegenerateTol * scale) {
    raise(errc::degenerate_dominant_pair,
          "top two eigenvalues coincide within tolerance");
  }

  if (vec.sum() < 0.0) vec = -vec;
  if (normalization == Normalization::MaxOne) {
    double peak = vec.maxCoeff();
    if (!(peak > 0.0)) raise(errc::internal_error, "max-one normalization needs a positive peak");
    vec /= peak;
  }
  for (Eigen::Index a = 0; a < m; ++a) out.values(active[a]) = vec(a);
  out.eigenvalue = lambda;
  return out;
}

std::vector<Band> tercile_bands(const CentralityVector& c) {
  const Eigen::Index n = c.values.size();
  if (n < 3) raise(errc::too_few_nodes, "tercile banding needs at least 3 nodes");

  std::vector<double> sorted(c.values.data(), c.values.data() + n);
  std::sort(sorted.begin(), sorted.end());
  auto nearest_rank = [&](double p) {
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, static_cast<std::size_t>(n));
    return sorted[rank - 1];
  };
  const double q13 = nearest_rank(1.0 / 3.0);
  const double q23 = nearest_rank(2.0 / 3.0);

  std::vector<Band> bands(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = c.values(i);
    if (v > q23 || (v == q23 && q13 == q23)) {
      bands[i] = Band::High;
    } else if (v > q13) {
      bands[i] = Band::Mid;
    } else {
      bands[i] = Band::Low;
    }
  }
  return bands;
}

}  // namespace macronet
