#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symm/errors.hpp"

namespace symm {

/// Diagonal matrix with ±1 entries.
class SignatureMatrix {
 public:
  SignatureMatrix() = default;
  explicit SignatureMatrix(std::vector<int> diag) : diag_(std::move(diag)) {
    for (int d : diag_) {
      if (d != 1 && d != -1) throw ValueError("signature entries must be +1 or -1");
    }
  }
  static SignatureMatrix identity(int q) { return SignatureMatrix(std::vector<int>(q, 1)); }

  /// Block diag(-sigma_i, sigma_e), the system signature layout.
  static SignatureMatrix system(const SignatureMatrix& sigma_i, const SignatureMatrix& sigma_e) {
    std::vector<int> d;
    d.reserve(sigma_i.size() + sigma_e.size());
    for (int s : sigma_i.diag()) d.push_back(-s);
    for (int s : sigma_e.diag()) d.push_back(s);
    return SignatureMatrix(std::move(d));
  }

  const std::vector<int>& diag() const { return diag_; }
  int size() const { return static_cast<int>(diag_.size()); }
  int operator[](int i) const { return diag_[i]; }

  /// Number of +1 entries minus number of -1 entries.
  int signature() const { return std::accumulate(diag_.begin(), diag_.end(), 0); }

  SignatureMatrix negated() const {
    std::vector<int> d(diag_);
    for (int& s : d) s = -s;
    return SignatureMatrix(std::move(d));
  }

  /// Entries [offset, offset + count).
  SignatureMatrix slice(int offset, int count) const {
    return SignatureMatrix(std::vector<int>(diag_.begin() + offset, diag_.begin() + offset + count));
  }

  Eigen::MatrixXd matrix() const {
    Eigen::VectorXd v(size());
    for (int i = 0; i < size(); ++i) v(i) = diag_[i];
    return v.asDiagonal();
  }

  bool operator==(const SignatureMatrix& other) const = default;

 private:
  std::vector<int> diag_;
};

struct SignEdge {
  int i = 0;
  int j = 0;
  int parity = 1;  // required value of σ_i·σ_j
  bool operator==(const SignEdge&) const = default;
};

/// Constraints σ_i·σ_j = parity over q nodes. Adding the same pair twice with
/// opposite parity records the pair in `conflicts` instead of failing.
class SignConstraintGraph {
 public:
  explicit SignConstraintGraph(int q) : q_(q) {
    if (q < 0) throw ValueError("node count must be non-negative");
  }

  void add_edge(int i, int j, int parity) {
    if (i == j) throw ValueError("sign constraint needs two distinct nodes");
    if (i < 0 || j < 0 || i >= q_ || j >= q_) throw ValueError("sign constraint node out of range");
    if (parity != 1 && parity != -1) throw ValueError("parity must be +1 or -1");
    const auto key = std::minmax(i, j);
    const auto it = seen_.find(key);
    if (it != seen_.end()) {
      if (it->second != parity) conflicts_.push_back({key.first, key.second});
      return;
    }
    seen_.emplace(key, parity);
    edges_.push_back({i, j, parity});
  }

  int q() const { return q_; }
  const std::vector<SignEdge>& edges() const { return edges_; }
  const std::vector<std::pair<int, int>>& conflicts() const { return conflicts_; }

 private:
  int q_;
  std::vector<SignEdge> edges_;
  std::vector<std::pair<int, int>> conflicts_;
  std::map<std::pair<int, int>, int> seen_;
};

struct SignSolution {
  std::optional<SignatureMatrix> sigma;
  std::vector<SignEdge> odd_cycle;  // witness when infeasible

  bool feasible() const { return sigma.has_value(); }
};

namespace detail {

// Union-find storing each node's parity relative to its root.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int q) : parent_(q), rank_(q, 0), parity_(q, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  // Returns (root, parity of node relative to root).
  std::pair<int, int> find(int x) {
    int p = 1;
    int r = x;
    while (parent_[r] != r) {
      p *= parity_[r];
      r = parent_[r];
    }
    // Path compression with parity fix-up.
    int cur = x;
    int cur_p = p;
    while (parent_[cur] != cur) {
      const int next = parent_[cur];
      const int next_p = cur_p * parity_[cur];
      parent_[cur] = r;
      parity_[cur] = cur_p;
      cur = next;
      cur_p = next_p;
    }
    return {r, p};
  }

  // Returns false when the constraint contradicts existing ones.
  bool unite(int a, int b, int parity) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return pa * pb == parity;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = pa * pb * parity;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<int> parity_;
};

}  // namespace detail

/// Solves σ_i·σ_j = parity for all edges. On success each connected
/// component's smallest node gets +1, which makes the answer independent of
/// edge order. On failure returns an odd cycle of edges as witness.
inline SignSolution sign_consistency(const SignConstraintGraph& g) {
  const int q = g.q();
  if (!g.conflicts().empty()) {
    const auto [i, j] = g.conflicts().front();
    return {std::nullopt, {{i, j, 1}, {i, j, -1}}};
  }

  detail::ParityUnionFind uf(q);
  std::vector<std::vector<std::pair<int, int>>> consistent(q);  // (neighbor, parity)
  for (const SignEdge& e : g.edges()) {
    if (uf.unite(e.i, e.j, e.parity)) {
      consistent[e.i].push_back({e.j, e.parity});
      consistent[e.j].push_back({e.i, e.parity});
      continue;
    }
    // Contradiction: a path of accepted edges from e.j to e.i plus e closes an
    // odd cycle.
    std::vector<int> prev(q, -1);
    std::vector<int> prev_parity(q, 1);
    std::vector<bool> seen(q, false);
    std::queue<int> bfs;
    bfs.push(e.j);
    seen[e.j] = true;
    while (!bfs.empty()) {
      const int u = bfs.front();
      bfs.pop();
      if (u == e.i) break;
      for (const auto& [v, p] : consistent[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        prev[v] = u;
        prev_parity[v] = p;
        bfs.push(v);
      }
    }
    std::vector<SignEdge> cycle{e};
    for (int v = e.i; v != e.j; v = prev[v]) {
      cycle.push_back({prev[v], v, prev_parity[v]});
    }
    return {std::nullopt, std::move(cycle)};
  }

  // Accepted edges are mutually consistent, so BFS from each component's
  // smallest node assigns σ uniquely.
  std::vector<int> sigma(q, 0);
  for (int start = 0; start < q; ++start) {
    if (sigma[start] != 0) continue;
    sigma[start] = 1;
    std::queue<int> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      const int u = bfs.front();
      bfs.pop();
      for (const auto& [v, p] : consistent[u]) {
        if (sigma[v] != 0) continue;
        sigma[v] = sigma[u] * p;
        bfs.push(v);
      }
    }
  }
  return {SignatureMatrix(std::move(sigma)), {}};
}

}  // namespace symm
