#pragma once

// Helpers shared by the unit tests and the acceptance run: random inputs and
// brute-force oracles that avoid the library's own algorithms.

#include <algorithm>
#include <bit>
#include <complex>
#include <functional>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "qalt/corpus.hpp"
#include "qalt/tait.hpp"

namespace qalt {

// readable gtest failure messages
inline void PrintTo(const HalfExp& e, std::ostream* os) { *os << e.str(); }
inline void PrintTo(const HalfLaurent& f, std::ostream* os) { *os << f.str(); }
inline void PrintTo(const Diagram& d, std::ostream* os) { *os << (d.crossing_count() ? d.pd() : "loops:" + std::to_string(d.free_loops())); }

}  // namespace qalt

namespace qalt::check {

using Rng = std::mt19937_64;

enum class SignMode { Positive, Negative, Mixed };

/// Random connected planar signed multigraph grown by series-parallel moves:
/// subdivide an edge, double an edge, or hang a pendant edge.
inline SignedPlanarGraph random_planar_graph(Rng& rng, int max_edges, SignMode mode) {
  auto sign = [&] {
    if (mode == SignMode::Positive) return 1;
    if (mode == SignMode::Negative) return -1;
    return std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  };
  std::vector<SignedEdge> edges{{0, 1, sign()}};
  int vertices = 2;
  const int target = std::uniform_int_distribution<int>(1, max_edges)(rng);
  while (static_cast<int>(edges.size()) < target) {
    const auto pick = std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: {
        const int w = vertices++;
        const SignedEdge old = edges[pick];
        edges[pick] = {old.u, w, old.sign};
        edges.push_back({w, old.v, sign()});
        break;
      }
      case 1:
        edges.push_back({edges[pick].u, edges[pick].v, sign()});
        break;
      default: {
        const int at = std::uniform_int_distribution<int>(0, vertices - 1)(rng);
        edges.push_back({at, vertices++, sign()});
        break;
      }
    }
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return SignedPlanarGraph(vertices, edges);
}

/// Spanning trees by testing every (V-1)-subset of edges for acyclicity.
inline std::vector<std::vector<int>> brute_force_trees(const SignedPlanarGraph& g) {
  const int m = g.edge_count();
  const int need = g.vertex_count() - 1;
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (std::popcount(mask) != need) continue;
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    bool acyclic = true;
    std::vector<int> tree;
    for (int e = 0; e < m && acyclic; ++e) {
      if (!((mask >> e) & 1U)) continue;
      const int a = find(g.edge(e).u), b = find(g.edge(e).v);
      if (a == b) acyclic = false;
      else parent[static_cast<std::size_t>(a)] = b;
      tree.push_back(e);
    }
    if (acyclic) out.push_back(tree);
  }
  return out;
}

/// Γ from brute-force trees and the definition-level activity function.
inline HalfLaurent gamma_oracle(const SignedPlanarGraph& g) {
  HalfLaurent total;
  for (const auto& tree : brute_force_trees(g)) {
    int sign = 1, exponent = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      const auto [c, k] = state_weight(activity(g, tree, e));
      sign *= c;
      exponent += k;
    }
    total += HalfLaurent::monomial(sign, HalfExp::integer(exponent));
  }
  return total;
}

/// Edge-labelled isomorphism: a vertex bijection carrying edge i of g onto
/// edge i of h with equal sign.
inline bool same_labelled_graph(const SignedPlanarGraph& g, const SignedPlanarGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> map(n, -1), inverse(n, -1);
  auto bind = [&](int a, int b) {
    if (map[static_cast<std::size_t>(a)] == -1 && inverse[static_cast<std::size_t>(b)] == -1) {
      map[static_cast<std::size_t>(a)] = b;
      inverse[static_cast<std::size_t>(b)] = a;
      return true;
    }
    return map[static_cast<std::size_t>(a)] == b;
  };
  // try both orientations of each edge with backtracking
  std::function<bool(int)> rec = [&](int e) -> bool {
    if (e == g.edge_count()) return true;
    const auto& x = g.edge(e);
    const auto& y = h.edge(e);
    if (x.sign != y.sign || (x.u == x.v) != (y.u == y.v)) return false;
    for (auto [p, q] : {std::pair{y.u, y.v}, std::pair{y.v, y.u}}) {
      const auto saved_map = map;
      const auto saved_inv = inverse;
      if (bind(x.u, p) && bind(x.v, q) && rec(e + 1)) return true;
      map = saved_map;
      inverse = saved_inv;
    }
    return false;
  };
  return rec(0);
}

/// Braid closure whose word uses every generator, so the diagram is connected.
inline Diagram random_braid_diagram(Rng& rng, int strands, int length) {
  std::vector<int> word;
  for (int i = 1; i < strands; ++i) word.push_back(i);
  while (static_cast<int>(word.size()) < length)
    word.push_back(std::uniform_int_distribution<int>(1, strands - 1)(rng));
  std::shuffle(word.begin(), word.end(), rng);
  for (int& letter : word)
    if (std::uniform_int_distribution<int>(0, 1)(rng)) letter = -letter;
  return braid_closure(strands, word);
}

/// ±A^k with num = ±A^k * den, if the quotient is one monomial.
inline std::optional<HalfLaurent> monomial_ratio(const HalfLaurent& num, const HalfLaurent& den) {
  if (num.is_zero() || den.is_zero() || num.term_count() != den.term_count()) return std::nullopt;
  const HalfExp k = num.min_degree() - den.min_degree();
  for (int s : {1, -1}) {
    const HalfLaurent m = HalfLaurent::monomial(s, k);
    if (m * den == num) return m;
  }
  return std::nullopt;
}

/// Exponents congruent mod 4 (in A).
inline bool exponents_congruent_mod4(const HalfLaurent& f) {
  if (f.is_zero()) return true;
  const std::int64_t base = f.min_degree().twice();
  for (const auto& [twice, c] : f.terms())
    if ((twice - base) % 8 != 0) return false;
  return true;
}

/// Coefficients in one mod-8 class share a sign and adjacent classes
/// (4 apart) have opposite signs.
inline bool signs_alternate_mod8(const HalfLaurent& f) {
  if (f.is_zero()) return true;
  const std::int64_t base = f.min_degree().twice();
  const int first = f.terms().begin()->second < 0 ? -1 : 1;
  for (const auto& [twice, c] : f.terms()) {
    const std::int64_t steps = (twice - base) / 8;  // A-exponent difference / 4
    const int expected = steps % 2 == 0 ? first : -first;
    if ((c < 0 ? -1 : 1) != expected) return false;
  }
  return true;
}

/// |f(z)| computed in floating point from the stored terms.
inline double abs_at(const HalfLaurent& f, std::complex<double> sqrt_z) {
  std::complex<double> sum = 0;
  for (const auto& [twice, c] : f.terms()) sum += c.convert_to<double>() * std::pow(sqrt_z, static_cast<int>(twice));
  return std::abs(sum);
}

}  // namespace qalt::check
