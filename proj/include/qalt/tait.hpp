#pragma once

// Signed Tait graphs of link diagrams and the spanning-tree polynomial Γ_G(A).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qalt/bracket.hpp"
#include "qalt/cyclotomic.hpp"
#include "qalt/diagram.hpp"
#include "qalt/integer.hpp"
#include "qalt/laurent.hpp"

namespace qalt {

struct SignedEdge {
  int u = 0;
  int v = 0;
  int sign = 1;
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

/// Connected signed multigraph; list order is the edge order.
/// Dart 2e leaves u along edge e, dart 2e+1 leaves v.
class SignedPlanarGraph {
 public:
  SignedPlanarGraph() = default;
  SignedPlanarGraph(int vertex_count, std::vector<SignedEdge> edges) : vertex_count_(vertex_count), edges_(std::move(edges)) {
    validate();
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  const SignedEdge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  /// Crossing ids when built from a diagram.
  const std::vector<int>& origin() const { return origin_; }
  /// Cyclic order of darts around each vertex; present only for embedded graphs.
  const std::optional<std::vector<std::vector<int>>>& rotation() const { return rotation_; }
  bool has_embedding() const { return rotation_.has_value(); }

  bool is_connected() const {
    detail::UnionFind uf(static_cast<std::size_t>(vertex_count_));
    int parts = vertex_count_;
    for (const auto& e : edges_)
      if (uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) --parts;
    return parts == 1;
  }

  bool is_loop(int e) const { return edge(e).u == edge(e).v; }

  bool is_isthmus(int e) const {
    if (is_loop(e)) return false;
    detail::UnionFind uf(static_cast<std::size_t>(vertex_count_));
    for (int f = 0; f < edge_count(); ++f)
      if (f != e) uf.unite(static_cast<std::size_t>(edge(f).u), static_cast<std::size_t>(edge(f).v));
    return uf.find(static_cast<std::size_t>(edge(e).u)) != uf.find(static_cast<std::size_t>(edge(e).v));
  }

  /// G - e. The result is abstract (no embedding).
  SignedPlanarGraph deleted(int e) const {
    SignedPlanarGraph g;
    g.vertex_count_ = vertex_count_;
    for (int f = 0; f < edge_count(); ++f) {
      if (f == e) continue;
      g.edges_.push_back(edge(f));
      if (!origin_.empty()) g.origin_.push_back(origin_[static_cast<std::size_t>(f)]);
    }
    return g;
  }

  /// G / e: the endpoints merge, other edges keep their signs. Abstract result.
  SignedPlanarGraph contracted(int e) const {
    const int keep = std::min(edge(e).u, edge(e).v);
    const int gone = std::max(edge(e).u, edge(e).v);
    auto remap = [&](int x) {
      if (x == gone) x = keep;
      return x > gone ? x - 1 : x;
    };
    SignedPlanarGraph g;
    g.vertex_count_ = keep == gone ? vertex_count_ : vertex_count_ - 1;
    for (int f = 0; f < edge_count(); ++f) {
      if (f == e) continue;
      const auto& x = edge(f);
      g.edges_.push_back({keep == gone ? x.u : remap(x.u), keep == gone ? x.v : remap(x.v), x.sign});
      if (!origin_.empty()) g.origin_.push_back(origin_[static_cast<std::size_t>(f)]);
    }
    return g;
  }

  /// Edges reordered so that new edge i is old edge order[i]. Abstract result.
  SignedPlanarGraph permuted(const std::vector<int>& order) const {
    SignedPlanarGraph g;
    g.vertex_count_ = vertex_count_;
    for (int f : order) {
      g.edges_.push_back(edge(f));
      if (!origin_.empty()) g.origin_.push_back(origin_[static_cast<std::size_t>(f)]);
    }
    g.validate();
    return g;
  }

  /// Same graph with every sign flipped.
  SignedPlanarGraph negated() const {
    SignedPlanarGraph g = *this;
    for (auto& e : g.edges_) e.sign = -e.sign;
    return g;
  }

  /// "u v +" lines, one per edge.
  std::string to_text() const {
    std::ostringstream out;
    for (const auto& e : edges_) out << e.u << ' ' << e.v << ' ' << (e.sign > 0 ? '+' : '-') << '\n';
    return out.str();
  }

  static SignedPlanarGraph embedded(int vertex_count, std::vector<SignedEdge> edges, std::vector<int> origin,
                                    std::vector<std::vector<int>> rotation) {
    SignedPlanarGraph g(vertex_count, std::move(edges));
    g.origin_ = std::move(origin);
    g.rotation_ = std::move(rotation);
    return g;
  }

 private:
  void validate() const {
    if (vertex_count_ < 1) throw Error(ErrorKind::EmptyDiagram, "graph needs at least one vertex");
    for (const auto& e : edges_) {
      if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_)
        throw Error(ErrorKind::SyntaxError, "edge endpoint out of range");
      if (e.sign != 1 && e.sign != -1) throw Error(ErrorKind::SyntaxError, "edge sign must be + or -");
    }
  }

  int vertex_count_ = 1;
  std::vector<SignedEdge> edges_;
  std::vector<int> origin_;
  std::optional<std::vector<std::vector<int>>> rotation_;
};

/// Parses "u v +" / "u v -" lines; '#' starts a comment. Vertex count is max id + 1.
inline SignedPlanarGraph parse_edge_list(std::string_view text) {
  std::vector<SignedEdge> edges;
  int max_vertex = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string a, b, s, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b >> s) || (fields >> extra))
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": expected 'u v +' or 'u v -'");
    SignedEdge e;
    try {
      std::size_t used_a = 0, used_b = 0;
      e.u = std::stoi(a, &used_a);
      e.v = std::stoi(b, &used_b);
      if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": bad vertex id");
    }
    if (e.u < 0 || e.v < 0) throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": negative vertex id");
    if (s == "+") e.sign = 1;
    else if (s == "-") e.sign = -1;
    else throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": sign must be + or -");
    max_vertex = std::max({max_vertex, e.u, e.v});
    edges.push_back(e);
  }
  SignedPlanarGraph g(max_vertex + 1, std::move(edges));
  if (!g.is_connected()) throw Error(ErrorKind::DisconnectedDiagram, "graph is not connected");
  return g;
}

// ---------------------------------------------------------------------------
// Checkerboard graphs

struct TaitPair {
  SignedPlanarGraph black;  // G
  SignedPlanarGraph white;  // G_*
};

namespace detail {

/// Region color of every corner: color(c, k) = base[c] xor (k odd).
inline std::vector<int> corner_colors(const Diagram& d, const FaceMap& fm) {
  const std::size_t n = d.crossings().size();
  std::vector<int> base(n, -1);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, parity relation)
  for (int label = 1; label <= d.strand_count(); ++label) {
    const Slot t = d.tail_of(label), h = d.head_of(label);
    // corner(t.c, t.p) ~ corner(h.c, h.p - 1)
    const int rel = (t.pos & 1) ^ ((h.pos + 3) & 1);
    adj[static_cast<std::size_t>(t.crossing)].push_back({h.crossing, rel});
    adj[static_cast<std::size_t>(h.crossing)].push_back({t.crossing, rel});
  }
  std::vector<int> stack{0};
  base[0] = 0;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (auto [o, rel] : adj[static_cast<std::size_t>(c)]) {
      const int want = base[static_cast<std::size_t>(c)] ^ rel;
      if (base[static_cast<std::size_t>(o)] < 0) {
        base[static_cast<std::size_t>(o)] = want;
        stack.push_back(o);
      } else if (base[static_cast<std::size_t>(o)] != want) {
        throw Error(ErrorKind::InvalidStrandLabels, "diagram regions are not two-colorable");
      }
    }
  }
  std::vector<int> face_color(static_cast<std::size_t>(fm.face_count), -1);
  for (std::size_t c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) {
      const int color = base[c] ^ (k & 1);
      int& slot = face_color[static_cast<std::size_t>(fm.face_of_corner[c][static_cast<std::size_t>(k)])];
      if (slot >= 0 && slot != color) throw Error(ErrorKind::InvalidStrandLabels, "diagram regions are not two-colorable");
      slot = color;
    }
  return face_color;
}

/// Graph on the faces of one color; each crossing gives the edge through its
/// two corners of that color.
inline SignedPlanarGraph region_graph(const Diagram& d, const FaceMap& fm, const std::vector<int>& face_color, int color) {
  const std::size_t n = d.crossings().size();
  std::vector<int> vertex_of(static_cast<std::size_t>(fm.face_count), -1);
  int vertices = 0;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t k = 0; k < 4; ++k) {
      const int f = fm.face_of_corner[c][k];
      if (face_color[static_cast<std::size_t>(f)] == color && vertex_of[static_cast<std::size_t>(f)] < 0)
        vertex_of[static_cast<std::size_t>(f)] = vertices++;
    }

  std::vector<SignedEdge> edges;
  std::vector<int> origin;
  std::vector<int> first_corner(n);  // 0 or 1
  for (std::size_t c = 0; c < n; ++c) {
    const int k0 = face_color[static_cast<std::size_t>(fm.face_of_corner[c][1])] == color ? 1 : 0;
    first_corner[c] = k0;
    // the A-smoothing joins corners 1 and 3
    edges.push_back({vertex_of[static_cast<std::size_t>(fm.face_of_corner[c][static_cast<std::size_t>(k0)])],
                     vertex_of[static_cast<std::size_t>(fm.face_of_corner[c][static_cast<std::size_t>(k0 + 2)])],
                     k0 == 1 ? 1 : -1});
    origin.push_back(static_cast<int>(c));
  }

  // Walk each face boundary corner by corner: from corner (c,k) leave along the
  // strand at position k+1 and arrive at corner (c', p') on its other end.
  auto next_corner = [&](int c, int k) {
    const int p = (k + 1) % 4;
    const int label = d.crossings()[static_cast<std::size_t>(c)].strands[static_cast<std::size_t>(p)];
    const Slot t = d.tail_of(label), h = d.head_of(label);
    const Slot other = (t.crossing == c && t.pos == p) ? h : t;
    return std::pair<int, int>{other.crossing, other.pos};
  };
  std::vector<std::vector<int>> rotation(static_cast<std::size_t>(vertices));
  std::vector<bool> seen(4 * n, false);
  for (std::size_t c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) {
      const int f = fm.face_of_corner[c][static_cast<std::size_t>(k)];
      if (face_color[static_cast<std::size_t>(f)] != color || seen[4 * c + static_cast<std::size_t>(k)]) continue;
      auto& rot = rotation[static_cast<std::size_t>(vertex_of[static_cast<std::size_t>(f)])];
      int cc = static_cast<int>(c), kk = k;
      while (!seen[static_cast<std::size_t>(4 * cc + kk)]) {
        seen[static_cast<std::size_t>(4 * cc + kk)] = true;
        const int side = kk == first_corner[static_cast<std::size_t>(cc)] ? 0 : 1;
        rot.push_back(2 * cc + side);
        std::tie(cc, kk) = next_corner(cc, kk);
      }
    }
  return SignedPlanarGraph::embedded(vertices, std::move(edges), std::move(origin), std::move(rotation));
}

}  // namespace detail

/// Black graph G and white graph G_*. Black is the color with more regions;
/// on a tie, the color of corner 1 at crossing 0.
inline TaitPair checkerboard(const Diagram& d) {
  if (d.component_count() > 0 && !d.is_connected())
    throw Error(ErrorKind::DisconnectedDiagram, "checkerboard graphs need a connected diagram");
  if (d.crossing_count() == 0) {
    if (d.free_loops() > 1) throw Error(ErrorKind::DisconnectedDiagram, "checkerboard graphs need a connected diagram");
    auto one = SignedPlanarGraph::embedded(1, {}, {}, {{}});
    return {one, one};
  }
  const FaceMap fm = corner_faces(d);
  const std::vector<int> face_color = detail::corner_colors(d, fm);
  const auto zeros = std::count(face_color.begin(), face_color.end(), 0);
  const auto ones = static_cast<long>(face_color.size()) - zeros;
  int black = zeros > ones ? 0 : 1;
  if (zeros == ones) black = face_color[static_cast<std::size_t>(fm.face_of_corner[0][1])];
  return {detail::region_graph(d, fm, face_color, black), detail::region_graph(d, fm, face_color, 1 - black)};
}

/// Planar dual with negated signs. Dual edge e keeps index e.
inline SignedPlanarGraph dual(const SignedPlanarGraph& g) {
  if (!g.has_embedding()) throw Error(ErrorKind::NoEmbedding, "dual needs an embedded graph");
  const auto& rot = *g.rotation();
  const std::size_t darts = 2 * static_cast<std::size_t>(g.edge_count());
  std::vector<int> succ(darts, -1);
  for (const auto& cycle : rot)
    for (std::size_t i = 0; i < cycle.size(); ++i)
      succ[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];

  // faces are orbits of d -> succ(reverse(d))
  std::vector<int> face_of(darts, -1);
  std::vector<std::vector<int>> faces;
  for (std::size_t start = 0; start < darts; ++start) {
    if (face_of[start] >= 0) continue;
    const int id = static_cast<int>(faces.size());
    faces.emplace_back();
    int dart = static_cast<int>(start);
    while (face_of[static_cast<std::size_t>(dart)] < 0) {
      face_of[static_cast<std::size_t>(dart)] = id;
      faces.back().push_back(dart);
      dart = succ[static_cast<std::size_t>(dart ^ 1)];
    }
  }
  if (faces.empty()) faces.emplace_back();  // edgeless graph: one face

  std::vector<SignedEdge> edges;
  for (int e = 0; e < g.edge_count(); ++e)
    edges.push_back({face_of[static_cast<std::size_t>(2 * e)], face_of[static_cast<std::size_t>(2 * e + 1)], -g.edge(e).sign});
  const int face_count = static_cast<int>(faces.size());
  return SignedPlanarGraph::embedded(face_count, std::move(edges), g.origin(), std::move(faces));
}

// ---------------------------------------------------------------------------
// Spanning trees and activities

enum class ActivityState { L, D, l, d, Lbar, Dbar, lbar, dbar };

inline constexpr std::string_view to_string(ActivityState s) {
  switch (s) {
    case ActivityState::L: return "L";
    case ActivityState::D: return "D";
    case ActivityState::l: return "l";
    case ActivityState::d: return "d";
    case ActivityState::Lbar: return "L̄";
    case ActivityState::Dbar: return "D̄";
    case ActivityState::lbar: return "l̄";
    case ActivityState::dbar: return "d̄";
  }
  return "?";
}

inline constexpr ActivityState make_state(bool internal, bool active, int sign) {
  if (sign > 0) return internal ? (active ? ActivityState::L : ActivityState::D) : (active ? ActivityState::l : ActivityState::d);
  return internal ? (active ? ActivityState::Lbar : ActivityState::Dbar) : (active ? ActivityState::lbar : ActivityState::dbar);
}

/// Weight of a state as (coefficient sign, A-exponent).
inline constexpr std::pair<int, int> state_weight(ActivityState s) {
  switch (s) {
    case ActivityState::L: return {-1, -3};
    case ActivityState::D: return {1, 1};
    case ActivityState::l: return {-1, 3};
    case ActivityState::d: return {1, -1};
    case ActivityState::Lbar: return {-1, 3};
    case ActivityState::Dbar: return {1, -1};
    case ActivityState::lbar: return {-1, -3};
    case ActivityState::dbar: return {1, 1};
  }
  return {0, 0};
}

struct SpanningTree {
  std::vector<bool> in_tree;           // per edge
  std::vector<ActivityState> states;   // per edge
};

/// Visits every spanning tree once with its activity states. Edges are decided
/// from the last to the first, so each decided edge is the largest of the
/// remaining minor: a loop there is externally active, a bridge internally active.
template <class Visitor>
void for_each_spanning_tree(const SignedPlanarGraph& g, Visitor&& visit) {
  if (!g.is_connected()) throw Error(ErrorKind::DisconnectedDiagram, "graph is not connected");
  const int m = g.edge_count();
  SpanningTree cur;
  cur.in_tree.assign(static_cast<std::size_t>(m), false);
  cur.states.assign(static_cast<std::size_t>(m), ActivityState::L);

  auto vertex = [](int x) { return static_cast<std::size_t>(x); };
  std::function<void(int, detail::UnionFind&)> rec = [&](int k, detail::UnionFind& contracted) {
    if (k < 0) {
      visit(static_cast<const SpanningTree&>(cur));
      return;
    }
    const auto& e = g.edge(k);
    const std::size_t cu = contracted.find(vertex(e.u)), cv = contracted.find(vertex(e.v));
    const auto ek = static_cast<std::size_t>(k);
    if (cu == cv) {
      cur.in_tree[ek] = false;
      cur.states[ek] = make_state(false, true, e.sign);
      rec(k - 1, contracted);
      return;
    }
    detail::UnionFind reach = contracted;
    for (int f = 0; f < k; ++f) reach.unite(vertex(g.edge(f).u), vertex(g.edge(f).v));
    const bool bridge = reach.find(cu) != reach.find(cv);
    if (!bridge) {
      cur.in_tree[ek] = false;
      cur.states[ek] = make_state(false, false, e.sign);
      rec(k - 1, contracted);
    }
    detail::UnionFind merged = contracted;
    merged.unite(cu, cv);
    cur.in_tree[ek] = true;
    cur.states[ek] = make_state(true, bridge, e.sign);
    rec(k - 1, merged);
  };
  detail::UnionFind start(static_cast<std::size_t>(g.vertex_count()));
  rec(m - 1, start);
}

/// Every spanning tree as a sorted list of edge indices.
inline std::vector<std::vector<int>> spanning_trees(const SignedPlanarGraph& g) {
  std::vector<std::vector<int>> out;
  for_each_spanning_tree(g, [&](const SpanningTree& t) {
    std::vector<int> edges;
    for (std::size_t e = 0; e < t.in_tree.size(); ++e)
      if (t.in_tree[e]) edges.push_back(static_cast<int>(e));
    out.push_back(std::move(edges));
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Matrix-tree theorem count.
inline Integer kirchhoff_count(const SignedPlanarGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (n == 1) return 1;
  std::vector<std::vector<Integer>> lap(n, std::vector<Integer>(n));
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    lap[u][u] += 1;
    lap[v][v] += 1;
    lap[u][v] -= 1;
    lap[v][u] -= 1;
  }
  std::vector<std::vector<Integer>> minor(n - 1, std::vector<Integer>(n - 1));
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) minor[i - 1][j - 1] = lap[i][j];
  return bareiss_determinant(std::move(minor));
}

/// Activity of edge e with respect to tree T (edge indices), from the
/// definitions: a tree edge is active iff it is the least edge of its
/// fundamental cut, a non-tree edge iff it is the least of its fundamental cycle.
inline ActivityState activity(const SignedPlanarGraph& g, const std::vector<int>& tree, int e) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  const bool internal = std::find(tree.begin(), tree.end(), e) != tree.end();
  const auto& edge = g.edge(e);
  bool active = true;
  if (internal) {
    detail::UnionFind uf(n);
    for (int f : tree)
      if (f != e) uf.unite(static_cast<std::size_t>(g.edge(f).u), static_cast<std::size_t>(g.edge(f).v));
    for (int f = 0; f < e && active; ++f)
      if (uf.find(static_cast<std::size_t>(g.edge(f).u)) != uf.find(static_cast<std::size_t>(g.edge(f).v))) active = false;
  } else if (edge.u != edge.v) {
    // path from u to v inside T
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int f : tree) {
      adj[static_cast<std::size_t>(g.edge(f).u)].push_back({g.edge(f).v, f});
      adj[static_cast<std::size_t>(g.edge(f).v)].push_back({g.edge(f).u, f});
    }
    std::vector<int> via(n, -2);
    std::vector<int> prev(n, -1);
    std::vector<int> queue{edge.u};
    via[static_cast<std::size_t>(edge.u)] = -1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto [w, f] : adj[static_cast<std::size_t>(queue[i])])
        if (via[static_cast<std::size_t>(w)] == -2) {
          via[static_cast<std::size_t>(w)] = f;
          prev[static_cast<std::size_t>(w)] = queue[i];
          queue.push_back(w);
        }
    if (via[static_cast<std::size_t>(edge.v)] == -2) throw Error(ErrorKind::InvalidStrandLabels, "edge set is not a spanning tree");
    for (int x = edge.v; x != edge.u; x = prev[static_cast<std::size_t>(x)])
      if (via[static_cast<std::size_t>(x)] < e) active = false;
  }
  return make_state(internal, active, edge.sign);
}

/// Γ_G(A): the sum over spanning trees of the product of state weights.
inline HalfLaurent gamma(const SignedPlanarGraph& g) {
  std::map<int, Integer> acc;
  for_each_spanning_tree(g, [&](const SpanningTree& t) {
    int sign = 1, exponent = 0;
    for (auto s : t.states) {
      const auto [c, k] = state_weight(s);
      sign *= c;
      exponent += k;
    }
    acc[exponent] += sign;
  });
  HalfLaurent r;
  for (const auto& [k, c] : acc) r += a_power(k, c);
  return r;
}

/// Deletion-contraction identity at e with e moved to the end of the order:
///   Γ_G = A^{-ε} Γ_{G-e} + A^{ε} Γ_{G/e}.
inline bool gamma_skein_check(const SignedPlanarGraph& g, int e) {
  if (g.is_loop(e) || g.is_isthmus(e))
    throw Error(ErrorKind::LoopOrIsthmus, "edge " + std::to_string(e) + " is a loop or an isthmus");
  std::vector<int> order;
  for (int f = 0; f < g.edge_count(); ++f)
    if (f != e) order.push_back(f);
  order.push_back(e);
  const SignedPlanarGraph h = g.permuted(order);
  const int last = h.edge_count() - 1;
  const int eps = h.edge(last).sign;
  const HalfLaurent lhs = gamma(h);
  const HalfLaurent rhs = a_power(-eps) * gamma(h.deleted(last)) + a_power(eps) * gamma(h.contracted(last));
  return lhs == rhs;
}

/// |det| of the reduced Goeritz matrix.
inline Integer goeritz_det(const SignedPlanarGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (n == 1) return 1;
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    const auto u = static_cast<std::size_t>(e.u), v = static_cast<std::size_t>(e.v);
    m[u][v] -= e.sign;
    m[v][u] -= e.sign;
    m[u][u] += e.sign;
    m[v][v] += e.sign;
  }
  std::vector<std::vector<Integer>> minor(n - 1, std::vector<Integer>(n - 1));
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) minor[i - 1][j - 1] = m[i][j];
  return abs(bareiss_determinant(std::move(minor)));
}

// ---------------------------------------------------------------------------
// Tutte polynomial

/// Coefficients of x^i y^j.
using TuttePolynomial = std::map<std::pair<int, int>, Integer>;

/// χ_G(x, y) by deletion-contraction on the first edge.
inline TuttePolynomial tutte_polynomial(const SignedPlanarGraph& g) {
  if (g.edge_count() == 0) return {{{0, 0}, 1}};
  auto shift = [](const TuttePolynomial& p, int dx, int dy) {
    TuttePolynomial r;
    for (const auto& [k, c] : p) r[{k.first + dx, k.second + dy}] += c;
    return r;
  };
  if (g.is_loop(0)) return shift(tutte_polynomial(g.deleted(0)), 0, 1);
  if (g.is_isthmus(0)) return shift(tutte_polynomial(g.contracted(0)), 1, 0);
  TuttePolynomial r = tutte_polynomial(g.deleted(0));
  for (const auto& [k, c] : tutte_polynomial(g.contracted(0))) r[k] += c;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

/// χ(x, y) with x = a t^{p}, y = b t^{q}.
inline HalfLaurent specialize(const TuttePolynomial& chi, int a, int p, int b, int q) {
  HalfLaurent r;
  for (const auto& [k, c] : chi) {
    const Integer sign = ((k.first % 2 != 0 && a < 0) != (k.second % 2 != 0 && b < 0)) ? -1 : 1;
    r += HalfLaurent::monomial(c * sign, HalfExp::integer(static_cast<std::int64_t>(p) * k.first + static_cast<std::int64_t>(q) * k.second));
  }
  return r;
}

struct TutteMatch {
  int sign = 1;
  HalfExp r;
  bool swapped = false;  // specialized at (-t^{-1}, -t)
};

/// Finds ±t^r with V_D(t) = ±t^r χ_G(-t, -t^{-1}). A graph whose edges are
/// negative is matched at the swapped point (-t^{-1}, -t).
inline std::optional<TutteMatch> tutte_check(const SignedPlanarGraph& g, const Diagram& d) {
  const TuttePolynomial chi = tutte_polynomial(g);
  const HalfLaurent v = jones(d);
  for (bool swapped : {false, true}) {
    const HalfLaurent s = swapped ? specialize(chi, -1, -1, -1, 1) : specialize(chi, -1, 1, -1, -1);
    if (s.is_zero() || v.is_zero() || s.term_count() != v.term_count()) continue;
    const HalfExp r = v.min_degree() - s.min_degree();
    for (int sign : {1, -1})
      if (HalfLaurent::monomial(sign, r) * s == v) return TutteMatch{sign, r, swapped};
  }
  return std::nullopt;
}

}  // namespace qalt
