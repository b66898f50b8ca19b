#pragma once

// Oriented link diagrams given by planar diagram (PD) codes.
//
// A crossing is a 4-tuple of strand labels listed counterclockwise starting
// from the incoming under-strand, so the under-strand runs strands[0] ->
// strands[2]. The over-strand runs strands[3] -> strands[1] on a positive
// crossing and strands[1] -> strands[3] on a negative one.
//
// Every Diagram is kept in canonical form: labels are 1..2n, each component
// owns a contiguous block of labels increasing along its orientation, and
// components are ordered by their smallest label. Crossingless components
// are counted separately as free loops.

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qalt/error.hpp"

namespace qalt {

struct Crossing {
  std::array<int, 4> strands{};
  int sign = 1;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct CrossingInfo {
  int index = 0;
  int sign = 1;
  bool type_I = true;
};

/// Which resolution of a crossing: L_0 is the A-smoothing (pairs strands
/// 0-1 and 2-3), L_1 the B-smoothing (pairs 0-3 and 1-2).
enum class Smoothing { L0 = 0, L1 = 1 };

namespace detail {

struct Slot {
  int crossing = -1;
  int pos = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Partner position of each slot when a crossing is removed.
using Pairing = std::array<int, 4>;
inline constexpr Pairing kPairA{1, 0, 3, 2};
inline constexpr Pairing kPairB{3, 2, 1, 0};
inline constexpr Pairing kPairStraight{2, 3, 0, 1};

/// Unoriented planar structure plus orientation hints, the common input of
/// every diagram-producing operation.
struct RawDiagram {
  struct Edge {
    int label = 0;
    std::optional<Slot> hint_tail;
  };
  std::vector<std::array<int, 4>> edge_at;  // edge index at each slot
  std::vector<Edge> edges;
  int free_loops = 0;
};

enum class OrientFrom { PdConvention, Hints };

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

class Diagram {
 public:
  /// The 0-crossing unknot.
  Diagram() = default;

  static Diagram unknot() { return Diagram{}; }
  static Diagram unlink(int components) {
    if (components < 1) throw Error(ErrorKind::EmptyDiagram, "an unlink needs at least one component");
    Diagram d;
    d.free_loops_ = components;
    return d;
  }

  /// Validates a PD code and brings it into canonical form.
  static Diagram from_pd(std::span<const std::array<int, 4>> tuples, int free_loops = 0);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int strand_count() const { return 2 * crossing_count(); }
  int free_loops() const { return free_loops_; }
  int component_count() const { return crossing_components_ + free_loops_; }
  /// Component id (0-based) of a strand label; free loops come after all of these.
  int component_of(int label) const { return component_of_.at(static_cast<std::size_t>(label - 1)); }

  int positive_count() const {
    return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(), [](const Crossing& c) { return c.sign > 0; }));
  }
  int negative_count() const { return crossing_count() - positive_count(); }
  int writhe() const { return positive_count() - negative_count(); }

  /// Number of connected pieces of the underlying 4-valent graph, free loops included.
  int piece_count() const;
  bool is_connected() const { return piece_count() == 1; }

  /// Slot holding the outgoing end of a strand label.
  detail::Slot tail_of(int label) const;
  detail::Slot head_of(int label) const;

  std::string pd() const;
  std::string pd_json() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

  // Assembly from an unoriented structure; used by every operation below.
  static Diagram assemble(detail::RawDiagram raw, detail::OrientFrom mode);
  detail::RawDiagram to_raw() const;

 private:
  std::vector<Crossing> crossings_;
  int free_loops_ = 1;
  int crossing_components_ = 0;
  std::vector<int> component_of_;
};

// ---------------------------------------------------------------------------

inline detail::Slot Diagram::tail_of(int label) const {
  for (int c = 0; c < crossing_count(); ++c) {
    const auto& x = crossings_[static_cast<std::size_t>(c)];
    const int over_out = x.sign > 0 ? 1 : 3;
    if (x.strands[2] == label) return {c, 2};
    if (x.strands[static_cast<std::size_t>(over_out)] == label) return {c, over_out};
  }
  throw Error(ErrorKind::InvalidStrandLabels, "no strand labelled " + std::to_string(label));
}

inline detail::Slot Diagram::head_of(int label) const {
  for (int c = 0; c < crossing_count(); ++c) {
    const auto& x = crossings_[static_cast<std::size_t>(c)];
    const int over_in = x.sign > 0 ? 3 : 1;
    if (x.strands[0] == label) return {c, 0};
    if (x.strands[static_cast<std::size_t>(over_in)] == label) return {c, over_in};
  }
  throw Error(ErrorKind::InvalidStrandLabels, "no strand labelled " + std::to_string(label));
}

inline detail::RawDiagram Diagram::to_raw() const {
  detail::RawDiagram raw;
  raw.free_loops = free_loops_;
  raw.edges.resize(static_cast<std::size_t>(strand_count()));
  raw.edge_at.resize(crossings_.size());
  for (std::size_t c = 0; c < crossings_.size(); ++c) {
    const auto& x = crossings_[c];
    const int over_out = x.sign > 0 ? 1 : 3;
    for (int p = 0; p < 4; ++p) {
      const int e = x.strands[static_cast<std::size_t>(p)] - 1;
      raw.edge_at[c][static_cast<std::size_t>(p)] = e;
      auto& edge = raw.edges[static_cast<std::size_t>(e)];
      edge.label = e + 1;
      if (p == 2 || p == over_out) edge.hint_tail = detail::Slot{static_cast<int>(c), p};
    }
  }
  return raw;
}

inline Diagram Diagram::assemble(detail::RawDiagram raw, detail::OrientFrom mode) {
  using detail::Slot;
  const int n = static_cast<int>(raw.edge_at.size());
  const std::size_t m = raw.edges.size();

  std::vector<std::array<Slot, 2>> ends(m);
  std::vector<int> seen(m, 0);
  for (int c = 0; c < n; ++c) {
    for (int p = 0; p < 4; ++p) {
      const int e = raw.edge_at[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)];
      if (e < 0 || static_cast<std::size_t>(e) >= m)
        throw Error(ErrorKind::InvalidStrandLabels, "strand index out of range");
      auto& count = seen[static_cast<std::size_t>(e)];
      if (count >= 2)
        throw Error(ErrorKind::InvalidStrandLabels,
                    "strand " + std::to_string(raw.edges[static_cast<std::size_t>(e)].label) + " appears more than twice");
      ends[static_cast<std::size_t>(e)][static_cast<std::size_t>(count++)] = Slot{c, p};
    }
  }
  for (std::size_t e = 0; e < m; ++e)
    if (seen[e] != 2)
      throw Error(ErrorKind::InvalidStrandLabels,
                  "strand " + std::to_string(raw.edges[e].label) + " appears " + std::to_string(seen[e]) + " time(s)");

  auto at = [&](Slot s) { return raw.edge_at[static_cast<std::size_t>(s.crossing)][static_cast<std::size_t>(s.pos)]; };
  auto other_end = [&](int e, Slot s) {
    const auto& pair = ends[static_cast<std::size_t>(e)];
    return pair[0] == s ? pair[1] : pair[0];
  };

  // Walk each component once in an arbitrary direction.
  std::vector<Slot> tail(m);
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> members;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return raw.edges[static_cast<std::size_t>(a)].label < raw.edges[static_cast<std::size_t>(b)].label; });
  for (int start : order) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    int e = start;
    Slot t = ends[static_cast<std::size_t>(start)][0];
    while (true) {
      if (comp[static_cast<std::size_t>(e)] >= 0) {
        if (comp[static_cast<std::size_t>(e)] == id && tail[static_cast<std::size_t>(e)] == t) break;
        throw Error(ErrorKind::InvalidStrandLabels, "a strand is traversed in both directions");
      }
      comp[static_cast<std::size_t>(e)] = id;
      tail[static_cast<std::size_t>(e)] = t;
      members.back().push_back(e);
      const Slot h = other_end(e, t);
      t = Slot{h.crossing, h.pos ^ 2};
      e = at(t);
    }
  }

  auto is_head = [&](Slot s) { return !(tail[static_cast<std::size_t>(at(s))] == s); };
  auto reverse = [&](const std::vector<int>& edges) {
    for (int e : edges) tail[static_cast<std::size_t>(e)] = other_end(e, tail[static_cast<std::size_t>(e)]);
  };

  for (const auto& edges : members) {
    bool flip = false;
    if (mode == detail::OrientFrom::Hints) {
      const int e = edges.front();  // smallest label in the component
      const auto& hint = raw.edges[static_cast<std::size_t>(e)].hint_tail;
      flip = hint && !(*hint == tail[static_cast<std::size_t>(e)]);
    } else {
      std::optional<Slot> under;
      for (int e : edges) {
        for (const Slot& s : ends[static_cast<std::size_t>(e)])
          if (s.pos % 2 == 0) {
            under = s;
            break;
          }
        if (under) break;
      }
      if (under) {
        flip = (under->pos == 0) != is_head(*under);
      } else {
        // Component is over at every crossing: numbering decides, as in the
        // usual PD convention (over-strand runs l -> j iff j = l + 1 or l > j + 1).
        const Slot s = ends[static_cast<std::size_t>(edges.front())][0];
        const auto& x = raw.edge_at[static_cast<std::size_t>(s.crossing)];
        const int j = raw.edges[static_cast<std::size_t>(x[1])].label;
        const int l = raw.edges[static_cast<std::size_t>(x[3])].label;
        const int in_pos = (j == l + 1 || l > j + 1) ? 3 : 1;
        flip = !is_head(Slot{s.crossing, in_pos});
      }
    }
    if (flip) reverse(edges);
  }

  if (mode == detail::OrientFrom::PdConvention) {
    for (int c = 0; c < n; ++c)
      if (!is_head(Slot{c, 0}))
        throw Error(ErrorKind::InvalidStrandLabels,
                    "crossing " + std::to_string(c) + " does not start with an incoming under-strand");
  }

  // Canonical labels: components by smallest original label, consecutive along orientation.
  std::vector<int> new_label(m, 0);
  std::vector<int> component_of;
  component_of.reserve(m);
  int next = 1;
  for (std::size_t id = 0; id < members.size(); ++id) {
    int start = members[id].front();
    // A two-strand component that is over at both crossings reads back with
    // its lower label entering the lower-indexed crossing; label it that way.
    const auto& mem = members[id];
    const bool all_over = std::all_of(mem.begin(), mem.end(), [&](int e) {
      return ends[static_cast<std::size_t>(e)][0].pos % 2 == 1 && ends[static_cast<std::size_t>(e)][1].pos % 2 == 1;
    });
    if (mem.size() == 2 && all_over) {
      auto head_crossing = [&](int e) { return other_end(e, tail[static_cast<std::size_t>(e)]).crossing; };
      start = head_crossing(mem[0]) < head_crossing(mem[1]) ? mem[0] : mem[1];
    }
    int e = start;
    do {
      new_label[static_cast<std::size_t>(e)] = next++;
      component_of.push_back(static_cast<int>(id));
      const Slot h = other_end(e, tail[static_cast<std::size_t>(e)]);
      e = at(Slot{h.crossing, h.pos ^ 2});
    } while (e != start);
  }

  Diagram d;
  d.free_loops_ = raw.free_loops;
  d.crossing_components_ = static_cast<int>(members.size());
  d.component_of_ = std::move(component_of);
  d.crossings_.reserve(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const int rot = is_head(Slot{c, 0}) ? 0 : 2;
    Crossing x;
    for (int p = 0; p < 4; ++p) {
      const int src = (p + rot) % 4;
      x.strands[static_cast<std::size_t>(p)] = new_label[static_cast<std::size_t>(at(Slot{c, src}))];
    }
    const int over_in = is_head(Slot{c, (3 + rot) % 4}) ? 3 : 1;
    x.sign = over_in == 3 ? 1 : -1;
    d.crossings_.push_back(x);
  }
  if (d.crossings_.empty() && d.free_loops_ == 0)
    throw Error(ErrorKind::EmptyDiagram, "a diagram needs at least one component");
  return d;
}

inline int Diagram::piece_count() const {
  detail::UnionFind uf(crossings_.size());
  std::vector<int> first(static_cast<std::size_t>(strand_count()), -1);
  for (std::size_t c = 0; c < crossings_.size(); ++c)
    for (int label : crossings_[c].strands) {
      auto& f = first[static_cast<std::size_t>(label - 1)];
      if (f < 0) f = static_cast<int>(c);
      else uf.unite(static_cast<std::size_t>(f), c);
    }
  int pieces = free_loops_;
  for (std::size_t c = 0; c < crossings_.size(); ++c)
    if (uf.find(c) == c) ++pieces;
  return pieces;
}

inline std::string Diagram::pd() const {
  std::string out;
  for (const auto& x : crossings_) {
    if (!out.empty()) out += ' ';
    out += "X[" + std::to_string(x.strands[0]) + "," + std::to_string(x.strands[1]) + "," +
           std::to_string(x.strands[2]) + "," + std::to_string(x.strands[3]) + "]";
  }
  if (crossings_.empty() && free_loops_ == 1) return out;
  for (int i = 0; i < free_loops_; ++i) out += out.empty() ? "Loop[]" : " Loop[]";
  return out;
}

inline std::string Diagram::pd_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : crossings_) arr.push_back(x.strands);
  return arr.dump();
}

// ---------------------------------------------------------------------------
// Faces. Corner k of crossing c is the region between positions k and k+1
// (counterclockwise). An edge joining slots (c1,p1) and (c2,p2) identifies
// corner (c1,p1) with corner (c2,p2-1) and corner (c1,p1-1) with (c2,p2).

struct FaceMap {
  std::vector<std::array<int, 4>> face_of_corner;  // face id per corner
  int face_count = 0;
};

inline FaceMap corner_faces(const Diagram& d) {
  const std::size_t n = d.crossings().size();
  detail::UnionFind uf(4 * n);
  std::vector<detail::Slot> first(static_cast<std::size_t>(d.strand_count()));
  std::vector<bool> has(static_cast<std::size_t>(d.strand_count()), false);
  auto corner = [](int c, int k) { return static_cast<std::size_t>(4 * c + ((k % 4) + 4) % 4); };
  for (std::size_t c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) {
      const auto idx = static_cast<std::size_t>(d.crossings()[c].strands[static_cast<std::size_t>(p)] - 1);
      if (!has[idx]) {
        has[idx] = true;
        first[idx] = {static_cast<int>(c), p};
      } else {
        const auto [c1, p1] = first[idx];
        const int c2 = static_cast<int>(c);
        uf.unite(corner(c1, p1), corner(c2, p - 1));
        uf.unite(corner(c1, p1 - 1), corner(c2, p));
      }
    }
  FaceMap fm;
  fm.face_of_corner.resize(n);
  std::unordered_map<std::size_t, int> ids;
  for (std::size_t c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k) {
      const std::size_t root = uf.find(corner(static_cast<int>(c), k));
      auto [it, inserted] = ids.try_emplace(root, fm.face_count);
      if (inserted) ++fm.face_count;
      fm.face_of_corner[c][static_cast<std::size_t>(k)] = it->second;
    }
  return fm;
}

/// Every piece of a planar diagram with k crossings bounds k + 2 faces.
inline bool is_planar(const Diagram& d) {
  if (d.crossings().empty()) return true;
  const FaceMap fm = corner_faces(d);
  detail::UnionFind pieces(d.crossings().size());
  std::vector<int> first(static_cast<std::size_t>(d.strand_count()), -1);
  for (std::size_t c = 0; c < d.crossings().size(); ++c)
    for (int label : d.crossings()[c].strands) {
      auto& f = first[static_cast<std::size_t>(label - 1)];
      if (f < 0) f = static_cast<int>(c);
      else pieces.unite(static_cast<std::size_t>(f), c);
    }
  std::unordered_map<std::size_t, int> crossings_in, faces_in;
  std::vector<std::size_t> face_piece(static_cast<std::size_t>(fm.face_count));
  for (std::size_t c = 0; c < d.crossings().size(); ++c) {
    const std::size_t root = pieces.find(c);
    ++crossings_in[root];
    for (int f : fm.face_of_corner[c]) face_piece[static_cast<std::size_t>(f)] = root;
  }
  for (std::size_t f = 0; f < face_piece.size(); ++f) ++faces_in[face_piece[f]];
  for (const auto& [root, k] : crossings_in)
    if (faces_in[root] != k + 2) return false;
  return true;
}

inline Diagram Diagram::from_pd(std::span<const std::array<int, 4>> tuples, int free_loops) {
  detail::RawDiagram raw;
  raw.free_loops = free_loops;
  std::unordered_map<int, int> index;
  for (const auto& t : tuples) {
    std::array<int, 4> row{};
    for (std::size_t p = 0; p < 4; ++p) {
      auto [it, inserted] = index.try_emplace(t[p], static_cast<int>(raw.edges.size()));
      if (inserted) raw.edges.push_back({t[p], std::nullopt});
      row[p] = it->second;
    }
    raw.edge_at.push_back(row);
  }
  if (tuples.empty() && free_loops == 0) raw.free_loops = 1;
  Diagram d = assemble(std::move(raw), detail::OrientFrom::PdConvention);
  if (!is_planar(d)) throw Error(ErrorKind::InvalidStrandLabels, "PD code does not describe a planar diagram");
  return d;
}

// ---------------------------------------------------------------------------
// Parsing: "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]", optionally wrapped in PD[...],
// with commas allowed between entries and Loop[] for crossingless components.
// The JSON form [[1,4,2,5],[3,6,4,1],[5,2,6,3]] is accepted as well.

inline Diagram parse_pd(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
  };
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorKind::SyntaxError, msg + " at offset " + std::to_string(pos));
  };
  skip();
  if (pos < text.size() && text[pos] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text.substr(pos));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::SyntaxError, std::string("invalid PD JSON: ") + e.what());
    }
    std::vector<std::array<int, 4>> tuples;
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != 4) throw Error(ErrorKind::SyntaxError, "PD JSON rows must have four labels");
      std::array<int, 4> t{};
      for (std::size_t p = 0; p < 4; ++p) {
        if (!row[p].is_number_integer()) throw Error(ErrorKind::SyntaxError, "PD JSON labels must be integers");
        t[p] = row[p].get<int>();
      }
      tuples.push_back(t);
    }
    return Diagram::from_pd(tuples);
  }

  bool wrapped = false;
  if (text.substr(pos).starts_with("PD[")) {
    wrapped = true;
    pos += 3;
  }
  std::vector<std::array<int, 4>> tuples;
  int loops = 0;
  auto read_int = [&]() {
    skip();
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || !std::isdigit(static_cast<unsigned char>(text[pos - 1]))) throw fail("expected an integer label");
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  while (true) {
    skip();
    if (pos >= text.size()) break;
    if (wrapped && text[pos] == ']') {
      ++pos;
      wrapped = false;
      continue;
    }
    if (text.substr(pos).starts_with("X[")) {
      pos += 2;
      std::array<int, 4> t{};
      for (auto& v : t) v = read_int();
      skip();
      if (pos >= text.size() || text[pos] != ']') throw fail("expected ']'");
      ++pos;
      tuples.push_back(t);
    } else if (text.substr(pos).starts_with("Loop[")) {
      pos += 5;
      while (pos < text.size() && text[pos] != ']') ++pos;
      if (pos >= text.size()) throw fail("expected ']'");
      ++pos;
      ++loops;
    } else {
      throw fail("unexpected character '" + std::string(1, text[pos]) + "'");
    }
  }
  if (wrapped) throw fail("unterminated PD[");
  return Diagram::from_pd(tuples, loops);
}

// ---------------------------------------------------------------------------
// Operations.

namespace detail {

/// Removes the given crossings, reconnecting their four ends by the given
/// pairings, and returns the canonical result. Closed curves made only of
/// removed crossings become free loops.
inline Diagram resolve(const Diagram& d, const std::vector<std::pair<int, Pairing>>& removals) {
  const int n = d.crossing_count();
  std::vector<std::optional<Pairing>> removed(static_cast<std::size_t>(n));
  for (const auto& [c, pairing] : removals) {
    if (c < 0 || c >= n) throw Error(ErrorKind::InvalidCrossing, "no crossing " + std::to_string(c));
    removed[static_cast<std::size_t>(c)] = pairing;
  }
  const RawDiagram old = d.to_raw();
  const std::size_t m = old.edges.size();
  std::vector<std::array<Slot, 2>> ends(m);
  std::vector<int> count(m, 0);
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) {
      const auto e = static_cast<std::size_t>(old.edge_at[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)]);
      ends[e][static_cast<std::size_t>(count[e]++)] = Slot{c, p};
    }
  auto other_end = [&](int e, Slot s) {
    const auto& pr = ends[static_cast<std::size_t>(e)];
    return pr[0] == s ? pr[1] : pr[0];
  };
  auto edge_at = [&](Slot s) {
    return old.edge_at[static_cast<std::size_t>(s.crossing)][static_cast<std::size_t>(s.pos)];
  };

  std::vector<int> new_index(static_cast<std::size_t>(n), -1);
  int kept = 0;
  for (int c = 0; c < n; ++c)
    if (!removed[static_cast<std::size_t>(c)]) new_index[static_cast<std::size_t>(c)] = kept++;

  RawDiagram out;
  out.free_loops = d.free_loops();
  out.edge_at.assign(static_cast<std::size_t>(kept), {-1, -1, -1, -1});
  std::vector<bool> used(m, false);

  for (int c = 0; c < n; ++c) {
    if (removed[static_cast<std::size_t>(c)]) continue;
    for (int p = 0; p < 4; ++p) {
      const int nc = new_index[static_cast<std::size_t>(c)];
      if (out.edge_at[static_cast<std::size_t>(nc)][static_cast<std::size_t>(p)] >= 0) continue;
      const Slot start{c, p};
      Slot cur = start;
      int best_label = 0;
      bool best_forward = true;
      Slot end;
      while (true) {
        const int e = edge_at(cur);
        used[static_cast<std::size_t>(e)] = true;
        const int label = old.edges[static_cast<std::size_t>(e)].label;
        const bool forward = *old.edges[static_cast<std::size_t>(e)].hint_tail == cur;
        if (best_label == 0 || label < best_label) {
          best_label = label;
          best_forward = forward;
        }
        const Slot o = other_end(e, cur);
        const auto& pairing = removed[static_cast<std::size_t>(o.crossing)];
        if (!pairing) {
          end = o;
          break;
        }
        cur = Slot{o.crossing, (*pairing)[static_cast<std::size_t>(o.pos)]};
      }
      const Slot a{nc, p};
      const Slot b{new_index[static_cast<std::size_t>(end.crossing)], end.pos};
      const int id = static_cast<int>(out.edges.size());
      out.edges.push_back({best_label, best_forward ? a : b});
      out.edge_at[static_cast<std::size_t>(a.crossing)][static_cast<std::size_t>(a.pos)] = id;
      out.edge_at[static_cast<std::size_t>(b.crossing)][static_cast<std::size_t>(b.pos)] = id;
    }
  }

  for (std::size_t e0 = 0; e0 < m; ++e0) {
    if (used[e0]) continue;
    ++out.free_loops;
    int e = static_cast<int>(e0);
    Slot cur = ends[e0][0];
    do {
      used[static_cast<std::size_t>(e)] = true;
      const Slot o = other_end(e, cur);
      cur = Slot{o.crossing, (*removed[static_cast<std::size_t>(o.crossing)])[static_cast<std::size_t>(o.pos)]};
      e = edge_at(cur);
    } while (!used[static_cast<std::size_t>(e)]);
  }
  return Diagram::assemble(std::move(out), OrientFrom::Hints);
}

}  // namespace detail

inline void check_crossing(const Diagram& d, int c) {
  if (c < 0 || c >= d.crossing_count())
    throw Error(ErrorKind::InvalidCrossing,
                "crossing " + std::to_string(c) + " out of range (diagram has " + std::to_string(d.crossing_count()) + ")");
}

/// The smoothing of crossing c; orientation of each resulting component is
/// inherited from its lowest-labelled strand.
inline Diagram smooth(const Diagram& d, int c, Smoothing r) {
  check_crossing(d, c);
  return detail::resolve(d, {{c, r == Smoothing::L0 ? detail::kPairA : detail::kPairB}});
}

inline Diagram smooth(const Diagram& d, int c, int r) {
  if (r != 0 && r != 1) throw Error(ErrorKind::InvalidCrossing, "smoothing index must be 0 or 1");
  return smooth(d, c, r == 0 ? Smoothing::L0 : Smoothing::L1);
}

/// The smoothing that respects orientation: L_0 at positive crossings, L_1 at negative ones.
inline Smoothing oriented_smoothing(const Diagram& d, int c) {
  check_crossing(d, c);
  const auto& x = d.crossings()[static_cast<std::size_t>(c)];
  const int over_in = x.sign > 0 ? 3 : 1;
  // A pairs (0,1),(2,3); it respects orientation iff position 1 is outgoing.
  const bool a_oriented = over_in == 3;
  return a_oriented ? Smoothing::L0 : Smoothing::L1;
}

inline CrossingInfo crossing_info(const Diagram& d, int c) {
  check_crossing(d, c);
  const auto& x = d.crossings()[static_cast<std::size_t>(c)];
  CrossingInfo info;
  info.index = c;
  info.sign = x.sign;
  const Smoothing oriented = oriented_smoothing(d, c);
  info.type_I = (x.sign > 0 && oriented == Smoothing::L0) || (x.sign < 0 && oriented == Smoothing::L1);
  return info;
}

inline Diagram mirror(const Diagram& d) {
  if (d.crossings().empty()) return d;
  // Swapping over and under keeps every cyclic order; each tuple is re-anchored
  // at the new incoming under-strand, which is the old incoming over-strand.
  detail::RawDiagram raw;
  raw.free_loops = d.free_loops();
  raw.edges.resize(static_cast<std::size_t>(d.strand_count()));
  for (std::size_t c = 0; c < d.crossings().size(); ++c) {
    const auto& x = d.crossings()[c];
    const int shift = x.sign > 0 ? 3 : 1;
    std::array<int, 4> row{};
    for (int p = 0; p < 4; ++p) row[static_cast<std::size_t>(p)] = x.strands[static_cast<std::size_t>((p + shift) % 4)] - 1;
    raw.edge_at.push_back(row);
    // the new over-strand is the old under-strand; its outgoing end moved to
    // position 3 (old sign +) or position 1 (old sign -)
    for (int p : {2, shift == 3 ? 3 : 1}) {
      auto& edge = raw.edges[static_cast<std::size_t>(row[static_cast<std::size_t>(p)])];
      edge.label = row[static_cast<std::size_t>(p)] + 1;
      edge.hint_tail = detail::Slot{static_cast<int>(c), p};
    }
  }
  return Diagram::assemble(std::move(raw), detail::OrientFrom::Hints);
}

/// Joins component 0 of d1 to component 0 of d2 by a band across their first strands.
inline Diagram connected_sum(const Diagram& d1, const Diagram& d2) {
  if (d1.component_count() == 0 || d2.component_count() == 0)
    throw Error(ErrorKind::EmptyDiagram, "connected sum of an empty diagram");
  if (!d1.is_connected() || !d2.is_connected())
    throw Error(ErrorKind::DisconnectedDiagram, "connected sum requires connected diagrams");
  if (d2.crossing_count() == 0) return d1;
  if (d1.crossing_count() == 0) return d2;

  detail::RawDiagram a = d1.to_raw();
  const detail::RawDiagram b = d2.to_raw();
  const int n1 = d1.crossing_count();
  const int m1 = static_cast<int>(a.edges.size());
  for (const auto& row : b.edge_at) {
    std::array<int, 4> shifted{};
    for (std::size_t p = 0; p < 4; ++p) shifted[p] = row[p] + m1;
    a.edge_at.push_back(shifted);
  }
  for (const auto& e : b.edges) {
    detail::RawDiagram::Edge copy = e;
    copy.label += m1;
    if (copy.hint_tail) copy.hint_tail->crossing += n1;
    a.edges.push_back(copy);
  }
  a.free_loops = 0;
  const int ea = 0;       // label 1 of d1
  const int eb = m1;      // label 1 of d2
  detail::Slot head_a = d1.head_of(1);
  detail::Slot head_b = d2.head_of(1);
  head_b.crossing += n1;
  a.edge_at[static_cast<std::size_t>(head_a.crossing)][static_cast<std::size_t>(head_a.pos)] = eb;
  a.edge_at[static_cast<std::size_t>(head_b.crossing)][static_cast<std::size_t>(head_b.pos)] = ea;
  return Diagram::assemble(std::move(a), detail::OrientFrom::Hints);
}

/// One Reidemeister-1 reduction, if any crossing carries a kink.
inline std::optional<Diagram> reduce_r1(const Diagram& d) {
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& s = d.crossings()[static_cast<std::size_t>(c)].strands;
    for (int p = 0; p < 4; ++p) {
      if (s[static_cast<std::size_t>(p)] != s[static_cast<std::size_t>((p + 1) % 4)]) continue;
      Diagram out = detail::resolve(d, {{c, p % 2 == 0 ? detail::kPairA : detail::kPairB}});
      // the kink itself closes into one free loop, which is discarded
      detail::RawDiagram raw = out.to_raw();
      raw.free_loops -= 1;
      return Diagram::assemble(std::move(raw), detail::OrientFrom::Hints);
    }
  }
  return std::nullopt;
}

/// One Reidemeister-2 reduction, if some bigon has one strand over at both ends.
inline std::optional<Diagram> reduce_r2(const Diagram& d) {
  const int n = d.crossing_count();
  if (n < 2) return std::nullopt;
  const FaceMap fm = corner_faces(d);
  std::vector<std::vector<std::pair<int, int>>> corners(static_cast<std::size_t>(fm.face_count));
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < 4; ++k)
      corners[static_cast<std::size_t>(fm.face_of_corner[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)])].push_back({c, k});

  auto slots_of = [&](int label) {
    std::vector<detail::Slot> out;
    for (int c = 0; c < n; ++c)
      for (int p = 0; p < 4; ++p)
        if (d.crossings()[static_cast<std::size_t>(c)].strands[static_cast<std::size_t>(p)] == label) out.push_back({c, p});
    return out;
  };

  for (const auto& face : corners) {
    if (face.size() != 2 || face[0].first == face[1].first) continue;
    const auto [c1, k1] = face[0];
    const auto& s = d.crossings()[static_cast<std::size_t>(c1)].strands;
    bool same_level = true;
    for (int p : {k1, (k1 + 1) % 4}) {
      const auto sl = slots_of(s[static_cast<std::size_t>(p)]);
      if (sl[0].pos % 2 != sl[1].pos % 2) same_level = false;
    }
    if (!same_level) continue;
    return detail::resolve(d, {{c1, detail::kPairStraight}, {face[1].first, detail::kPairStraight}});
  }
  return std::nullopt;
}

/// Greedy R1/R2 reduction; each pass applies one move. Never adds crossings.
inline Diagram simplify(const Diagram& d, int max_passes = 50) {
  Diagram cur = d;
  for (int pass = 0; pass < max_passes; ++pass) {
    if (auto r1 = reduce_r1(cur)) {
      cur = std::move(*r1);
      continue;
    }
    if (auto r2 = reduce_r2(cur)) {
      cur = std::move(*r2);
      continue;
    }
    break;
  }
  return cur;
}

/// Alternating diagrams: every strand runs from an over-crossing to an under-crossing or back.
inline bool is_alternating(const Diagram& d) {
  for (int label = 1; label <= d.strand_count(); ++label) {
    const auto t = d.tail_of(label);
    const auto h = d.head_of(label);
    if ((t.pos % 2) == (h.pos % 2)) return false;
  }
  return true;
}

}  // namespace qalt
