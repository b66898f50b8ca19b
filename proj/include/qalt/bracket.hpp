#pragma once

// Kauffman bracket, Jones polynomial and determinant of a diagram.
//
// <L> = A<L_0> + A^{-1}<L_1>, an extra circle multiplies by (-A^{-2} - A^2),
// and V_L(t) = (-A)^{-3w} <L> under t^{1/2} = A^{-2}.
//
// Two independent routes compute the bracket: a memoized skein recursion over
// canonical sub-diagrams, and the plain 2^n state sum kept as an oracle.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qalt/cyclotomic.hpp"
#include "qalt/diagram.hpp"
#include "qalt/laurent.hpp"

namespace qalt {

/// A^k as a polynomial in A.
inline HalfLaurent a_power(std::int64_t k, const Integer& coeff = 1) {
  return HalfLaurent::monomial(coeff, HalfExp::integer(k));
}

/// The circle factor -A^{-2} - A^{2}.
inline HalfLaurent circle_factor() { return a_power(-2, -1) + a_power(2, -1); }

inline HalfLaurent circle_factor_power(int k) {
  HalfLaurent r = 1;
  for (int i = 0; i < k; ++i) r *= circle_factor();
  return r;
}

/// Exhaustive state sum over all 2^n resolutions.
inline HalfLaurent bracket_state_sum(const Diagram& d) {
  const int n = d.crossing_count();
  if (n > 24) throw Error(ErrorKind::InvalidCrossing, "state sum limited to 24 crossings");
  if (n == 0) return circle_factor_power(d.free_loops() - 1);

  const std::size_t labels = static_cast<std::size_t>(d.strand_count());
  // counts[(a - b) + n][circles]
  std::vector<std::vector<Integer>> counts(static_cast<std::size_t>(2 * n + 1), std::vector<Integer>(labels + 2));
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
    detail::UnionFind uf(labels);
    int a_count = 0;
    for (int c = 0; c < n; ++c) {
      const auto& s = d.crossings()[static_cast<std::size_t>(c)].strands;
      auto join = [&](int p, int q) {
        uf.unite(static_cast<std::size_t>(s[static_cast<std::size_t>(p)] - 1), static_cast<std::size_t>(s[static_cast<std::size_t>(q)] - 1));
      };
      if ((state >> c) & 1U) {
        join(0, 3);
        join(1, 2);
      } else {
        ++a_count;
        join(0, 1);
        join(2, 3);
      }
    }
    std::size_t circles = 0;
    for (std::size_t i = 0; i < labels; ++i)
      if (uf.find(i) == i) ++circles;
    counts[static_cast<std::size_t>(2 * a_count)][circles] += 1;  // a - b + n = 2a
  }
  HalfLaurent total;
  for (std::size_t idx = 0; idx < counts.size(); ++idx)
    for (std::size_t circles = 1; circles < counts[idx].size(); ++circles) {
      if (counts[idx][circles] == 0) continue;
      const auto exponent = static_cast<std::int64_t>(idx) - n;
      total += a_power(exponent, counts[idx][circles]) *
               circle_factor_power(static_cast<int>(circles) - 1 + d.free_loops());
    }
  return total;
}

namespace detail {

class BracketMemo {
 public:
  HalfLaurent eval(const Diagram& d) {
    if (d.crossing_count() == 0) return circle_factor_power(d.free_loops() - 1);
    // free loops split off as circle factors
    RawDiagram raw = d.to_raw();
    const int loops = raw.free_loops;
    raw.free_loops = 0;
    const Diagram core = Diagram::assemble(std::move(raw), OrientFrom::Hints);
    return circle_factor_power(loops) * core_value(core);
  }

 private:
  const HalfLaurent& core_value(const Diagram& core) {
    const std::string key = core.pd();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    HalfLaurent value = a_power(1) * eval(smooth(core, 0, Smoothing::L0)) +
                        a_power(-1) * eval(smooth(core, 0, Smoothing::L1));
    return memo_.emplace(key, std::move(value)).first->second;
  }

  std::unordered_map<std::string, HalfLaurent> memo_;
};

}  // namespace detail

/// <D> as a polynomial in A; split diagrams allowed.
inline HalfLaurent kauffman_bracket(const Diagram& d) {
  detail::BracketMemo memo;
  return memo.eval(d);
}

/// (-A)^{-3w} <D> rewritten in t via A^a -> t^{-a/4}.
inline HalfLaurent jones_from_bracket(const HalfLaurent& bracket, int writhe) {
  const std::int64_t k = -3 * static_cast<std::int64_t>(writhe);
  const HalfLaurent normalized = a_power(k, (k % 2 == 0) ? 1 : -1) * bracket;
  return normalized.rescaled(-1, 4);
}

inline HalfLaurent jones(const Diagram& d) { return jones_from_bracket(kauffman_bracket(d), d.writhe()); }

/// |V(-1)| with t^{1/2} = i, computed exactly.
inline Integer determinant_from_jones(const HalfLaurent& v) {
  const auto value = evaluate_exact(v, 4);
  const auto magnitude = value.abs_integer();
  if (!magnitude) throw Error(ErrorKind::NotRepresentable, "|V(-1)| is not an integer");
  return *magnitude;
}

inline Integer determinant(const Diagram& d) { return determinant_from_jones(jones(d)); }

struct BracketResult {
  HalfLaurent bracket;
  HalfLaurent jones;
  int writhe = 0;
  Integer determinant;
};

inline BracketResult compute_bracket(const Diagram& d) {
  BracketResult r;
  r.bracket = kauffman_bracket(d);
  r.writhe = d.writhe();
  r.jones = jones_from_bracket(r.bracket, r.writhe);
  r.determinant = determinant_from_jones(r.jones);
  return r;
}

/// <D> = A<L_0> + A^{-1}<L_1> at crossing c.
inline bool bracket_skein_holds(const Diagram& d, int c) {
  const HalfLaurent lhs = kauffman_bracket(d);
  const HalfLaurent rhs = a_power(1) * kauffman_bracket(smooth(d, c, Smoothing::L0)) +
                          a_power(-1) * kauffman_bracket(smooth(d, c, Smoothing::L1));
  return lhs == rhs;
}

/// e: negative crossings of the orientation-breaking smoothing minus those of
/// D other than c. Then w(L_1) = w - 2e - 1 at a positive c and
/// w(L_0) = w - 2e + 1 at a negative c.
inline int orientation_defect(const Diagram& d, int c) {
  const CrossingInfo info = crossing_info(d, c);
  const Diagram other = smooth(d, c, info.sign > 0 ? Smoothing::L1 : Smoothing::L0);
  return other.negative_count() - (d.negative_count() - (info.sign < 0 ? 1 : 0));
}

/// Jones skein relation at a type-I crossing:
///   positive: V_L = -t^{1/2} V_{L_0} - t^{3e/2+1} V_{L_1}
///   negative: V_L = -t^{3e/2-1} V_{L_0} - t^{-1/2} V_{L_1}
inline bool skein_check(const Diagram& d, int c) {
  const CrossingInfo info = crossing_info(d, c);
  if (!info.type_I) throw Error(ErrorKind::NotTypeI, "crossing " + std::to_string(c) + " is not of type I");
  const int e = orientation_defect(d, c);
  const HalfLaurent v = jones(d);
  const HalfLaurent v0 = jones(smooth(d, c, Smoothing::L0));
  const HalfLaurent v1 = jones(smooth(d, c, Smoothing::L1));
  HalfLaurent rhs;
  if (info.sign > 0) {
    rhs = -(v0.shifted(HalfExp::from_twice(1))) - v1.shifted(HalfExp::from_twice(3 * e + 2));
  } else {
    rhs = -(v0.shifted(HalfExp::from_twice(3 * e - 2))) - v1.shifted(HalfExp::from_twice(-1));
  }
  return v == rhs;
}

struct BracketGap {
  /// Gap length on the A-lattice in A-exponent units; nullopt when the two
  /// parts overlap or touch.
  std::optional<HalfExp> length;
  HalfLaurent a_part;   // A <L_0>
  HalfLaurent b_part;   // A^{-1} <L_1>
  bool both_monomials = false;
};

/// Gap between A<L_0> and A^{-1}<L_1> at a crossing joining two components.
inline BracketGap bracket_gap_check(const Diagram& d, int c) {
  check_crossing(d, c);
  const auto& s = d.crossings()[static_cast<std::size_t>(c)].strands;
  if (d.component_of(s[0]) == d.component_of(s[1]))
    throw Error(ErrorKind::SameComponent, "crossing " + std::to_string(c) + " joins a component to itself");
  BracketGap r;
  r.a_part = a_power(1) * kauffman_bracket(smooth(d, c, Smoothing::L0));
  r.b_part = a_power(-1) * kauffman_bracket(smooth(d, c, Smoothing::L1));
  r.both_monomials = r.a_part.is_monomial() && r.b_part.is_monomial();
  const HalfExp step = HalfExp::integer(4);
  if (r.a_part.max_degree() < r.b_part.min_degree()) {
    r.length = gap_between(r.a_part, r.b_part, step);
  } else if (r.b_part.max_degree() < r.a_part.min_degree()) {
    r.length = gap_between(r.b_part, r.a_part, step);
  }
  return r;
}

}  // namespace qalt
