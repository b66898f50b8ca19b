#include <gtest/gtest.h>

#include <set>

#include "qalt/bracket.hpp"
#include "qalt/corpus.hpp"
#include "qalt/diagram.hpp"
#include "support.hpp"

using namespace qalt;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::SyntaxError;
}

std::vector<Diagram> random_diagrams(std::uint64_t seed, int count) {
  check::Rng rng(seed);
  std::vector<Diagram> out;
  for (int i = 0; i < count; ++i) {
    const int strands = std::uniform_int_distribution<int>(2, 4)(rng);
    out.push_back(check::random_braid_diagram(rng, strands, std::uniform_int_distribution<int>(strands - 1, 8)(rng)));
  }
  return out;
}

}  // namespace

TEST(Parse, Trefoil) {
  const Diagram d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  EXPECT_EQ(d.crossing_count(), 3);
  EXPECT_EQ(d.component_count(), 1);
  EXPECT_TRUE(d.is_connected());
}

TEST(Parse, EmptyIsUnknot) {
  const Diagram d = parse_pd("");
  EXPECT_EQ(d.crossing_count(), 0);
  EXPECT_EQ(d.component_count(), 1);
  EXPECT_EQ(d, Diagram::unknot());
}

TEST(Parse, Curl) {
  const Diagram d = parse_pd("X[1,1,2,2]");
  EXPECT_EQ(d.crossing_count(), 1);
  EXPECT_EQ(d.component_count(), 1);
}

TEST(Parse, AlternativeForms) {
  const Diagram tre = corpus::trefoil();
  EXPECT_EQ(parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"), tre);
  EXPECT_EQ(parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]"), tre);
  EXPECT_EQ(parse_pd(tre.pd_json()), tre);
}

TEST(Parse, Errors) {
  EXPECT_EQ(kind_of([] { parse_pd("X[1,2,3"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_pd("Y[1,2,3,4]"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_pd("X[1,2,3,4]"); }), ErrorKind::InvalidStrandLabels);
  EXPECT_EQ(kind_of([] { parse_pd("X[1,1,1,2]"); }), ErrorKind::InvalidStrandLabels);
}

TEST(Parse, DisconnectedIsFlaggedNotRejected) {
  const Diagram d = parse_pd("X[1,1,2,2] X[3,3,4,4]");
  EXPECT_FALSE(d.is_connected());
  EXPECT_EQ(d.piece_count(), 2);
}

TEST(Parse, RenderIsCanonical) {
  for (const auto& e : corpus::standard()) {
    EXPECT_EQ(parse_pd(e.diagram.pd()), e.diagram) << e.name;
    EXPECT_EQ(parse_pd(e.diagram.pd()).pd(), e.diagram.pd()) << e.name;
  }
  for (const auto& d : random_diagrams(1, 100)) EXPECT_EQ(parse_pd(d.pd()), d) << d.pd();
}

TEST(Writhe, Examples) {
  EXPECT_EQ(Diagram::unknot().writhe(), 0);
  const Diagram tre = corpus::trefoil();
  EXPECT_EQ(std::abs(tre.writhe()), 3);
  EXPECT_EQ(tre.writhe(), -3);  // the standard PD is the left-handed trefoil
  EXPECT_EQ(connected_sum(tre, mirror(tre)).writhe(), 0);
}

TEST(Writhe, SumOfCrossingSigns) {
  for (const auto& d : random_diagrams(2, 50)) {
    int sum = 0;
    for (int c = 0; c < d.crossing_count(); ++c) sum += crossing_info(d, c).sign;
    EXPECT_EQ(d.writhe(), sum);
  }
}

TEST(Smooth, RightHandedTrefoil) {
  const Diagram tre = mirror(corpus::trefoil());
  for (int c = 0; c < 3; ++c) {
    const Diagram d0 = smooth(tre, c, 0);
    EXPECT_EQ(d0.crossing_count(), 2);
    EXPECT_EQ(d0.component_count(), 2);
    EXPECT_EQ(jones(d0), jones(mirror(corpus::hopf())));  // the positive Hopf link
    const Diagram d1 = smooth(tre, c, 1);
    EXPECT_EQ(d1.crossing_count(), 2);
    EXPECT_EQ(simplify(d1), Diagram::unknot());
  }
}

TEST(Smooth, LeftHandedTrefoilSwapsTheRoles) {
  const Diagram tre = corpus::trefoil();
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(simplify(smooth(tre, c, 0)), Diagram::unknot());
    EXPECT_EQ(smooth(tre, c, 1).component_count(), 2);
  }
}

TEST(Smooth, Curl) {
  const Diagram curl = corpus::curl();
  std::multiset<int> counts{smooth(curl, 0, 0).component_count(), smooth(curl, 0, 1).component_count()};
  EXPECT_EQ(counts, (std::multiset<int>{1, 2}));
  // the A-smoothing of this curl leaves two circles
  EXPECT_EQ(smooth(curl, 0, Smoothing::L0), Diagram::unlink(2));
  for (int r : {0, 1}) EXPECT_EQ(smooth(curl, 0, r).crossing_count(), 0);
}

TEST(Smooth, Errors) {
  EXPECT_EQ(kind_of([] { smooth(corpus::trefoil(), 3, 0); }), ErrorKind::InvalidCrossing);
  EXPECT_EQ(kind_of([] { smooth(corpus::trefoil(), -1, 0); }), ErrorKind::InvalidCrossing);
  EXPECT_EQ(kind_of([] { crossing_info(Diagram::unknot(), 0); }), ErrorKind::InvalidCrossing);
}

TEST(Smooth, ComponentCountChanges) {
  // a self-crossing: the oriented smoothing splits (+1), the other keeps the count;
  // a crossing between two components: both smoothings merge them (-1)
  auto check_all = [](const Diagram& d) {
    for (int c = 0; c < d.crossing_count(); ++c) {
      const auto& s = d.crossings()[static_cast<std::size_t>(c)].strands;
      const int n = d.component_count();
      const Smoothing oriented = oriented_smoothing(d, c);
      const Smoothing other = oriented == Smoothing::L0 ? Smoothing::L1 : Smoothing::L0;
      if (d.component_of(s[0]) == d.component_of(s[1])) {
        EXPECT_EQ(smooth(d, c, oriented).component_count(), n + 1);
        EXPECT_EQ(smooth(d, c, other).component_count(), n);
      } else {
        EXPECT_EQ(smooth(d, c, oriented).component_count(), n - 1);
        EXPECT_EQ(smooth(d, c, other).component_count(), n - 1);
      }
    }
  };
  for (const auto& e : corpus::standard()) check_all(e.diagram);
  for (const auto& d : random_diagrams(3, 60)) check_all(d);
}

TEST(Smooth, OneFewerCrossing) {
  for (const auto& d : random_diagrams(4, 40))
    for (int c = 0; c < d.crossing_count(); ++c)
      for (int r : {0, 1}) EXPECT_EQ(smooth(d, c, r).crossing_count(), d.crossing_count() - 1);
}

TEST(Mirror, InvolutionAndSigns) {
  auto check_one = [](const Diagram& d) {
    const Diagram m = mirror(d);
    EXPECT_EQ(mirror(m), d);
    EXPECT_EQ(m.writhe(), -d.writhe());
    for (int c = 0; c < d.crossing_count(); ++c) EXPECT_EQ(crossing_info(m, c).sign, -crossing_info(d, c).sign);
  };
  for (const auto& e : corpus::standard()) check_one(e.diagram);
  for (const auto& d : random_diagrams(5, 50)) check_one(d);
}

TEST(Mirror, JonesInverts) {
  const Diagram tre = corpus::trefoil();
  EXPECT_EQ(jones(mirror(tre)), jones(tre).inverted());
  EXPECT_NE(jones(mirror(tre)), jones(tre));
}

TEST(CrossingInfo, RightHandedTrefoil) {
  const Diagram tre = mirror(corpus::trefoil());
  for (int c = 0; c < 3; ++c) {
    const CrossingInfo info = crossing_info(tre, c);
    EXPECT_EQ(info.index, c);
    EXPECT_EQ(info.sign, 1);
    EXPECT_TRUE(info.type_I);
  }
}

TEST(CrossingInfo, OrientedSmoothingFollowsSign) {
  for (const auto& d : random_diagrams(6, 30))
    for (int c = 0; c < d.crossing_count(); ++c)
      EXPECT_EQ(oriented_smoothing(d, c), crossing_info(d, c).sign > 0 ? Smoothing::L0 : Smoothing::L1);
}

TEST(ConnectedSum, WithUnknot) {
  for (const auto& e : corpus::standard()) {
    EXPECT_EQ(connected_sum(e.diagram, Diagram::unknot()), e.diagram) << e.name;
    EXPECT_EQ(connected_sum(Diagram::unknot(), e.diagram), e.diagram) << e.name;
  }
}

TEST(ConnectedSum, HopfSquared) {
  const Diagram hh = connected_sum(corpus::hopf(), corpus::hopf());
  EXPECT_EQ(hh.crossing_count(), 4);
  EXPECT_EQ(hh.component_count(), 3);
  const HalfLaurent v = jones(corpus::hopf());
  EXPECT_EQ(jones(hh), v * v);
}

TEST(ConnectedSum, DeterminantIsMultiplicative) {
  const std::vector<Diagram> small{corpus::hopf(), corpus::trefoil(), corpus::figure_eight(), corpus::three_twist(),
                                   mirror(corpus::trefoil())};
  for (const auto& a : small)
    for (const auto& b : small) {
      const Diagram s = connected_sum(a, b);
      EXPECT_EQ(s.crossing_count(), a.crossing_count() + b.crossing_count());
      EXPECT_EQ(determinant(s), determinant(a) * determinant(b));
      EXPECT_EQ(jones(s), jones(a) * jones(b));
    }
}

TEST(ConnectedSum, RejectsDisconnected) {
  EXPECT_EQ(kind_of([] { connected_sum(Diagram::unlink(2), corpus::hopf()); }), ErrorKind::DisconnectedDiagram);
}

TEST(Simplify, Examples) {
  EXPECT_EQ(simplify(corpus::curl()), Diagram::unknot());
  const Diagram pair = braid_closure(2, {1, -1});
  ASSERT_EQ(pair.crossing_count(), 2);
  const Diagram s = simplify(pair);
  EXPECT_EQ(s.crossing_count(), 0);
  EXPECT_EQ(s.component_count(), pair.component_count());
  EXPECT_EQ(simplify(corpus::trefoil()), corpus::trefoil());
  EXPECT_EQ(simplify(corpus::figure_eight()), corpus::figure_eight());
}

TEST(Simplify, NeverAddsCrossingsAndKeepsJones) {
  for (const auto& d : random_diagrams(7, 60)) {
    const Diagram s = simplify(d);
    EXPECT_LE(s.crossing_count(), d.crossing_count());
    EXPECT_EQ(s.component_count(), d.component_count());
    EXPECT_EQ(jones(s), jones(d)) << d.pd();
  }
}

TEST(Simplify, ZeroPassesIsIdentity) {
  EXPECT_EQ(simplify(corpus::curl(), 0), corpus::curl());
}

TEST(Planarity, CorpusAndRandom) {
  for (const auto& e : corpus::standard()) EXPECT_TRUE(is_planar(e.diagram)) << e.name;
  for (const auto& d : random_diagrams(8, 50)) EXPECT_TRUE(is_planar(d));
}

TEST(Alternating, Corpus) {
  EXPECT_TRUE(is_alternating(corpus::trefoil()));
  EXPECT_TRUE(is_alternating(corpus::figure_eight()));
  EXPECT_TRUE(is_alternating(corpus::six_three()));
  EXPECT_FALSE(is_alternating(braid_closure(2, {1, -1})));
}
