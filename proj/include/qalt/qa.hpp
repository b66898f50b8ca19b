#pragma once

// Quasi-alternating obstructions, certificate search and the Kanenobu family.

#include <cstdlib>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "qalt/bracket.hpp"
#include "qalt/diagram.hpp"
#include "qalt/laurent.hpp"
#include "qalt/tait.hpp"

namespace qalt {

// ---------------------------------------------------------------------------
// Obstructions

enum class Status { NotQA, Inconclusive };

inline constexpr std::string_view to_string(Status s) { return s == Status::NotQA ? "NotQA" : "Inconclusive"; }

struct Reason {
  std::string rule;      // short id
  std::string citation;  // the fact the rule applies
  nlohmann::json witness;
};

struct QAVerdict {
  Status status = Status::Inconclusive;
  std::vector<Reason> reasons;
  bool prime = false;
  bool torus_2n = false;
};

namespace detail {

/// f / (1 + t^2) in Z[t^{±1/2}] when exact.
inline std::optional<HalfLaurent> divide_by_one_plus_t2(const HalfLaurent& f) {
  const HalfLaurent divisor = HalfLaurent(1) + HalfLaurent::monomial(1, HalfExp::integer(2));
  const HalfExp top = f.max_degree();
  HalfLaurent rest = f, quotient;
  while (!rest.is_zero()) {
    const HalfExp low = rest.min_degree();
    if (low + HalfExp::integer(2) > top) return std::nullopt;
    const HalfLaurent term = HalfLaurent::monomial(rest.coefficient(low), low);
    quotient += term;
    rest -= term * divisor;
  }
  return quotient;
}

}  // namespace detail

/// True when V = ±t^r (1 + t^2)^k, the shape of a Jones polynomial of a
/// connected sum of k Hopf links.
inline bool is_hopf_power(const HalfLaurent& v) {
  if (v.is_zero()) return false;
  HalfLaurent rest = v;
  while (!rest.is_monomial()) {
    auto q = detail::divide_by_one_plus_t2(rest);
    if (!q) return false;
    rest = *q;
  }
  return rest.coefficient(rest.min_degree()) == 1 || rest.coefficient(rest.min_degree()) == -1;
}

/// Applies every rule in a fixed order and records each that fires.
inline QAVerdict obstruct(const HalfLaurent& v, const Integer& det, bool prime, bool torus_2n) {
  if (v.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "obstruct requires a nonzero Jones polynomial");
  if (det < 1) throw std::invalid_argument("determinant must be at least 1");
  QAVerdict verdict;
  verdict.prime = prime;
  verdict.torus_2n = torus_2n;
  const GapReport report = analyze(v, HalfExp::integer(1));
  const std::string breadth = report.breadth.str();
  auto gap_json = [&](const Gap& g) { return nlohmann::json{{"start", g.start.str()}, {"length", g.length}}; };

  if (Integer(report.breadth.twice()) > 2 * det)
    verdict.reasons.push_back({"breadth-exceeds-det", "a quasi-alternating link has breadth(V) <= det",
                               {{"breadth", breadth}, {"det", to_string(det)}}});
  if (prime && !torus_2n && report.gap_count() >= 1)
    verdict.reasons.push_back({"gap", "the Jones polynomial of a prime quasi-alternating link other than a (2,n)-torus link has no gap",
                               {{"gap", gap_json(report.gaps.front())}}});
  if (report.gap_count() >= 2 && !is_hopf_power(v)) {
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : report.gaps) gaps.push_back(gap_json(g));
    verdict.reasons.push_back({"multiple-gaps",
                               "a quasi-alternating link has more than one gap only if it is a connected sum of Hopf links",
                               {{"gaps", gaps}}});
  }
  if (report.breadth <= HalfExp::integer(3) && det > 3)
    verdict.reasons.push_back({"small-breadth",
                               "a quasi-alternating link with breadth(V) <= 3 is the unknot, the Hopf link or the trefoil, so det is 1, 2 or 3",
                               {{"breadth", breadth}, {"det", to_string(det)}}});
  if (!report.alternating)
    verdict.reasons.push_back({"not-alternating", "the Jones polynomial of a quasi-alternating link alternates in sign",
                               {{"polynomial", v.str()}}});
  verdict.status = verdict.reasons.empty() ? Status::Inconclusive : Status::NotQA;
  return verdict;
}

inline nlohmann::json to_json(const QAVerdict& v) {
  nlohmann::json reasons = nlohmann::json::array();
  for (const auto& r : v.reasons) reasons.push_back({{"rule", r.rule}, {"citation", r.citation}, {"witness", r.witness}});
  return {{"status", std::string(to_string(v.status))},
          {"reasons", reasons},
          {"assumptions", {{"prime", v.prime}, {"torus_2n", v.torus_2n}}}};
}

// ---------------------------------------------------------------------------
// Certificates

struct Budget {
  int max_depth = 24;
  std::size_t max_nodes = 100000;
  int simplify_passes = 50;

  /// Defaults with QALT_BUDGET_NODES applied when set.
  static Budget from_env() {
    Budget b;
    if (const char* env = std::getenv("QALT_BUDGET_NODES")) {
      char* end = nullptr;
      const unsigned long long n = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && n > 0) b.max_nodes = static_cast<std::size_t>(n);
    }
    return b;
  }
};

/// One node of a certificate. `diagram` is the diagram handed to the node and
/// `simplified` its R1/R2 reduction; a branch node smooths `simplified` at
/// `crossing` and its children hold exactly those two smoothings.
struct CertificateNode {
  Diagram diagram;
  Diagram simplified;
  Integer det;
  bool leaf = false;
  int crossing = -1;
  std::shared_ptr<const CertificateNode> child0;
  std::shared_ptr<const CertificateNode> child1;
};

using Certificate = std::shared_ptr<const CertificateNode>;

/// Determinant via the Goeritz matrix; 0 for disconnected diagrams.
inline Integer diagram_det(const Diagram& d) {
  if (d.crossing_count() == 0) return d.free_loops() == 1 ? 1 : 0;
  if (!d.is_connected()) return 0;
  return goeritz_det(checkerboard(d).black);
}

struct CertifyStats {
  std::size_t nodes = 0;
  bool exhausted = false;      // node budget ran out
  bool depth_limited = false;  // some branch hit max_depth
};

namespace detail {

class Certifier {
 public:
  explicit Certifier(const Budget& budget) : budget_(budget) {}

  Certificate search(const Diagram& d, int depth_left) {
    if (stats.exhausted) return nullptr;
    if (stats.nodes >= budget_.max_nodes) {
      stats.exhausted = true;
      return nullptr;
    }
    ++stats.nodes;
    const Diagram working = simplify(d, budget_.simplify_passes);
    auto node = std::make_shared<CertificateNode>();
    node->diagram = d;
    node->simplified = working;
    if (working.crossing_count() == 0) {
      if (working.component_count() != 1) return nullptr;
      node->det = 1;
      node->leaf = true;
      return node;
    }
    const std::string key = working.pd();
    if (auto it = solved_.find(key); it != solved_.end()) return rebase(it->second, d);
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth_left) return nullptr;
    if (depth_left == 0) {
      stats.depth_limited = true;
      return nullptr;
    }

    node->det = diagram_det(working);
    if (node->det >= 1) {
      for (int c = 0; c < working.crossing_count(); ++c) {
        const Diagram s0 = smooth(working, c, Smoothing::L0);
        const Diagram s1 = smooth(working, c, Smoothing::L1);
        const Integer d0 = diagram_det(s0), d1 = diagram_det(s1);
        if (d0 == 0 || d1 == 0 || d0 + d1 != node->det) continue;
        Certificate c0 = search(s0, depth_left - 1);
        if (!c0) {
          if (stats.exhausted) return nullptr;
          continue;
        }
        Certificate c1 = search(s1, depth_left - 1);
        if (!c1) {
          if (stats.exhausted) return nullptr;
          continue;
        }
        node->crossing = c;
        node->child0 = std::move(c0);
        node->child1 = std::move(c1);
        solved_.emplace(key, node);
        return node;
      }
    }
    if (!stats.exhausted) {
      int& best = failed_[key];
      best = std::max(best, depth_left);
    }
    return nullptr;
  }

  CertifyStats stats;

 private:
  static Certificate rebase(const Certificate& found, const Diagram& d) {
    if (found->diagram == d) return found;
    auto copy = std::make_shared<CertificateNode>(*found);
    copy->diagram = d;
    return copy;
  }

  Budget budget_;
  std::unordered_map<std::string, Certificate> solved_;
  std::unordered_map<std::string, int> failed_;
};

}  // namespace detail

struct CertifyResult {
  Certificate certificate;  // null when the search gave up
  CertifyStats stats;
};

/// Depth-first search for a quasi-alternating certificate, crossings in
/// ascending order and the 0-smoothing first. A null certificate means
/// "unknown", never "not quasi-alternating".
inline CertifyResult certify(const Diagram& d, const Budget& budget = Budget{}) {
  if (!d.is_connected()) throw Error(ErrorKind::SplitDiagram, "certify needs a connected, non-split diagram");
  detail::Certifier search(budget);
  CertifyResult r;
  r.certificate = search.search(d, budget.max_depth);
  r.stats = search.stats;
  return r;
}

struct VerifyResult {
  bool ok = true;
  std::string error;
  explicit operator bool() const { return ok; }
};

/// Re-checks every node from scratch: simplification, smoothings, determinant
/// additivity with positive child determinants, and leaf unknottedness.
inline VerifyResult verify_certificate(const Certificate& cert, int simplify_passes = 50) {
  if (!cert) return {false, "empty certificate"};
  const CertificateNode& n = *cert;
  const Diagram working = simplify(n.diagram, simplify_passes);
  if (!(working == n.simplified)) return {false, "stored simplification differs for " + n.diagram.pd()};
  if (n.leaf) {
    if (working.crossing_count() != 0 || working.component_count() != 1)
      return {false, "leaf does not simplify to the unknot: " + n.diagram.pd()};
    if (n.det != 1) return {false, "leaf determinant is not 1"};
    return {};
  }
  if (!n.child0 || !n.child1) return {false, "branch node without two children"};
  if (n.crossing < 0 || n.crossing >= working.crossing_count()) return {false, "crossing index out of range"};
  if (!(smooth(working, n.crossing, Smoothing::L0) == n.child0->diagram) ||
      !(smooth(working, n.crossing, Smoothing::L1) == n.child1->diagram))
    return {false, "children are not the smoothings at crossing " + std::to_string(n.crossing)};
  const Integer det = diagram_det(working);
  const Integer d0 = diagram_det(n.child0->diagram), d1 = diagram_det(n.child1->diagram);
  if (det != n.det) return {false, "stored determinant differs for " + working.pd()};
  if (d0 < 1 || d1 < 1 || det != d0 + d1) return {false, "determinants are not additive at " + working.pd()};
  if (auto r = verify_certificate(n.child0, simplify_passes); !r) return r;
  return verify_certificate(n.child1, simplify_passes);
}

inline nlohmann::json to_json(const Certificate& cert) {
  const CertificateNode& n = *cert;
  nlohmann::json j{{"pd", n.diagram.pd()}, {"simplified", n.simplified.pd()}, {"det", to_string(n.det)}, {"leaf", n.leaf}};
  if (!n.leaf) {
    j["crossing"] = n.crossing;
    j["children"] = {to_json(n.child0), to_json(n.child1)};
  }
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  auto node = std::make_shared<CertificateNode>();
  try {
    node->diagram = parse_pd(j.at("pd").get<std::string>());
    node->simplified = parse_pd(j.at("simplified").get<std::string>());
    node->det = Integer(j.at("det").get<std::string>());
    node->leaf = j.at("leaf").get<bool>();
    if (!node->leaf) {
      node->crossing = j.at("crossing").get<int>();
      const auto& kids = j.at("children");
      if (!kids.is_array() || kids.size() != 2) throw Error(ErrorKind::SyntaxError, "certificate node needs two children");
      node->child0 = certificate_from_json(kids[0]);
      node->child1 = certificate_from_json(kids[1]);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::SyntaxError, std::string("malformed certificate: ") + ex.what());
  }
  return node;
}

/// Node count and maximum depth of a certificate.
inline std::pair<std::size_t, int> certificate_shape(const Certificate& cert) {
  if (!cert) return {0, 0};
  if (cert->leaf) return {1, 0};
  const auto [n0, d0] = certificate_shape(cert->child0);
  const auto [n1, d1] = certificate_shape(cert->child1);
  return {1 + n0 + n1, 1 + std::max(d0, d1)};
}

// ---------------------------------------------------------------------------
// Kanenobu knots K(p, q)

/// (-1)^{p+q} t^{p+q} (t^{-4} - 2t^{-3} + 3t^{-2} - 4t^{-1} + 4 - 4t + 3t^2 - 2t^3 + t^4) + 1
inline HalfLaurent kanenobu_jones(std::int64_t p, std::int64_t q) {
  static constexpr std::array<int, 9> kCoeffs{1, -2, 3, -4, 4, -4, 3, -2, 1};
  const std::int64_t s = p + q;
  const int sign = (s % 2 == 0) ? 1 : -1;
  HalfLaurent v = 1;
  for (std::size_t i = 0; i < kCoeffs.size(); ++i)
    v += HalfLaurent::monomial(sign * kCoeffs[i], HalfExp::integer(s - 4 + static_cast<std::int64_t>(i)));
  return v;
}

inline constexpr int kKanenobuDet = 25;

struct KanenobuReport {
  std::int64_t p = 0, q = 0;
  Status published = Status::Inconclusive;  // |p|+|q| >= 19 or |p+q| > 6
  Status gap_derived = Status::Inconclusive;  // obstruct on the closed form
  bool agree = true;
  QAVerdict detail;
  Integer det;
};

inline KanenobuReport kanenobu_obstruction(std::int64_t p, std::int64_t q) {
  KanenobuReport r;
  r.p = p;
  r.q = q;
  const std::int64_t sum = p + q;
  r.published = (std::llabs(p) + std::llabs(q) >= 19 || std::llabs(sum) > 6) ? Status::NotQA : Status::Inconclusive;
  const HalfLaurent v = kanenobu_jones(p, q);
  r.det = determinant_from_jones(v);
  r.detail = obstruct(v, kKanenobuDet, true, false);
  r.gap_derived = r.detail.status;
  r.agree = r.published == r.gap_derived;
  return r;
}

inline nlohmann::json to_json(const KanenobuReport& r) {
  return {{"p", r.p},
          {"q", r.q},
          {"det", to_string(r.det)},
          {"published_criterion", std::string(to_string(r.published))},
          {"gap_criterion", std::string(to_string(r.gap_derived))},
          {"agree", r.agree},
          {"verdict", to_json(r.detail)}};
}

}  // namespace qalt
