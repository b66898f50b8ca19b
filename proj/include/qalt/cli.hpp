#pragma once

// Command-line front end. `run` parses argv, dispatches one subcommand and
// writes to the given streams; tools/qalt.cpp is a thin wrapper around it.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qalt/bracket.hpp"
#include "qalt/diagram.hpp"
#include "qalt/laurent.hpp"
#include "qalt/qa.hpp"
#include "qalt/tait.hpp"

namespace qalt::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kInputError = 1, kUnknown = 2 };

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

inline void render(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const bool flat_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    if (v.is_primitive()) {
      out << pad << it.key() << ": " << scalar_text(v) << '\n';
    } else if (flat_array) {
      out << pad << it.key() << ":";
      if (v.empty()) out << " none";
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << scalar_text(v[i]);
      out << '\n';
    } else if (v.is_array()) {
      out << pad << it.key() << ":\n";
      for (const auto& item : v) {
        if (item.is_object()) {
          out << pad << "  -\n";
          render(item, out, indent + 4);
        } else {
          out << pad << "  - " << scalar_text(item) << '\n';
        }
      }
    } else {
      out << pad << it.key() << ":\n";
      render(v, out, indent + 2);
    }
  }
}

}  // namespace detail

/// "key: value" lines carrying the same content as the JSON form.
inline std::string render_text(const Json& j) {
  std::ostringstream out;
  detail::render(j, out, 0);
  return out.str();
}

inline Json gaps_json(const GapReport& r) {
  Json gaps = Json::array();
  for (const auto& g : r.gaps) gaps.push_back({{"start", g.start.str()}, {"length", g.length}});
  return gaps;
}

inline Json analysis_json(const HalfLaurent& f, HalfExp step) {
  const GapReport r = analyze(f, step);
  return {{"breadth", r.breadth.str()},
          {"step", r.step.str()},
          {"gap_count", r.gap_count()},
          {"gaps", gaps_json(r)},
          {"alternating", r.alternating}};
}

inline Json graph_json(const SignedPlanarGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(std::to_string(e.u) + " " + std::to_string(e.v) + " " + (e.sign > 0 ? "+" : "-"));
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

inline Json certificate_json(const Certificate& c) { return Json::parse(to_json(c).dump()); }

// ---------------------------------------------------------------------------
// Inputs

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Inputs {
  std::string pd, pd_file, edges, edges_file, poly, var = "t", cert_file;
  bool has_edges() const { return !edges.empty() || !edges_file.empty(); }
};

// ---------------------------------------------------------------------------
// Commands

/// Appends the fields of `extra` to `j`.
inline void merge(Json& j, const Json& extra) {
  for (const auto& [k, v] : extra.items()) j[k] = v;
}

inline Json jones_report(const Diagram& d) {
  const BracketResult r = compute_bracket(d);
  Json j{{"pd", d.pd()}, {"jones", r.jones.str()}, {"writhe", r.writhe}, {"det", to_string(r.determinant)}};
  merge(j, analysis_json(r.jones, HalfExp::integer(1)));
  return j;
}

inline Json bracket_report(const Diagram& d) {
  const BracketResult r = compute_bracket(d);
  return {{"pd", d.pd()},
          {"bracket", r.bracket.str("A")},
          {"writhe", r.writhe},
          {"jones", r.jones.str()},
          {"det", to_string(r.determinant)}};
}

/// ±A^k with gamma = ±A^k * bracket, if the quotient is a monomial.
inline std::optional<HalfLaurent> monomial_quotient(const HalfLaurent& num, const HalfLaurent& den) {
  if (num.is_zero() || den.is_zero() || num.term_count() != den.term_count()) return std::nullopt;
  const HalfExp k = num.min_degree() - den.min_degree();
  for (int s : {1, -1}) {
    HalfLaurent m = HalfLaurent::monomial(s, k);
    if (m * den == num) return m;
  }
  return std::nullopt;
}

inline Json gamma_report(const SignedPlanarGraph& g) {
  const HalfLaurent gam = gamma(g);
  return {{"graph", graph_json(g)},
          {"gamma", gam.str("A")},
          {"spanning_trees", to_string(kirchhoff_count(g))},
          {"goeritz_det", to_string(goeritz_det(g))}};
}

inline Json gamma_report(const Diagram& d) {
  const TaitPair tp = checkerboard(d);
  Json j = gamma_report(tp.black);
  const HalfLaurent br = kauffman_bracket(d);
  j["bracket"] = br.str("A");
  const auto q = monomial_quotient(gamma(tp.black), br);
  j["gamma_over_bracket"] = q ? Json(q->str("A")) : Json(nullptr);
  return j;
}

struct BatchOptions {
  bool certify = false;
  bool prime = false;
  bool torus_2n = false;
  unsigned jobs = 0;
  Budget budget;
};

struct BatchLine {
  int line = 0;
  std::string name;
  std::string pd;
};

/// Non-comment lines of a batch file; "name: PD" or a bare PD per line.
inline std::vector<BatchLine> batch_lines(const std::string& text) {
  std::vector<BatchLine> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    BatchLine b{no, "line " + std::to_string(no), line};
    if (auto colon = line.find(':'); colon != std::string::npos) {
      b.name = line.substr(first, colon - first);
      while (!b.name.empty() && std::isspace(static_cast<unsigned char>(b.name.back()))) b.name.pop_back();
      b.pd = line.substr(colon + 1);
    }
    out.push_back(std::move(b));
  }
  return out;
}

inline Json batch_entry(const BatchLine& b, const BatchOptions& opt) {
  Json j{{"line", b.line}, {"name", b.name}};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Diagram d = parse_pd(b.pd);
    const BracketResult r = compute_bracket(d);
    const GapReport gaps = analyze(r.jones, HalfExp::integer(1));
    j["pd"] = d.pd();
    j["jones"] = r.jones.str();
    j["det"] = to_string(r.determinant);
    j["breadth"] = gaps.breadth.str();
    j["gaps"] = gaps_json(gaps);
    Json checks{{"state_sum", bracket_state_sum(d) == r.bracket}};
    if (d.is_connected()) {
      const TaitPair tp = checkerboard(d);
      checks["goeritz"] = goeritz_det(tp.black) == r.determinant;
      checks["gamma_monomial"] = monomial_quotient(gamma(tp.black), r.bracket).has_value();
    }
    j["checks"] = checks;
    if (r.determinant >= 1) j["verdict"] = Json::parse(to_json(obstruct(r.jones, r.determinant, opt.prime, opt.torus_2n)).dump());
    else j["verdict"] = nullptr;
    if (opt.certify) {
      if (!d.is_connected()) {
        j["certificate"] = "split";
      } else {
        const CertifyResult c = certify(d, opt.budget);
        j["certificate"] = c.certificate ? "certified" : "unknown";
        j["search_nodes"] = c.stats.nodes;
      }
    }
  } catch (const std::exception& ex) {
    j["error"] = ex.what();
  }
  j["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return j;
}

/// Entries are processed on worker threads; output order follows the input.
inline Json batch_report(const std::string& text, const BatchOptions& opt) {
  const std::vector<BatchLine> lines = batch_lines(text);
  std::vector<Json> results(lines.size());
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const unsigned jobs = std::min<unsigned>(opt.jobs ? opt.jobs : hw, static_cast<unsigned>(std::max<std::size_t>(1, lines.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < lines.size(); i = next++) results[i] = batch_entry(lines[i], opt);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json entries = Json::array();
  std::size_t errors = 0, not_qa = 0, certified = 0;
  for (auto& r : results) {
    if (r.contains("error")) ++errors;
    if (r.contains("verdict") && r["verdict"].is_object() && r["verdict"]["status"] == "NotQA") ++not_qa;
    if (r.contains("certificate") && r["certificate"] == "certified") ++certified;
    entries.push_back(std::move(r));
  }
  return {{"entries", entries},
          {"summary", {{"entries", lines.size()}, {"errors", errors}, {"not_qa", not_qa}, {"certified", certified}}}};
}

// ---------------------------------------------------------------------------
// Dispatch

/// Runs one command line (argv[0] included). Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jones polynomial, Tait graph and quasi-alternating link toolkit", "qalt"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output = "text";
  app.add_option("--output,-o", output, "Output format")->check(CLI::IsMember({"text", "json"}));

  Inputs in;
  auto add_pd = [&](CLI::App* sub, bool required) {
    auto* a = sub->add_option("--pd", in.pd, "PD code text or JSON array");
    auto* b = sub->add_option("--pd-file", in.pd_file, "File holding a PD code");
    a->excludes(b);
    if (required) {
      // exactly one source; an empty --pd string is the unknot
      sub->callback([a, b] {
        if (a->count() + b->count() != 1) throw CLI::ValidationError("exactly one of --pd or --pd-file is required");
      });
    }
    return std::pair{a, b};
  };
  auto add_edges = [&](CLI::App* sub) {
    auto* a = sub->add_option("--edges", in.edges, "Signed edge list, lines 'u v +' or 'u v -'");
    auto* b = sub->add_option("--edges-file", in.edges_file, "File holding a signed edge list");
    a->excludes(b);
    return std::pair{a, b};
  };

  auto* jones_cmd = app.add_subcommand("jones", "Jones polynomial, determinant and gap structure");
  add_pd(jones_cmd, true);
  auto* bracket_cmd = app.add_subcommand("bracket", "Kauffman bracket");
  add_pd(bracket_cmd, true);
  auto* det_cmd = app.add_subcommand("det", "Determinant by |V(-1)| and by the Goeritz matrix");
  add_pd(det_cmd, true);

  auto* gamma_cmd = app.add_subcommand("gamma", "Spanning-tree polynomial of the Tait graph");
  auto [gamma_pd, gamma_pdf] = add_pd(gamma_cmd, false);
  auto [gamma_e, gamma_ef] = add_edges(gamma_cmd);
  auto* goeritz_cmd = app.add_subcommand("goeritz", "Goeritz determinant");
  auto [goe_pd, goe_pdf] = add_pd(goeritz_cmd, false);
  auto [goe_e, goe_ef] = add_edges(goeritz_cmd);
  for (auto [sub, opts] : {std::pair{gamma_cmd, std::array{gamma_pd, gamma_pdf, gamma_e, gamma_ef}},
                           std::pair{goeritz_cmd, std::array{goe_pd, goe_pdf, goe_e, goe_ef}}}) {
    sub->callback([opts] {
      std::size_t n = 0;
      for (auto* o : opts) n += o->count();
      if (n != 1) throw CLI::ValidationError("exactly one of --pd, --pd-file, --edges or --edges-file is required");
    });
  }

  HalfExp step = HalfExp::integer(1);
  std::string step_text = "1";
  auto* analyze_cmd = app.add_subcommand("analyze", "Breadth, gaps and sign alternation of a polynomial");
  auto [an_pd, an_pdf] = add_pd(analyze_cmd, false);
  auto* an_poly = analyze_cmd->add_option("--poly", in.poly, "Polynomial such as '-t^(-5/2) - t^(-1/2)'");
  analyze_cmd->add_option("--var", in.var, "Variable name of --poly");
  analyze_cmd->add_option("--step", step_text, "Lattice step (half-integer)");
  analyze_cmd->callback([an_pd, an_pdf, an_poly] {
    if (an_pd->count() + an_pdf->count() + an_poly->count() != 1)
      throw CLI::ValidationError("exactly one of --pd, --pd-file or --poly is required");
  });

  std::string det_text;
  bool prime = false, torus = false;
  auto* obstruct_cmd = app.add_subcommand("obstruct", "Quasi-alternating obstructions");
  auto [ob_pd, ob_pdf] = add_pd(obstruct_cmd, false);
  auto* ob_poly = obstruct_cmd->add_option("--poly", in.poly, "Jones polynomial in t");
  auto* ob_det = obstruct_cmd->add_option("--det", det_text, "Determinant (with --poly)");
  obstruct_cmd->add_flag("--prime", prime, "Assert the link is prime");
  obstruct_cmd->add_flag("--torus2n", torus, "Assert the link is a (2,n)-torus link");
  obstruct_cmd->callback([ob_pd, ob_pdf, ob_poly, ob_det] {
    const std::size_t pd = ob_pd->count() + ob_pdf->count();
    if (pd + ob_poly->count() != 1) throw CLI::ValidationError("exactly one of --pd, --pd-file or --poly is required");
    if (ob_poly->count() != ob_det->count()) throw CLI::ValidationError("--poly and --det go together");
  });

  Budget budget = Budget::from_env();
  auto* certify_cmd = app.add_subcommand("certify", "Search for a quasi-alternating certificate");
  auto [ce_pd, ce_pdf] = add_pd(certify_cmd, false);
  auto* ce_verify = certify_cmd->add_option("--verify", in.cert_file, "Re-check a certificate JSON file");
  certify_cmd->add_option("--max-depth", budget.max_depth, "Deepest smoothing chain tried per branch")->check(CLI::NonNegativeNumber);
  certify_cmd->add_option("--max-nodes", budget.max_nodes, "Search node budget (QALT_BUDGET_NODES sets the default)")->check(CLI::PositiveNumber);
  certify_cmd->add_option("--simplify-passes", budget.simplify_passes, "Reidemeister I/II simplification passes per node")->check(CLI::NonNegativeNumber);
  certify_cmd->callback([ce_pd, ce_pdf, ce_verify] {
    if (ce_pd->count() + ce_pdf->count() + ce_verify->count() != 1)
      throw CLI::ValidationError("exactly one of --pd, --pd-file or --verify is required");
  });

  std::int64_t kp = 0, kq = 0;
  bool kanenobu_analyze = false;
  auto* kanenobu_cmd = app.add_subcommand("kanenobu", "Kanenobu knot K(p,q) from its closed-form Jones polynomial");
  kanenobu_cmd->add_option("p", kp)->required();
  kanenobu_cmd->add_option("q", kq)->required();
  kanenobu_cmd->add_flag("--analyze", kanenobu_analyze, "Include the gap analysis");

  std::string batch_file;
  BatchOptions batch_opt;
  auto* batch_cmd = app.add_subcommand("batch", "Run the invariant pipeline over a file of PD codes");
  batch_cmd->add_option("file", batch_file)->required();
  batch_cmd->add_flag("--certify", batch_opt.certify, "Also search for certificates");
  batch_cmd->add_flag("--prime", batch_opt.prime, "Treat every entry as prime");
  batch_cmd->add_option("--jobs,-j", batch_opt.jobs, "Worker threads (default: all cores)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // argv[0]
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "qalt: " << ex.what() << '\n';
    return kInputError;
  }

  const bool json = output == "json";
  auto emit = [&](const Json& j) { out << (json ? j.dump(2) + "\n" : render_text(j)); };
  auto diagram = [&] { return parse_pd(!in.pd_file.empty() ? read_file(in.pd_file) : in.pd); };
  auto graph = [&] { return parse_edge_list(!in.edges_file.empty() ? read_file(in.edges_file) : in.edges); };

  try {
    if (jones_cmd->parsed()) {
      emit(jones_report(diagram()));
    } else if (bracket_cmd->parsed()) {
      emit(bracket_report(diagram()));
    } else if (det_cmd->parsed()) {
      const Diagram d = diagram();
      const Integer by_jones = determinant(d);
      const Integer by_goeritz = diagram_det(d);
      emit(Json{{"pd", d.pd()}, {"det", to_string(by_jones)}, {"goeritz", to_string(by_goeritz)}, {"agree", by_jones == by_goeritz}});
    } else if (gamma_cmd->parsed()) {
      emit(in.has_edges() ? gamma_report(graph()) : gamma_report(diagram()));
    } else if (goeritz_cmd->parsed()) {
      const SignedPlanarGraph g = in.has_edges() ? graph() : checkerboard(diagram()).black;
      emit(Json{{"graph", graph_json(g)}, {"det", to_string(goeritz_det(g))}});
    } else if (analyze_cmd->parsed()) {
      step = HalfExp::parse(step_text);
      if (!in.poly.empty() || an_poly->count()) {
        const HalfLaurent f = HalfLaurent::parse(in.poly, in.var);
        Json j{{"polynomial", f.str(in.var)}};
        merge(j, analysis_json(f, step));
        emit(j);
      } else {
        const HalfLaurent v = jones(diagram());
        Json j{{"polynomial", v.str()}};
        merge(j, analysis_json(v, step));
        emit(j);
      }
    } else if (obstruct_cmd->parsed()) {
      HalfLaurent v;
      Integer det;
      if (ob_poly->count()) {
        v = HalfLaurent::parse(in.poly, "t");
        try {
          det = Integer(det_text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::SyntaxError, "--det must be an integer");
        }
      } else {
        const BracketResult r = compute_bracket(diagram());
        v = r.jones;
        det = r.determinant;
      }
      Json j{{"jones", v.str()}, {"det", to_string(det)}};
      j["verdict"] = Json::parse(to_json(obstruct(v, det, prime, torus)).dump());
      emit(j);
    } else if (certify_cmd->parsed()) {
      if (ce_verify->count()) {
        const auto doc = nlohmann::json::parse(read_file(in.cert_file));
        // accepts a bare certificate or the output of `certify -o json`
        const Certificate c = certificate_from_json(doc.contains("certificate") ? doc["certificate"] : doc);
        const VerifyResult r = verify_certificate(c, budget.simplify_passes);
        emit(Json{{"valid", r.ok}, {"root_det", to_string(c->det)}, {"error", r.error}});
        return r.ok ? kOk : kInputError;
      }
      const Diagram d = diagram();
      const CertifyResult r = certify(d, budget);
      Json j{{"pd", d.pd()},
             {"status", r.certificate ? "certified" : "unknown"},
             {"search_nodes", r.stats.nodes},
             {"budget",
              {{"max_depth", budget.max_depth}, {"max_nodes", budget.max_nodes}, {"simplify_passes", budget.simplify_passes}}}};
      if (r.certificate) {
        const auto [nodes, depth] = certificate_shape(r.certificate);
        j["root_det"] = to_string(r.certificate->det);
        j["certificate_nodes"] = nodes;
        j["certificate_depth"] = depth;
        j["certificate"] = certificate_json(r.certificate);
      }
      emit(j);
      return r.certificate ? kOk : kUnknown;
    } else if (kanenobu_cmd->parsed()) {
      const KanenobuReport k = kanenobu_obstruction(kp, kq);
      const HalfLaurent v = kanenobu_jones(kp, kq);
      Json j{{"p", kp}, {"q", kq}, {"jones", v.str()}, {"det", to_string(k.det)}};
      if (kanenobu_analyze)
        merge(j, analysis_json(v, HalfExp::integer(1)));
      j["published_criterion"] = std::string(to_string(k.published));
      j["gap_criterion"] = std::string(to_string(k.gap_derived));
      j["agree"] = k.agree;
      j["verdict"] = Json::parse(to_json(k.detail).dump());
      emit(j);
    } else if (batch_cmd->parsed()) {
      batch_opt.budget = budget;
      emit(batch_report(read_file(batch_file), batch_opt));
    }
  } catch (const Error& ex) {
    err << "qalt: " << ex.what() << '\n';
    return kInputError;
  } catch (const std::exception& ex) {
    err << "qalt: " << ex.what() << '\n';
    return kInputError;
  }
  return kOk;
}

}  // namespace qalt::cli
