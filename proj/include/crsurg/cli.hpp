#pragma once

// Command-line front end.  Every command writes one JSON document (the
// `print` command writes diagram text).  Exit codes: 0 success, 1 semantic
// or validation failure, 2 syntax / usage error, 3 self-test or internal
// failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crsurg/bridge.hpp"
#include "crsurg/dividing.hpp"
#include "crsurg/dsl.hpp"
#include "crsurg/front.hpp"
#include "crsurg/homology.hpp"
#include "crsurg/round_homology.hpp"
#include "crsurg/slopes.hpp"

namespace crsurg::cli {

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return 2;
    case ErrorKind::GadgetSelfTestFailed:
    case ErrorKind::InternalError: return 3;
    default: return 1;
  }
}

inline Json h1_json(const H1Class& h) {
  Json t = Json::array();
  for (const auto& d : h.torsion) {
    if (d <= std::numeric_limits<std::int64_t>::max())
      t.push_back(static_cast<std::int64_t>(d));
    else
      t.push_back(d.str());
  }
  return {{"free_rank", h.free_rank}, {"torsion", std::move(t)}};
}

inline Json bigint_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::int64_t>::max() && v >= std::numeric_limits<std::int64_t>::min())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Json matrix_json(const UnimodularMatrix& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

inline std::string arc_name(const ArcConfig& cfg, const GluedStep& s) {
  std::string out = s.annulus == Annulus::A ? "A:" : "B:";
  if (s.traversing) {
    const auto& t = cfg.traversing[s.index];
    out += s.forward ? "t" + std::to_string(t.top) + "-b" + std::to_string(t.bottom)
                     : "b" + std::to_string(t.bottom) + "-t" + std::to_string(t.top);
  } else {
    const auto& p = cfg.parallel[s.index];
    const std::string l = p.side == Side::Top ? "t" : "b";
    out += s.forward ? l + std::to_string(p.a) + "~" + l + std::to_string(p.b)
                     : l + std::to_string(p.b) + "~" + l + std::to_string(p.a);
  }
  return out;
}

inline SlopeQ slope_arg(const std::string& text, const char* what) {
  auto s = SlopeQ::parse(text);
  if (!s) throw Error(ErrorKind::SyntaxError, std::string("invalid ") + what + " '" + text + "'");
  return *s;
}

inline std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidParameter, "cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Runs one command.  `args` excludes the program name.
inline int dispatch(std::vector<std::string> args, std::ostream& out) {
  // "-inf" would be taken for a short option.
  for (auto& a : args)
    if (a == "-inf") a = "inf";

  CLI::App app{"Contact round surgery calculator", "crsurg"};
  app.require_subcommand(1);
  bool pretty = false;
  std::string diagram_name;
  app.add_flag("--pretty", pretty, "indent JSON output");
  app.add_option("--diagram", diagram_name, "diagram to use when the file holds several");

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  std::string file;
  auto* c_parse = sub("parse", "parse a diagram file and print canonical JSON");
  c_parse->add_option("file", file, "diagram file (text or JSON, '-' for stdin)")->required();
  auto* c_print = sub("print", "print a diagram file in canonical text form");
  c_print->add_option("file", file)->required();

  std::string word, orient;
  auto* c_inv = sub("invariants", "tb, rot and linking from fronts or a diagram");
  c_inv->add_option("file", file);
  c_inv->add_option("--word", word, "front word, e.g. \"U1 C1\"");
  c_inv->add_option("--orient", orient, "comma-separated forward/reverse per front component");

  auto* c_hom = sub("homology", "first homology of the surgered manifold(s)");
  c_hom->add_option("file", file)->required();

  std::int64_t k = 1, gm = 1, gm1 = 1, gm2 = 1;
  auto* c_round = sub("to-round", "(+-1)-diagram to nice contact joint pairs");
  c_round->add_option("file", file)->required();
  c_round->add_option("--k", k, "round-1 coefficient of every pair");
  c_round->add_option("--gadget-m", gm, "gadget parameter m (parity cases 2 and 4)");
  c_round->add_option("--gadget-m1", gm1, "gadget parameter m1 (parity case 3)");
  c_round->add_option("--gadget-m2", gm2, "gadget parameter m2 (parity case 3)");

  auto* c_pm1 = sub("to-pm1", "nice contact joint pairs to a (+-1)-diagram");
  c_pm1->add_option("file", file)->required();

  std::int64_t index = -1;
  auto* c_nice = sub("check-nice", "niceness report for round 1-surgeries");
  c_nice->add_option("file", file)->required();
  c_nice->add_option("--index", index, "only this round1 entry");

  auto* c_fill = sub("fillable", "sufficient fillability condition");
  c_fill->add_option("file", file)->required();

  std::string slope;
  auto* c_cf = sub("cf", "negative continued fraction of a slope < -1");
  c_cf->add_option("slope", slope)->required();

  std::string slope0, slope1;
  std::int64_t twisting = 0, ndiv = 2, ndiv0 = 0, ndiv1 = 0;
  auto* c_count = sub("count-tight", "number of tight structures on T^2 x I");
  c_count->add_option("--slope0", slope0)->required();
  c_count->add_option("--slope1", slope1)->required();
  c_count->add_option("--twisting", twisting);
  c_count->add_option("--ndiv", ndiv, "number of dividing curves on both boundary tori");
  c_count->add_option("--ndiv0", ndiv0, "dividing curves on T_0 (overrides --ndiv)");
  c_count->add_option("--ndiv1", ndiv1, "dividing curves on T_1 (overrides --ndiv)");

  auto* c_norm = sub("normalize-slopes", "SL(2,Z) normalisation to slopes -1 and <= -1");
  c_norm->add_option("--slope0", slope0)->required();
  c_norm->add_option("--slope1", slope1)->required();

  int n0 = 1, n1 = 1;
  std::int64_t max_winding = 0;
  auto* c_enum = sub("enum-configs", "non-rotative arc configurations on an annulus");
  c_enum->add_option("--n0", n0)->required();
  c_enum->add_option("--n1", n1)->required();
  c_enum->add_option("--max-winding", max_winding);

  std::string lit_a, lit_b;
  std::int64_t offset_top = 0, offset_bottom = 0;
  auto* c_glue = sub("glue-annuli", "glue two annulus arc systems into a torus");
  c_glue->add_option("--a", lit_a, "arc literal, e.g. \"arcs(1,1)[t0-b0 t1-b1 w=0]\"")->required();
  c_glue->add_option("--b", lit_b)->required();
  c_glue->add_option("--offset-top", offset_top);
  c_glue->add_option("--offset-bottom", offset_bottom);

  std::int64_t m = 1;
  std::string linking = "chain";
  auto* c_gadget = sub("gadget", "contact Kirby move of type 1 gadget");
  c_gadget->add_option("--m", m)->required();
  c_gadget->add_option("--linking", linking, "chain (default) or star")->check(CLI::IsMember({"chain", "star"}));

  auto emit = [&](const Json& j) { out << (pretty ? j.dump(2) : j.dump()) << "\n"; };
  auto emit_error = [&](const std::string& kind, const std::string& message, SourcePos pos) {
    Json e{{"error", kind}, {"message", message}};
    if (pos.line > 0) {
      e["line"] = pos.line;
      e["column"] = pos.column;
    }
    emit(e);
  };

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error("UsageError", e.what(), {});
    return 2;
  }

  try {
    auto load = [&]() { return read_diagram_file(read_input(file)); };
    auto selected_file = [&](const DiagramFile& f) {
      if (diagram_name.empty()) return f;
      DiagramFile one;
      one.diagrams.push_back(f.select(diagram_name));
      return one;
    };

    if (*c_parse) {
      emit(file_to_json(selected_file(load())));
    } else if (*c_print) {
      out << print_diagram_file(selected_file(load()));
    } else if (*c_inv) {
      if (!word.empty()) {
        if (!file.empty()) throw Error(ErrorKind::InvalidParameter, "give either a file or --word");
        front::OrientedFront of{front::parse_front_word(word), {}};
        if (!orient.empty()) {
          std::stringstream ss(orient);
          std::string item;
          while (std::getline(ss, item, ',')) {
            if (item == "forward")
              of.orientation.push_back(Orientation::Forward);
            else if (item == "reverse")
              of.orientation.push_back(Orientation::Reverse);
            else
              throw Error(ErrorKind::SyntaxError, "orientation must be forward or reverse, got '" + item + "'");
          }
        }
        const auto inv = front::classical_invariants(of);
        if (of.orientation.size() > inv.components.size())
          throw Error(ErrorKind::InvalidParameter, "more orientations than front components");
        Json comps = Json::array();
        for (const auto& c : inv.components)
          comps.push_back({{"tb", c.tb},
                           {"rot", c.rot},
                           {"self_writhe", c.self_writhe},
                           {"up_cusps", c.up_cusps},
                           {"down_cusps", c.down_cusps}});
        emit({{"word", front::print_front_word(of.word)}, {"components", std::move(comps)}, {"lk", inv.lk}});
      } else {
        if (file.empty()) throw Error(ErrorKind::InvalidParameter, "give a diagram file or --word");
        if (!orient.empty()) throw Error(ErrorKind::InvalidParameter, "--orient applies to --word only");
      const DiagramFile loaded = load();
      const auto& d = loaded.select(diagram_name);
        Json comps = Json::array();
        for (const auto& c : d.components())
          comps.push_back({{"label", c.label}, {"tb", c.tb}, {"rot", c.rot}, {"source", c.front ? "front" : "declared"}});
        emit({{"components", std::move(comps)}, {"linking", detail::linking_json(d.linking())}});
      }
    } else if (*c_hom) {
      const DiagramFile loaded = load();
      const auto& d = loaded.select(diagram_name);
      Json comps = Json::array();
      if (d.kind == DiagramKind::Contact)
        comps.push_back(h1_json(h1_dehn(d.contact)));
      else
        for (const auto& h : h1_round_diagram(d.round)) comps.push_back(h1_json(h));
      emit({{"components", std::move(comps)}});
    } else if (*c_round) {
      const DiagramFile loaded = load();
      const auto& d = loaded.select(diagram_name);
      if (d.kind != DiagramKind::Contact) throw Error(ErrorKind::NotPm1Diagram, "to-round needs a contact (+-1)-diagram");
      const auto res = pair_pm1_diagram(d.contact, k, {gm, gm1, gm2});
      Json gadgets = Json::array();
      for (const auto& g : res.plan.gadgets) gadgets.push_back({{"m", g.m}, {"labels", g.labels}});
      Json pairs = Json::array();
      for (const auto& p : res.plan.pairs) pairs.push_back({{"pair", {p.a, p.b}}, {"k", p.k}, {"r2", p.r2}});
      emit({{"diagrams", Json::array({diagram_to_json(res.diagram, d.name)})},
            {"plan", {{"case", res.plan.case_id}, {"gadgets", std::move(gadgets)}, {"pairs", std::move(pairs)}}}});
    } else if (*c_pm1) {
      const DiagramFile loaded = load();
      const auto& d = loaded.select(diagram_name);
      if (d.kind != DiagramKind::Round) throw Error(ErrorKind::NotNice, "to-pm1 needs a round diagram");
      emit({{"diagrams", Json::array({diagram_to_json(joint_pairs_to_pm1(d.round), d.name)})}});
    } else if (*c_nice) {
      const DiagramFile loaded = load();
      const auto& d = loaded.select(diagram_name);
      if (d.kind != DiagramKind::Round) throw Error(ErrorKind::InvalidParameter, "check-nice needs a round diagram");
      const auto& rd = d.round;
      if (index >= static_cast<std::int64_t>(rd.round1.size()))
        throw Error(ErrorKind::InvalidParameter, "round1 index " + std::to_string(index) + " out of range");
      Json pairs = Json::array();
      for (std::size_t i = 0; i < rd.round1.size(); ++i) {
        if (index >= 0 && static_cast<std::size_t>(index) != i) continue;
        Json j{{"index", i}, {"pair", {rd.round1[i].pair.first, rd.round1[i].pair.second}}};
        if (!joint_partner(rd, i)) {
          j["nice"] = false;
          j["reason"] = "no round-2 partner";
        } else {
          const auto rep = check_nice(rd, i);
          j["nice"] = rep.nice;
          j["coefficients_equal"] = rep.coefficients_equal;
          j["round2_unit"] = rep.round2_unit;
          j["layer_standard"] = rep.layer_standard;
          j["reason"] = rep.reason;
        }
        pairs.push_back(std::move(j));
      }
      emit({{"pairs", std::move(pairs)}});
    } else if (*c_fill) {
      const DiagramFile loaded = load();
      const auto& d = loaded.select(diagram_name);
      if (d.kind != DiagramKind::Round) throw Error(ErrorKind::InvalidParameter, "fillable needs a round diagram");
      emit({{"fillable", is_fillable_sufficient(d.round)}});
    } else if (*c_cf) {
      emit({{"cf", neg_cf(slope_arg(slope, "slope")).coefficients}});
    } else if (*c_count) {
      const auto n = normalize_slopes(slope_arg(slope0, "slope0"), slope_arg(slope1, "slope1"));
      const BoundaryData b0{ndiv0 ? ndiv0 : ndiv, {n.slope0, BasisTag::Canonical}};
      const BoundaryData b1{ndiv1 ? ndiv1 : ndiv, {n.slope1, BasisTag::Canonical}};
      const TightCount c = honda_count(b0, b1, twisting);
      Json count{{"kind", to_string(c.kind)}};
      if (c.kind == TightCount::Kind::Finite) count["value"] = bigint_json(c.value);
      if (c.kind == TightCount::Kind::TwoPerTwisting) count["value"] = 2;
      if (c.kind == TightCount::Kind::Unsupported) count["reason"] = c.reason;
      emit({{"matrix", matrix_json(n.matrix)},
            {"slope0", n.slope0.str()},
            {"slope1", n.slope1.str()},
            {"twisting", twisting},
            {"count", std::move(count)}});
    } else if (*c_norm) {
      const auto n = normalize_slopes(slope_arg(slope0, "slope0"), slope_arg(slope1, "slope1"));
      emit({{"matrix", matrix_json(n.matrix)}, {"slope0", n.slope0.str()}, {"slope1", n.slope1.str()}});
    } else if (*c_enum) {
      const auto cfgs = enumerate_configurations(n0, n1, max_winding);
      Json list = Json::array();
      for (const auto& c : cfgs) list.push_back(print_arc_config(c));
      emit({{"count", cfgs.size()}, {"configs", std::move(list)}});
    } else if (*c_glue) {
      const ArcConfig a = parse_arc_config(lit_a);
      const ArcConfig b = parse_arc_config(lit_b);
      const GluedCurves g = glue_annuli(a, b, offset_top, offset_bottom);
      Json curves = Json::array();
      for (const auto& c : g.curves) {
        Json arcs = Json::array();
        for (const auto& s : c.steps) arcs.push_back(arc_name(s.annulus == Annulus::A ? a : b, s));
        curves.push_back({{"class", {c.h, c.v}}, {"contractible", c.contractible()}, {"arcs", std::move(arcs)}});
      }
      emit({{"curves", std::move(curves)}, {"overtwisted", giroux_overtwisted(g)}});
    } else if (*c_gadget) {
      const auto g = kirby1_gadget(m, linking == "star" ? GadgetLinking::AllPushoffsOfK : GadgetLinking::PushoffChain);
      emit({{"diagrams", Json::array({diagram_to_json(g, "gadget_m" + std::to_string(m))})},
            {"self_test",
             {{"det", bigint_json(determinant(topological_linking_matrix(g)))}, {"h1", h1_json(h1_dehn(g))}}}});
    }
    return 0;
  } catch (const Error& e) {
    emit_error(std::string(to_string(e.kind())), e.what(), e.pos());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    emit_error("InternalError", e.what(), {});
    return 3;
  }
}

}  // namespace crsurg::cli
