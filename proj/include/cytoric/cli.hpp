#pragma once

// Command-line front end. Every command reads one or more polytope files
// (the polytope Delta in M) and prints a text or JSON report.
//
//   poly check|dual|points|faces|dump
//   cy   hodge|census
//   fan  build|mpcp|singular|picard|nef
//   chern c2|curves
//
// Exit status: 0 ok, 1 input or domain error, 2 usage error.

#include "cytoric/chern.hpp"
#include "cytoric/fan.hpp"
#include "cytoric/hodge.hpp"
#include "cytoric/io.hpp"
#include "cytoric/polytope.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <future>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cytoric::cli {

using Json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool resolve = false;
  std::string divisor;
  unsigned jobs = 1;
};

struct Report {
  Json data;
  std::string text;
};

enum ExitStatus : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

// --------------------------------------------------------------------------
// JSON helpers

inline Json to_json(const Integer &z) {
  if (z >= std::numeric_limits<long long>::min() &&
      z <= std::numeric_limits<long long>::max())
    return z.convert_to<long long>();
  return z.str();
}

inline Json to_json(const Rational &q) { return to_string(q); }

template <class Tag> Json to_json(const LatticePoint<Tag> &p) {
  Json a = Json::array();
  for (const auto &c : p.coords()) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const IndexSet &s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i);
  return a;
}

inline Rational parse_rational(const std::string &s) {
  auto slash = s.find('/');
  Integer num, den = 1;
  if (s.empty() || !detail::parse_integer(s.substr(0, slash), num) ||
      (slash != std::string::npos &&
       !detail::parse_integer(s.substr(slash + 1), den)) ||
      den == 0)
    throw InputError("not a rational number: \"" + s + "\"");
  return Rational(num, den);
}

/// "<ray>=<coeff>,..." where <ray> is a ray index or "[x y z w]".
inline WeilDivisor parse_divisor(const Fan &fan, const std::string &text) {
  auto d = WeilDivisor::zero(fan);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InputError("divisor entry needs '=': \"" + item + "\"");
    std::string key = item.substr(0, eq);
    key.erase(0, key.find_first_not_of(' '));
    key.erase(key.find_last_not_of(' ') + 1);
    std::size_t ray = Fan::npos;
    if (!key.empty() && key.front() == '[' && key.back() == ']') {
      std::vector<Integer> coords;
      for (const auto &tok : detail::split(key.substr(1, key.size() - 2))) {
        Integer z;
        if (!detail::parse_integer(tok, z))
          throw InputError("bad ray coordinate \"" + tok + "\"");
        coords.push_back(z);
      }
      ray = fan.ray_index(NPoint(std::move(coords)));
    } else {
      Integer z;
      if (detail::parse_integer(key, z) && z >= 0 &&
          z < static_cast<long long>(fan.rays().size()))
        ray = z.convert_to<std::size_t>();
    }
    if (ray == Fan::npos) throw InputError("unknown ray \"" + key + "\"");
    std::string val = item.substr(eq + 1);
    val.erase(0, val.find_first_not_of(' '));
    val.erase(val.find_last_not_of(' ') + 1);
    d.coeffs[ray] += parse_rational(val);
  }
  return d;
}

// --------------------------------------------------------------------------
// Commands

namespace detail {

inline ReflexivePair<MTag> reflexive_pair(const std::vector<MPoint> &pts) {
  return ReflexivePair<MTag>(hull(pts));
}

inline Fan selected_fan(const ReflexivePair<MTag> &pair, const Options &o) {
  return o.resolve ? mpcp_triangulate(pair) : face_fan(pair);
}

inline Json fan_json(const Fan &fan) {
  Json j;
  j["kind"] = fan.provenance() == FanProvenance::FaceFan ? "face" : "mpcp";
  j["max_cones"] = fan.max_cones().size();
  j["simplicial"] = fan.is_simplicial();
  Json rays = Json::array();
  for (const auto &r : fan.rays()) rays.push_back(to_json(r));
  j["rays"] = std::move(rays);
  Json cones = Json::array();
  for (const auto &c : fan.max_cones()) cones.push_back(to_json(c));
  j["cones"] = std::move(cones);
  j["walls"] = fan.walls().size();
  return j;
}

inline std::string fan_text(const Fan &fan) {
  std::ostringstream os;
  os << (fan.provenance() == FanProvenance::FaceFan ? "face fan" : "mpcp fan")
     << ": " << fan.rays().size() << " rays, " << fan.max_cones().size()
     << " maximal cones" << (fan.is_simplicial() ? " (simplicial)" : "")
     << "\n";
  for (std::size_t r = 0; r < fan.rays().size(); ++r)
    os << "  ray " << r << ": " << fan.rays()[r] << "\n";
  for (const auto &c : fan.max_cones()) {
    os << "  cone";
    for (auto r : c) os << ' ' << r;
    os << "\n";
  }
  return os.str();
}

} // namespace detail

inline Report poly_check(const std::vector<MPoint> &pts, const Options &) {
  const auto p = hull(pts);
  const bool interior = p.has_interior_origin();
  const bool refl = interior && is_reflexive(p);
  Report r;
  r.data["dim"] = p.ambient_dim();
  r.data["vertices"] = p.vertices().size();
  r.data["facets"] = p.facets().size();
  r.data["interior_origin"] = interior;
  r.data["reflexive"] = refl;
  r.text = std::string("reflexive: ") + (refl ? "true" : "false") + ", dim " +
           std::to_string(p.ambient_dim()) + ", vertices " +
           std::to_string(p.vertices().size()) + "\n";
  if (!interior) r.text += "origin is not an interior point\n";
  return r;
}

inline Report poly_dual(const std::vector<MPoint> &pts, const Options &) {
  const auto rd = dual(hull(pts));
  Report r;
  r.data["integral"] = rd.is_integral();
  Json vs = Json::array();
  std::ostringstream os;
  os << "dual vertices (" << rd.vertices.size() << ")"
     << (rd.is_integral() ? "" : ", not integral") << ":\n";
  for (const auto &v : rd.vertices) {
    Json a = Json::array();
    os << " ";
    for (const auto &q : v) {
      a.push_back(to_json(q));
      os << ' ' << to_string(q);
    }
    os << "\n";
    vs.push_back(std::move(a));
  }
  r.data["vertices"] = std::move(vs);
  r.text = os.str();
  return r;
}

inline Report poly_points(const std::vector<MPoint> &pts, const Options &) {
  const auto p = hull(pts);
  const auto c = lattice_points(p);
  Report r;
  r.data["l"] = c.l;
  r.data["l_star"] = c.l_star;
  Json list = Json::array();
  std::ostringstream os;
  os << "l = " << c.l << ", l* = " << c.l_star << "\n";
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    Json e;
    e["point"] = to_json(c.points[i]);
    if (c.carrier[i] == Polytope<MTag>::npos) {
      e["face_dim"] = p.ambient_dim();
      os << "  " << c.points[i] << "  interior\n";
    } else {
      e["face_dim"] = p.face(c.carrier[i]).dim;
      os << "  " << c.points[i] << "  face dim " << p.face(c.carrier[i]).dim
         << "\n";
    }
    list.push_back(std::move(e));
  }
  r.data["points"] = std::move(list);
  r.text = os.str();
  return r;
}

inline Report poly_faces(const std::vector<MPoint> &pts, const Options &) {
  const auto p = hull(pts);
  const auto c = lattice_points(p);
  Report r;
  r.data["f_vector"] = p.f_vector();
  Json list = Json::array();
  std::ostringstream os;
  os << "f-vector:";
  for (auto f : p.f_vector()) os << ' ' << f;
  os << "\n";
  for (std::size_t f = 0; f < p.faces().size(); ++f) {
    const auto &face = p.face(f);
    Json e;
    e["dim"] = face.dim;
    e["vertices"] = to_json(face.vertices);
    e["l"] = c.per_face[f].l;
    e["l_star"] = c.per_face[f].l_star;
    list.push_back(std::move(e));
    os << "  dim " << face.dim << " vertices";
    for (auto v : face.vertices) os << ' ' << v;
    os << "  l=" << c.per_face[f].l << " l*=" << c.per_face[f].l_star << "\n";
  }
  r.data["faces"] = std::move(list);
  r.text = os.str();
  return r;
}

inline Report poly_dump(const std::vector<MPoint> &pts, const Options &) {
  Report r;
  r.data["n_points"] = pts.size();
  r.data["dim"] = pts.empty() ? 0 : pts[0].dim();
  Json list = Json::array();
  for (const auto &p : pts) list.push_back(to_json(p));
  r.data["points"] = std::move(list);
  r.text = dump_polytope(pts);
  return r;
}

inline Report cy_hodge(const std::vector<MPoint> &pts, const Options &) {
  const auto pair = detail::reflexive_pair(pts);
  const auto rep = HodgeCalculator<MTag>(pair).report();
  Report r;
  r.data["h11"] = rep.h11;
  r.data["h12"] = rep.h12;
  r.data["euler"] = rep.euler;
  auto terms = [](const HodgeTerms &t) {
    Json j;
    j["lattice_points"] = t.lattice_points;
    j["facet_interiors"] = t.facet_interiors;
    j["two_face_pairing"] = t.two_face_pairing;
    return j;
  };
  r.data["terms"]["h11"] = terms(rep.h11_terms);
  r.data["terms"]["h12"] = terms(rep.h12_terms);
  std::ostringstream os;
  os << "h11=" << rep.h11 << ", h12=" << rep.h12 << ", euler=" << rep.euler
     << "\n";
  os << "h11 = " << rep.h11_terms.lattice_points << " - 5 - "
     << rep.h11_terms.facet_interiors << " + "
     << rep.h11_terms.two_face_pairing << "\n";
  os << "h12 = " << rep.h12_terms.lattice_points << " - 5 - "
     << rep.h12_terms.facet_interiors << " + "
     << rep.h12_terms.two_face_pairing << "\n";
  r.text = os.str();
  return r;
}

inline Report cy_census(const std::vector<MPoint> &pts, const Options &) {
  const auto pair = detail::reflexive_pair(pts);
  const HodgeCalculator<MTag> calc(pair);
  const auto census = calc.divisor_census();
  Report r;
  Json c;
  c["a"] = census.e_divisors.size();
  c["b"] = census.f_divisors.size();
  Json e = Json::array();
  for (const auto &p : census.e_divisors) e.push_back(to_json(p));
  c["e"] = std::move(e);
  Json f = Json::array();
  for (const auto &p : census.f_divisors)
    f.push_back({{"point", to_json(p.point)}, {"components", p.components}});
  c["f"] = std::move(f);
  Json s = Json::array();
  for (const auto &p : census.skipped) s.push_back(to_json(p));
  c["skipped"] = std::move(s);
  c["total_components"] = census.total_components();
  c["relation_dim"] = census.relation_dim;
  r.data["census"] = std::move(c);
  r.data["h11"] = census.h11();
  std::ostringstream os;
  os << "E divisors: " << census.e_divisors.size() << "\n";
  os << "F points: " << census.f_divisors.size() << " (components";
  for (const auto &p : census.f_divisors) os << ' ' << p.components;
  os << ")\n";
  os << "skipped (facet interiors): " << census.skipped.size() << "\n";
  os << "components " << census.total_components() << " - relations "
     << census.relation_dim << " = h11 " << census.h11() << "\n";
  r.text = os.str();
  return r;
}

inline Report fan_build(const std::vector<MPoint> &pts, const Options &o) {
  const auto pair = detail::reflexive_pair(pts);
  const auto fan = detail::selected_fan(pair, o);
  Report r;
  r.data["fan"] = detail::fan_json(fan);
  r.text = detail::fan_text(fan);
  return r;
}

inline Report fan_mpcp(const std::vector<MPoint> &pts, const Options &) {
  const auto pair = detail::reflexive_pair(pts);
  const auto fan = mpcp_triangulate(pair);
  const auto census = lattice_points(pair.dual());
  Report r;
  r.data["fan"] = detail::fan_json(fan);
  r.data["fan"]["volume"] = to_json(total_multiplicity(fan));
  r.data["fan"]["boundary_points"] = census.boundary_count();
  r.text = detail::fan_text(fan);
  r.text += "sum of multiplicities: " + total_multiplicity(fan).str() + "\n";
  return r;
}

inline Report fan_singular(const std::vector<MPoint> &pts, const Options &o) {
  const auto pair = detail::reflexive_pair(pts);
  const auto fan = detail::selected_fan(pair, o);
  const auto sing = singularity_census(fan);
  Report r;
  Json list = Json::array();
  std::ostringstream os;
  os << sing.size() << " singular cones\n";
  for (const auto &s : sing) {
    Json e;
    e["rays"] = to_json(fan.max_cones()[s.cone]);
    e["mult"] = to_json(s.mult);
    e["fixed_dim"] = s.fixed_dim;
    list.push_back(std::move(e));
    os << "  cone";
    for (auto ray : fan.max_cones()[s.cone]) os << ' ' << fan.rays()[ray];
    os << "  mult " << s.mult << ", fixed dim " << s.fixed_dim << "\n";
  }
  r.data["singular"] = std::move(list);
  r.text = os.str();
  return r;
}

inline Report fan_picard(const std::vector<MPoint> &pts, const Options &o) {
  const auto pair = detail::reflexive_pair(pts);
  const auto fan = detail::selected_fan(pair, o);
  const auto rank = picard_rank_q(fan);
  Report r;
  r.data["fan"] = o.resolve ? "mpcp" : "face";
  r.data["picard_rank"] = rank;
  r.text = "picard rank (Q): " + std::to_string(rank) + "\n";
  return r;
}

inline Report fan_nef(const std::vector<MPoint> &pts, const Options &o) {
  const auto pair = detail::reflexive_pair(pts);
  const auto fan = detail::selected_fan(pair, o);
  const auto d = o.divisor.empty() ? WeilDivisor::anticanonical(fan)
                                   : parse_divisor(fan, o.divisor);
  const auto q = is_qcartier(fan, d);
  Report r;
  r.data["qcartier"] = q.qcartier;
  r.data["cartier_index"] =
      q.cartier_index ? to_json(*q.cartier_index) : Json(nullptr);
  if (q.qcartier) {
    const bool nef = is_nef(fan, d);
    r.data["nef"] = nef;
    r.text = std::string("Q-Cartier: true, index ") + q.cartier_index->str() +
             ", nef: " + (nef ? "true" : "false") + "\n";
  } else {
    r.data["nef"] = nullptr;
    r.text = "Q-Cartier: false\n";
  }
  return r;
}

inline Report chern_c2(const std::vector<MPoint> &pts, const Options &o) {
  const auto pair = detail::reflexive_pair(pts);
  const ChernCalculator calc(pair, mpcp_triangulate(pair));
  const auto &fan = calc.fan();
  std::vector<WeilDivisor> extra;
  if (!o.divisor.empty()) extra.push_back(parse_divisor(fan, o.divisor));
  const auto rep = calc.report(extra);
  Report r;
  Json values = Json::array();
  std::ostringstream os;
  for (std::size_t i = 0; i < fan.rays().size(); ++i) {
    values.push_back(
        {{"ray", to_json(fan.rays()[i])}, {"value", to_json(rep.c2_values[i])}});
    os << "c2 . D" << fan.rays()[i] << " = " << to_string(rep.c2_values[i])
       << "\n";
  }
  r.data["c2"]["values"] = std::move(values);
  r.data["c2"]["anticanonical"] = to_json(rep.c2_anticanonical);
  os << "c2 . (-K) = " << to_string(rep.c2_anticanonical) << "\n";
  if (!extra.empty()) {
    const Rational v = calc.c2_dot(extra[0]);
    r.data["c2"]["divisor"] = to_json(v);
    os << "c2 . L = " << to_string(v) << "\n";
  }
  std::size_t violations = 0, tested = 0;
  for (const auto &n : rep.nef_checks) {
    if (n.degree <= 0) continue;
    ++tested;
    if (n.c2 <= 0) ++violations;
  }
  r.data["positivity"]["nef_classes"] = tested;
  r.data["positivity"]["violations"] = violations;
  r.data["positivity"]["positive"] = rep.positive();
  os << "nef test classes: " << tested << ", violations: " << violations
     << "\n";
  r.text = os.str();
  return r;
}

inline Report chern_curves(const std::vector<MPoint> &pts, const Options &) {
  const auto pair = detail::reflexive_pair(pts);
  const ChernCalculator calc(pair, mpcp_triangulate(pair));
  const auto &fan = calc.fan();
  const auto census = calc.curve_census();
  Report r;
  Json curves = Json::array();
  std::ostringstream os;
  for (const auto &c : census.curves) {
    curves.push_back({{"rays", {c.ray_a, c.ray_b}},
                      {"types", {to_string(c.type_a), to_string(c.type_b)}},
                      {"face_dim", c.face_dim},
                      {"class", to_string(c.cls)},
                      {"components", c.components}});
    os << "  " << fan.rays()[c.ray_a] << " - " << fan.rays()[c.ray_b] << "  "
       << to_string(c.cls);
    if (c.cls == CurveClass::RationalCurves) os << " x" << c.components;
    os << "\n";
  }
  Json coverage = Json::array();
  std::size_t uncovered = 0;
  for (const auto &c : census.coverage) {
    coverage.push_back({{"ray", to_json(fan.rays()[c.ray])},
                        {"type", to_string(c.type)},
                        {"covered", c.covered}});
    if (!c.covered) ++uncovered;
  }
  r.data["curves"] = std::move(curves);
  r.data["coverage"] = std::move(coverage);
  r.text = std::to_string(census.curves.size()) + " triangulation edges\n" +
           os.str() + "divisors not met by any curve: " +
           std::to_string(uncovered) + "\n";
  return r;
}

// --------------------------------------------------------------------------
// Driver

using Command = std::function<Report(const std::vector<MPoint> &, const Options &)>;

struct FileResult {
  std::string path;
  std::optional<Report> report;
  std::string error;
  int status = kOk;
};

inline FileResult run_one(const Command &cmd, const std::string &path,
                          const Options &opts) {
  FileResult res;
  res.path = path;
  try {
    res.report = cmd(read_polytope_file(path), opts);
  } catch (const std::invalid_argument &e) {
    res.error = e.what();
    res.status = kDomainError;
  } catch (const std::domain_error &e) {
    res.error = e.what();
    res.status = kDomainError;
  }
  return res;
}

inline int run(int argc, const char *const *argv, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Reflexive 4-polytopes and their Calabi-Yau hypersurfaces",
               "cytoric"};
  app.require_subcommand(1);
  Options opts;
  std::vector<std::string> files;
  Command selected;

  struct Leaf {
    const char *group;
    const char *name;
    const char *help;
    Command cmd;
  };
  const std::vector<Leaf> leaves = {
      {"poly", "check", "hull, interior origin and reflexivity", poly_check},
      {"poly", "dual", "vertices of the dual polytope", poly_dual},
      {"poly", "points", "lattice points with their carrier faces", poly_points},
      {"poly", "faces", "face lattice with point counts", poly_faces},
      {"poly", "dump", "re-emit the parsed point list", poly_dump},
      {"cy", "hodge", "h11, h12 and Euler number", cy_hodge},
      {"cy", "census", "toric divisors on the hypersurface", cy_census},
      {"fan", "build", "face fan (MPCP fan with --resolve)", fan_build},
      {"fan", "mpcp", "fine regular crepant triangulation", fan_mpcp},
      {"fan", "singular", "cones of multiplicity > 1", fan_singular},
      {"fan", "picard", "rank of Pic tensor Q", fan_picard},
      {"fan", "nef", "Q-Cartier and nef test for --divisor", fan_nef},
      {"chern", "c2", "second Chern class against toric divisors", chern_c2},
      {"chern", "curves", "curves C_ij cut by triangulation edges",
       chern_curves},
  };
  std::map<std::string, CLI::App *> groups;
  groups["poly"] = app.add_subcommand("poly", "polytope geometry");
  groups["cy"] = app.add_subcommand("cy", "Calabi-Yau hypersurface invariants");
  groups["fan"] = app.add_subcommand("fan", "face fan and MPCP triangulation");
  groups["chern"] = app.add_subcommand("chern", "second Chern class");
  for (auto &[_, g] : groups) g->require_subcommand(1);
  for (const auto &leaf : leaves) {
    auto *sub = groups[leaf.group]->add_subcommand(leaf.name, leaf.help);
    sub->add_option("files", files, "polytope files")->required();
    sub->add_flag("--json", opts.json, "machine-readable output");
    sub->add_flag("--resolve", opts.resolve, "use the MPCP fan");
    sub->add_option("--divisor", opts.divisor,
                    "divisor as <ray>=<coeff>,... with <ray> an index or "
                    "[x y z w]");
    sub->add_option("--jobs", opts.jobs, "parallel workers")
        ->check(CLI::PositiveNumber);
    sub->callback([&selected, cmd = leaf.cmd] { selected = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  std::vector<FileResult> results(files.size());
  for (std::size_t start = 0; start < files.size(); start += opts.jobs) {
    const std::size_t stop =
        std::min<std::size_t>(files.size(), start + opts.jobs);
    std::vector<std::future<FileResult>> batch;
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(opts.jobs > 1 ? std::launch::async
                                               : std::launch::deferred,
                                 run_one, selected, files[i], opts));
    for (std::size_t i = start; i < stop; ++i)
      results[i] = batch[i - start].get();
  }

  int status = kOk;
  Json all = Json::array();
  for (const auto &res : results) {
    if (!res.report) {
      err << res.path << ": error: " << res.error << "\n";
      status = std::max(status, res.status);
      if (opts.json)
        all.push_back({{"file", res.path}, {"error", res.error}});
      continue;
    }
    if (opts.json) {
      Json j;
      j["file"] = res.path;
      for (auto &[k, v] : res.report->data.items()) j[k] = v;
      all.push_back(std::move(j));
    } else {
      if (files.size() > 1) out << "== " << res.path << "\n";
      out << res.report->text;
    }
  }
  if (opts.json) out << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
  return status;
}

} // namespace cytoric::cli
