// Command-line front end: kolchin, chowform, reduce, coherence,
// homogeneity, intersect, bounds. Exit status 0 on success, 1 on a
// mathematical failure, 2 on an input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffchow/charset_criterion.hpp"
#include "diffchow/chowform.hpp"
#include "diffchow/io.hpp"
#include "diffchow/quasigeneric.hpp"
#include "diffchow/report.hpp"

namespace {

using namespace diffchow;

struct CommonOpts {
  std::string file;
  bool json = false;
  std::optional<std::string> ranking_flag;
  std::optional<unsigned> tmax_flag;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(0, 0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Ranking::Kind ranking_kind(const CommonOpts& opts, const SystemFile& sys) {
  if (!opts.ranking_flag) return sys.ranking;
  if (*opts.ranking_flag == "orderly") return Ranking::Kind::orderly;
  if (*opts.ranking_flag == "elim") return Ranking::Kind::elimination;
  throw parse_error(0, 0, "--ranking must be 'orderly' or 'elim'");
}

Ranking make_ranking(Ranking::Kind kind, const Ctx& ctx) {
  return kind == Ranking::Kind::orderly ? Ranking::orderly(ctx)
                                        : Ranking::elimination(ctx);
}

void emit(const CommonOpts& opts, const std::string& command,
          const std::string& input_text, const Json& results,
          const std::string& human) {
  if (opts.json) {
    std::cout << report_envelope(command, input_text, results).dump(2) << "\n";
  } else {
    std::cout << human;
  }
  if (const char* dir = std::getenv("DIFFCHOW_OUT_DIR")) {
    std::ofstream out(std::string(dir) + "/" + command + ".json",
                      std::ios::binary);
    out << report_envelope(command, input_text, results).dump(2) << "\n";
  }
}

std::string op_string(const DerOp& op) {
  if (op.is_identity()) return "1";
  std::string s;
  for (std::size_t i = 0; i < op.exps.size(); ++i) {
    if (op.exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "d" + std::to_string(i + 1);
    if (op.exps[i] > 1) s += "^" + std::to_string(op.exps[i]);
  }
  return s;
}

int cmd_kolchin(const CommonOpts& opts) {
  std::string text = read_file(opts.file);
  SystemFile sys = parse_system(text);
  Ranking::Kind kind = ranking_kind(opts, sys);
  if (kind != Ranking::Kind::orderly)
    throw parse_error(0, 0, "kolchin needs an orderly ranking");
  Ranking r = make_ranking(kind, sys.ctx);
  AutoreducedSet a = AutoreducedSet::make(
      sys.charset ? *sys.charset : std::vector<DiffPoly>{}, r);
  CharSetSummary summary = summarize_charset(a, r, sys.ctx);
  NumericalPolynomial w = kolchin_from_charset(summary);
  auto shape = chow_admissible_shape(w, sys.ctx->size());

  Json results;
  results["kolchin_polynomial"] = to_json(w);
  results["delta_dimension"] = w.coeffs[w.m].get_str();
  if (shape) {
    results["chow_admissible"] = true;
    results["d"] = shape->first;
    results["s"] = shape->second;
  } else {
    results["chow_admissible"] = false;
  }
  std::ostringstream human;
  human << "omega(t) = " << print_numerical(w) << "\n";
  human << "delta-dimension: " << w.coeffs[w.m].get_str() << "\n";
  if (shape)
    human << "chow-admissible shape: d=" << shape->first
          << " s=" << shape->second << "\n";
  else
    human << "chow-admissible shape: none\n";
  emit(opts, "kolchin", text, results, human.str());
  return 0;
}

int cmd_chowform(const CommonOpts& opts) {
  std::string text = read_file(opts.file);
  SystemFile sys = parse_system(text);
  Ranking::Kind kind = ranking_kind(opts, sys);
  if (kind != Ranking::Kind::orderly)
    throw parse_error(0, 0, "chowform needs an orderly ranking");
  if (!sys.charset)
    throw parse_error(0, 0, "chowform needs a charset block");
  Ranking r = make_ranking(kind, sys.ctx);
  AutoreducedSet a = AutoreducedSet::make(*sys.charset, r);
  ChowFormResult chow = compute_chow_form(a, r, sys.ctx);

  Json results = to_json(chow);
  std::ostringstream human;
  human << "chow form: " << print_poly(chow.form) << "\n"
        << "order s: " << chow.s << "\n"
        << "hyperplanes d+1: " << chow.d + 1 << "\n"
        << "delta-degree r: " << chow.r << "\n"
        << "leader: " << jet_name(*chow.ctx, chow.leader) << "\n"
        << "leader degree g: " << chow.g << "\n"
        << "chow coordinates: " << chow.chow_coords.size() << " entries\n";
  emit(opts, "chowform", text, results, human.str());
  return 0;
}

int cmd_reduce(const CommonOpts& opts) {
  std::string text = read_file(opts.file);
  SystemFile sys = parse_system(text);
  Ranking r = make_ranking(ranking_kind(opts, sys), sys.ctx);
  if (!sys.charset || !sys.polys)
    throw parse_error(0, 0, "reduce needs charset and polys blocks");
  AutoreducedSet a = AutoreducedSet::make(*sys.charset, r);
  Json items = Json::array();
  std::ostringstream human;
  for (const auto& f : *sys.polys) {
    RittResult res = ritt_reduce(f, a, r);
    bool ok = verify_ritt_certificate(f, a, r, res);
    Json item;
    item["input"] = print_poly(f);
    item["remainder"] = print_poly(res.remainder);
    Json exps = Json::array();
    for (auto [d, e] : res.cert.exponents)
      exps.push_back(Json{{"separant", d}, {"initial", e}});
    item["exponents"] = std::move(exps);
    Json comb = Json::array();
    for (const auto& t : res.cert.combination)
      comb.push_back(Json{{"element", t.element},
                          {"op", op_string(t.op)},
                          {"coeff", print_poly(t.coeff)}});
    item["combination"] = std::move(comb);
    item["certificate_verified"] = ok;
    items.push_back(std::move(item));
    human << "input: " << print_poly(f) << "\n"
          << "remainder: " << print_poly(res.remainder) << "\n"
          << "exponents (separant, initial):";
    for (auto [d, e] : res.cert.exponents)
      human << " (" << d << ", " << e << ")";
    human << "\ncertificate verified: " << (ok ? "yes" : "no") << "\n";
  }
  Json results;
  results["reductions"] = std::move(items);
  emit(opts, "reduce", text, results, human.str());
  return 0;
}

int cmd_coherence(const CommonOpts& opts) {
  std::string text = read_file(opts.file);
  SystemFile sys = parse_system(text);
  Ranking r = make_ranking(ranking_kind(opts, sys), sys.ctx);
  if (!sys.charset) throw parse_error(0, 0, "coherence needs a charset block");
  AutoreducedSet a = AutoreducedSet::make(*sys.charset, r);
  CharsetCriterionReport rep = charset_criterion(a, r);

  Json results;
  results["coherent"] = rep.coherence.coherent;
  if (!rep.coherence.coherent) {
    results["witness_pair"] =
        Json::array({rep.coherence.first, rep.coherence.second});
    results["witness_remainder"] = print_poly(rep.coherence.remainder);
  }
  const char* prim =
      rep.primality == CharsetCriterionReport::Primality::certified ? "certified"
      : rep.primality == CharsetCriterionReport::Primality::failed ? "failed"
                                                                   : "not certified";
  results["primality"] = prim;
  results["primality_detail"] = rep.primality_detail;
  results["reduced_probe"] = rep.reduced_probe_ok;
  results["order"] = rep.order;
  results["verified"] = rep.verified;

  std::ostringstream human;
  human << "coherent: " << (rep.coherence.coherent ? "yes" : "no") << "\n";
  if (!rep.coherence.coherent)
    human << "witness pair: (" << rep.coherence.first << ", "
          << rep.coherence.second
          << "), remainder: " << print_poly(rep.coherence.remainder) << "\n";
  human << "primality of asat: " << prim << " (" << rep.primality_detail
        << ")\n";
  human << "reduced-element probe: " << (rep.reduced_probe_ok ? "pass" : "fail")
        << "\n";
  if (rep.verified)
    human << "verified at order " << rep.order << "\n";
  else
    human << "not verified at order " << rep.order << "\n";
  emit(opts, "coherence", text, results, human.str());
  return rep.coherence.coherent &&
                 rep.primality != CharsetCriterionReport::Primality::failed &&
                 rep.reduced_probe_ok
             ? 0
             : 1;
}

int cmd_homogeneity(const CommonOpts& opts) {
  std::string text = read_file(opts.file);
  SystemFile sys = parse_system(text);
  if (!sys.polys || sys.polys->empty())
    throw parse_error(0, 0, "homogeneity needs a polys block");
  // group indeterminates into blocks by the uI_J naming pattern; when no
  // name matches, all indeterminates form block 0
  std::map<unsigned long, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < sys.ctx->size(); ++i) {
    const std::string& name = sys.ctx->names[i];
    if (name.size() >= 4 && name[0] == 'u') {
      auto us = name.find('_');
      if (us != std::string::npos && us > 1) {
        bool digits = true;
        for (std::size_t k = 1; k < us && digits; ++k)
          digits = std::isdigit(static_cast<unsigned char>(name[k]));
        for (std::size_t k = us + 1; k < name.size() && digits; ++k)
          digits = std::isdigit(static_cast<unsigned char>(name[k]));
        if (digits) {
          blocks[std::stoul(name.substr(1, us - 1))].push_back(i);
          continue;
        }
      }
    }
  }
  if (blocks.empty()) {
    std::vector<std::size_t> all(sys.ctx->size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    blocks[0] = std::move(all);
  }

  bool all_ok = true;
  Json items = Json::array();
  std::ostringstream human;
  for (const auto& f : *sys.polys) {
    Json item;
    item["poly"] = print_poly(f);
    Json per_block = Json::array();
    human << "poly: " << print_poly(f) << "\n";
    for (const auto& [bi, indets] : blocks) {
      DeltaDegreeResult dd = delta_degree(f, indets);
      Json b;
      b["block"] = bi;
      b["homogeneous"] = dd.homogeneous;
      if (dd.homogeneous) {
        b["r"] = dd.r;
        human << "  block u" << bi << ": delta-homogeneous of degree " << dd.r
              << "\n";
      } else {
        b["failed_theta"] = op_string(dd.failed_theta);
        human << "  block u" << bi << ": not delta-homogeneous (theta = "
              << op_string(dd.failed_theta) << ")\n";
        all_ok = false;
      }
      per_block.push_back(std::move(b));
    }
    item["blocks"] = std::move(per_block);
    items.push_back(std::move(item));
  }
  Json results;
  results["polys"] = std::move(items);
  results["all_homogeneous"] = all_ok;
  emit(opts, "homogeneity", text, results, human.str());
  return all_ok ? 0 : 1;
}

int cmd_intersect(const CommonOpts& opts) {
  std::string text = read_file(opts.file);
  SystemFile sys = parse_system(text);
  Ranking::Kind kind = ranking_kind(opts, sys);
  if (kind != Ranking::Kind::orderly)
    throw parse_error(0, 0, "intersect needs an orderly ranking");
  if (!sys.quasigeneric)
    throw parse_error(0, 0, "intersect needs a quasigeneric block");
  std::optional<unsigned> tmax = opts.tmax_flag ? opts.tmax_flag : sys.tmax;
  if (!tmax) throw parse_error(0, 0, "intersect needs tmax (file or --t-max)");
  Ranking r = make_ranking(kind, sys.ctx);
  AutoreducedSet a = AutoreducedSet::make(
      sys.charset ? *sys.charset : std::vector<DiffPoly>{}, r);
  SupportValidation val = validate_support(sys.ctx, *sys.quasigeneric);
  IntersectionExperiment ex =
      run_intersection_experiment(a, r, sys.ctx, *sys.quasigeneric, *tmax);

  Json results = to_json(ex);
  results["support_valid"] = val.valid;
  results["fully_generic"] = val.fully_generic;
  Json diags = Json::array();
  for (const auto& d : val.diagnostics) diags.push_back(d);
  results["support_diagnostics"] = std::move(diags);

  std::ostringstream human;
  human << "support valid: " << (val.valid ? "yes" : "no");
  if (val.fully_generic)
    human << " (fully generic, degree " << val.generic_degree << ")";
  human << "\n";
  for (const auto& d : val.diagnostics) human << "  note: " << d << "\n";
  human << "omega_V(t) = " << print_numerical(ex.omega_v)
        << ", delta-dim " << ex.variety_delta_dim << "\n";
  for (std::size_t i = 0; i < ex.predicted.size(); ++i) {
    human << "t=" << ex.t_min + i << ": predicted " << ex.predicted[i].get_str()
          << ", measured ";
    if (ex.measured[i])
      human << *ex.measured[i];
    else
      human << "empty";
    human << "\n";
  }
  if (ex.empty_at) human << "unit ideal at t=" << *ex.empty_at << "\n";
  human << "verdict: " << (ex.matches ? "matches" : "MISMATCH") << "\n";
  emit(opts, "intersect", text, results, human.str());
  return ex.matches ? 0 : 1;
}

struct BoundsOpts {
  unsigned n = 1, d = 0, s = 0, r = 1, m = 1;
  bool json = false;
};

int cmd_bounds(const BoundsOpts& b) {
  DegreeBounds db = degree_bounds(b.n, b.d, b.s, b.r, b.m);
  Json results;
  results["lower"] = db.lower.get_str();
  results["upper"] = db.upper.get_str();
  std::ostringstream human;
  human << "lower: " << db.lower.get_str() << "\n"
        << "upper: " << db.upper.get_str() << "\n";
  std::ostringstream digest;
  digest << "bounds " << b.n << " " << b.d << " " << b.s << " " << b.r << " "
         << b.m;
  CommonOpts opts;
  opts.json = b.json;
  emit(opts, "bounds", digest.str(), results, human.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial differential Chow forms and Kolchin polynomials"};
  app.require_subcommand(1);

  CommonOpts opts;
  BoundsOpts bounds;
  std::string command;

  auto add_common = [&](CLI::App* sub, bool with_tmax = false) {
    sub->add_option("file", opts.file, "system file")->required();
    sub->add_flag("--json", opts.json, "structured output");
    sub->add_option("--ranking", opts.ranking_flag, "orderly|elim");
    if (with_tmax)
      sub->add_option("--t-max", opts.tmax_flag, "truncation bound override");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  add_common(app.add_subcommand("kolchin",
                                "Kolchin polynomial and shape test"));
  add_common(app.add_subcommand("chowform", "compute the Chow form"));
  add_common(app.add_subcommand("reduce", "Ritt reduction with certificate"));
  add_common(app.add_subcommand("coherence",
                                "coherence and characteristic-set criterion"));
  add_common(app.add_subcommand("homogeneity", "delta-homogeneity per block"));
  add_common(app.add_subcommand("intersect",
                                "quasi-generic intersection experiment"),
             true);

  CLI::App* sb = app.add_subcommand("bounds", "degree bounds for B_s(V)");
  sb->add_option("-n", bounds.n, "ambient dimension")->required();
  sb->add_option("-d", bounds.d, "delta-dimension")->required();
  sb->add_option("-s", bounds.s, "order")->required();
  sb->add_option("-r", bounds.r, "delta-degree")->required();
  sb->add_option("-m", bounds.m, "derivation count")->required();
  sb->add_flag("--json", bounds.json, "structured output");
  sb->callback([&] { command = "bounds"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (command == "kolchin") return cmd_kolchin(opts);
    if (command == "chowform") return cmd_chowform(opts);
    if (command == "reduce") return cmd_reduce(opts);
    if (command == "coherence") return cmd_coherence(opts);
    if (command == "homogeneity") return cmd_homogeneity(opts);
    if (command == "intersect") return cmd_intersect(opts);
    if (command == "bounds") return cmd_bounds(bounds);
  } catch (const diffchow::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const diffchow::shape_error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  } catch (const diffchow::math_error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
