#include <CLI11.hpp>
#include <json.hpp>

#include "tmt/alcove.hpp"
#include "tmt/amm.hpp"
#include "tmt/betti.hpp"
#include "tmt/cerf.hpp"
#include "tmt/corr.hpp"
#include "tmt/error.hpp"
#include "tmt/holovar.hpp"
#include "tmt/tangle.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::json;
using namespace tmt;

namespace {

struct Options {
  std::string input;
  std::string other;
  int rank = 0;
  std::vector<std::string> mu;
  int n = 5;
  std::uint64_t seed = 0;
  int restarts = 1;
  double tol = 1e-10;
  int truncate = -1;
  bool as_json = false;
  std::string out;
  std::string formula = "kirwan";
  std::vector<int> mult;
  int strand = 1;
  int strand2 = 2;
  int times = 1;
  int depth = 6;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(errc::io_error, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

tangle::TangleWord load_word(const Options& o) {
  if (o.input.empty()) fail(errc::io_error, "--input is required for this command");
  return tangle::parse(slurp(o.input));
}

holovar::ModuliProblem problem_of(const tangle::TangleWord& w) {
  holovar::ModuliProblem pr;
  pr.rank = w.group_rank;
  pr.genus = w.genus;
  pr.labels = w.incoming;
  return pr;
}

holovar::SolverConfig config_of(const Options& o) {
  holovar::SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.tol_residual = o.tol;
  return cfg;
}

void emit(const Options& o, const std::string& text) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) fail(errc::io_error, "cannot write " + o.out);
    f << text;
    if (text.empty() || text.back() != '\n') f << "\n";
  } else {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  }
}

int cmd_alcove(const Options& o) {
  int r = o.rank > 0 ? o.rank : 2;
  std::vector<alcove::Label> labels;
  for (const auto& s : o.mu) labels.push_back(alcove::parse_label(s, r));
  auto adm = alcove::is_admissible(labels, r);
  if (o.as_json) {
    json j;
    j["rank"] = r;
    j["labels"] = json::array();
    for (const auto& l : labels) {
      j["labels"].push_back({{"label", l.str()}, {"monotone", alcove::is_monotone(l)}});
    }
    j["admissible"] = adm.ok;
    if (adm.d) j["d"] = *adm.d;
    if (!adm.ok) j["reason"] = adm.reason;
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  for (const auto& l : labels)
    ss << l.str() << ": monotone=" << (alcove::is_monotone(l) ? "yes" : "no") << "\n";
  ss << "admissible: " << (adm.ok ? "yes" : "no");
  if (adm.d) ss << " (d=" << *adm.d << ")";
  if (!adm.ok) ss << " (" << adm.reason << ")";
  emit(o, ss.str());
  return 0;
}

int cmd_parse(const Options& o) {
  auto w = load_word(o);
  auto [in, outp] = tangle::boundary_profile(w);
  std::ostringstream in_s, out_s;
  for (const auto& m : in) in_s << " " << tangle::marking_str(m);
  for (const auto& m : outp) out_s << " " << tangle::marking_str(m);
  if (o.as_json) {
    json j;
    j["word"] = tangle::serialize(w);
    j["incoming"] = in_s.str();
    j["outgoing"] = out_s.str();
    emit(o, j.dump(2));
    return 0;
  }
  emit(o, tangle::serialize(w) + "incoming:" + in_s.str() + "\noutgoing:" + out_s.str());
  return 0;
}

int cmd_cerf_normalize(const Options& o) {
  auto w = cerf::normalize(load_word(o));
  if (o.as_json) {
    json j;
    j["word"] = tangle::serialize(w);
    emit(o, j.dump(2));
    return 0;
  }
  emit(o, tangle::serialize(w));
  return 0;
}

int cmd_cerf_equiv(const Options& o) {
  auto w1 = load_word(o);
  if (o.other.empty()) fail(errc::io_error, "--other is required for cerf-equiv");
  auto w2 = tangle::parse(slurp(o.other));
  auto proof = cerf::equivalent(w1, w2, o.depth);
  if (o.as_json) {
    json j;
    j["equivalent"] = proof.yes;
    j["trace"] = json::array();
    for (const auto& [m, step] : proof.trace)
      j["trace"].push_back({{"move", cerf::move_str(m)}, {"word", tangle::serialize(step)}});
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  ss << (proof.yes ? "equivalent" : "unknown") << "\n";
  for (const auto& [m, step] : proof.trace) ss << cerf::move_str(m) << "\n";
  emit(o, ss.str());
  return 0;
}

int cmd_solve(const Options& o) {
  auto w = load_word(o);
  auto pr = problem_of(w);
  auto res = holovar::solve(pr, config_of(o));
  if (o.as_json) {
    emit(o, holovar::to_json(res, pr, o.seed));
    return 0;
  }
  std::ostringstream ss;
  ss << "residual: " << res.residual << "\nrestart: " << res.restart;
  emit(o, ss.str());
  return 0;
}

int cmd_dim(const Options& o) {
  auto w = load_word(o);
  auto pr = problem_of(w);
  auto res = holovar::solve(pr, config_of(o));
  int td = holovar::tangent_dimension(res.point, pr);
  int cd = holovar::commutant_dimension(res.point, pr);
  if (o.as_json) {
    json j;
    j["residual"] = res.residual;
    j["tangent_dimension"] = td;
    j["commutant_dimension"] = cd;
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  ss << "residual: " << res.residual << "\ntangent_dimension: " << td
     << "\ncommutant_dimension: " << cd;
  emit(o, ss.str());
  return 0;
}

int cmd_classes(const Options& o) {
  auto w = load_word(o);
  auto pr = problem_of(w);
  int c = holovar::count_gauge_classes(pr, config_of(o));
  if (o.as_json) {
    json j;
    j["gauge_classes"] = c;
    emit(o, j.dump(2));
    return 0;
  }
  emit(o, "gauge_classes: " + std::to_string(c));
  return 0;
}

int cmd_braid(const Options& o) {
  auto w = load_word(o);
  auto pr = problem_of(w);
  auto res = holovar::solve(pr, config_of(o));
  auto p = res.point;
  for (int t = 0; t < o.times; ++t) p = holovar::braid_act(p, pr, o.strand);
  double before = res.residual;
  double after = holovar::relator_residual(p, pr);
  if (o.as_json) {
    json j;
    j["strand"] = o.strand;
    j["times"] = o.times;
    j["residual_before"] = before;
    j["residual_after"] = after;
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  ss << "residual before: " << before << "\nresidual after " << o.times << " twist(s) at "
     << o.strand << ": " << after;
  emit(o, ss.str());
  return 0;
}

int cmd_goldman(const Options& o) {
  auto w = load_word(o);
  auto pr = problem_of(w);
  auto res = holovar::solve(pr, config_of(o));
  double v = holovar::goldman(res.point, pr, o.strand, o.strand2);
  if (o.as_json) {
    json j;
    j["j"] = o.strand;
    j["k"] = o.strand2;
    j["goldman"] = v;
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  ss << "goldman(" << o.strand << "," << o.strand2 << "): " << v;
  emit(o, ss.str());
  return 0;
}

int cmd_chamber(const Options& o) {
  if (o.mu.empty()) fail(errc::io_error, "--mu is required for chamber");
  Rational mu = parse_rational(o.mu.front());
  const char* name = betti::chamber_name(betti::chamber_report(mu));
  if (o.as_json) {
    json j;
    j["mu"] = to_string(mu);
    j["chamber"] = name;
    emit(o, j.dump(2));
    return 0;
  }
  emit(o, name);
  return 0;
}

int cmd_betti(const Options& o) {
  betti::PolySeries p(0);
  if (o.formula == "kirwan") {
    int tr = o.truncate >= 0 ? o.truncate : betti::default_truncation(o.n);
    p = betti::kirwan_poincare(o.n, tr);
  } else if (o.formula == "ab") {
    int tr = o.truncate >= 0 ? o.truncate : betti::default_truncation(o.n);
    p = betti::ab_poincare(o.n, tr);
  } else if (o.formula == "flag") {
    if (o.mult.empty()) fail(errc::io_error, "--mult is required for --formula flag");
    p = betti::flag_poincare(o.mult);
  } else if (o.formula == "unknot") {
    if (o.rank < 2) fail(errc::invalid_rank, "--rank is required for --formula unknot");
    p = betti::unknot_hf(o.rank);
  } else {
    fail(errc::unsupported, "unknown formula " + o.formula);
  }
  if (o.as_json) {
    json j;
    j["formula"] = o.formula;
    j["poincare"] = p.pretty();
    emit(o, j.dump(2));
    return 0;
  }
  emit(o, p.pretty());
  return 0;
}

int cmd_amm_check(const Options& o) {
  auto w = load_word(o);
  auto pr = problem_of(w);
  auto res = holovar::solve(pr, config_of(o));
  auto rep = amm::reduced_kernel_report(pr, res.point);
  if (o.as_json) {
    json j;
    j["residual"] = res.residual;
    j["level_tangent_dim"] = rep.level_tangent_dim;
    j["gauge_dim"] = rep.gauge_dim;
    j["form_rank"] = rep.form_rank;
    j["gauge_pairing"] = rep.gauge_pairing;
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  ss << "residual: " << res.residual << "\nlevel_tangent_dim: " << rep.level_tangent_dim
     << "\ngauge_dim: " << rep.gauge_dim << "\nform_rank: " << rep.form_rank
     << "\ngauge_pairing: " << rep.gauge_pairing;
  emit(o, ss.str());
  return 0;
}

int cmd_invariant(const Options& o) {
  auto w = load_word(o);
  int r = o.rank > 0 ? o.rank : w.group_rank;
  auto rep = corr::invariant_pipeline(w, r);
  json j;
  j["disk_flag"] = rep.disk_zero;
  j["sequence"] = json::array();
  for (const auto& f : rep.sequence.factors) j["sequence"].push_back(corr::to_string(f));
  if (rep.hf) {
    j["hf_poly"] = rep.hf->pretty();
  } else {
    j["hf_poly"] = nullptr;
  }
  if (o.as_json) {
    emit(o, j.dump(2));
    return 0;
  }
  std::ostringstream ss;
  ss << "disk_flag: " << (rep.disk_zero ? "zero" : "unknown") << "\n";
  ss << "sequence length: " << rep.sequence.factors.size() << "\n";
  if (rep.hf) {
    ss << "HF: " << rep.hf->pretty();
  } else {
    ss << "HF: not computed (sequence did not reduce to the unknot pair)";
  }
  emit(o, ss.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy toolkit for tangle moduli: alcove labels, Cerf moves, "
               "flat-bundle solving, moment-map 2-forms, correspondences."};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--input", o.input, "input .tng file");
    c->add_option("--rank", o.rank, "group rank r of SU(r)");
    c->add_option("--mu", o.mu, "label: p/q, wK/2, or explicit vector");
    c->add_option("--n", o.n, "number of markings");
    c->add_option("--seed", o.seed, "RNG seed (seed 0 is a real seed)");
    c->add_option("--restarts", o.restarts, "solver restarts");
    c->add_option("--tol", o.tol, "residual tolerance");
    c->add_option("--truncate", o.truncate, "series truncation degree");
    c->add_flag("--json", o.as_json, "JSON output");
    c->add_option("--out", o.out, "write the report to this path");
    return c;
  };

  add_common(app.add_subcommand("alcove", "monotone and admissibility queries"));
  add_common(app.add_subcommand("parse", "parse a word and print its boundary"));
  add_common(app.add_subcommand("cerf-normalize", "normal form of a word"));
  auto* equiv = add_common(app.add_subcommand("cerf-equiv", "search for a move path"));
  equiv->add_option("--other", o.other, "second .tng file");
  equiv->add_option("--depth", o.depth, "per-side search depth");
  add_common(app.add_subcommand("solve", "solve the holonomy equations"));
  add_common(app.add_subcommand("dim", "tangent and commutant dimensions"));
  add_common(app.add_subcommand("classes", "count gauge classes of solutions"));
  auto* braid = add_common(app.add_subcommand("braid", "half-twist action on a solution"));
  braid->add_option("--i", o.strand, "strand position");
  braid->add_option("--times", o.times, "number of twists");
  auto* gold = add_common(app.add_subcommand("goldman", "Goldman eigenangle function"));
  gold->add_option("--j", o.strand, "first marking");
  gold->add_option("--k", o.strand2, "second marking");
  add_common(app.add_subcommand("chamber", "chamber of M_5(mu)"));
  auto* bet = add_common(app.add_subcommand("betti", "Poincare polynomials"));
  bet->add_option("--formula", o.formula, "kirwan | ab | flag | unknot");
  bet->add_option("--mult", o.mult, "flag multiplicities");
  add_common(app.add_subcommand("amm-check", "2-form kernel report at a solution"));
  add_common(app.add_subcommand("invariant", "correspondence-sequence invariant"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "alcove") return cmd_alcove(o);
    if (cmd == "parse") return cmd_parse(o);
    if (cmd == "cerf-normalize") return cmd_cerf_normalize(o);
    if (cmd == "cerf-equiv") return cmd_cerf_equiv(o);
    if (cmd == "solve") return cmd_solve(o);
    if (cmd == "dim") return cmd_dim(o);
    if (cmd == "classes") return cmd_classes(o);
    if (cmd == "braid") return cmd_braid(o);
    if (cmd == "goldman") return cmd_goldman(o);
    if (cmd == "chamber") return cmd_chamber(o);
    if (cmd == "betti") return cmd_betti(o);
    if (cmd == "amm-check") return cmd_amm_check(o);
    if (cmd == "invariant") return cmd_invariant(o);
    std::cerr << "unknown command\n";
    return 2;
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
