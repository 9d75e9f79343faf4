/* Copyright 2026 The Hyperlab Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end. Every command emits records (ordered JSON objects);
// --format records prints one per line, --format human renders the same
// records as aligned key=value lines.

#ifndef HYPERLAB_TOOLS_CLI_HPP
#define HYPERLAB_TOOLS_CLI_HPP

#include "hyperlab/formulas/parser.hpp"
#include "hyperlab/formulas/transfer.hpp"
#include "hyperlab/hfset.hpp"
#include "hyperlab/hyperarith.hpp"
#include "hyperlab/hyperexpr.hpp"
#include "hyperlab/tarski/definability.hpp"
#include "hyperlab/toyfp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hyperlab::cli {

using Record = nlohmann::ordered_json;
using hyper::HyperParams;
using num::Rat;

struct RunConfig {
  std::string preset = "tiny";
  std::optional<std::string> omega, eps, smallness;
  std::uint64_t seed = 1;
  std::uint64_t samples = 10'000;
  std::uint64_t budget = 1'000'000;
  std::string out;
  std::string format = "human";
  unsigned threads = 1;
  bool strict_bounded = false;
  std::string bound = "1";
  std::string atom = "exact";
  std::string fp = "8,-30,30";
  std::string structure;
  std::string formula;
  std::uint64_t universe = 4096;
  std::size_t maxlen = 24;
  std::size_t corpus_size = 200;

  /// The preset, with any explicit ω, ε or S replacing its value; validated.
  HyperParams params() const {
    HyperParams base = HyperParams::preset(preset);
    BigInt w = omega ? parse_bigint(*omega) : base.omega();
    Rat e = eps ? num::parse_rat(*eps) : base.eps();
    BigInt s = smallness ? parse_bigint(*smallness) : base.smallness();
    return HyperParams::make(std::move(w), std::move(e), std::move(s));
  }
};

/// Status codes: 0 success, 1 Disagree found by transfer, 2 usage or input error.
class Emitter {
 public:
  Emitter(std::ostream& out, bool human) : out_(out), human_(human) {}

  void emit(const Record& r) {
    if (!human_) {
      out_ << r.dump() << '\n';
      return;
    }
    bool first = true;
    for (const auto& [key, value] : r.items()) {
      if (!first) out_ << "  ";
      first = false;
      if (key == "cmd") {
        out_ << value.get<std::string>();
        continue;
      }
      out_ << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool human_;
};

namespace detail {

inline Record params_record(const HyperParams& p) {
  Record r;
  r["omega"] = p.omega().str();
  r["eps"] = p.eps().str();
  r["S"] = p.smallness().str();
  return r;
}

inline std::string rat_str(const Rat& q) { return q.str(); }

// ack encode <set> | ack decode <code>
inline int cmd_ack(const std::string& direction, const std::string& value, Emitter& em) {
  Record r;
  r["cmd"] = "ack";
  r["direction"] = direction;
  if (direction == "encode") {
    hf::HfSet x = hf::parse_hfset(value);
    r["set"] = hf::to_string(x);
    r["code"] = hf::ack_encode(x).str();
  } else if (direction == "decode") {
    hf::AckCode code(parse_bigint(value));
    r["code"] = code.str();
    r["set"] = hf::to_string(hf::ack_decode(code));
  } else {
    throw std::invalid_argument("ack direction must be 'encode' or 'decode'");
  }
  em.emit(r);
  return 0;
}

inline int cmd_eval(const std::string& expr, const RunConfig& cfg, Emitter& em) {
  const HyperParams p = cfg.params();
  hyper::HyperElem v = hyper::evaluate_expression(expr, p, cfg.strict_bounded);
  Record r;
  r["cmd"] = "eval";
  r["params"] = params_record(p);
  r["expr"] = expr;
  r["k"] = v.k.str();
  r["value"] = hyper::value(v, p).str();
  const bool bounded = hyper::elem_bounded(v, p);
  r["bounded"] = bounded;
  if (bounded) r["project"] = hyper::project(v, p).str();
  em.emit(r);
  return 0;
}

inline int cmd_transfer(const std::string& corpus_path, const RunConfig& cfg, Emitter& em) {
  const HyperParams p = cfg.params();
  auto corpus = fol::load_corpus(corpus_path);
  fol::SamplingSpec spec;
  spec.samples = cfg.samples;
  spec.seed = cfg.seed;
  spec.bound = num::parse_rat(cfg.bound);
  spec.threads = cfg.threads;
  spec.atom = fol::parse_real_atom(cfg.atom);

  std::uint64_t total_disagree = 0, total_boundary = 0, total_agree = 0;
  for (const fol::CorpusEntry& e : corpus) {
    fol::TransferReport rep = fol::transfer_check(e.formula, p, spec);
    Record r;
    r["cmd"] = "transfer";
    r["name"] = e.name;
    r["formula"] = fol::to_string(e.formula);
    r["analog"] = fol::to_string(fol::translate_h(e.formula, p));
    r["free_vars"] = rep.free_vars;
    r["uses_constants"] = rep.uses_constants;
    r["assignments"] = rep.rows.size();
    r["agree"] = rep.agree;
    r["disagree"] = rep.disagree;
    r["boundary"] = rep.boundary;
    r["boundary_fraction"] = rep.boundary_fraction();
    r["verdict"] = rep.disagree ? "Disagree" : rep.agree ? "Agree" : "Boundary";
    for (const fol::TransferRow& row : rep.rows) {
      if (row.verdict != fol::TriBool::disagree) continue;
      Record ex;
      for (std::size_t i = 0; i < rep.free_vars.size(); ++i) ex[rep.free_vars[i]] = row.assignment[i].str();
      r["first_disagreement"] = ex;
      r["first_disagreement_hyper"] = row.hyper_truth;
      r["first_disagreement_real"] = std::string(fol::to_string(row.real_truth));
      break;
    }
    em.emit(r);
    total_disagree += rep.disagree;
    total_boundary += rep.boundary;
    total_agree += rep.agree;
  }
  Record s;
  s["cmd"] = "transfer_summary";
  s["params"] = params_record(p);
  s["atom"] = cfg.atom;
  s["bound"] = spec.bound.str();
  s["samples"] = cfg.samples;
  s["seed"] = cfg.seed;
  s["formulas"] = corpus.size();
  s["agree"] = total_agree;
  s["disagree"] = total_disagree;
  s["boundary"] = total_boundary;
  em.emit(s);
  return total_disagree ? 1 : 0;
}

inline int cmd_search(const std::string& law_name, const RunConfig& cfg, Emitter& em) {
  const HyperParams p = cfg.params();
  const hyper::Law law = hyper::parse_law(law_name);
  hyper::SearchResult res = hyper::search_counterexample(law, p, hyper::SearchOptions{cfg.budget, cfg.seed, cfg.threads});
  Record r;
  r["cmd"] = "search";
  r["law"] = std::string(hyper::law_name(law));
  r["params"] = params_record(p);
  r["seed"] = cfg.seed;
  r["budget"] = cfg.budget;
  r["probes"] = res.probes;
  if (res.witness) {
    r["status"] = "witness";
    r["a"] = res.witness->a.k.str();
    r["b"] = res.witness->b.k.str();
    r["c"] = res.witness->c.k.str();
    r["lhs"] = res.witness->lhs.k.str();
    r["rhs"] = res.witness->rhs.k.str();
  } else {
    r["status"] = res.exhaustive ? "holds_exhaustive" : "no_witness_budget_exhausted";
  }
  em.emit(r);
  return 0;
}

inline int cmd_net(const RunConfig& cfg, Emitter& em) {
  const HyperParams p = cfg.params();
  auto reps = hyper::select_representatives(p);
  Record r;
  r["cmd"] = "net";
  r["params"] = params_record(p);
  r["rho_gap"] = p.rho_gap().str();
  r["bounded_limit"] = p.bounded_limit().str();
  r["size"] = reps.size();
  em.emit(r);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Record e;
    e["cmd"] = "net_representative";
    e["index"] = i;
    e["k"] = reps[i].k.str();
    e["value"] = hyper::value(reps[i], p).str();
    em.emit(e);
  }
  return 0;
}

inline Record fp_num_record(const fp::FpNum& x, const fp::FpFormat& fmt) { return x.value(fmt).str(); }

inline int cmd_fp(const std::string& law_name, const RunConfig& cfg, Emitter& em) {
  const HyperParams p = cfg.params();
  const fp::FpFormat fmt = fp::parse_fp_format(cfg.fp);
  Record r;
  r["cmd"] = "fp";
  r["format"] = fmt.str();
  std::optional<fp::FpWitness> w;
  if (law_name == "absorption") {
    r["law"] = "add_assoc";
    r["source"] = "absorption";
    w = fp::absorption_triple(fmt);
  } else {
    const fp::FpLaw law = fp::parse_fp_law(law_name);
    r["law"] = std::string(fp::law_name(law));
    r["source"] = "search";
    fp::FpSearchOptions opts;
    opts.budget = cfg.budget;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.max_magnitude = Rat(p.smallness());
    fp::FpSearchResult res = fp::find_fp_witness(law, fmt, opts);
    r["seed"] = cfg.seed;
    r["probes"] = res.probes;
    w = res.witness;
  }
  if (!w) {
    r["status"] = "no_witness_budget_exhausted";
    em.emit(r);
    return 0;
  }
  r["status"] = "witness";
  r["a"] = fp_num_record(w->a, fmt);
  r["b"] = fp_num_record(w->b, fmt);
  r["c"] = fp_num_record(w->c, fmt);
  r["lhs"] = fp_num_record(w->lhs, fmt);
  r["rhs"] = fp_num_record(w->rhs, fmt);
  Record steps = Record::array();
  for (const fp::FpStep& s : w->steps) steps.push_back(Record{{"op", s.label}, {"exact", s.exact.str()}, {"rounded", s.rounded.str()}});
  r["steps"] = steps;
  if (w->law == fp::FpLaw::add_assoc) {
    fp::HyperContrast h = fp::hyper_contrast(*w, fmt, p);
    r["hyper"] = Record{{"a", h.a.k.str()}, {"b", h.b.k.str()}, {"c", h.c.k.str()}, {"lhs", h.lhs.k.str()},
                        {"rhs", h.rhs.k.str()}, {"associates", h.associates}};
  }
  em.emit(r);
  return 0;
}

inline int cmd_tarski(const RunConfig& cfg, bool closure, bool elementary, Emitter& em) {
  if (!closure && !elementary && cfg.formula.empty())
    throw std::invalid_argument("tarski: give --formula, --closure or --elementary");
  tarski::FiniteStructure x;
  if (!cfg.structure.empty()) x = tarski::load_structure(cfg.structure);

  if (!cfg.formula.empty()) {
    tarski::EpsPtr f = tarski::parse_eps(cfg.formula);
    tarski::FiniteStructure where = x;
    if (cfg.structure.empty()) where = tarski::BoundedUniverse(cfg.universe).structure();
    Record r;
    r["cmd"] = "tarski";
    r["mode"] = "truth";
    r["structure_size"] = where.size();
    r["formula"] = tarski::to_string(f);
    std::vector<std::string> codes;
    for (const BigInt& c : tarski::encode(f).codes) codes.push_back(c.str());
    r["codes"] = codes;
    r["truth"] = tarski::truth(where, f);
    em.emit(r);
  }
  if (closure || elementary) {
    tarski::BoundedUniverse u(cfg.universe);
    tarski::DefOptions opts;
    opts.maxlen = cfg.maxlen;
    opts.threads = cfg.threads;
    tarski::DefClosure c = tarski::def_closure(x, u, opts);
    Record r;
    r["cmd"] = "tarski";
    r["mode"] = "closure";
    r["universe"] = cfg.universe;
    r["maxlen"] = cfg.maxlen;
    r["parameters"] = x.size();
    r["size"] = c.closure.size();
    r["rounds"] = c.rounds;
    r["exact"] = c.exact;
    r["fixed_point"] = tarski::is_definably_closed(c.closure, x, u, opts);
    em.emit(r);
    if (closure) {
      for (const tarski::Definition& d : c.definitions) {
        Record e;
        e["cmd"] = "tarski_definition";
        e["code"] = hf::ack_encode(d.set).str();
        e["set"] = hf::to_string(d.set);
        e["formula"] = tarski::to_string(d.formula);
        e["length"] = tarski::code_length(d.formula);
        em.emit(e);
      }
    }
    if (elementary) {
      std::vector<hf::HfSet> params(c.closure.elements().begin(), c.closure.elements().end());
      auto corpus = tarski::random_corpus(params, cfg.corpus_size, cfg.seed);
      tarski::ElementaryReport rep = tarski::elementary_report(c.closure, u.structure(), corpus);
      Record e;
      e["cmd"] = "tarski";
      e["mode"] = "elementary";
      e["seed"] = cfg.seed;
      e["corpus"] = corpus.size();
      e["checked"] = rep.checked;
      e["skipped"] = rep.skipped;
      e["holds"] = rep.holds;
      if (rep.counterexample) e["counterexample"] = tarski::to_string(*rep.counterexample);
      em.emit(e);
    }
  }
  return 0;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Records go to `out` (or --out),
/// diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hyperlab: hereditarily finite sets, hyperfinite arithmetic and transfer experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read key=value options from a file; command-line flags override it");

  RunConfig cfg;
  std::string omega, eps, smallness;
  app.add_option("--preset", cfg.preset, "Parameter preset: tiny or fine")->capture_default_str();
  auto* o_omega = app.add_option("--omega", omega, "ω, overrides the preset");
  auto* o_eps = app.add_option("--eps", eps, "ε as a rational, overrides the preset");
  auto* o_small = app.add_option("--smallness", smallness, "Feasibility threshold S, overrides the preset");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Assignments per formula for transfer")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Probe budget for searches")->capture_default_str();
  app.add_option("--out", cfg.out, "Write records to this file instead of stdout");
  app.add_option("--format", cfg.format, "Output: human or records")
      ->check(CLI::IsMember({"human", "records"}))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores); results do not depend on it")
      ->capture_default_str();
  app.add_flag("--strict-bounded", cfg.strict_bounded, "eval: reject unbounded literals");
  app.add_option("--bound", cfg.bound, "transfer: free variables satisfy |x| <= bound")->capture_default_str();
  app.add_option("--atom", cfg.atom, "transfer: real-side atoms, exact or tolerance")
      ->check(CLI::IsMember({"exact", "tolerance"}))
      ->capture_default_str();
  app.add_option("--fp", cfg.fp, "fp: format p,emin,emax")->capture_default_str();

  std::string ack_direction, ack_value, expr, corpus, law, fp_law;
  bool closure = false, elementary = false;

  auto* ack = app.add_subcommand("ack", "Ackermann encode an HfSet literal or decode a code");
  ack->add_option("direction", ack_direction, "encode or decode")->required();
  ack->add_option("value", ack_value, "HfSet literal or natural number")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate an expression in R(ω, ε)");
  eval->add_option("expr", expr, "Expression over rationals with + - * and parentheses")->required();

  auto* transfer = app.add_subcommand("transfer", "Compare corpus formulas with their hyperfinite analogs");
  transfer->add_option("corpus", corpus, "Corpus file of 'name : formula' lines")->required();

  auto* search = app.add_subcommand("search", "Search for an exact law violation in R(ω, ε)");
  search->add_option("law", law, "mul-assoc, distrib or add-assoc")->required();

  auto* tarski_cmd = app.add_subcommand("tarski", "Truth in finite structures and definable closure");
  tarski_cmd->add_option("--structure", cfg.structure, "Structure file, one HfSet literal per line");
  tarski_cmd->add_option("--formula", cfg.formula, "Closed ∈-formula to evaluate");
  tarski_cmd->add_option("--universe", cfg.universe, "Code bound B of the universe")->capture_default_str();
  tarski_cmd->add_option("--maxlen", cfg.maxlen, "Code length cap for definitions")->capture_default_str();
  tarski_cmd->add_option("--corpus-size", cfg.corpus_size, "Random formulas for --elementary")->capture_default_str();
  tarski_cmd->add_flag("--closure", closure, "Compute the definable closure of the structure (or of ∅)");
  tarski_cmd->add_flag("--elementary", elementary, "Check the closure against the universe on a random corpus");

  auto* net = app.add_subcommand("net", "Print the representative net of R_b under ρ");

  auto* fp_cmd = app.add_subcommand("fp", "Toy floating-point law violations and their R(ω, ε) contrast");
  fp_cmd->add_option("law", fp_law, "add-assoc, distrib or absorption")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (o_omega->count()) cfg.omega = omega;
  if (o_eps->count()) cfg.eps = eps;
  if (o_small->count()) cfg.smallness = smallness;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      err << "error: cannot open output file '" << cfg.out << "'\n";
      return 2;
    }
    sink = &file;
  }
  Emitter em(*sink, cfg.format == "human");

  try {
    // Parameters are validated before any command runs.
    (void)cfg.params();
    if (*ack) return detail::cmd_ack(ack_direction, ack_value, em);
    if (*eval) return detail::cmd_eval(expr, cfg, em);
    if (*transfer) return detail::cmd_transfer(corpus, cfg, em);
    if (*search) return detail::cmd_search(law, cfg, em);
    if (*tarski_cmd) return detail::cmd_tarski(cfg, closure, elementary, em);
    if (*net) return detail::cmd_net(cfg, em);
    if (*fp_cmd) return detail::cmd_fp(fp_law, cfg, em);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace hyperlab::cli

#endif  // HYPERLAB_TOOLS_CLI_HPP
