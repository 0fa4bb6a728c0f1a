#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lfg/closure.hpp"
#include "lfg/corpus.hpp"
#include "lfg/mtable_io.hpp"
#include "lfg/nf3.hpp"
#include "lfg/qf_types.hpp"
#include "lfg/schemes.hpp"
#include "lfg/suite.hpp"

using namespace lfg;

namespace {

std::vector<Elem> parse_indices(const std::string& csv) {
  std::vector<Elem> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(Elem(std::stoul(tok)));
  }
  return out;
}

Embedding embedding_from(const FiniteGroup& k, const FiniteGroup& g, const std::string& csv) {
  if (csv.empty()) {
    auto embs = enumerate_embeddings(k, g);
    if (embs.empty()) throw Error(ErrorKind::PreconditionFailed, "no embedding exists");
    return embs.front();
  }
  return make_embedding(k, g, parse_indices(csv));
}

std::string serialize_amalgam(const StableAmalgam& sa) {
  std::ostringstream out;
  out << format_group(sa.g3);
  out << "j1:";
  for (Elem v : sa.j1_map) out << " " << int(v);
  out << "\nj2:";
  for (Elem v : sa.j2_map) out << " " << int(v);
  out << "\n";
  return out.str();
}

std::string serialize_type(const QfType& t) {
  std::ostringstream out;
  auto table = t.canon.full_table();
  out << "mtable " << t.canon.order << "\n";
  for (int i = 0; i < t.canon.order; ++i) {
    for (int j = 0; j < t.canon.order; ++j) {
      if (j) out << ' ';
      out << int(table[std::size_t(i) * t.canon.order + j]);
    }
    out << '\n';
  }
  out << "base-positions:";
  for (Elem p : t.canon.base_positions) out << " " << int(p);
  out << "\ntuple-positions:";
  for (Elem p : t.canon.tuple_positions) out << " " << int(p);
  out << "\n";
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    f << text;
  }
}

struct GlobalFlags {
  std::size_t budget_triples = 20000;
  std::size_t budget_product = 2000000;
  std::size_t max_order = 8192;
  int per_side_cap = 0;
  int m_max = 2;
  int term_budget = 6;
  std::uint64_t seed = 0;
  std::string out;

  AmalgamBudget budget() const {
    AmalgamBudget b;
    b.max_triples_per_try = budget_triples;
    b.max_product_points = budget_product;
    b.max_order = max_order;
    b.per_side_try_cap = per_side_cap;
    return b;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite and locally finite group amalgamation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global budget flags may follow the subcommand
  GlobalFlags flags;
  app.add_option("--budget-triples", flags.budget_triples, "per-try triple-space cap");
  app.add_option("--budget-product", flags.budget_product, "total product-point cap");
  app.add_option("--max-order", flags.max_order, "closure order cap before re-tabling");
  app.add_option("--per-side-cap", flags.per_side_cap, "transversal choices kept per side (0 = all)");
  app.add_option("--m-max", flags.m_max, "tuple-length bound for splitting scans");
  app.add_option("--term-budget", flags.term_budget, "term-length bound for probes");
  app.add_option("--seed", flags.seed, "seed for sampling modes");
  app.add_option("--out", flags.out, "output file or directory");

  auto* group_cmd = app.add_subcommand("group", "validate and inspect group tables");
  std::string group_file;
  auto* group_check = group_cmd->add_subcommand("check", "validate a multiplication table file");
  group_check->add_option("file", group_file)->required();
  auto* group_show = group_cmd->add_subcommand("show", "print a validated table");
  group_show->add_option("file", group_file)->required();

  auto* type_cmd = app.add_subcommand("type", "quantifier-free types");
  std::string type_group, type_tuple, type_tuple2, type_base;
  auto* type_compute = type_cmd->add_subcommand("compute", "canonical form of a tuple's type");
  type_compute->add_option("--group", type_group)->required();
  type_compute->add_option("--tuple", type_tuple)->required();
  type_compute->add_option("--base", type_base);
  auto* type_equal = type_cmd->add_subcommand("equal", "compare two tuple types");
  type_equal->add_option("--group", type_group)->required();
  type_equal->add_option("--tuple", type_tuple)->required();
  type_equal->add_option("--tuple2", type_tuple2)->required();
  type_equal->add_option("--base", type_base);

  auto* split_cmd = app.add_subcommand("split", "non-splitting scans");
  std::string split_group, split_tuple, split_g, split_k;
  auto* split_check = split_cmd->add_subcommand("check", "search for a splitting witness");
  split_check->add_option("--group", split_group)->required();
  split_check->add_option("--tuple", split_tuple)->required();
  split_check->add_option("--g-members", split_g)->required();
  split_check->add_option("--k-members", split_k)->required();

  auto* amalgam_cmd = app.add_subcommand("amalgam", "stable amalgamation");
  std::string am_g0, am_g1, am_g2, am_emb1, am_emb2;
  auto add_amalgam_inputs = [&](CLI::App* c) {
    c->add_option("--g0", am_g0)->required();
    c->add_option("--g1", am_g1)->required();
    c->add_option("--g2", am_g2)->required();
    c->add_option("--emb1", am_emb1);
    c->add_option("--emb2", am_emb2);
  };
  auto* amalgam_run = amalgam_cmd->add_subcommand("run", "build the amalgam and print it");
  add_amalgam_inputs(amalgam_run);
  auto* amalgam_laws = amalgam_cmd->add_subcommand("laws", "verify the amalgamation laws");
  add_amalgam_inputs(amalgam_laws);

  auto* tries_cmd = app.add_subcommand("tries", "transversal enumeration");
  std::string tr_g0, tr_g1, tr_g2, tr_emb1, tr_emb2;
  std::size_t tr_limit = 64, tr_count = 8;
  auto add_tries_inputs = [&](CLI::App* c) {
    c->add_option("--g0", tr_g0)->required();
    c->add_option("--g1", tr_g1)->required();
    c->add_option("--g2", tr_g2)->required();
    c->add_option("--emb1", tr_emb1);
    c->add_option("--emb2", tr_emb2);
  };
  auto* tries_list = tries_cmd->add_subcommand("list", "list transversal pairs");
  add_tries_inputs(tries_list);
  tries_list->add_option("--limit", tr_limit);
  auto* tries_sample = tries_cmd->add_subcommand("sample", "sample transversal pairs");
  add_tries_inputs(tries_sample);
  tries_sample->add_option("--count", tr_count);

  auto* nf3_cmd = app.add_subcommand("nf3", "commutation-preserving amalgamation");
  std::string n_g0, n_g1, n_g2, n_emb1, n_emb2, n_l, n_h0 = "0";
  auto* nf3_run = nf3_cmd->add_subcommand("run", "build the commuting amalgam");
  nf3_run->add_option("--g0", n_g0)->required();
  nf3_run->add_option("--g1", n_g1)->required();
  nf3_run->add_option("--g2", n_g2)->required();
  nf3_run->add_option("--emb1", n_emb1);
  nf3_run->add_option("--emb2", n_emb2);
  nf3_run->add_option("--l", n_l)->required();
  nf3_run->add_option("--h0", n_h0);

  auto* scheme_cmd = app.add_subcommand("scheme", "type-scheme constructors");
  std::string sch_id, sch_group, sch_listing, sch_a1, sch_a2, sch_kgroup;
  int sch_a = -1, sch_k = 2;
  auto* scheme_apply = scheme_cmd->add_subcommand("apply", "apply a scheme constructor");
  scheme_apply->add_option("id", sch_id, "cg | gl | ab | gm")->required();
  scheme_apply->add_option("--group", sch_group)->required();
  scheme_apply->add_option("--a", sch_a, "order-2 element (gl)");
  scheme_apply->add_option("--k", sch_k, "cyclic order (ab)");
  scheme_apply->add_option("--k-group", sch_kgroup, "marked group file (ab)");
  scheme_apply->add_option("--listing", sch_listing, "full listing of the marked group (ab)");
  scheme_apply->add_option("--a1", sch_a1, "first half tuple (gm)");
  scheme_apply->add_option("--a2", sch_a2, "second half tuple (gm)");

  auto* closure_cmd = app.add_subcommand("closure", "existential-closure approximation");
  int cl_steps = 4, cl_bound = 4, cl_param_stage = 3;
  std::string cl_strategy = "hall", cl_chain;
  auto* closure_run = closure_cmd->add_subcommand("run", "build a closure chain");
  closure_run->add_option("--steps", cl_steps);
  closure_run->add_option("--bound", cl_bound);
  closure_run->add_option("--strategy", cl_strategy, "hall | scheme");
  auto* closure_certify = closure_cmd->add_subcommand("certify", "certify a saved chain");
  closure_certify->add_option("--bound", cl_bound);
  closure_certify->add_option("--chain", cl_chain)->required();
  auto* closure_probe = closure_cmd->add_subcommand("probe", "product-stabilization probe");
  closure_probe->add_option("--steps", cl_steps);
  closure_probe->add_option("--param-stage", cl_param_stage);

  auto* suite_cmd = app.add_subcommand("suite", "law suites");
  std::string suite_name, suite_corpus;
  bool suite_timings = false;
  auto* suite_run_cmd = suite_cmd->add_subcommand("run", "run a named law suite");
  suite_run_cmd->add_option("name", suite_name)->required();
  suite_run_cmd->add_option("--corpus", suite_corpus, "directory of mtable files");
  suite_run_cmd->add_flag("--timings", suite_timings, "include wall times in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*group_check) {
      FiniteGroup g = parse_group_file(group_file);
      std::cout << "ok: group of order " << g.order() << "\n";
      return 0;
    }
    if (*group_show) {
      FiniteGroup g = parse_group_file(group_file);
      emit(format_group(g), flags.out);
      return 0;
    }
    if (*type_compute || *type_equal) {
      FiniteGroup g = parse_group_file(type_group);
      Subgroup base = type_base.empty() ? Subgroup{&g, {kIdentity}}
                                        : make_subgroup(g, parse_indices(type_base));
      QfType p = tp_bs(g, parse_indices(type_tuple), base);
      if (*type_compute) {
        emit(serialize_type(p), flags.out);
        return 0;
      }
      QfType q = tp_bs(g, parse_indices(type_tuple2), base);
      bool eq = types_equal(p, q);
      std::cout << (eq ? "equal" : "different") << "\n";
      return eq ? 0 : 1;
    }
    if (*split_check) {
      FiniteGroup h = parse_group_file(split_group);
      Subgroup g = make_subgroup(h, parse_indices(split_g));
      Subgroup k = make_subgroup(h, parse_indices(split_k));
      auto witness = does_not_split(h, parse_indices(split_tuple), g, k, flags.m_max);
      if (!witness) {
        std::cout << "does-not-split at m-max " << flags.m_max << "\n";
        return 0;
      }
      std::cout << "splits: b1=";
      for (Elem v : witness->b1) std::cout << int(v) << " ";
      std::cout << "b2=";
      for (Elem v : witness->b2) std::cout << int(v) << " ";
      std::cout << "\n";
      return 1;
    }
    if (*amalgam_run || *amalgam_laws) {
      FiniteGroup g0 = parse_group_file(am_g0);
      FiniteGroup g1 = parse_group_file(am_g1);
      FiniteGroup g2 = parse_group_file(am_g2);
      Embedding e1 = embedding_from(g0, g1, am_emb1);
      Embedding e2 = embedding_from(g0, g2, am_emb2);
      if (*amalgam_run) {
        StableAmalgam sa = stable_amalgam(g0, g1, g2, e1, e2, flags.budget());
        emit(serialize_amalgam(sa), flags.out);
        return 0;
      }
      NfLawReport report;
      try {
        StableAmalgam sa = stable_amalgam(g0, g1, g2, e1, e2, flags.budget());
        report = verify_nf_laws(sa, flags.budget());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        std::cout << "# closure over budget; action-level laws only\n";
        report = verify_nf_laws_action(g0, g1, g2, e1, e2, flags.budget());
      }
      for (const auto& e : report.entries)
        std::cout << e.law << ": " << (e.pass ? "pass" : "FAIL") << (e.detail.empty() ? "" : " ")
                  << e.detail << "\n";
      return report.all_pass() ? 0 : 1;
    }
    if (*tries_list || *tries_sample) {
      FiniteGroup g0 = parse_group_file(tr_g0);
      FiniteGroup g1 = parse_group_file(tr_g1);
      FiniteGroup g2 = parse_group_file(tr_g2);
      Embedding e1 = embedding_from(g0, g1, tr_emb1);
      Embedding e2 = embedding_from(g0, g2, tr_emb2);
      auto print_side = [&](const std::vector<std::vector<Elem>>& side, const char* tag) {
        for (const auto& t : side) {
          std::cout << tag << ":";
          for (Elem v : t) std::cout << " " << int(v);
          std::cout << "\n";
        }
      };
      if (*tries_list) {
        std::size_t c1 = count_transversals(g1, e1), c2 = count_transversals(g2, e2);
        std::cout << "side1 " << c1 << " side2 " << c2 << " tries " << c1 * c2 << "\n";
        print_side(list_transversals(g1, e1, tr_limit), "I1");
        print_side(list_transversals(g2, e2, tr_limit), "I2");
      } else {
        print_side(sample_transversals(g1, e1, flags.seed, tr_count), "I1");
        print_side(sample_transversals(g2, e2, flags.seed + 1, tr_count), "I2");
      }
      return 0;
    }
    if (*nf3_run) {
      FiniteGroup g0 = parse_group_file(n_g0);
      FiniteGroup g1 = parse_group_file(n_g1);
      FiniteGroup g2 = parse_group_file(n_g2);
      Embedding e1 = embedding_from(g0, g1, n_emb1);
      Embedding e2 = embedding_from(g0, g2, n_emb2);
      auto req = make_nf3_request(g0, g1, g2, e1, e2, parse_indices(n_l), parse_indices(n_h0));
      auto clause = check_commuting_try(req, build_commuting_transversals(req));
      for (const auto& e : clause.entries)
        std::cout << e.law << ": " << (e.pass ? "pass" : "FAIL") << "\n";
      auto nf3 = nf3_amalgam(req, flags.budget());
      std::cout << "commutation: " << (nf3.commutation_certified ? "certified" : "FAILED") << "\n";
      emit(serialize_amalgam(nf3.amalgam), flags.out);
      return nf3.commutation_certified && clause.all_pass() ? 0 : 1;
    }
    if (*scheme_apply) {
      FiniteGroup g = parse_group_file(sch_group);
      SchemeApplication result;
      if (sch_id == "cg") {
        result = apply_cg(g, flags.budget());
      } else if (sch_id == "gl") {
        if (sch_a < 0) throw Error(ErrorKind::PreconditionFailed, "gl needs --a");
        result = apply_gl(g, Elem(sch_a), flags.budget());
      } else if (sch_id == "ab") {
        if (!sch_kgroup.empty()) {
          FiniteGroup k = parse_group_file(sch_kgroup);
          result = apply_ab(g, k, parse_indices(sch_listing));
        } else {
          result = apply_ab_k(g, sch_k);
        }
      } else if (sch_id == "gm") {
        result = apply_gm(g, parse_indices(sch_a1), parse_indices(sch_a2), flags.budget());
      } else {
        throw Error(ErrorKind::PreconditionFailed, "unknown scheme id " + sch_id);
      }
      std::ostringstream out;
      out << format_group(result.h);
      out << "j0:";
      for (Elem v : result.j0_map) out << " " << int(v);
      out << "\ntuple:";
      for (Elem v : result.tuple) out << " " << int(v);
      out << "\n";
      emit(out.str(), flags.out);
      return 0;
    }
    if (*closure_run) {
      ClosureBudgets budgets;
      budgets.amalgam = flags.budget();
      if (budgets.amalgam.per_side_try_cap == 0)
        budgets.amalgam.per_side_try_cap = cl_strategy == "scheme" ? 1 : 2;
      StageChain chain;
      chain.stages.push_back(FiniteGroup::trivial());
      for (int step = 0; step < cl_steps; ++step) {
        if (cl_strategy == "hall") {
          auto r = hall_step(chain.stages.back(), cl_bound, budgets);
          if (r.aborted) {
            std::cerr << "aborted: " << r.abort_reason << "\n";
            break;
          }
          chain.links.push_back(r.link);
          chain.provenance.push_back({"hall", {std::to_string(cl_bound)}});
          chain.stages.push_back(std::move(r.h));
        } else if (cl_strategy == "scheme") {
          std::vector<Scheme> catalog{Scheme::cg(), Scheme::ab(2), Scheme::ab(3)};
          try {
            auto r = one_step_closure(chain.stages.back(), catalog, 2, budgets);
            chain.links.push_back(r.link);
            chain.provenance.push_back({"closure", {"2", "cg", "ab2", "ab3"}});
            chain.stages.push_back(std::move(r.h));
          } catch (const Error& e) {
            std::cerr << "aborted: " << e.what() << "\n";
            break;
          }
        } else {
          throw Error(ErrorKind::PreconditionFailed, "unknown strategy " + cl_strategy);
        }
        std::cout << "stage " << chain.stages.size() - 1 << ": order "
                  << chain.stages.back().order() << "\n";
      }
      if (!flags.out.empty()) save_chain(chain, flags.out);
      return 0;
    }
    if (*closure_certify) {
      StageChain chain = load_chain(cl_chain);
      ClosureBudgets budgets;
      budgets.amalgam = flags.budget();
      auto rep = certify_ec(chain, cl_bound, budgets);
      std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << rep.checked << " embeddings checked, "
                << rep.failures.size() << " unrepaired\n";
      for (const auto& f : rep.failures)
        std::cout << "stage " << f.stage << " " << f.pair_name << " embedding unrepaired\n";
      return rep.pass ? 0 : 1;
    }
    if (*closure_probe) {
      StageChain chain = z2_power_chain(cl_steps + 1);
      ChainProbe probe = z2_diagonal_probe(chain);
      auto rep = chain_limit_probe(chain, probe, flags.term_budget, cl_param_stage);
      if (!rep.valid) {
        std::cout << "probe invalid: " << rep.invalid_clause << "\n";
        return 2;
      }
      std::cout << (rep.pass ? "PASS" : "FAIL") << ": " << rep.terms_checked << " terms"
                << (rep.detail.empty() ? "" : "; " + rep.detail) << "\n";
      return rep.pass ? 0 : 1;
    }
    if (*suite_run_cmd) {
      std::vector<CorpusEntry> corpus =
          suite_corpus.empty() ? builtin_corpus() : load_corpus_dir(suite_corpus);
      SuiteConfig cfg;
      cfg.budget = flags.budget();
      if (cfg.budget.max_order == 8192) cfg.budget.max_order = 4096;
      cfg.m_max = flags.m_max;
      cfg.term_budget = flags.term_budget;
      cfg.seed = flags.seed;
      cfg.timings = suite_timings;
      SuiteReport report = run_suite(suite_name, corpus, cfg);
      std::string text = serialize_report(report, suite_timings);
      if (!flags.out.empty()) {
        std::filesystem::create_directories(flags.out);
        std::ofstream f(std::filesystem::path(flags.out) / (suite_name + ".jsonl"));
        f << text;
      } else {
        std::cout << text;
      }
      std::cerr << report.suite << ": " << report.checks.size() << " checks, "
                << report.failure_count() << " failures, " << report.skipped_count()
                << " skipped\n";
      return report.all_pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "no subcommand executed\n";
  return 2;
}
