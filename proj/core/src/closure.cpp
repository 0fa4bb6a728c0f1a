#include "lfg/closure.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "lfg/corpus.hpp"
#include "lfg/mtable_io.hpp"

namespace lfg {

std::vector<Elem> StageChain::link_map(std::size_t i, std::size_t j) const {
  std::vector<Elem> m(stages[i].order());
  std::iota(m.begin(), m.end(), 0);
  for (std::size_t t = i; t < j; ++t)
    for (Elem& v : m) v = links[t][v];
  return m;
}

std::vector<DeficiencyPair> deficiency_pairs(int bound) {
  std::vector<DeficiencyPair> out;
  for (const auto& entry : builtin_corpus()) {
    if (entry.group.order() > bound || entry.group.order() < 2) continue;
    const FiniteGroup& l = entry.group;
    // subgroup representatives up to automorphisms of L
    auto auts = automorphisms(l);
    std::set<std::vector<Elem>> seen;
    for (const auto& k : subgroups_containing(l, {kIdentity})) {
      if (int(k.size()) == l.order()) continue;  // K = L extends trivially
      std::vector<Elem> canon;
      for (const auto& phi : auts) {
        std::vector<Elem> image;
        for (Elem x : k) image.push_back(phi.map[x]);
        std::sort(image.begin(), image.end());
        if (canon.empty() || image < canon) canon = std::move(image);
      }
      if (!seen.insert(canon).second) continue;
      DeficiencyPair p;
      p.l = l;
      p.k_members = k;
      p.name = "K" + std::to_string(k.size()) + "<=" + entry.name;
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

// all embeddings of the subgroup K of `pair.l` into g, deduplicated up to
// post-composition with inner automorphisms of g when `dedup` is set
std::vector<std::vector<Elem>> pair_embeddings(const DeficiencyPair& pair, const FiniteGroup& g,
                                               bool dedup) {
  auto kg = subgroup_as_group(pair.l, pair.k_members);
  auto embs = enumerate_embeddings(kg.group, g);
  if (!dedup) {
    std::vector<std::vector<Elem>> out;
    for (auto& e : embs) out.push_back(e.map);
    return out;
  }
  std::vector<std::vector<Elem>> out;
  std::set<std::vector<Elem>> reps;
  for (const auto& e : embs) {
    std::vector<Elem> best;
    for (int c = 0; c < g.order(); ++c) {
      std::vector<Elem> m(e.map.size());
      for (std::size_t x = 0; x < e.map.size(); ++x) m[x] = g.conj(e.map[x], Elem(c));
      if (best.empty() || m < best) best = std::move(m);
    }
    if (reps.insert(best).second) out.push_back(e.map);
  }
  return out;
}

// does stage contain an extension of f (on the subgroup K of pair.l) to pair.l?
bool extension_exists(const DeficiencyPair& pair, const FiniteGroup& stage,
                      const std::vector<Elem>& f_map) {
  std::vector<std::pair<Elem, Elem>> partial;
  auto kg = subgroup_as_group(pair.l, pair.k_members);
  for (int x = 0; x < kg.group.order(); ++x) partial.emplace_back(kg.to_parent[x], f_map[x]);
  return !find_embedding_extending(pair.l, stage, partial).empty();
}

}  // namespace

HallStepResult hall_step(const FiniteGroup& g, int bound, const ClosureBudgets& budgets) {
  HallStepResult out;
  out.h = g;
  out.link.resize(g.order());
  std::iota(out.link.begin(), out.link.end(), 0);

  for (const auto& pair : deficiency_pairs(bound)) {
    auto kg = subgroup_as_group(pair.l, pair.k_members);
    for (const auto& f : pair_embeddings(pair, g, /*dedup=*/true)) {
      HallLogEntry log{pair.name, f, false, out.h.order()};
      // map the embedding forward into the current stage
      std::vector<Elem> f_cur(f.size());
      for (std::size_t x = 0; x < f.size(); ++x) f_cur[x] = out.link[f[x]];
      if (!extension_exists(pair, out.h, f_cur)) {
        Embedding emb1 = make_embedding(kg.group, out.h, f_cur);
        Embedding emb2 = make_embedding(kg.group, pair.l, kg.to_parent);
        StableAmalgam sa;
        try {
          sa = stable_amalgam(kg.group, out.h, pair.l, emb1, emb2, budgets.amalgam);
        } catch (const Error& e) {
          out.aborted = true;
          out.abort_reason = std::string("amalgam for ") + pair.name + ": " + e.what();
          return out;
        }
        if (sa.g3.order() > int(budgets.max_stage_order)) {
          out.aborted = true;
          out.abort_reason = "stage order " + std::to_string(sa.g3.order()) + " over budget after " +
                             pair.name;
          return out;
        }
        // earlier adjunction records live in the superseded stage (= side 1)
        for (auto& prev : out.adjunctions) {
          for (Elem& v : prev.adjoined) v = sa.j1_map[v];
          for (Elem& v : prev.base) v = sa.j1_map[v];
        }
        for (Elem& v : out.link) v = sa.j1_map[v];
        out.h = std::move(sa.g3);
        log.repaired_by_amalgam = true;
        log.stage_order_after = out.h.order();
        ConstructionLogEntry adj;
        adj.op = pair.name;
        for (Elem x : greedy_generators(pair.l)) adj.adjoined.push_back(sa.j2_map[x]);
        for (Elem x : f_cur) adj.base.push_back(sa.j1_map[x]);
        std::sort(adj.base.begin(), adj.base.end());
        out.adjunctions.push_back(std::move(adj));
      }
      out.log.push_back(std::move(log));
    }
  }
  return out;
}

EcReport certify_ec(const StageChain& chain, int bound, const ClosureBudgets& budgets) {
  (void)budgets;
  EcReport report;
  if (chain.stages.empty()) throw Error(ErrorKind::PreconditionFailed, "empty chain");
  auto pairs = deficiency_pairs(bound);
  for (std::size_t i = 0; i < chain.stages.size(); ++i) {
    for (const auto& pair : pairs) {
      for (const auto& f : pair_embeddings(pair, chain.stages[i], /*dedup=*/false)) {
        ++report.checked;
        int repaired = -1;
        for (std::size_t j = i; j < chain.stages.size() && repaired < 0; ++j) {
          auto link = chain.link_map(i, j);
          std::vector<Elem> f_j(f.size());
          for (std::size_t x = 0; x < f.size(); ++x) f_j[x] = link[f[x]];
          if (extension_exists(pair, chain.stages[j], f_j)) repaired = int(j);
        }
        EcLine line{i, pair.name, f, repaired};
        if (repaired < 0) {
          // a deficiency of the final stage is excused: no later stage could
          // have repaired it yet
          if (i + 1 < chain.stages.size()) report.pass = false;
          report.failures.push_back(line);
        }
        report.lines.push_back(std::move(line));
      }
    }
  }
  return report;
}

OneStepClosureResult one_step_closure(const FiniteGroup& g, std::span<const Scheme> catalog,
                                      int param_bound, const ClosureBudgets& budgets) {
  OneStepClosureResult out;
  out.h = g;
  out.link.resize(g.order());
  std::iota(out.link.begin(), out.link.end(), 0);

  // def(G) restricted to the catalog, parameters in lexicographic order
  for (const auto& s : catalog) {
    if (s.k_s() > param_bound) continue;
    const int k = s.k_s();
    std::vector<std::size_t> pidx(k, 0);
    bool done = false;
    while (!done) {
      std::vector<Elem> params(k);
      for (int i = 0; i < k; ++i) params[i] = Elem(pidx[i]);
      if (params_realize(s, g, params)) out.entries.push_back({s, params});
      int i = k - 1;
      while (i >= 0) {
        if (++pidx[i] < std::size_t(g.order())) break;
        pidx[i] = 0;
        --i;
      }
      done = (i < 0) || k == 0;
      if (k == 0) done = true;
    }
  }

  // left-to-right symmetric joins over the original base
  for (const auto& entry : out.entries) {
    SchemeApplication ext = apply_scheme(entry.scheme, g, entry.params, budgets.amalgam);
    if (out.h.same_table(g) && out.tuples.empty()) {
      // first entry: the stage is the extension itself
      out.tuples.push_back(ext.tuple);
      out.link = ext.j0_map;
      out.h = std::move(ext.h);
      continue;
    }
    Embedding emb1 = make_embedding(g, out.h, out.link);
    Embedding emb2 = make_embedding(g, ext.h, ext.j0_map);
    StableAmalgam sa = stable_amalgam(g, out.h, ext.h, emb1, emb2, budgets.amalgam);
    if (sa.g3.order() > int(budgets.max_stage_order))
      throw Error(ErrorKind::BudgetExceeded,
                  "closure stage order " + std::to_string(sa.g3.order()) + " over budget");
    for (auto& t : out.tuples)
      for (Elem& c : t) c = sa.j1_map[c];
    for (Elem& v : out.link) v = sa.j1_map[v];
    std::vector<Elem> nt;
    for (Elem c : ext.tuple) nt.push_back(sa.j2_map[c]);
    out.tuples.push_back(std::move(nt));
    out.h = std::move(sa.g3);
  }

  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    ConstructionLogEntry adj;
    adj.op = out.entries[i].scheme.name();
    adj.adjoined = out.tuples[i];
    std::vector<Elem> seed;
    for (Elem p : out.entries[i].params) seed.push_back(out.link[p]);
    adj.base = generated_subgroup(out.h, seed).members;
    out.adjunctions.push_back(std::move(adj));
  }

  // pairwise cross-independence in the symmetrized sense: the joint type of
  // each pair of realized tuples matches the symmetric-composition reference.
  // (The literal one-realizes-its-type-over-the-others clause is not
  // satisfiable for mixed catalogs; see the notes in the README.)
  out.independence_checked = out.entries.size() > 1;
  for (std::size_t t = 0; t + 1 < out.entries.size() && out.independence_ok; ++t) {
    for (std::size_t o = t + 1; o < out.entries.size() && out.independence_ok; ++o) {
      OtimesResult ref = otimes_apply(out.entries[t], out.entries[o], g, budgets.amalgam);
      if (!ref.closed || !ref.symmetric) {
        out.independence_ok = false;
        break;
      }
      std::vector<Elem> ref_joint = ref.c1;
      ref_joint.insert(ref_joint.end(), ref.c2.begin(), ref.c2.end());
      QfType want = tp_bs_ordered(ref.g3, ref_joint, ref.j0_map);
      std::vector<Elem> joint = out.tuples[t];
      joint.insert(joint.end(), out.tuples[o].begin(), out.tuples[o].end());
      QfType mine = tp_bs_ordered(out.h, joint, out.link);
      out.independence_ok = (mine.canon == want.canon);
    }
  }
  return out;
}

ProbeReport chain_limit_probe(const StageChain& chain, const ChainProbe& probe, int term_budget,
                              std::size_t param_stage, bool check_beta) {
  ProbeReport report;
  if (probe.a.size() + 1 > chain.stages.size())
    throw Error(ErrorKind::PreconditionFailed, "probe longer than the chain");
  if (probe.k < 2) {
    report.invalid_clause = "order parameter k must be at least 2";
    return report;
  }

  // (A)(e): a_n commutes with the image of stage n
  for (std::size_t n = 0; n < probe.a.size(); ++n) {
    const FiniteGroup& hn1 = chain.stages[n + 1];
    Elem a = probe.a[n];
    if (a >= hn1.order()) {
      report.invalid_clause = "a_" + std::to_string(n) + " outside stage " + std::to_string(n + 1);
      return report;
    }
    for (int x = 0; x < chain.stages[n].order(); ++x) {
      Elem xi = chain.links[n][x];
      if (hn1.mul(a, xi) != hn1.mul(xi, a)) {
        report.invalid_clause = "a_" + std::to_string(n) + " does not commute with stage " +
                                std::to_string(n);
        return report;
      }
    }
    if (check_beta) {
      // <a_n> meets stage n only in the identity, with the order-k pattern
      for (int i = 1; i <= probe.k; ++i) {
        Elem p = hn1.pow(a, i);
        bool is_e = p == kIdentity;
        bool in_stage = false;
        for (int x = 0; x < chain.stages[n].order() && !in_stage; ++x)
          in_stage = chain.links[n][x] == p;
        if (is_e != (i == probe.k) || in_stage != (i == probe.k)) {
          report.invalid_clause = "disjointness fails for a_" + std::to_string(n) + " at power " +
                                  std::to_string(i);
          return report;
        }
      }
    }
  }
  report.valid = true;

  if (probe.a.size() < 2 || param_stage + 2 > chain.stages.size()) {
    report.pass = true;  // vacuous: no consecutive pair to compare
    report.detail = "vacuous pass: chain too short for the biconditional";
    return report;
  }

  // b_n in stage n+1
  std::vector<Elem> b(probe.a.size());
  b[0] = probe.a[0];
  for (std::size_t n = 1; n < probe.a.size(); ++n)
    b[n] = chain.stages[n + 1].mul(chain.links[n][b[n - 1]], probe.a[n]);

  const FiniteGroup& pstage = chain.stages[param_stage];
  // letters: 0 = the product variable, 1..|P| = parameters of the probe stage
  const int letters = 1 + pstage.order();
  std::vector<int> word;
  bool failed = false;
  std::string fail_detail;

  // evaluate sigma(b_m, params) inside stage m+1
  auto eval = [&](std::size_t m) {
    const FiniteGroup& hm = chain.stages[m + 1];
    auto plink = chain.link_map(param_stage, m + 1);
    Elem acc = kIdentity;
    for (int letter : word) {
      int slot = letter >> 1;
      bool inv = letter & 1;
      Elem v = slot == 0 ? b[m] : plink[slot - 1];
      acc = hm.mul(acc, inv ? hm.inv(v) : v);
    }
    return acc == kIdentity;
  };

  // factorial-index subsequence for the weaker stabilization variant
  std::vector<std::size_t> factorials;
  for (std::size_t f = 1, n = 1; f < probe.a.size(); f *= ++n)
    if (f >= param_stage) factorials.push_back(f);

  std::function<void(int)> sweep = [&](int depth) {
    if (failed) return;
    if (!word.empty()) {
      ++report.terms_checked;
      if (check_beta) {
        for (std::size_t n = param_stage; n + 1 < probe.a.size(); ++n) {
          if (eval(n) != eval(n + 1)) {
            failed = true;
            std::ostringstream os;
            os << "term of length " << word.size() << " flips between stages " << n + 1 << " and "
               << n + 2;
            fail_detail = os.str();
            return;
          }
        }
      } else if (factorials.size() >= 2) {
        // without the disjointness clause only the tail of the factorial
        // subsequence is required to stabilize
        if (eval(factorials[factorials.size() - 2]) != eval(factorials.back())) {
          failed = true;
          fail_detail = "term of length " + std::to_string(word.size()) +
                        " still flips along the factorial subsequence";
          return;
        }
      }
    }
    if (depth == term_budget) return;
    for (int letter = 0; letter < 2 * letters; ++letter) {
      if (!word.empty()) {
        int p = word.back();
        if ((p >> 1) == (letter >> 1) && (p & 1) != (letter & 1)) continue;
      }
      word.push_back(letter);
      sweep(depth + 1);
      word.pop_back();
      if (failed) return;
    }
  };
  sweep(0);

  report.pass = !failed;
  report.detail = failed ? fail_detail : "";
  return report;
}

bool construction_log_base_ok(const StageChain& chain, const ConstructionLog& log,
                              std::size_t idx) {
  const ConstructionLogEntry& entry = log[idx];
  const std::size_t stage = entry.step + 1;
  if (stage >= chain.stages.size()) return false;
  std::vector<Elem> seed = chain.link_map(0, stage);
  for (std::size_t p = 0; p < idx; ++p) {
    auto fwd = chain.link_map(log[p].step + 1, stage);
    for (Elem v : log[p].adjoined) seed.push_back(fwd[v]);
  }
  auto reach = generated_subgroup(chain.stages[stage], seed);
  for (Elem b : entry.base)
    if (!reach.contains(b)) return false;
  return true;
}

StageChain z2_power_chain(int steps) {
  StageChain chain;
  chain.stages.push_back(FiniteGroup::trivial());
  for (int n = 0; n < steps; ++n) {
    SchemeApplication app = apply_ab_k(chain.stages.back(), 2);
    chain.links.push_back(app.j0_map);
    chain.provenance.push_back({"ab_k", {"2"}});
    chain.stages.push_back(std::move(app.h));
  }
  return chain;
}

ChainProbe z2_diagonal_probe(const StageChain& chain) {
  ChainProbe probe;
  probe.k = 2;
  for (std::size_t n = 0; n + 1 < chain.stages.size(); ++n) probe.a.push_back(Elem(1));
  // the adjoined generator is the (e, 1) element of each product stage
  return probe;
}

void save_chain(const StageChain& chain, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream manifest(fs::path(dir) / "chain.manifest");
  manifest << "stages " << chain.stages.size() << "\n";
  for (std::size_t i = 0; i < chain.stages.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "stage_%03zu.mtable", i);
    write_group_file(chain.stages[i], (fs::path(dir) / name).string());
  }
  for (std::size_t i = 0; i < chain.links.size(); ++i) {
    manifest << "step " << i << " " << chain.provenance[i].op;
    for (const auto& a : chain.provenance[i].args) manifest << " " << a;
    manifest << "\nlink";
    for (Elem v : chain.links[i]) manifest << " " << int(v);
    manifest << "\n";
  }
}

StageChain load_chain(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream manifest(fs::path(dir) / "chain.manifest");
  if (!manifest) throw Error(ErrorKind::CorpusLoadError, "missing chain manifest in " + dir);
  StageChain chain;
  std::string tag;
  std::size_t count = 0;
  manifest >> tag >> count;
  if (tag != "stages") throw Error(ErrorKind::ParseError, "bad chain manifest header");
  for (std::size_t i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "stage_%03zu.mtable", i);
    chain.stages.push_back(parse_group_file((fs::path(dir) / name).string()));
  }
  std::string line;
  std::getline(manifest, line);
  while (std::getline(manifest, line)) {
    if (line.rfind("step ", 0) == 0) {
      std::istringstream is(line);
      std::string word2, op;
      std::size_t idx;
      is >> word2 >> idx >> op;
      ProvenanceStep step{op, {}};
      std::string arg;
      while (is >> arg) step.args.push_back(arg);
      chain.provenance.push_back(std::move(step));
    } else if (line.rfind("link", 0) == 0) {
      std::istringstream is(line.substr(4));
      std::vector<Elem> link;
      long long v;
      while (is >> v) link.push_back(Elem(v));
      chain.links.push_back(std::move(link));
    }
  }
  if (chain.links.size() + 1 != chain.stages.size())
    throw Error(ErrorKind::ParseError, "chain manifest links do not match the stages");
  return chain;
}

StageChain replay_chain(const StageChain& chain, const ClosureBudgets& budgets) {
  StageChain out;
  out.stages.push_back(chain.stages.front());
  for (const auto& step : chain.provenance) {
    const FiniteGroup& cur = out.stages.back();
    if (step.op == "ab_k") {
      SchemeApplication app = apply_ab_k(cur, std::stoi(step.args.at(0)));
      out.links.push_back(app.j0_map);
      out.stages.push_back(std::move(app.h));
    } else if (step.op == "hall") {
      HallStepResult r = hall_step(cur, std::stoi(step.args.at(0)), budgets);
      if (r.aborted) throw Error(ErrorKind::BudgetExceeded, "replay aborted: " + r.abort_reason);
      out.links.push_back(r.link);
      out.stages.push_back(std::move(r.h));
    } else if (step.op == "closure") {
      std::vector<Scheme> catalog;
      for (std::size_t i = 1; i < step.args.size(); ++i) {
        const std::string& s = step.args[i];
        if (s == "cg")
          catalog.push_back(Scheme::cg());
        else if (s.rfind("ab", 0) == 0)
          catalog.push_back(Scheme::ab(std::stoi(s.substr(2))));
        else
          throw Error(ErrorKind::ParseError, "unknown catalog entry " + s);
      }
      OneStepClosureResult r = one_step_closure(cur, catalog, std::stoi(step.args.at(0)), budgets);
      out.links.push_back(r.link);
      out.stages.push_back(std::move(r.h));
    } else {
      throw Error(ErrorKind::ParseError, "unknown provenance op " + step.op);
    }
    out.provenance.push_back(step);
  }
  return out;
}

}  // namespace lfg
