#pragma once

#include <string>
#include <vector>

#include "lfg/amalgam.hpp"
#include "lfg/group.hpp"

namespace lfg {

/// Request for a commutation-preserving amalgamation: a designated subgroup L
/// of G1 (centralizing the base, meeting it trivially) must commute with the
/// centralizer of H0 in G2 inside the amalgam.
struct Nf3Request {
  const FiniteGroup* g0 = nullptr;
  const FiniteGroup* g1 = nullptr;
  const FiniteGroup* g2 = nullptr;
  Embedding emb1, emb2;          // G0 -> G1, G0 -> G2
  std::vector<Elem> l_members;   // subgroup L of G1
  std::vector<Elem> h0_members;  // subgroup H0 of G0

  // derived on validation
  std::vector<Elem> h1_members;  // <emb1(H0) ∪ L> in G1
  std::vector<Elem> h2_members;  // Cm_{G2}(emb2(H0))
};

/// Validates the request invariants (each failure names the offending clause)
/// and fills the derived subgroups.
Nf3Request make_nf3_request(const FiniteGroup& g0, const FiniteGroup& g1, const FiniteGroup& g2,
                            const Embedding& emb1, const Embedding& emb2,
                            std::vector<Elem> l_members, std::vector<Elem> h0_members);

/// One commutation-compatible try: I1 = J1 · L for a transversal J1 of
/// <G0 ∪ L>-cosets, I2 extends a transversal of (G0 ∩ H2)-cosets inside H2.
AmalgamTry build_commuting_transversals(const Nf3Request& req);

/// Per-clause audit of the structural conditions the commutation theorem
/// needs; all entries must pass for a try built by the constructor above.
struct Nf3ClauseReport {
  std::vector<NfLawEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};
Nf3ClauseReport check_commuting_try(const Nf3Request& req, const AmalgamTry& x);

/// The family of commutation-compatible tries (all J1 choices x all qualifying
/// I2 choices), prefix-capped like the plain amalgam family.
TryFamily nf3_try_family(const Nf3Request& req, const AmalgamBudget& budget = {});

struct Nf3Amalgam {
  StableAmalgam amalgam;
  bool commutation_certified = false;  // j1(H1) and j2(H2) commute element-wise
  std::string detail;
};

Nf3Amalgam nf3_amalgam(const Nf3Request& req, const AmalgamBudget& budget = {});

}  // namespace lfg
