#pragma once

// The local conditions that make H_q everywhere locally solvable, tabulated
// once per quartic: square classes at 2, the four-curve test at each odd
// prime of bad reduction, the resulting disjoint congruence cells, and the
// signed character terms whose sum is the generating series of those q.

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "els/quartic.hpp"
#include "json.hpp"

namespace els::criterion {

using arith::i64;
using arith::u64;
using quartic::GaloisType;
using quartic::Quartic;

/// Allowed residues mod 8 of q (q odd) and of q/2 (q even).
struct Mod8Table {
  std::set<int> odd_allowed;
  std::set<int> half_allowed;
  friend bool operator==(const Mod8Table&, const Mod8Table&) = default;
};

enum class CoprimeRule { unconstrained, residue_only };
enum class DividingRule { unconstrained, cofactor_residue, cofactor_nonresidue, forbidden };

std::string to_string(CoprimeRule r);
std::string to_string(DividingRule r);

/// Conditions at an odd prime p | disc(f), read off from the Q_p-solvability
/// of H_u, H_p and H_{up} with u the least non-residue mod p.
struct OddBadPrimeTable {
  u64 p;
  u64 u;
  CoprimeRule coprime_rule;
  DividingRule dividing_rule;
  friend bool operator==(const OddBadPrimeTable&, const OddBadPrimeTable&) = default;
};

/// {q = M c : c coprime to 2 and to every odd bad prime, c = mod8_class mod 8,
/// (c/p) = legendre[p] for every odd bad prime p}. Symbols are +1 or -1, or 0
/// for "any".
struct ConditionSet {
  u64 bad_part;
  int mod8_class;
  std::map<u64, int> legendre;

  /// Membership for a square-free q.
  bool contains(u64 q) const;
  friend bool operator==(const ConditionSet&, const ConditionSet&) = default;
};

/// coeff * g^{chi_i psi_{r1} ... psi_{rk}}(s) * prefactor^{-s}
struct TwistTerm {
  mpq_class coeff;
  int chi;
  std::vector<u64> psis;
  u64 prefactor;
  friend bool operator==(const TwistTerm& a, const TwistTerm& b) {
    return a.coeff == b.coeff && a.chi == b.chi && a.psis == b.psis && a.prefactor == b.prefactor;
  }
};

struct CriterionBundle {
  Quartic f;
  GaloisType galois;
  Mod8Table mod8;
  std::vector<OddBadPrimeTable> odd_tables;
  std::vector<ConditionSet> sets;
  std::vector<TwistTerm> terms;

  std::vector<u64> odd_bad_primes() const;
  friend bool operator==(const CriterionBundle&, const CriterionBundle&) = default;
};

/// Solver calls at p = 2 for the representatives {1,-1,5,-5} and twice them.
Mod8Table compute_mod8_table(const Quartic& f);

/// Rules for an odd prime p | disc(f).
OddBadPrimeTable compute_odd_table(const Quartic& f, u64 p);

/// Rules from the solvability of H_u, H_p and H_{up} at p (H_1 always has
/// the point at infinity).
OddBadPrimeTable odd_table_from_solvability(u64 p, u64 u, bool h_u, bool h_p, bool h_up);

/// Conditions (b) and (c): the mod-8 rule and the rule at each odd bad prime.
bool satisfies_congruences(const Mod8Table& mod8, std::span<const OddBadPrimeTable> odd_tables, u64 q);

/// Cells (subset of dividing bad primes) x (class mod 8) x (symbol pattern),
/// keeping those allowed by the tables. Pairwise disjoint.
std::vector<ConditionSet> condition_sets(const Mod8Table& mod8, std::span<const OddBadPrimeTable> odd_tables);
std::vector<ConditionSet> condition_sets(const CriterionBundle& bundle);

/// Character expansion of every cell, scaled by 1/2^{l+2} (l odd bad
/// primes), without merging.
std::vector<TwistTerm> raw_F_terms(std::span<const ConditionSet> sets, std::span<const u64> odd_bad_primes);

/// raw_F_terms merged on (chi, psis, prefactor) with zero terms dropped,
/// sorted by (prefactor, chi, psis).
std::vector<TwistTerm> merge_terms(std::vector<TwistTerm> terms);
std::vector<TwistTerm> expand_F_terms(std::span<const ConditionSet> sets, std::span<const u64> odd_bad_primes);
std::vector<TwistTerm> expand_F_terms(const CriterionBundle& bundle);

/// Runs all solver calls and assembles the tables, cells and terms. The
/// Galois type is the cross-checked classification.
CriterionBundle build_bundle(const Quartic& f);

/// Decides ELS from the tables. `primes_of_q` is the factorization of the
/// square-free q; `has_root(p)` answers whether f has a root mod p.
template <class RootLookup>
bool is_els_criterion(const CriterionBundle& b, u64 q, std::span<const u64> primes_of_q, RootLookup&& has_root) {
  if (!satisfies_congruences(b.mod8, b.odd_tables, q)) return false;
  const u64 disc = static_cast<u64>(b.f.disc() < 0 ? -b.f.disc() : b.f.disc());
  for (u64 r : primes_of_q) {
    if (r == 2 || disc % r == 0) continue;
    if (!has_root(r)) return false;
  }
  return true;
}

/// Factors q (rejecting non-square-free q) and uses has_root_mod_p directly.
bool is_els_criterion(const CriterionBundle& b, u64 q);

/// Text rendering of a term list, e.g. "g + (1/2) 229^-s g + (1/2) 229^-s g^{psi_229}".
std::string format_terms(std::span<const TwistTerm> terms);

nlohmann::json to_json(const CriterionBundle& b);
CriterionBundle bundle_from_json(const nlohmann::json& j);

}  // namespace els::criterion
