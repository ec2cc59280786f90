#pragma once

// Local Euler factors at an unramified prime, as exponent vectors of
// prod_a (1 - t^a)^{e_a} with t = p^-s, and the per-type check of the
// relations between g(s) and the Dedekind zeta functions of K, of its Galois
// closure L and (for S4) of the degree-8 field fixed by a 3-cycle.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "els/quartic.hpp"

namespace els::zeta {

using quartic::FactorizationType;
using quartic::GaloisType;
using quartic::Partition;

class LocalFactor {
 public:
  LocalFactor() = default;
  /// (1 - t^a)^e
  static LocalFactor one_minus(int a, int e = 1);
  /// (1 + t^a)^e = (1 - t^{2a})^e (1 - t^a)^{-e}
  static LocalFactor one_plus(int a, int e = 1);

  const std::map<int, int>& factors() const { return factors_; }
  int exponent(int a) const;
  bool is_trivial() const { return factors_.empty(); }

  LocalFactor operator*(const LocalFactor& o) const;
  LocalFactor operator/(const LocalFactor& o) const;
  LocalFactor pow(int e) const;

  /// Power series coefficients c_0..c_order.
  std::vector<mpz_class> series(int order) const;

  /// "(1 - t)^-4 (1 - t^2)^2", or "1".
  std::string to_string() const;
  /// Rewritten with (1 + t^a) factors where the exponents allow it, e.g. "(1 + t^2)^2".
  std::string to_display_string() const;

  friend bool operator==(const LocalFactor&, const LocalFactor&) = default;

 private:
  void add(int a, int e);
  std::map<int, int> factors_;
};

/// prod_i (1 - t^{f_i})^{-1}
LocalFactor dedekind_local(const Partition& parts);
/// prod_i (1 + t^{f_i}): the local factor of zeta(s)/zeta(2s).
LocalFactor ratio_local(const Partition& parts);

struct Splitting {
  Partition k;
  Partition l;
  std::optional<Partition> l3;  // S4 only
};

/// Splitting shapes in K, L and (S4) L^{<(123)>} of an unramified prime
/// whose Frobenius has cycle type t. Throws if t is not realizable in g.
Splitting splitting_in_fields(FactorizationType t, GaloisType g);

/// g^{g_exp} ~ (zeta_K ratio)^{k_exp} (zeta_L ratio)^{l_exp} (zeta_{L3} ratio)^{l3_exp}
struct ZetaCase {
  GaloisType galois;
  int g_exp;
  int k_exp;
  int l_exp;
  int l3_exp;

  std::string to_string() const;
};

/// The relation for each group. C4 shares the V4 relation.
ZetaCase zeta_case(GaloisType g);

struct IdentityCheck {
  bool holds;
  LocalFactor lhs;
  LocalFactor rhs;
  LocalFactor residual;  // rhs / lhs
};

/// Local comparison at a prime of type t; holds iff the residual has no
/// (1 - t)^e factor.
IdentityCheck verify_identity(const ZetaCase& c, FactorizationType t);
IdentityCheck verify_identity(GaloisType g, FactorizationType t);

/// Coefficients of a / b (b_0 = 1) up to t^order.
std::vector<mpz_class> series_quotient(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);

}  // namespace els::zeta
