#pragma once

// Solvability of H_q : q y^2 = f(x) over R and over Q_p.
//
// The curve is handled as (q y)^2 = q f(x): a Q_p-point exists iff q f(x) is
// a square in Q_p for some x in Z_p (affine chart) or q f*(u) is a square for
// some u in p Z_p, where f*(u) = u^4 f(1/u) (the chart at infinity).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "els/quartic.hpp"
#include "json.hpp"

namespace els::localsolve {

using arith::i64;
using arith::u64;
using quartic::Quartic;

/// Tripwire: the residue-class search went deeper than its cap. Cannot happen
/// for a separable polynomial; signals a bug.
struct DepthCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The polynomial vanished at an integer sample point.
struct ZeroValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {x in Z_p : x = x0 mod p^k}
struct ResidueClass {
  u64 p;
  int k;
  mpz_class x0;
};

enum class WitnessKind { none, square_value, hensel_root, point_at_infinity };
enum class Chart { affine, infinity };

std::string to_string(WitnessKind w);
std::string to_string(Chart c);

struct SolvabilityReport {
  bool solvable = false;
  WitnessKind witness = WitnessKind::none;
  Chart chart = Chart::affine;
  mpz_class x0;    // witness class representative
  int k = 0;       // witness class depth
  int v = 0;       // valuation of the sampled value (square_value witnesses)
  int depth_used = 0;

  friend bool operator==(const SolvabilityReport&, const SolvabilityReport&) = default;
};

/// Integer polynomial, coefficients from x^0 upwards.
using IntPoly = std::vector<mpz_class>;

IntPoly scaled(const std::array<i64, 5>& coeffs, i64 q);
mpz_class evaluate(const IntPoly& h, const mpz_class& x);
IntPoly derivative(const IntPoly& h);

/// Decides whether h(x) is a square in Q_p (zero allowed) for some x in Z_p
/// whose residue mod p lies in `initial`.
///
/// Depth-first search over residue classes. With h = p^e h1 (h1 primitive at
/// p), a class (x0, k) is decided once v = v_p(h1(x0)) <= k - 1 (odd p) or
/// <= k - 3 (p = 2): the square class of h is then constant on it. An
/// undecided class with v > 2 v_p(h1'(x0)) holds a Hensel root. Otherwise it
/// is split into its p children.
SolvabilityReport zp_square_value_exists(const IntPoly& h, u64 p, const std::vector<u64>& initial, int cap);

/// v_p(q^6 disc f) + 10.
int depth_cap(const Quartic& f, i64 q, u64 p);

/// Full report for H_q over Q_p. q nonzero and square-free, p prime.
SolvabilityReport local_report(const Quartic& f, i64 q, u64 p);

/// True iff H_q(Q_p) is nonempty.
bool is_locally_solvable(const Quartic& f, i64 q, u64 p);

/// H_q(R) is nonempty for q > 0 (f is monic). Rejects q <= 0.
bool real_solvable(const Quartic& f, i64 q);

/// Primes at which H_q can fail to be solvable: those dividing 2 q disc(f).
std::vector<u64> bad_primes(const Quartic& f, i64 q);

/// Everywhere local solvability by running the solver at each p | 2 q disc(f).
bool is_els_direct(const Quartic& f, i64 q);

nlohmann::json to_json(const SolvabilityReport& r);
SolvabilityReport report_from_json(const nlohmann::json& j);

}  // namespace els::localsolve
