#pragma once

// Monic integer quartics: discriminant, factorization types mod p, the
// resolvent-cubic Galois classification and the permutation-group data that
// goes with the five transitive subgroups of S4.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "els/arith.hpp"

namespace els::quartic {

using arith::i64;
using arith::u64;

/// Raised when a polynomial fails the irreducibility test over Q.
struct ReducibleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when the exact Galois classification and the prime-sampling
/// cross-check disagree.
struct ClassificationMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// f(x) = x^4 + a3 x^3 + a2 x^2 + a1 x + a0, irreducible over Q.
class Quartic {
 public:
  /// Throws ReducibleError if f factors over Q, std::invalid_argument if the
  /// discriminant does not fit in 64 bits.
  Quartic(i64 a3, i64 a2, i64 a1, i64 a0);

  /// Accepts "a3 a2 a1 a0" or "x^4+a3*x^3+a2*x^2+a1*x+a0" (any term order,
  /// missing terms are zero, "*" optional).
  static Quartic parse(std::string_view text);

  i64 a3() const { return c_[3]; }
  i64 a2() const { return c_[2]; }
  i64 a1() const { return c_[1]; }
  i64 a0() const { return c_[0]; }
  i64 disc() const { return disc_; }

  /// Coefficients c[0..3] of x^0..x^3 (the x^4 coefficient is 1).
  const std::array<i64, 4>& low_coeffs() const { return c_; }

  /// Integer coefficients of f from x^0 to x^4.
  std::array<i64, 5> coeffs() const { return {c_[0], c_[1], c_[2], c_[3], 1}; }

  /// Coefficients of the reversed polynomial u^4 f(1/u), from u^0 to u^4.
  std::array<i64, 5> reversed_coeffs() const { return {1, c_[3], c_[2], c_[1], c_[0]}; }

  /// Canonical text form, e.g. "x^4 - x + 1".
  std::string to_string() const;

  friend bool operator==(const Quartic&, const Quartic&) = default;

 private:
  std::array<i64, 4> c_;
  i64 disc_;
};

/// Discriminant of the monic quartic with the given lower coefficients,
/// computed exactly.
mpz_class quartic_discriminant(i64 a3, i64 a2, i64 a1, i64 a0);
i64 discriminant(const Quartic& f);

/// True iff x^4 + a3 x^3 + a2 x^2 + a1 x + a0 is irreducible over Q.
bool is_irreducible(i64 a3, i64 a2, i64 a1, i64 a0);

enum class FactorizationType { k1111, k112, k13, k22, k4 };

std::vector<int> parts(FactorizationType t);
std::string to_string(FactorizationType t);
FactorizationType factorization_type_from_parts(std::vector<int> parts);
inline constexpr std::array<FactorizationType, 5> kAllFactorizationTypes = {
    FactorizationType::k1111, FactorizationType::k112, FactorizationType::k13, FactorizationType::k22,
    FactorizationType::k4};

/// Types containing a part 1, i.e. those for which f has a root mod p.
constexpr bool has_linear_factor(FactorizationType t) {
  return t == FactorizationType::k1111 || t == FactorizationType::k112 || t == FactorizationType::k13;
}

/// Degrees of the irreducible factors of f mod p. Rejects p | disc(f).
FactorizationType factorization_type_mod_p(const Quartic& f, u64 p);

/// True iff f has a root in F_p, via gcd(x^p - x, f) computed in F_p[x]/(f).
/// Valid for every prime p, ramified or not.
bool has_root_mod_p(const Quartic& f, u64 p);

/// y^3 + b2 y^2 + b1 y + b0 whose roots are a1a2 + a3a4, a1a3 + a2a4, a1a4 + a2a3.
struct Cubic {
  i64 b2;
  i64 b1;
  i64 b0;
  friend bool operator==(const Cubic&, const Cubic&) = default;
};

Cubic resolvent_cubic(const Quartic& f);

/// Distinct integer roots of a monic integer cubic, ascending.
std::vector<i64> integer_roots(const Cubic& c);

enum class GaloisType { V4, C4, D4, A4, S4 };

inline constexpr std::array<GaloisType, 5> kAllGaloisTypes = {GaloisType::V4, GaloisType::C4, GaloisType::D4,
                                                              GaloisType::A4, GaloisType::S4};

std::string to_string(GaloisType g);
GaloisType galois_type_from_string(std::string_view name);
int group_order(GaloisType g);

GaloisType classify_galois(const Quartic& f);

/// A permutation of {0,1,2,3}; perm[i] is the image of i.
using Perm = std::array<std::uint8_t, 4>;

Perm compose(const Perm& a, const Perm& b);  // a after b
Perm inverse(const Perm& a);
FactorizationType cycle_type(const Perm& a);
/// Cycle notation on {1,2,3,4}, e.g. "(1 2)(3 4)".
std::string to_cycle_string(const Perm& a);

struct PermGroup {
  std::vector<Perm> elements;  // sorted

  std::size_t order() const { return elements.size(); }
  bool contains(const Perm& a) const;
  std::map<FactorizationType, int> cycle_type_counts() const;
};

/// Closure of the generators under composition.
PermGroup generate_group(const std::vector<Perm>& generators);

/// The transitive subgroup of S4 for each tag, generated from fixed
/// generators (V4 = double transpositions, C4 = <(1234)>, D4 = <(1234),(13)>,
/// A4 = <(123),(12)(34)>, S4 = <(1234),(12)>).
PermGroup group_elements(GaloisType g);

/// Mean of the indicator of types (1,1,1,1), (1,1,2), (1,3) over the group.
mpq_class mean_rho(GaloisType g);

/// Sorted partition; the splitting shape of a prime in some field.
using Partition = std::vector<int>;
std::string to_string(const Partition& p);

/// Orbit lengths of <sigma> acting by left multiplication on the eight left
/// cosets of <(123)> in S4.
Partition coset_orbit_type(const Perm& sigma);

/// (d, ..., d) with d = lcm of the parts of t, |G|/d times. Throws if no
/// element of g has cycle type t.
Partition frobenius_order_type(FactorizationType t, GaloisType g);

bool realizable(FactorizationType t, GaloisType g);

/// Counts of factorization types over the unramified primes p <= bound.
std::map<FactorizationType, u64> type_census(const Quartic& f, u64 bound);

/// Samples unramified primes up to bound and checks that every observed type
/// is a cycle type of g and every cycle type of g is observed. Returns a
/// description of the first inconsistency, or nullopt.
std::optional<std::string> galois_cross_check(const Quartic& f, GaloisType g, u64 bound = 20000);

/// classify_galois followed by galois_cross_check; throws
/// ClassificationMismatch on disagreement.
GaloisType classify_galois_checked(const Quartic& f, u64 bound = 20000);

}  // namespace els::quartic
