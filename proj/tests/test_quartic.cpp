#include <complex>

#include "doctest.h"
#include "els/quartic.hpp"
#include "oracles.hpp"

using namespace els::quartic;
using els::arith::i64;
using els::arith::u64;

namespace {

Quartic corpus(int i) {
  const auto& a = oracle::kCorpus[i].a;
  return Quartic(a[0], a[1], a[2], a[3]);
}

Perm perm(std::initializer_list<int> images) {
  Perm p{};
  int i = 0;
  for (int v : images) p[i++] = static_cast<std::uint8_t>(v);
  return p;
}

}  // namespace

TEST_CASE("construction, parsing and printing") {
  const Quartic f(0, 0, -1, 1);
  CHECK(f.to_string() == "x^4 - x + 1");
  CHECK(f.disc() == 229);
  CHECK(Quartic::parse("0 0 -1 1") == f);
  CHECK(Quartic::parse("x^4-x+1") == f);
  CHECK(Quartic::parse("x^4 - 1*x + 1") == f);
  CHECK(Quartic::parse("x^4+x^3+x^2+x+1") == Quartic(1, 1, 1, 1));
  CHECK(Quartic::parse("x^4+8*x+12") == Quartic(0, 0, 8, 12));
  CHECK(Quartic(1, 1, 1, 1).to_string() == "x^4 + x^3 + x^2 + x + 1");
  CHECK(Quartic(0, -3, 0, 5).to_string() == "x^4 - 3x^2 + 5");
  CHECK(f.coeffs() == std::array<i64, 5>{1, -1, 0, 0, 1});
  CHECK(f.reversed_coeffs() == std::array<i64, 5>{1, 0, 0, -1, 1});
  CHECK_THROWS_AS(Quartic::parse("x^3+1"), std::invalid_argument);
  CHECK_THROWS_AS(Quartic::parse("2x^4+1"), std::invalid_argument);
  CHECK_THROWS_AS(Quartic::parse("1 2 3"), std::invalid_argument);
  CHECK_THROWS_AS(Quartic::parse("1 2 3 4 5"), std::invalid_argument);
  CHECK_THROWS_AS(Quartic::parse("x^4+y"), std::invalid_argument);
  CHECK_THROWS_AS(Quartic::parse(""), std::invalid_argument);
}

TEST_CASE("reducible quartics are rejected") {
  CHECK_THROWS_AS(Quartic(0, 0, 0, 4), ReducibleError);   // (x^2-2x+2)(x^2+2x+2)
  CHECK_THROWS_AS(Quartic(0, 0, 0, -1), ReducibleError);  // (x-1)(x+1)(x^2+1)
  CHECK_THROWS_AS(Quartic(0, -5, 0, 4), ReducibleError);  // (x^2-1)(x^2-4)
  CHECK_THROWS_AS(Quartic(0, 2, 0, 1), ReducibleError);   // (x^2+1)^2
  CHECK_THROWS_AS(Quartic(0, 0, 0, 0), ReducibleError);
  CHECK(is_irreducible(0, -10, 0, 1));                    // x^4 - 10x^2 + 1
  CHECK_FALSE(is_irreducible(0, 0, 0, 64));               // x^4 + 64 = (x^2+4x+8)(x^2-4x+8)
}

TEST_CASE("discriminant") {
  CHECK(corpus(0).disc() == 229);
  CHECK(corpus(4).disc() == 256);
  CHECK(corpus(1).disc() == 331776);
  CHECK(corpus(2).disc() == -2048);
  CHECK(corpus(3).disc() == 125);
  for (const auto& c : oracle::kCorpus) CHECK(mpz_class(Quartic(c.a[0], c.a[1], c.a[2], c.a[3]).disc()) == oracle::resultant_discriminant(c.a));
}

TEST_CASE("discriminant matches the Sylvester resultant on random quartics") {
  oracle::Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const std::array<i64, 4> a = {rng.range(-20, 20), rng.range(-20, 20), rng.range(-20, 20), rng.range(-20, 20)};
    REQUIRE(quartic_discriminant(a[0], a[1], a[2], a[3]) == oracle::resultant_discriminant(a));
  }
}

TEST_CASE("factorization types mod p") {
  CHECK(factorization_type_mod_p(corpus(0), 3) == FactorizationType::k13);
  CHECK(factorization_type_mod_p(corpus(0), 2) == FactorizationType::k4);
  CHECK(factorization_type_mod_p(corpus(4), 17) == FactorizationType::k1111);
  CHECK_THROWS_AS(factorization_type_mod_p(corpus(0), 229), std::invalid_argument);
  CHECK_THROWS_AS(factorization_type_mod_p(corpus(0), 9), std::invalid_argument);
  CHECK(to_string(FactorizationType::k112) == "(1,1,2)");
  CHECK(factorization_type_from_parts({3, 1}) == FactorizationType::k13);
  CHECK_THROWS(factorization_type_from_parts({1, 1}));
}

TEST_CASE("has_root_mod_p") {
  CHECK(has_root_mod_p(corpus(0), 3));
  CHECK_FALSE(has_root_mod_p(corpus(0), 2));
  CHECK_FALSE(has_root_mod_p(corpus(4), 7));
  CHECK(has_root_mod_p(corpus(0), 229));  // ramified primes are allowed here
}

TEST_CASE("factorization types agree with exhaustive search and root flags") {
  for (int i = 0; i < 5; ++i) {
    const Quartic f = corpus(i);
    for (u64 p = 2; p <= 400; ++p) {
      if (!oracle::is_prime_slow(p)) continue;
      bool root = false;
      for (i64 x = 0; x < static_cast<i64>(p); ++x) root = root || oracle::eval_mod(oracle::kCorpus[i].a, x, p) == 0;
      REQUIRE(has_root_mod_p(f, p) == root);
      if (f.disc() % static_cast<i64>(p) == 0) continue;
      REQUIRE(parts(factorization_type_mod_p(f, p)) == oracle::factor_degrees(oracle::kCorpus[i].a, p));
    }
    for (u64 p = 401; p <= 10000; ++p) {
      if (!oracle::is_prime_slow(p) || f.disc() % static_cast<i64>(p) == 0) continue;
      REQUIRE(has_root_mod_p(f, p) == has_linear_factor(factorization_type_mod_p(f, p)));
    }
  }
}

TEST_CASE("resolvent cubic") {
  CHECK(resolvent_cubic(corpus(0)) == Cubic{0, -4, -1});
  CHECK(resolvent_cubic(corpus(4)) == Cubic{0, -4, 0});
  CHECK(resolvent_cubic(corpus(2)) == Cubic{0, 8, 0});
  CHECK(integer_roots(Cubic{0, -4, 0}) == std::vector<i64>{-2, 0, 2});
  CHECK(integer_roots(Cubic{0, -4, -1}).empty());
  CHECK(integer_roots(Cubic{0, 8, 0}) == std::vector<i64>{0});
  CHECK(integer_roots(Cubic{-6, 11, -6}) == std::vector<i64>{1, 2, 3});
}

TEST_CASE("resolvent roots are the pair sums of products of roots") {
  for (const auto& c : oracle::kCorpus) {
    const Quartic f(c.a[0], c.a[1], c.a[2], c.a[3]);
    const Cubic r = resolvent_cubic(f);
    // Durand-Kerner for the quartic's roots
    std::array<std::complex<double>, 4> z;
    for (int k = 0; k < 4; ++k) z[k] = std::pow(std::complex<double>(0.4, 0.9), k);
    auto fv = [&](std::complex<double> x) {
      return (((x + double(c.a[0])) * x + double(c.a[1])) * x + double(c.a[2])) * x + double(c.a[3]);
    };
    for (int it = 0; it < 500; ++it)
      for (int k = 0; k < 4; ++k) {
        std::complex<double> den = 1;
        for (int j = 0; j < 4; ++j)
          if (j != k) den *= z[k] - z[j];
        z[k] -= fv(z[k]) / den;
      }
    const std::array<std::complex<double>, 3> ys = {z[0] * z[1] + z[2] * z[3], z[0] * z[2] + z[1] * z[3],
                                                    z[0] * z[3] + z[1] * z[2]};
    for (auto y : ys) {
      const auto v = ((y + double(r.b2)) * y + double(r.b1)) * y + double(r.b0);
      CHECK(std::abs(v) < 1e-6);
    }
  }
}

TEST_CASE("Galois classification of the corpus") {
  for (int i = 0; i < 5; ++i) {
    CHECK(to_string(classify_galois(corpus(i))) == oracle::kCorpus[i].galois);
    CHECK(to_string(classify_galois_checked(corpus(i))) == oracle::kCorpus[i].galois);
  }
  CHECK(classify_galois_checked(Quartic(0, -10, 0, 1)) == GaloisType::V4);  // Q(sqrt2, sqrt3)
  CHECK(classify_galois_checked(Quartic(0, -4, 0, 2)) == GaloisType::C4);   // real subfield of Q(zeta_16)
  CHECK(classify_galois_checked(Quartic(0, 0, 0, 3)) == GaloisType::D4);
}

TEST_CASE("cross-check catches a wrong classification") {
  CHECK(galois_cross_check(corpus(2), GaloisType::C4).has_value());  // x^4 - 2 has (1,1,2) primes
  CHECK(galois_cross_check(corpus(0), GaloisType::A4).has_value());
  CHECK_FALSE(galois_cross_check(corpus(0), GaloisType::S4).has_value());
}

TEST_CASE("Galois type names and orders") {
  for (auto g : kAllGaloisTypes) CHECK(galois_type_from_string(to_string(g)) == g);
  CHECK(group_order(GaloisType::V4) == 4);
  CHECK(group_order(GaloisType::C4) == 4);
  CHECK(group_order(GaloisType::D4) == 8);
  CHECK(group_order(GaloisType::A4) == 12);
  CHECK(group_order(GaloisType::S4) == 24);
  CHECK_THROWS(galois_type_from_string("Q8"));
}

TEST_CASE("group elements and cycle types") {
  using FT = FactorizationType;
  CHECK(group_elements(GaloisType::V4).cycle_type_counts() == std::map<FT, int>{{FT::k1111, 1}, {FT::k22, 3}});
  CHECK(group_elements(GaloisType::C4).cycle_type_counts() == std::map<FT, int>{{FT::k1111, 1}, {FT::k22, 1}, {FT::k4, 2}});
  CHECK(group_elements(GaloisType::D4).cycle_type_counts() ==
        std::map<FT, int>{{FT::k1111, 1}, {FT::k112, 2}, {FT::k22, 3}, {FT::k4, 2}});
  CHECK(group_elements(GaloisType::A4).cycle_type_counts() == std::map<FT, int>{{FT::k1111, 1}, {FT::k22, 3}, {FT::k13, 8}});
  CHECK(group_elements(GaloisType::S4).cycle_type_counts() ==
        std::map<FT, int>{{FT::k1111, 1}, {FT::k112, 6}, {FT::k22, 3}, {FT::k13, 8}, {FT::k4, 6}});
  for (auto g : kAllGaloisTypes) {
    const auto grp = group_elements(g);
    CHECK(static_cast<int>(grp.order()) == group_order(g));
    CHECK(grp.contains(perm({0, 1, 2, 3})));
    for (const auto& a : grp.elements) {
      REQUIRE(grp.contains(inverse(a)));
      for (const auto& b : grp.elements) REQUIRE(grp.contains(compose(a, b)));
    }
    std::set<int> orbit;
    for (const auto& a : grp.elements) orbit.insert(a[0]);
    CHECK(orbit.size() == 4);
  }
  CHECK(to_cycle_string(perm({1, 0, 3, 2})) == "(1 2)(3 4)");
}

TEST_CASE("mean of rho over each group") {
  CHECK(mean_rho(GaloisType::V4) == mpq_class(1, 4));
  CHECK(mean_rho(GaloisType::C4) == mpq_class(1, 4));
  CHECK(mean_rho(GaloisType::D4) == mpq_class(3, 8));
  CHECK(mean_rho(GaloisType::A4) == mpq_class(3, 4));
  CHECK(mean_rho(GaloisType::S4) == mpq_class(5, 8));
}

TEST_CASE("coset orbit types") {
  CHECK(coset_orbit_type(perm({0, 1, 2, 3})) == Partition{1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(coset_orbit_type(perm({1, 0, 2, 3})) == Partition{2, 2, 2, 2});
  CHECK(coset_orbit_type(perm({0, 2, 3, 1})) == Partition{1, 1, 3, 3});
  CHECK(coset_orbit_type(perm({1, 0, 3, 2})) == Partition{2, 2, 2, 2});
  CHECK(coset_orbit_type(perm({1, 2, 3, 0})) == Partition{4, 4});
  // constant on conjugacy classes
  const auto s4 = group_elements(GaloisType::S4);
  for (const auto& s : s4.elements)
    for (const auto& g : s4.elements) REQUIRE(coset_orbit_type(compose(compose(g, s), inverse(g))) == coset_orbit_type(s));
  for (const auto& s : s4.elements) {
    const auto pt = coset_orbit_type(s);
    int sum = 0;
    for (int x : pt) sum += x;
    REQUIRE(sum == 8);
  }
}

TEST_CASE("Frobenius order type in the splitting field") {
  CHECK(frobenius_order_type(FactorizationType::k1111, GaloisType::D4) == Partition(8, 1));
  CHECK(frobenius_order_type(FactorizationType::k112, GaloisType::D4) == Partition(4, 2));
  CHECK(frobenius_order_type(FactorizationType::k13, GaloisType::A4) == Partition(4, 3));
  CHECK(frobenius_order_type(FactorizationType::k4, GaloisType::S4) == Partition(6, 4));
  CHECK_THROWS(frobenius_order_type(FactorizationType::k112, GaloisType::C4));
  CHECK_FALSE(realizable(FactorizationType::k13, GaloisType::D4));
  CHECK(realizable(FactorizationType::k13, GaloisType::A4));
}

TEST_CASE("Chebotarev frequencies of factorization types") {
  // Sampled over p <= 10^6: each type's share is within 1% of its class density.
  for (int i = 0; i < 5; ++i) {
    const Quartic f = corpus(i);
    const auto g = classify_galois(f);
    const auto census = type_census(f, 1000000);
    u64 total = 0;
    for (const auto& [t, n] : census) total += n;
    const auto counts = group_elements(g).cycle_type_counts();
    for (auto t : kAllFactorizationTypes) {
      const double expected = counts.contains(t) ? double(counts.at(t)) / group_order(g) : 0.0;
      const double seen = census.contains(t) ? double(census.at(t)) / double(total) : 0.0;
      CHECK_MESSAGE(std::abs(seen - expected) <= 0.01, f.to_string() << " " << to_string(t));
      if (!counts.contains(t)) CHECK(seen == 0.0);
    }
  }
}
