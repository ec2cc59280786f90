#include "els/quartic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace els::quartic {

using arith::i128;
using arith::mulmod;
using arith::powmod;
using arith::u128;

namespace {

std::vector<i64> divisors_abs(i64 n) {
  const u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  std::vector<i64> out;
  for (u64 d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    out.push_back(static_cast<i64>(d));
    if (d != m / d) out.push_back(static_cast<i64>(m / d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

i128 eval_quartic(i64 a3, i64 a2, i64 a1, i64 a0, i64 x) {
  const i128 X = x;
  return (((X + a3) * X + a2) * X + a1) * X + a0;
}

bool is_perfect_square(const mpz_class& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

// Arithmetic in F_p[x]/(f) on residues of degree < 4.
class QuarticRing {
 public:
  using Elem = std::array<u64, 4>;

  QuarticRing(const Quartic& f, u64 p) : p_(p) {
    for (int i = 0; i < 4; ++i) c_[i] = reduce(f.low_coeffs()[i]);
  }

  u64 reduce(i64 v) const {
    const i64 r = v % static_cast<i64>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::array<u64, 7> prod{};
    for (int i = 0; i < 4; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < 4; ++j) prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p_)) % p_;
    }
    // x^4 = -(c3 x^3 + c2 x^2 + c1 x + c0)
    for (int k = 6; k >= 4; --k) {
      const u64 t = prod[k];
      if (t == 0) continue;
      for (int j = 0; j < 4; ++j) {
        const u64 s = mulmod(t, c_[j], p_);
        prod[k - 4 + j] = (prod[k - 4 + j] + p_ - s) % p_;
      }
      prod[k] = 0;
    }
    return {prod[0], prod[1], prod[2], prod[3]};
  }

  Elem pow(Elem base, u64 e) const {
    Elem r{1 % p_, 0, 0, 0};
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Degree of gcd(a - x, f) where a is a residue mod f.
  int gcd_degree_with_x_subtracted(Elem a) const {
    a[1] = (a[1] + p_ - 1 % p_) % p_;
    std::vector<u64> g(a.begin(), a.end());
    std::vector<u64> f(c_.begin(), c_.end());
    f.push_back(1);
    return poly_gcd_degree(std::move(f), std::move(g));
  }

  u64 p() const { return p_; }

 private:
  static void trim(std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }

  int poly_gcd_degree(std::vector<u64> a, std::vector<u64> b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      // a <- a mod b
      const u64 inv = powmod(b.back(), p_ - 2, p_);
      while (a.size() >= b.size()) {
        const u64 coef = mulmod(a.back(), inv, p_);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
          a[shift + i] = (a[shift + i] + p_ - mulmod(coef, b[i], p_)) % p_;
        trim(a);
        if (a.empty()) break;
      }
      std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
  }

  u64 p_;
  Elem c_{};
};

}  // namespace

mpz_class quartic_discriminant(i64 a3, i64 a2, i64 a1, i64 a0) {
  const mpz_class b(static_cast<long>(a3)), c(static_cast<long>(a2)), d(static_cast<long>(a1)),
      e(static_cast<long>(a0));
  return 256 * e * e * e - 192 * b * d * e * e - 128 * c * c * e * e + 144 * c * d * d * e - 27 * d * d * d * d +
         144 * b * b * c * e * e - 6 * b * b * d * d * e - 80 * b * c * c * d * e + 18 * b * c * d * d * d +
         16 * c * c * c * c * e - 4 * c * c * c * d * d - 27 * b * b * b * b * e * e + 18 * b * b * b * c * d * e -
         4 * b * b * b * d * d * d - 4 * b * b * c * c * c * e + b * b * c * c * d * d;
}

bool is_irreducible(i64 a3, i64 a2, i64 a1, i64 a0) {
  if (a0 == 0) return false;
  const auto divs = divisors_abs(a0);
  for (i64 d : divs)
    if (eval_quartic(a3, a2, a1, a0, d) == 0 || eval_quartic(a3, a2, a1, a0, -d) == 0) return false;
  // (x^2 + a x + b)(x^2 + c x + d) with b d = a0.
  for (i64 dv : divs) {
    for (i64 b : {dv, -dv}) {
      const i64 d = a0 / b;
      if (b != d) {
        const i128 num = static_cast<i128>(a1) - static_cast<i128>(b) * a3;
        const i128 den = static_cast<i128>(d) - b;
        if (num % den != 0) continue;
        const i128 a = num / den;
        const i128 c = a3 - a;
        if (a * c == static_cast<i128>(a2) - b - d) return false;
      } else {
        if (static_cast<i128>(a1) != static_cast<i128>(b) * a3) continue;
        const mpz_class disc = mpz_class(static_cast<long>(a3)) * a3 - 4 * (mpz_class(static_cast<long>(a2)) - 2 * b);
        if (is_perfect_square(disc)) return false;
      }
    }
  }
  return true;
}

Quartic::Quartic(i64 a3, i64 a2, i64 a1, i64 a0) : c_{a0, a1, a2, a3}, disc_(0) {
  const mpz_class d = quartic_discriminant(a3, a2, a1, a0);
  if (!d.fits_slong_p()) throw std::invalid_argument("quartic: discriminant does not fit in 64 bits");
  disc_ = d.get_si();
  if (!is_irreducible(a3, a2, a1, a0)) throw ReducibleError("quartic: " + to_string() + " is reducible over Q");
  if (disc_ == 0) throw std::invalid_argument("quartic: zero discriminant");
}

Quartic Quartic::parse(std::string_view text) {
  std::string s(text);
  std::string compact;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  if (compact.empty()) throw std::invalid_argument("quartic: empty polynomial");

  if (compact.find('x') == std::string::npos) {
    std::istringstream is(s);
    std::array<i64, 4> a{};
    for (auto& v : a)
      if (!(is >> v)) throw std::invalid_argument("quartic: expected four integers \"a3 a2 a1 a0\"");
    std::string rest;
    if (is >> rest) throw std::invalid_argument("quartic: trailing input after four coefficients");
    return Quartic(a[0], a[1], a[2], a[3]);
  }

  static const std::regex term(R"(([+-]?)(\d*)(\*?x(\^(\d+))?)?)");
  std::array<i64, 5> coef{};
  std::array<bool, 5> seen{};
  std::size_t pos = 0;
  while (pos < compact.size()) {
    std::smatch m;
    const std::string tail = compact.substr(pos);
    if (!std::regex_search(tail, m, term, std::regex_constants::match_continuous) || m.length(0) == 0)
      throw std::invalid_argument("quartic: cannot parse \"" + tail + "\"");
    if (pos > 0 && m[1].length() == 0) throw std::invalid_argument("quartic: missing sign before \"" + tail + "\"");
    const bool has_x = m[3].matched && m[3].length() > 0;
    if (!has_x && m[2].length() == 0) throw std::invalid_argument("quartic: dangling sign");
    if (m[3].matched && m[3].str()[0] == '*' && m[2].length() == 0)
      throw std::invalid_argument("quartic: '*' without coefficient");
    i64 c = m[2].length() ? std::stoll(m[2].str()) : 1;
    if (m[1] == "-") c = -c;
    int deg = 0;
    if (has_x) deg = m[5].matched ? std::stoi(m[5].str()) : 1;
    if (deg > 4) throw std::invalid_argument("quartic: degree exceeds 4");
    if (seen[deg]) throw std::invalid_argument("quartic: repeated term of degree " + std::to_string(deg));
    seen[deg] = true;
    coef[deg] = c;
    pos += m.length(0);
  }
  if (coef[4] != 1) throw std::invalid_argument("quartic: polynomial must be monic of degree 4");
  return Quartic(coef[3], coef[2], coef[1], coef[0]);
}

std::string Quartic::to_string() const {
  std::ostringstream os;
  os << "x^4";
  for (int deg = 3; deg >= 0; --deg) {
    const i64 c = c_[deg];
    if (c == 0) continue;
    os << (c < 0 ? " - " : " + ");
    const u64 mag = c < 0 ? static_cast<u64>(-(c + 1)) + 1 : static_cast<u64>(c);
    if (mag != 1 || deg == 0) os << mag;
    if (deg >= 1) os << "x";
    if (deg >= 2) os << "^" << deg;
  }
  return os.str();
}

i64 discriminant(const Quartic& f) { return f.disc(); }

std::vector<int> parts(FactorizationType t) {
  switch (t) {
    case FactorizationType::k1111: return {1, 1, 1, 1};
    case FactorizationType::k112: return {1, 1, 2};
    case FactorizationType::k13: return {1, 3};
    case FactorizationType::k22: return {2, 2};
    case FactorizationType::k4: return {4};
  }
  return {};
}

std::string to_string(FactorizationType t) { return to_string(Partition(parts(t))); }

FactorizationType factorization_type_from_parts(std::vector<int> p) {
  std::sort(p.begin(), p.end());
  for (auto t : kAllFactorizationTypes)
    if (parts(t) == p) return t;
  throw std::invalid_argument("not a partition of 4");
}

FactorizationType factorization_type_mod_p(const Quartic& f, u64 p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("factorization_type_mod_p: p must be prime");
  if (f.disc() % static_cast<i64>(p) == 0)
    throw std::invalid_argument("factorization_type_mod_p: p divides disc(f)");
  const QuarticRing ring(f, p);
  const auto xp = ring.pow({0, 1 % p, 0, 0}, p);
  switch (ring.gcd_degree_with_x_subtracted(xp)) {
    case 4: return FactorizationType::k1111;
    case 2: return FactorizationType::k112;
    case 1: return FactorizationType::k13;
    case 0: break;
    default: throw std::logic_error("factorization_type_mod_p: impossible root count");
  }
  const auto xpp = ring.pow(xp, p);
  return ring.gcd_degree_with_x_subtracted(xpp) == 4 ? FactorizationType::k22 : FactorizationType::k4;
}

bool has_root_mod_p(const Quartic& f, u64 p) {
  const QuarticRing ring(f, p);
  const auto xp = ring.pow({0, 1 % p, 0, 0}, p);
  return ring.gcd_degree_with_x_subtracted(xp) > 0;
}

Cubic resolvent_cubic(const Quartic& f) {
  const i64 a = f.a3(), b = f.a2(), c = f.a1(), d = f.a0();
  return {-b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)};
}

std::vector<i64> integer_roots(const Cubic& cu) {
  auto eval = [&](i64 y) {
    const i128 Y = y;
    return ((Y + cu.b2) * Y + cu.b1) * Y + cu.b0;
  };
  std::set<i64> roots;
  if (cu.b0 == 0) {
    roots.insert(0);
    // y^2 + b2 y + b1
    const mpz_class disc = mpz_class(static_cast<long>(cu.b2)) * cu.b2 - 4 * mpz_class(static_cast<long>(cu.b1));
    if (is_perfect_square(disc)) {
      const mpz_class s = sqrt(disc);
      const mpz_class nb = -mpz_class(static_cast<long>(cu.b2));
      for (const mpz_class& num : {mpz_class(nb + s), mpz_class(nb - s)})
        if (mpz_divisible_ui_p(num.get_mpz_t(), 2)) roots.insert(mpz_class(num / 2).get_si());
    }
  } else {
    for (i64 d : divisors_abs(cu.b0))
      for (i64 y : {d, -d})
        if (eval(y) == 0) roots.insert(y);
  }
  return {roots.begin(), roots.end()};
}

std::string to_string(GaloisType g) {
  switch (g) {
    case GaloisType::V4: return "V4";
    case GaloisType::C4: return "C4";
    case GaloisType::D4: return "D4";
    case GaloisType::A4: return "A4";
    case GaloisType::S4: return "S4";
  }
  return "?";
}

GaloisType galois_type_from_string(std::string_view name) {
  for (auto g : kAllGaloisTypes)
    if (to_string(g) == name) return g;
  throw std::invalid_argument("unknown Galois type \"" + std::string(name) + "\"");
}

int group_order(GaloisType g) {
  switch (g) {
    case GaloisType::V4:
    case GaloisType::C4: return 4;
    case GaloisType::D4: return 8;
    case GaloisType::A4: return 12;
    case GaloisType::S4: return 24;
  }
  return 0;
}

GaloisType classify_galois(const Quartic& f) {
  if (!is_irreducible(f.a3(), f.a2(), f.a1(), f.a0())) throw ReducibleError("classify_galois: f is reducible");
  const mpz_class disc(static_cast<long>(f.disc()));
  const auto roots = integer_roots(resolvent_cubic(f));
  if (roots.empty()) return is_perfect_square(disc) ? GaloisType::A4 : GaloisType::S4;
  if (roots.size() == 3) return GaloisType::V4;
  if (roots.size() != 1) throw std::logic_error("classify_galois: resolvent with a repeated root");
  // Both auxiliary quadratics x^2 - t x + a0 and x^2 + a3 x + (a2 - t) must
  // split over Q(sqrt(disc)) for the group to be cyclic.
  const mpz_class t(static_cast<long>(roots.front()));
  const mpz_class a3(static_cast<long>(f.a3())), a2(static_cast<long>(f.a2())), a0(static_cast<long>(f.a0()));
  auto splits = [&](const mpz_class& v) { return v == 0 || is_perfect_square(v) || is_perfect_square(v * disc); };
  return splits(t * t - 4 * a0) && splits(a3 * a3 - 4 * (a2 - t)) ? GaloisType::C4 : GaloisType::D4;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r{};
  for (int i = 0; i < 4; ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r{};
  for (std::uint8_t i = 0; i < 4; ++i) r[a[i]] = i;
  return r;
}

FactorizationType cycle_type(const Perm& a) {
  std::vector<int> lens;
  std::array<bool, 4> seen{};
  for (int i = 0; i < 4; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      ++len;
    }
    lens.push_back(len);
  }
  return factorization_type_from_parts(lens);
}

std::string to_cycle_string(const Perm& a) {
  std::string out;
  std::array<bool, 4> seen{};
  for (int i = 0; i < 4; ++i) {
    if (seen[i] || a[i] == i) continue;
    out += "(";
    for (int j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      if (out.back() != '(') out += " ";
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

bool PermGroup::contains(const Perm& a) const { return std::binary_search(elements.begin(), elements.end(), a); }

std::map<FactorizationType, int> PermGroup::cycle_type_counts() const {
  std::map<FactorizationType, int> counts;
  for (const auto& e : elements) ++counts[cycle_type(e)];
  return counts;
}

PermGroup generate_group(const std::vector<Perm>& generators) {
  std::set<Perm> seen{Perm{0, 1, 2, 3}};
  std::vector<Perm> frontier{Perm{0, 1, 2, 3}};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& g : frontier)
      for (const auto& s : generators) {
        const Perm h = compose(s, g);
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return PermGroup{{seen.begin(), seen.end()}};
}

PermGroup group_elements(GaloisType g) {
  const Perm c4{1, 2, 3, 0};         // (1 2 3 4)
  const Perm t13{2, 1, 0, 3};        // (1 3)
  const Perm t12{1, 0, 2, 3};        // (1 2)
  const Perm c3{1, 2, 0, 3};         // (1 2 3)
  const Perm d12_34{1, 0, 3, 2};     // (1 2)(3 4)
  const Perm d13_24{2, 3, 0, 1};     // (1 3)(2 4)
  switch (g) {
    case GaloisType::V4: return generate_group({d12_34, d13_24});
    case GaloisType::C4: return generate_group({c4});
    case GaloisType::D4: return generate_group({c4, t13});
    case GaloisType::A4: return generate_group({c3, d12_34});
    case GaloisType::S4: return generate_group({c4, t12});
  }
  throw std::logic_error("group_elements: unknown type");
}

mpq_class mean_rho(GaloisType g) {
  const auto group = group_elements(g);
  long hits = 0;
  for (const auto& e : group.elements)
    if (has_linear_factor(cycle_type(e))) ++hits;
  mpq_class m(hits, static_cast<long>(group.order()));
  m.canonicalize();
  return m;
}

std::string to_string(const Partition& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

Partition coset_orbit_type(const Perm& sigma) {
  const auto s4 = group_elements(GaloisType::S4);
  const Perm c3{1, 2, 0, 3};
  const std::vector<Perm> h = {Perm{0, 1, 2, 3}, c3, compose(c3, c3)};
  auto coset_of = [&](const Perm& g) {
    std::array<Perm, 3> c{compose(g, h[0]), compose(g, h[1]), compose(g, h[2])};
    std::sort(c.begin(), c.end());
    return c;
  };
  std::vector<std::array<Perm, 3>> cosets;
  for (const auto& g : s4.elements) {
    const auto c = coset_of(g);
    if (std::find(cosets.begin(), cosets.end(), c) == cosets.end()) cosets.push_back(c);
  }
  Partition orbits;
  std::vector<bool> done(cosets.size(), false);
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    if (done[i]) continue;
    int len = 0;
    Perm rep = cosets[i][0];
    for (;;) {
      const auto idx = static_cast<std::size_t>(
          std::find(cosets.begin(), cosets.end(), coset_of(rep)) - cosets.begin());
      if (done[idx]) break;
      done[idx] = true;
      ++len;
      rep = compose(sigma, rep);
    }
    orbits.push_back(len);
  }
  std::sort(orbits.begin(), orbits.end());
  return orbits;
}

bool realizable(FactorizationType t, GaloisType g) {
  const auto group = group_elements(g);
  return std::any_of(group.elements.begin(), group.elements.end(), [&](const Perm& e) { return cycle_type(e) == t; });
}

Partition frobenius_order_type(FactorizationType t, GaloisType g) {
  if (!realizable(t, g))
    throw std::invalid_argument("frobenius_order_type: " + to_string(t) + " is not a cycle type of " + to_string(g));
  int d = 1;
  for (int part : parts(t)) d = std::lcm(d, part);
  return Partition(static_cast<std::size_t>(group_order(g) / d), d);
}

std::map<FactorizationType, u64> type_census(const Quartic& f, u64 bound) {
  std::map<FactorizationType, u64> counts;
  if (bound < 2) return counts;
  const arith::PrimeTable table(std::max<u64>(bound, 2));
  for (u64 p : table.primes(bound)) {
    if (f.disc() % static_cast<i64>(p) == 0) continue;
    ++counts[factorization_type_mod_p(f, p)];
  }
  return counts;
}

std::optional<std::string> galois_cross_check(const Quartic& f, GaloisType g, u64 bound) {
  const auto census = type_census(f, bound);
  const auto expected = group_elements(g).cycle_type_counts();
  for (const auto& [t, n] : census)
    if (!expected.contains(t))
      return "type " + to_string(t) + " occurs mod " + std::to_string(n) + " primes but is not a cycle type of " +
             to_string(g);
  for (const auto& [t, n] : expected)
    if (!census.contains(t))
      return "cycle type " + to_string(t) + " of " + to_string(g) + " never occurs for primes up to " +
             std::to_string(bound);
  return std::nullopt;
}

GaloisType classify_galois_checked(const Quartic& f, u64 bound) {
  const GaloisType g = classify_galois(f);
  if (auto err = galois_cross_check(f, g, bound))
    throw ClassificationMismatch("Galois classification of " + f.to_string() + " as " + to_string(g) +
                                 " contradicts prime sampling: " + *err);
  return g;
}

}  // namespace els::quartic
