#include <algorithm>
#include <map>

#include "krull/groebner.hpp"

namespace krull {

namespace {

mpz_class pollard_rho(const mpz_class& n) {
  // Brent's cycle variant; n odd composite, no small factors
  for (unsigned c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      mpz_class diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;  // cycle without factor; retry with another c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out[n] += 1;
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n) {
  std::map<mpz_class, unsigned> acc;
  mpz_class m = n >= 0 ? n : mpz_class(-n);
  if (m <= 1) return {};
  for (mpz_class p = 2; p <= 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      acc[p] += 1;
      m /= p;
    }
  }
  if (m > 1) {
    if (mpz_probab_prime_p(m.get_mpz_t(), 40))
      acc[m] += 1;
    else
      factor_into(m, acc);
  }
  return {acc.begin(), acc.end()};
}

mpz_class radical_of_integer(const mpz_class& n) {
  mpz_class r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

std::pair<mpz_class, std::vector<mpz_class>> gcd_combination(const std::vector<mpz_class>& gens) {
  mpz_class g = 0;
  std::vector<mpz_class> c(gens.size(), 0);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] == 0) continue;
    if (g == 0) {
      g = gens[i];
      c.assign(gens.size(), 0);
      c[i] = 1;
      continue;
    }
    mpz_class g2, s, t;
    mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), gens[i].get_mpz_t());
    for (auto& x : c) x *= s;
    c[i] += t;
    g = g2;
  }
  if (g < 0) {
    g = -g;
    for (auto& x : c) x = -x;
  }
  return {g, c};
}

}  // namespace krull
