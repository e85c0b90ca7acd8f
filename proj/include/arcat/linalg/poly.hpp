#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <optional>
#include <random>
#include <vector>

#include "arcat/linalg/field.hpp"

namespace arcat {

/// Univariate polynomials as coefficient vectors, lowest degree first, no trailing zeros.
template <class F>
class PolyRing {
 public:
  using Elem = typename F::Elem;
  using Poly = std::vector<Elem>;

  explicit PolyRing(F field) : f_(std::move(field)) {}

  const F& field() const { return f_; }

  Poly& trim(Poly& a) const {
    while (!a.empty() && f_.is_zero(a.back())) a.pop_back();
    return a;
  }
  long degree(const Poly& a) const { return static_cast<long>(a.size()) - 1; }

  Poly x() const { return {f_.zero(), f_.one()}; }
  Poly constant(const Elem& c) const {
    Poly p{c};
    return trim(p);
  }

  Poly add(const Poly& a, const Poly& b) const {
    Poly c(std::max(a.size(), b.size()), f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = f_.add(c[i], b[i]);
    return trim(c);
  }
  Poly sub(const Poly& a, const Poly& b) const {
    Poly c(std::max(a.size(), b.size()), f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = f_.sub(c[i], b[i]);
    return trim(c);
  }
  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, f_.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f_.add(c[i + j], f_.mul(a[i], b[j]));
    return trim(c);
  }

  /// (quotient, remainder); b must be nonzero.
  std::pair<Poly, Poly> divmod(Poly a, const Poly& b) const {
    trim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1, f_.zero());
    auto lead_inv = f_.inv(b.back());
    for (std::size_t top = a.size(); top >= b.size(); --top) {
      std::size_t shift = top - b.size();
      auto c = f_.mul(a[top - 1], lead_inv);
      q[shift] = c;
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = f_.sub(a[shift + j], f_.mul(c, b[j]));
    }
    trim(a);
    trim(q);
    return {q, a};
  }
  Poly mod(const Poly& a, const Poly& m) const { return divmod(a, m).second; }

  Poly monic(Poly a) const {
    trim(a);
    if (a.empty()) return a;
    auto inv = f_.inv(a.back());
    for (auto& c : a) c = f_.mul(c, inv);
    return a;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      auto r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const {
    Poly r = constant(f_.one());
    base = mod(base, m);
    while (e) {
      if (e & 1) r = mod(mul(r, base), m);
      base = mod(mul(base, base), m);
      e >>= 1;
    }
    return r;
  }

  Elem eval(const Poly& a, const Elem& t) const {
    Elem r = f_.zero();
    for (std::size_t i = a.size(); i-- > 0;) r = f_.add(f_.mul(r, t), a[i]);
    return r;
  }

 private:
  F f_;
};

/// A nontrivial monic factor of a squarefree monic polynomial over F_p, or nullopt when the
/// polynomial is irreducible. Distinct-degree splitting, then Cantor-Zassenhaus.
inline std::optional<std::vector<PrimeField::Elem>> proper_factor(
    const PrimeField& f, const std::vector<PrimeField::Elem>& mu, std::mt19937_64& rng) {
  PolyRing<PrimeField> R(f);
  using Poly = std::vector<PrimeField::Elem>;
  const long n = R.degree(mu);
  if (n <= 1) return std::nullopt;
  const std::uint64_t p = f.characteristic();
  Poly h = R.x();
  for (long i = 1; 2 * i <= n; ++i) {
    h = R.powmod(h, p, mu);
    Poly g = R.gcd(mu, R.sub(h, R.x()));
    long dg = R.degree(g);
    if (dg > 0 && dg < n) return g;
    if (dg == n) {
      // all irreducible factors have degree i and there are n/i > 1 of them
      for (int attempt = 0; attempt < 256; ++attempt) {
        Poly a(n, f.zero());
        for (auto& c : a) c = f.from_int(static_cast<long long>(rng() % p));
        R.trim(a);
        if (R.degree(a) < 1) continue;
        Poly cand;
        if (p == 2) {
          Poly t = a, s = a;
          for (long k = 1; k < i; ++k) {
            s = R.mod(R.mul(s, s), mu);
            t = R.add(t, s);
          }
          cand = R.gcd(mu, t);
        } else {
          // a^((p^i - 1)/2) = (a^(1 + p + ... + p^(i-1)))^((p-1)/2)
          Poly norm = a, frob = a;
          for (long k = 1; k < i; ++k) {
            frob = R.powmod(frob, p, mu);
            norm = R.mod(R.mul(norm, frob), mu);
          }
          Poly b = R.powmod(norm, (p - 1) / 2, mu);
          cand = R.gcd(mu, R.sub(b, R.constant(f.one())));
        }
        long dc = R.degree(cand);
        if (dc > 0 && dc < n) return cand;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Over Q only rational roots are searched; returns a monic linear factor when one exists.
inline std::optional<std::vector<mpq_class>> proper_factor(const Rationals&,
                                                           const std::vector<mpq_class>& mu,
                                                           std::mt19937_64&) {
  if (mu.size() <= 2) return std::nullopt;
  mpz_class den = 1;
  for (const auto& c : mu) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> ic;
  for (const auto& c : mu) ic.push_back(mpz_class(c * den));
  if (ic[0] == 0) return std::vector<mpq_class>{mpq_class(0), mpq_class(1)};
  auto divisors = [](mpz_class v) -> std::optional<std::vector<mpz_class>> {
    v = abs(v);
    if (v > mpz_class("1000000000000")) return std::nullopt;
    std::vector<mpz_class> ds;
    for (mpz_class d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        if (d * d != v) ds.push_back(v / d);
      }
    return ds;
  };
  auto num = divisors(ic.front());
  auto lead = divisors(ic.back());
  if (!num || !lead) return std::nullopt;
  for (const auto& a : *num)
    for (const auto& b : *lead)
      for (int s : {1, -1}) {
        mpq_class r(s * a, b);
        r.canonicalize();
        mpq_class v = 0;
        for (std::size_t i = mu.size(); i-- > 0;) v = v * r + mu[i];
        if (v == 0) return std::vector<mpq_class>{mpq_class(-r), mpq_class(1)};
      }
  return std::nullopt;
}

}  // namespace arcat
