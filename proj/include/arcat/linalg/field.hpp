#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "arcat/error.hpp"

namespace arcat {

/// The prime field F_p, p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 101) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31)) {
      throw PreconditionError("F_p requires a prime p < 2^31, got " + std::to_string(p));
    }
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  std::uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
  }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  std::string to_string(Elem a) const { return std::to_string(a); }

  std::string name() const { return "F_" + std::to_string(p_); }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, backed by GMP. Elements are always canonicalized.
class Rationals {
 public:
  using Elem = mpq_class;

  std::uint32_t characteristic() const { return 0; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
  Elem neg(const Elem& a) const { return Elem(-a); }
  Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r(1);
    while (e) {
      if (e & 1) r *= a;
      a *= a;
      e >>= 1;
    }
    return r;
  }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero in Q");
    return Elem(1 / a);
  }
  Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  std::string name() const { return "Q"; }
  bool operator==(const Rationals&) const { return true; }
};

template <class F>
concept ExactField = requires(const F& f, typename F::Elem a) {
  { f.zero() } -> std::convertible_to<typename F::Elem>;
  { f.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { f.inv(a) } -> std::convertible_to<typename F::Elem>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
};

}  // namespace arcat
