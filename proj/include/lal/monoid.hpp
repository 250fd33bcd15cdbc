#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace lal {

// Polynomial with nonnegative integer coefficients, least degree first.
// The empty vector is the zero polynomial; trailing zeros are normalized
// away so structural equality is semantic equality.
struct Poly {
  std::vector<std::uint64_t> coeffs;

  Poly() = default;
  explicit Poly(std::vector<std::uint64_t> cs);

  static Poly constant(std::uint64_t c);

  bool is_zero() const { return coeffs.empty(); }
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  mpz_class eval(const mpz_class& x) const;

  bool operator==(const Poly&) const = default;
};

// Coefficient-wise maximum: an upper bound of the pointwise maximum on
// naturals that stays a polynomial.
Poly cmax(const Poly& f, const Poly& g);

// Moves the coefficient of x^i to x^(a*i+b), i.e. x^b * f(x^a) for a >= 1.
Poly stretch(const Poly& f, std::uint64_t a, std::uint64_t b);

// Light-monoid element. All triples over naturals are admitted.
struct MonoidElem {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  Poly f;

  bool operator==(const MonoidElem&) const = default;
};

// (n,m,f) + (l,k,g) = (n+l, max(m,k), cmax(f,g)).
MonoidElem madd(const MonoidElem& p, const MonoidElem& q);

// ||(n,m,f)|| = n * f(m+n). Exact; values overflow 64 bits routinely.
mpz_class norm(const MonoidElem& p);

// bang(n,m,f) = (1, n+m, x^3 f(x^3)).
MonoidElem mbang(const MonoidElem& p);

// par(n,m,f) = (ceil(n/max(m,1)), m, x^2 f(x^2)). The ceiling and the
// max(m,1) guard make the first component total on naturals while keeping
// par(p+q) componentwise below par(p)+par(q).
MonoidElem mpar(const MonoidElem& p);

// F(n,m,f) = (1+n+m, m, x^3 f(x^3)); majorizes bang under addition.
MonoidElem mF(const MonoidElem& p);

// The numeral k as (k, 0, 1). The constant-1 polynomial keeps
// ||p + mnat(1)|| >= ||p|| + 1, which stepwise saturation needs; the zero
// polynomial would collapse the norm instead.
MonoidElem mnat(std::uint64_t k);

// One-hole bound context: a composition of adding a constant, bang and
// par, applied innermost-first.
struct MContext {
  struct Add {
    MonoidElem p;
  };
  struct Bang {};
  struct Par {};
  using Frame = std::variant<Add, Bang, Par>;

  std::vector<Frame> frames;
};

MonoidElem ctx_apply(const MContext& e, const MonoidElem& p);

// First r among samples with ||p+r|| > ||q+r||, if any. Refutation only:
// the preorder quantifies over the whole monoid and is not decided here.
std::optional<MonoidElem> leq_falsify(const MonoidElem& p, const MonoidElem& q,
                                      const std::vector<MonoidElem>& samples);

// "c0 + c1*x + c2*x^2"; the zero polynomial prints "0".
std::string show_poly(const Poly& f);

// "(n, m, <poly>)".
std::string show_elem(const MonoidElem& p);

}  // namespace lal
