#include "lal/monoid.hpp"

#include <algorithm>
#include <sstream>

namespace lal {

namespace {

void trim(std::vector<std::uint64_t>& cs) {
  while (!cs.empty() && cs.back() == 0) cs.pop_back();
}

// Horner evaluation in unsigned __int128 with overflow detection; returns
// false when any intermediate would not fit. Inputs in the test and corpus
// ranges nearly always fit, which keeps bulk norm computation off gmp.
bool eval_u128(const std::vector<std::uint64_t>& cs, std::uint64_t x,
               unsigned __int128* out) {
  unsigned __int128 acc = 0;
  for (std::size_t i = cs.size(); i-- > 0;) {
    unsigned __int128 prod;
    if (__builtin_mul_overflow(acc, (unsigned __int128)x, &prod)) return false;
    if (__builtin_add_overflow(prod, (unsigned __int128)cs[i], &acc)) return false;
  }
  *out = acc;
  return true;
}

mpz_class mpz_of_u128(unsigned __int128 v) {
  mpz_class hi = (std::uint64_t)(v >> 64);
  hi <<= 64;
  hi += (std::uint64_t)v;
  return hi;
}

}  // namespace

Poly::Poly(std::vector<std::uint64_t> cs) : coeffs(std::move(cs)) { trim(coeffs); }

Poly Poly::constant(std::uint64_t c) {
  Poly p;
  if (c != 0) p.coeffs.push_back(c);
  return p;
}

mpz_class Poly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs[i];
  }
  return acc;
}

Poly cmax(const Poly& f, const Poly& g) {
  Poly out;
  out.coeffs.resize(std::max(f.coeffs.size(), g.coeffs.size()), 0);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    std::uint64_t a = i < f.coeffs.size() ? f.coeffs[i] : 0;
    std::uint64_t b = i < g.coeffs.size() ? g.coeffs[i] : 0;
    out.coeffs[i] = std::max(a, b);
  }
  trim(out.coeffs);
  return out;
}

Poly stretch(const Poly& f, std::uint64_t a, std::uint64_t b) {
  Poly out;
  if (f.coeffs.empty()) return out;
  out.coeffs.resize(a * (f.coeffs.size() - 1) + b + 1, 0);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] != 0) out.coeffs[a * i + b] = f.coeffs[i];
  }
  trim(out.coeffs);
  return out;
}

MonoidElem madd(const MonoidElem& p, const MonoidElem& q) {
  return MonoidElem{p.n + q.n, std::max(p.m, q.m), cmax(p.f, q.f)};
}

mpz_class norm(const MonoidElem& p) {
  std::uint64_t x;
  if (!__builtin_add_overflow(p.m, p.n, &x)) {
    unsigned __int128 fx;
    if (eval_u128(p.f.coeffs, x, &fx)) {
      unsigned __int128 res;
      if (!__builtin_mul_overflow(fx, (unsigned __int128)p.n, &res)) {
        return mpz_of_u128(res);
      }
    }
  }
  mpz_class big_x = mpz_class(p.m) + mpz_class(p.n);
  return mpz_class(p.n) * p.f.eval(big_x);
}

MonoidElem mbang(const MonoidElem& p) {
  return MonoidElem{1, p.n + p.m, stretch(p.f, 3, 3)};
}

MonoidElem mpar(const MonoidElem& p) {
  std::uint64_t d = std::max<std::uint64_t>(p.m, 1);
  return MonoidElem{(p.n + d - 1) / d, p.m, stretch(p.f, 2, 2)};
}

MonoidElem mF(const MonoidElem& p) {
  return MonoidElem{1 + p.n + p.m, p.m, stretch(p.f, 3, 3)};
}

MonoidElem mnat(std::uint64_t k) { return MonoidElem{k, 0, Poly::constant(1)}; }

MonoidElem ctx_apply(const MContext& e, const MonoidElem& p) {
  MonoidElem acc = p;
  for (const auto& frame : e.frames) {
    if (const auto* add = std::get_if<MContext::Add>(&frame)) {
      acc = madd(acc, add->p);
    } else if (std::holds_alternative<MContext::Bang>(frame)) {
      acc = mbang(acc);
    } else {
      acc = mpar(acc);
    }
  }
  return acc;
}

std::optional<MonoidElem> leq_falsify(const MonoidElem& p, const MonoidElem& q,
                                      const std::vector<MonoidElem>& samples) {
  for (const auto& r : samples) {
    if (norm(madd(p, r)) > norm(madd(q, r))) return r;
  }
  return std::nullopt;
}

std::string show_poly(const Poly& f) {
  if (f.coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << f.coeffs[i];
    } else {
      if (f.coeffs[i] != 1) os << f.coeffs[i] << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string show_elem(const MonoidElem& p) {
  std::ostringstream os;
  os << "(" << p.n << ", " << p.m << ", " << show_poly(p.f) << ")";
  return os.str();
}

}  // namespace lal
