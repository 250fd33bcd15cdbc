#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>

#include "lal/type.hpp"

namespace lal {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Var {
  std::string name;
};
struct Lam {
  std::string binder;
  TypePtr ann;
  TermPtr body;
};
struct RegionConst {
  std::string region;
};
struct UnitVal {};
struct IntLit {
  std::uint64_t value;
};
enum class ArithOp { Add, Sub, Mul };
struct Arith {
  ArithOp op;
  TermPtr left;
  TermPtr right;
};
struct Bang {
  TermPtr body;
};
struct Par {
  TermPtr body;
};
struct App {
  TermPtr fn;
  TermPtr arg;
};
struct LetBang {
  std::string binder;
  TermPtr bound;
  TermPtr body;
};
struct LetPar {
  std::string binder;
  TermPtr bound;
  TermPtr body;
};
struct Get {
  std::string region;
};
struct Set {
  std::string region;
  TermPtr payload;
};
struct Fold {
  TypePtr ann;  // the mu type folded into
  TermPtr body;
};
struct Unfold {
  TermPtr body;
};

struct Term {
  std::variant<Var, Lam, RegionConst, UnitVal, IntLit, Arith, Bang, Par, App,
               LetBang, LetPar, Get, Set, Fold, Unfold>
      node;
};

TermPtr var(std::string name);
TermPtr lam(std::string binder, TypePtr ann, TermPtr body);
TermPtr region_const(std::string region);
TermPtr unit_val();
TermPtr int_lit(std::uint64_t value);
TermPtr arith(ArithOp op, TermPtr left, TermPtr right);
TermPtr bang(TermPtr body);
TermPtr par(TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr let_bang(std::string binder, TermPtr bound, TermPtr body);
TermPtr let_par(std::string binder, TermPtr bound, TermPtr body);
TermPtr get(std::string region);
TermPtr set(std::string region, TermPtr payload);
TermPtr fold(TypePtr ann, TermPtr body);
TermPtr unfold(TermPtr body);

// Values: variables, lambdas, region constants, unit, integers, and bang/par
// of a value. Fold and unfold are never values.
bool is_value(const TermPtr& m);

// Number of abstract-syntax nodes.
std::uint64_t term_size(const TermPtr& m);

// Maximum number of enclosing bang/par constructors over all occurrences;
// fold and unfold are transparent.
std::uint64_t term_depth(const TermPtr& m);

std::set<std::string> free_vars(const TermPtr& m);

// Free occurrences of x in m, counted with multiplicity.
std::uint64_t count_occurrences(const TermPtr& m, const std::string& x);

// Total free-variable occurrences in m, counted with multiplicity.
std::uint64_t total_free_occurrences(const TermPtr& m);

// m with every free occurrence of x replaced by v; capture-avoiding, so
// binders in m may be renamed. v must be a value.
TermPtr subst(const TermPtr& m, const std::string& x, const TermPtr& v);

bool alpha_equal(const TermPtr& a, const TermPtr& b);

// Concrete syntax; parse(show_term(m)) reproduces m exactly.
std::string show_term(const TermPtr& m);

// A name based on `base` that avoids every name in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

}  // namespace lal
