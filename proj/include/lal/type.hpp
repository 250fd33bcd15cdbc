#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

namespace lal {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct TVar {
  std::string name;
};
struct UnitT {};
struct NatT {};
struct Lolli {
  TypePtr from;
  TypePtr to;
};
struct BangT {
  TypePtr body;
};
struct ParT {
  TypePtr body;
};
struct MuT {
  std::string var;
  TypePtr body;
};
struct RegT {
  std::string region;
  TypePtr content;
};

struct Type {
  std::variant<TVar, UnitT, NatT, Lolli, BangT, ParT, MuT, RegT> node;
};

TypePtr tvar(std::string name);
TypePtr unit_t();
TypePtr nat_t();
TypePtr lolli(TypePtr from, TypePtr to);
TypePtr bang_t(TypePtr body);
TypePtr par_t(TypePtr body);
TypePtr mu_t(std::string var, TypePtr body);
TypePtr reg_t(std::string region, TypePtr content);

// Syntactic equality up to renaming of mu-bound variables.
bool type_equal(const TypePtr& a, const TypePtr& b);

// a with every free occurrence of x replaced by b; capture-avoiding.
TypePtr subst_type(const TypePtr& a, const std::string& x, const TypePtr& b);

std::set<std::string> free_tvars(const TypePtr& a);

// Every free occurrence of the binder of each mu lies under at least one
// bang or par constructor within that mu's body.
bool mu_guarded(const TypePtr& a);

std::string show_type(const TypePtr& a);

}  // namespace lal
