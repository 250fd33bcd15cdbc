#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lal/program.hpp"
#include "lal/term.hpp"
#include "lal/type.hpp"

namespace lal {

enum class Rule {
  IntR,
  ArithR,
  VarR,
  UnitR,
  RegionR,
  ContrR,   // never emitted: contractions are counted on the merging node
  WeakR,    // never emitted: weakening is implicit
  LamR,
  AppR,
  BangPromR,
  ParPromR,
  BangElimR,
  ParElimR,
  GetR,
  SetR,
  FoldR,
  UnfoldR,
};

const char* rule_name(Rule r);

enum class Usage { LamU, ParU, BangU };

char usage_mark(Usage u);

struct CtxEntry {
  std::string name;
  Usage usage;  // usage at this judgment: premise side of a crossed modality reads as lambda
  TypePtr type;
};

struct DerivNode;
using DerivPtr = std::shared_ptr<const DerivNode>;

struct DerivNode {
  Rule rule;
  std::uint64_t id;  // preorder position, stable across runs
  std::uint64_t delta;
  TermPtr term;
  TypePtr type;
  std::vector<CtxEntry> ctx;
  std::vector<DerivPtr> kids;
  std::uint64_t contractions = 0;  // bang-usage variables shared by both children
};

enum class TypeErrorKind {
  UsageViolation,
  DepthMismatch,
  NonValueUnderBang,
  TooManyFreeVarsUnderBang,
  UnguardedMu,
  NegativeDepth,
  UnknownRegion,
  RegionTypeMismatch,
  WFError,
  Mismatch,
  UnboundVariable,
};

const char* type_error_kind_name(TypeErrorKind k);

struct TypeError : std::runtime_error {
  TypeErrorKind kind;

  TypeError(TypeErrorKind kind_, const std::string& message)
      : std::runtime_error(std::string(type_error_kind_name(kind_)) + ": " + message),
        kind(kind_) {}
};

// region name -> (depth, content type)
using RegionContext = std::map<std::string, std::pair<std::uint64_t, TypePtr>>;

RegionContext region_context(const Program& prog);

// Region occurrences in a type must name declared regions and carry exactly
// the declared content type. Throws TypeError(UnknownRegion|RegionTypeMismatch).
void wf_type(const RegionContext& regions, const TypePtr& a);

// Full program check at its effective level; returns the derivation of
// regions; |- main : A. Throws TypeError.
DerivPtr check(const Program& prog);

// Check a closed term against a region context at a given judgment depth.
DerivPtr check_term(const RegionContext& regions, const TermPtr& m, std::uint64_t delta);

// Removes fold/unfold; the machine has no rule for them.
TermPtr erase(const TermPtr& m);

// One node per line: "rule | depth d | ctx |- term : type | contractions k".
std::string show_derivation(const DerivPtr& d);

std::string show_judgment(const DerivNode& d);

}  // namespace lal
