#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "lal/machine.hpp"
#include "lal/monoid.hpp"
#include "lal/program.hpp"
#include "lal/typecheck.hpp"

namespace lal {

// Weight of a typing derivation. contrib records, per derivation node id,
// the constant the node adds locally (before any transformation applied by
// an enclosing promotion); nodes that add nothing have no entry.
struct Weight {
  MonoidElem total;
  std::map<std::uint64_t, MonoidElem> contrib;
};

Weight infer_weight(const DerivPtr& d);

// The step bound certified by a weight: its norm.
mpz_class bound_of(const Weight& w);
mpz_class bound_of(const MonoidElem& p);

// True when the machine, started at c with the step counter reset, reaches a
// terminal configuration in at most norm(p) steps.
bool pole_member(const Configuration& c, const MonoidElem& p);

struct VerifyReport {
  std::string name;
  std::uint64_t size = 0;
  std::uint64_t depth = 0;
  MonoidElem weight;
  mpz_class bound;
  std::optional<std::uint64_t> steps;
  std::string outcome;  // terminated | out_of_fuel | empty_region | ill_formed
  bool ok = false;
  std::optional<mpz_class> margin;  // bound - steps, when terminated
};

// Type-checks prog, infers its weight, then runs the erased main term with
// fuel min(bound, fuel_cap) and compares measured steps against the bound.
VerifyReport verify(const Program& prog, const std::string& name, std::uint64_t fuel_cap);

// Stable field order; bound and margin are emitted as JSON numbers when they
// fit in 64 bits and as decimal strings otherwise.
nlohmann::ordered_json report_json(const VerifyReport& r);

}  // namespace lal
