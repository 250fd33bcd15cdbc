#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "lal/term.hpp"

namespace lal {

// Environment frames, innermost first; the terminal empty frame is implicit
// (an empty vector is the bare empty frame).
struct ValueFrame {
  TermPtr value;  // satisfies is_value
};
struct TermFrame {
  TermPtr term;
};
struct BangFrame {};
struct ParFrame {};
using EnvFrame = std::variant<ValueFrame, TermFrame, BangFrame, ParFrame>;
using Environment = std::vector<EnvFrame>;

// Number of modal frames (bang/par) in the environment.
std::uint64_t env_modal_depth(const Environment& env);

// Per-region FIFO queues; an absent key is an empty region. FIFO makes the
// nondeterministic multiset semantics reproducible: take the oldest value.
struct Store {
  std::map<std::string, std::deque<TermPtr>> queues;

  void push(const std::string& region, TermPtr value);
  bool empty(const std::string& region) const;
  // Precondition: !empty(region).
  TermPtr pop(const std::string& region);
  // Total values held, per region, dropping empty queues.
  std::map<std::string, std::uint64_t> sizes() const;
};

struct Configuration {
  TermPtr focus;
  Environment env;
  Store store;
  std::uint64_t steps = 0;
};

enum class StuckReason { EmptyRegion, IllFormed };

struct Next {
  Configuration config;
};
struct Terminal {
  TermPtr value;
  Store store;
};
struct Stuck {
  StuckReason reason;
  std::string region;  // set for EmptyRegion
  std::string detail;
};
using StepResult = std::variant<Next, Terminal, Stuck>;

// Applies the single matching transition rule. Terminal when the focus is a
// value over the empty frame; Stuck when no rule matches.
StepResult step(const Configuration& c);

struct Terminated {
  TermPtr value;
  Store store;
  std::uint64_t steps;
};
struct OutOfFuel {
  std::uint64_t steps;
};
struct StuckAt {
  Configuration config;
  StuckReason reason;
  std::string region;
  std::string detail;
};
using Outcome = std::variant<Terminated, OutOfFuel, StuckAt>;

Outcome eval_from(Configuration c, std::uint64_t fuel);
Outcome eval(const TermPtr& m, const Store& s0, std::uint64_t fuel);

// Every configuration visited in order, initial one included; a terminated
// run of n steps yields n+1 configurations.
std::vector<Configuration> trace_from(Configuration c, std::uint64_t fuel);
std::vector<Configuration> trace(const TermPtr& m, const Store& s0, std::uint64_t fuel);

std::string show_env(const Environment& env);
std::string show_store(const Store& s);
// "step k | focus <term> | env-depth d | store {r: len}"
std::string show_config(const Configuration& c);

}  // namespace lal
