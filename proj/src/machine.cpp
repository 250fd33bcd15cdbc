#include "lal/machine.hpp"

#include <sstream>

namespace lal {

std::uint64_t env_modal_depth(const Environment& env) {
  std::uint64_t n = 0;
  for (const auto& f : env) {
    if (std::holds_alternative<BangFrame>(f) || std::holds_alternative<ParFrame>(f)) ++n;
  }
  return n;
}

void Store::push(const std::string& region, TermPtr value) {
  queues[region].push_back(std::move(value));
}

bool Store::empty(const std::string& region) const {
  auto it = queues.find(region);
  return it == queues.end() || it->second.empty();
}

TermPtr Store::pop(const std::string& region) {
  auto& q = queues.at(region);
  TermPtr v = q.front();
  q.pop_front();
  if (q.empty()) queues.erase(region);
  return v;
}

std::map<std::string, std::uint64_t> Store::sizes() const {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [r, q] : queues) {
    if (!q.empty()) out[r] = q.size();
  }
  return out;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? UINT64_MAX : r;
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
}

Stuck ill_formed(std::string detail) {
  return Stuck{StuckReason::IllFormed, "", std::move(detail)};
}

}  // namespace

StepResult step(const Configuration& c) {
  const TermPtr& m = c.focus;
  std::uint64_t steps = c.steps + 1;

  // Arithmetic on two integer literals; operands are syntactic values by
  // construction, anything but literals is stuck.
  if (const auto* a = std::get_if<Arith>(&m->node)) {
    const auto* l = std::get_if<IntLit>(&a->left->node);
    const auto* r = std::get_if<IntLit>(&a->right->node);
    if (!l || !r) return ill_formed("arithmetic on non-integer values");
    std::uint64_t v;
    switch (a->op) {
      case ArithOp::Add: v = sat_add(l->value, r->value); break;
      case ArithOp::Sub: v = l->value >= r->value ? l->value - r->value : 0; break;
      case ArithOp::Mul: v = sat_mul(l->value, r->value); break;
      default: return ill_formed("unknown arithmetic operator");
    }
    return Next{Configuration{int_lit(v), c.env, c.store, steps}};
  }

  if (is_value(m)) {
    if (c.env.empty()) return Terminal{m, c.store};
    const EnvFrame& top = c.env.back();
    Environment rest(c.env.begin(), c.env.end() - 1);
    if (const auto* tf = std::get_if<TermFrame>(&top)) {
      // <V, M (.) E>  ->  <M, V . E>
      Environment env2 = rest;
      env2.push_back(ValueFrame{m});
      return Next{Configuration{tf->term, std::move(env2), c.store, steps}};
    }
    if (const auto* vf = std::get_if<ValueFrame>(&top)) {
      // <\x.M, V . E>  ->  <M[V/x], E>
      const auto* l = std::get_if<Lam>(&m->node);
      if (!l) return ill_formed("application of a non-function value");
      return Next{Configuration{subst(l->body, l->binder, vf->value), std::move(rest), c.store,
                                steps}};
    }
    if (std::holds_alternative<BangFrame>(top)) {
      // <V, ! . E>  ->  <!V, E>
      return Next{Configuration{bang(m), std::move(rest), c.store, steps}};
    }
    // <V, $ . E>  ->  <$V, E>
    return Next{Configuration{par(m), std::move(rest), c.store, steps}};
  }

  if (const auto* ap = std::get_if<App>(&m->node)) {
    // <M N, E>  ->  <N, M (.) E>: the argument is evaluated first.
    Environment env2 = c.env;
    env2.push_back(TermFrame{ap->fn});
    return Next{Configuration{ap->arg, std::move(env2), c.store, steps}};
  }

  if (const auto* b = std::get_if<Bang>(&m->node)) {
    // Body is not a value here, otherwise the whole focus was a value.
    Environment env2 = c.env;
    env2.push_back(BangFrame{});
    return Next{Configuration{b->body, std::move(env2), c.store, steps}};
  }
  if (const auto* p = std::get_if<Par>(&m->node)) {
    Environment env2 = c.env;
    env2.push_back(ParFrame{});
    return Next{Configuration{p->body, std::move(env2), c.store, steps}};
  }

  if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    // <let !x = !V in M, E>  ->  <M[V/x], E>
    const auto* bv = std::get_if<Bang>(&lb->bound->node);
    if (!bv) return ill_formed("let ! on a value without a bang");
    return Next{
        Configuration{subst(lb->body, lb->binder, bv->body), c.env, c.store, steps}};
  }
  if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    const auto* pv = std::get_if<Par>(&lp->bound->node);
    if (!pv) return ill_formed("let $ on a value without a par");
    return Next{
        Configuration{subst(lp->body, lp->binder, pv->body), c.env, c.store, steps}};
  }

  if (const auto* g = std::get_if<Get>(&m->node)) {
    if (c.store.empty(g->region)) {
      return Stuck{StuckReason::EmptyRegion, g->region, "get on empty region " + g->region};
    }
    Store store2 = c.store;
    TermPtr v = store2.pop(g->region);
    return Next{Configuration{v, c.env, std::move(store2), steps}};
  }
  if (const auto* s = std::get_if<Set>(&m->node)) {
    if (!is_value(s->payload)) return ill_formed("set payload is not a value");
    Store store2 = c.store;
    store2.push(s->region, s->payload);
    return Next{Configuration{unit_val(), c.env, std::move(store2), steps}};
  }

  if (std::holds_alternative<Fold>(m->node) || std::holds_alternative<Unfold>(m->node)) {
    return ill_formed("fold or unfold reached the machine; erase first");
  }

  return ill_formed("no rule matches the focus");
}

Outcome eval_from(Configuration c, std::uint64_t fuel) {
  while (true) {
    StepResult r = step(c);
    if (const auto* t = std::get_if<Terminal>(&r)) {
      return Terminated{t->value, t->store, c.steps};
    }
    if (const auto* s = std::get_if<Stuck>(&r)) {
      return StuckAt{std::move(c), s->reason, s->region, s->detail};
    }
    if (c.steps >= fuel) return OutOfFuel{c.steps};
    c = std::move(std::get<Next>(r).config);
  }
}

Outcome eval(const TermPtr& m, const Store& s0, std::uint64_t fuel) {
  return eval_from(Configuration{m, {}, s0, 0}, fuel);
}

std::vector<Configuration> trace_from(Configuration c, std::uint64_t fuel) {
  std::vector<Configuration> out;
  out.push_back(c);
  while (true) {
    StepResult r = step(c);
    if (!std::holds_alternative<Next>(r)) return out;
    if (c.steps >= fuel) return out;
    c = std::move(std::get<Next>(r).config);
    out.push_back(c);
  }
}

std::vector<Configuration> trace(const TermPtr& m, const Store& s0, std::uint64_t fuel) {
  return trace_from(Configuration{m, {}, s0, 0}, fuel);
}

std::string show_env(const Environment& env) {
  std::ostringstream os;
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (const auto* vf = std::get_if<ValueFrame>(&*it)) {
      os << show_term(vf->value) << " . ";
    } else if (const auto* tf = std::get_if<TermFrame>(&*it)) {
      os << show_term(tf->term) << " (.) ";
    } else if (std::holds_alternative<BangFrame>(*it)) {
      os << "! . ";
    } else {
      os << "$ . ";
    }
  }
  os << "<>";
  return os.str();
}

std::string show_store(const Store& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [r, n] : s.sizes()) {
    if (!first) os << ", ";
    first = false;
    os << r << ": " << n;
  }
  os << "}";
  return os.str();
}

std::string show_config(const Configuration& c) {
  std::ostringstream os;
  os << "step " << c.steps << " | focus " << show_term(c.focus) << " | env-depth "
     << env_modal_depth(c.env) << " | store " << show_store(c.store);
  return os.str();
}

}  // namespace lal
