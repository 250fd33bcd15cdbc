#include "lal/typecheck.hpp"

#include <algorithm>
#include <sstream>

namespace lal {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::IntR: return "int";
    case Rule::ArithR: return "arith";
    case Rule::VarR: return "v";
    case Rule::UnitR: return "u";
    case Rule::RegionR: return "r";
    case Rule::ContrR: return "c";
    case Rule::WeakR: return "w";
    case Rule::LamR: return "lam";
    case Rule::AppR: return "app";
    case Rule::BangPromR: return "bang-prom";
    case Rule::ParPromR: return "par-prom";
    case Rule::BangElimR: return "bang-elim";
    case Rule::ParElimR: return "par-elim";
    case Rule::GetR: return "get";
    case Rule::SetR: return "set";
    case Rule::FoldR: return "fold";
    case Rule::UnfoldR: return "unfold";
  }
  return "?";
}

char usage_mark(Usage u) {
  switch (u) {
    case Usage::LamU: return '\\';
    case Usage::ParU: return '$';
    case Usage::BangU: return '!';
  }
  return '?';
}

const char* type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UsageViolation: return "UsageViolation";
    case TypeErrorKind::DepthMismatch: return "DepthMismatch";
    case TypeErrorKind::NonValueUnderBang: return "NonValueUnderBang";
    case TypeErrorKind::TooManyFreeVarsUnderBang: return "TooManyFreeVarsUnderBang";
    case TypeErrorKind::UnguardedMu: return "UnguardedMu";
    case TypeErrorKind::NegativeDepth: return "NegativeDepth";
    case TypeErrorKind::UnknownRegion: return "UnknownRegion";
    case TypeErrorKind::RegionTypeMismatch: return "RegionTypeMismatch";
    case TypeErrorKind::WFError: return "WFError";
    case TypeErrorKind::Mismatch: return "Mismatch";
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
  }
  return "TypeError";
}

RegionContext region_context(const Program& prog) {
  RegionContext regions;
  for (const auto& r : prog.regions) {
    if (!regions.emplace(r.name, std::make_pair(r.depth, r.content)).second) {
      throw TypeError(TypeErrorKind::WFError, "duplicate region name: " + r.name);
    }
  }
  return regions;
}

namespace {

void wf_type_rec(const RegionContext& regions, const TypePtr& a) {
  if (const auto* f = std::get_if<Lolli>(&a->node)) {
    wf_type_rec(regions, f->from);
    wf_type_rec(regions, f->to);
  } else if (const auto* b = std::get_if<BangT>(&a->node)) {
    wf_type_rec(regions, b->body);
  } else if (const auto* p = std::get_if<ParT>(&a->node)) {
    wf_type_rec(regions, p->body);
  } else if (const auto* m = std::get_if<MuT>(&a->node)) {
    wf_type_rec(regions, m->body);
  } else if (const auto* r = std::get_if<RegT>(&a->node)) {
    auto it = regions.find(r->region);
    if (it == regions.end()) {
      throw TypeError(TypeErrorKind::UnknownRegion, "unknown region in type: " + r->region);
    }
    if (!type_equal(r->content, it->second.second)) {
      throw TypeError(TypeErrorKind::RegionTypeMismatch,
                      "region " + r->region + " holds " + show_type(it->second.second) +
                          ", not " + show_type(r->content));
    }
    wf_type_rec(regions, r->content);
  }
}

class Checker {
 public:
  explicit Checker(const RegionContext& regions) : regions_(regions) {}

  DerivPtr run(const TermPtr& m, std::uint64_t delta) {
    Synth s = synth(m, delta);
    return s.deriv;
  }

 private:
  struct Bind {
    Usage usage;
    TypePtr type;
    std::size_t mark;  // modal stack height at binding
  };
  using Occ = std::map<std::string, std::uint64_t>;
  struct Synth {
    TypePtr type;
    DerivPtr deriv;
    Occ occ;
  };

  const RegionContext& regions_;
  std::uint64_t next_id_ = 0;
  std::vector<char> modal_stack_;  // 'b' for bang, 'p' for par
  std::map<std::string, std::vector<Bind>> scope_;

  const Bind& active_bind(const std::string& name) const {
    return scope_.at(name).back();
  }

  DerivPtr make_node(Rule rule, std::uint64_t id, std::uint64_t delta, const TermPtr& term,
                     TypePtr type, std::vector<DerivPtr> kids, const Occ& occ,
                     std::uint64_t contractions) const {
    auto node = std::make_shared<DerivNode>();
    node->rule = rule;
    node->id = id;
    node->delta = delta;
    node->term = term;
    node->type = std::move(type);
    node->kids = std::move(kids);
    node->contractions = contractions;
    for (const auto& [name, count] : occ) {
      if (count == 0) continue;
      const Bind& b = active_bind(name);
      std::size_t crossings = modal_stack_.size() - b.mark;
      // Inside a crossed modality the premise sees the variable as
      // lambda-usage; at its own level it carries the declared usage.
      Usage local = crossings == 0 ? b.usage : Usage::LamU;
      node->ctx.push_back(CtxEntry{name, local, b.type});
    }
    return node;
  }

  // Merges child occurrence counts; counts one contraction per bang-usage
  // variable shared by both sides.
  std::uint64_t merge_occ(Occ& into, const Occ& from) {
    std::uint64_t contractions = 0;
    for (const auto& [name, count] : from) {
      auto it = into.find(name);
      if (it == into.end()) {
        into.emplace(name, count);
        continue;
      }
      if (active_bind(name).usage == Usage::BangU) ++contractions;
      it->second += count;
    }
    return contractions;
  }

  void check_annotation(const TypePtr& a) {
    if (!mu_guarded(a)) {
      throw TypeError(TypeErrorKind::UnguardedMu,
                      "unguarded recursive type in annotation: " + show_type(a));
    }
    wf_type_rec(regions_, a);
  }

  std::pair<std::uint64_t, TypePtr> region_info(const std::string& r) {
    auto it = regions_.find(r);
    if (it == regions_.end()) {
      throw TypeError(TypeErrorKind::UnknownRegion, "unknown region: " + r);
    }
    return it->second;
  }

  void check_region_depth(const std::string& r, std::uint64_t delta_r, std::uint64_t delta) {
    if (delta != delta_r) {
      throw TypeError(TypeErrorKind::DepthMismatch,
                      "region " + r + " is fixed at depth " + std::to_string(delta_r) +
                          " but is accessed at depth " + std::to_string(delta));
    }
  }

  Synth synth(const TermPtr& m, std::uint64_t delta) {
    std::uint64_t id = next_id_++;

    if (const auto* v = std::get_if<Var>(&m->node)) {
      auto it = scope_.find(v->name);
      if (it == scope_.end() || it->second.empty()) {
        throw TypeError(TypeErrorKind::UnboundVariable, "unbound variable: " + v->name);
      }
      const Bind& b = it->second.back();
      std::size_t crossings = modal_stack_.size() - b.mark;
      switch (b.usage) {
        case Usage::LamU:
          if (crossings != 0) {
            throw TypeError(TypeErrorKind::UsageViolation,
                            "lambda-bound " + v->name + " occurs under a modality");
          }
          break;
        case Usage::ParU:
          if (crossings != 1 || modal_stack_[b.mark] != 'p') {
            throw TypeError(TypeErrorKind::UsageViolation,
                            "par-bound " + v->name +
                                " must occur under exactly one par modality");
          }
          break;
        case Usage::BangU:
          if (crossings != 1) {
            throw TypeError(TypeErrorKind::UsageViolation,
                            "bang-bound " + v->name +
                                " must occur under exactly one modality");
          }
          break;
      }
      Occ occ{{v->name, 1}};
      return Synth{b.type, make_node(Rule::VarR, id, delta, m, b.type, {}, occ, 0), occ};
    }

    if (std::holds_alternative<UnitVal>(m->node)) {
      return Synth{unit_t(), make_node(Rule::UnitR, id, delta, m, unit_t(), {}, {}, 0), {}};
    }
    if (std::holds_alternative<IntLit>(m->node)) {
      return Synth{nat_t(), make_node(Rule::IntR, id, delta, m, nat_t(), {}, {}, 0), {}};
    }

    if (const auto* rc = std::get_if<RegionConst>(&m->node)) {
      auto [delta_r, content] = region_info(rc->region);
      check_region_depth(rc->region, delta_r, delta);
      TypePtr ty = reg_t(rc->region, content);
      return Synth{ty, make_node(Rule::RegionR, id, delta, m, ty, {}, {}, 0), {}};
    }

    if (const auto* a = std::get_if<Arith>(&m->node)) {
      Synth l = synth(a->left, delta);
      Synth r = synth(a->right, delta);
      if (!std::holds_alternative<NatT>(l.type->node) ||
          !std::holds_alternative<NatT>(r.type->node)) {
        throw TypeError(TypeErrorKind::Mismatch, "arithmetic on non-Nat operands");
      }
      Occ occ = l.occ;
      std::uint64_t contractions = merge_occ(occ, r.occ);
      return Synth{nat_t(),
                   make_node(Rule::ArithR, id, delta, m, nat_t(), {l.deriv, r.deriv}, occ,
                             contractions),
                   occ};
    }

    if (const auto* l = std::get_if<Lam>(&m->node)) {
      check_annotation(l->ann);
      scope_[l->binder].push_back(Bind{Usage::LamU, l->ann, modal_stack_.size()});
      Synth body = synth(l->body, delta);
      scope_[l->binder].pop_back();
      auto it = body.occ.find(l->binder);
      if (it != body.occ.end()) {
        if (it->second > 1) {
          throw TypeError(TypeErrorKind::UsageViolation,
                          "lambda-bound " + l->binder + " occurs more than once");
        }
        body.occ.erase(it);
      }
      TypePtr ty = lolli(l->ann, body.type);
      return Synth{ty, make_node(Rule::LamR, id, delta, m, ty, {body.deriv}, body.occ, 0),
                   body.occ};
    }

    if (const auto* ap = std::get_if<App>(&m->node)) {
      Synth fn = synth(ap->fn, delta);
      Synth arg = synth(ap->arg, delta);
      const auto* f = std::get_if<Lolli>(&fn.type->node);
      if (!f) {
        throw TypeError(TypeErrorKind::Mismatch,
                        "application of a non-function of type " + show_type(fn.type));
      }
      if (!type_equal(f->from, arg.type)) {
        throw TypeError(TypeErrorKind::Mismatch, "argument has type " + show_type(arg.type) +
                                                     ", expected " + show_type(f->from));
      }
      Occ occ = fn.occ;
      std::uint64_t contractions = merge_occ(occ, arg.occ);
      return Synth{f->to,
                   make_node(Rule::AppR, id, delta, m, f->to, {fn.deriv, arg.deriv}, occ,
                             contractions),
                   occ};
    }

    if (const auto* b = std::get_if<Bang>(&m->node)) {
      if (delta == 0) {
        throw TypeError(TypeErrorKind::NegativeDepth,
                        "bang promotion below depth 0 in " + show_term(m));
      }
      if (!is_value(b->body)) {
        throw TypeError(TypeErrorKind::NonValueUnderBang,
                        "bang applies to values only: " + show_term(m));
      }
      modal_stack_.push_back('b');
      Synth body = synth(b->body, delta - 1);
      modal_stack_.pop_back();
      std::uint64_t free_occurrences = 0;
      for (const auto& [name, count] : body.occ) free_occurrences += count;
      if (free_occurrences > 1) {
        throw TypeError(TypeErrorKind::TooManyFreeVarsUnderBang,
                        "bang body has " + std::to_string(free_occurrences) +
                            " free occurrences, at most one is allowed");
      }
      TypePtr ty = bang_t(body.type);
      return Synth{ty, make_node(Rule::BangPromR, id, delta, m, ty, {body.deriv}, body.occ, 0),
                   body.occ};
    }

    if (const auto* p = std::get_if<Par>(&m->node)) {
      if (delta == 0) {
        throw TypeError(TypeErrorKind::NegativeDepth,
                        "par promotion below depth 0 in " + show_term(m));
      }
      modal_stack_.push_back('p');
      Synth body = synth(p->body, delta - 1);
      modal_stack_.pop_back();
      TypePtr ty = par_t(body.type);
      return Synth{ty, make_node(Rule::ParPromR, id, delta, m, ty, {body.deriv}, body.occ, 0),
                   body.occ};
    }

    if (const auto* lb = std::get_if<LetBang>(&m->node)) {
      if (!is_value(lb->bound)) {
        throw TypeError(TypeErrorKind::Mismatch, "let-bound term must be a value");
      }
      Synth bound = synth(lb->bound, delta);
      const auto* bt = std::get_if<BangT>(&bound.type->node);
      if (!bt) {
        throw TypeError(TypeErrorKind::Mismatch,
                        "let ! binds a bang value, got " + show_type(bound.type));
      }
      scope_[lb->binder].push_back(Bind{Usage::BangU, bt->body, modal_stack_.size()});
      Synth body = synth(lb->body, delta);
      scope_[lb->binder].pop_back();
      body.occ.erase(lb->binder);
      Occ occ = bound.occ;
      std::uint64_t contractions = merge_occ(occ, body.occ);
      return Synth{body.type,
                   make_node(Rule::BangElimR, id, delta, m, body.type,
                             {bound.deriv, body.deriv}, occ, contractions),
                   occ};
    }

    if (const auto* lp = std::get_if<LetPar>(&m->node)) {
      if (!is_value(lp->bound)) {
        throw TypeError(TypeErrorKind::Mismatch, "let-bound term must be a value");
      }
      Synth bound = synth(lp->bound, delta);
      const auto* pt = std::get_if<ParT>(&bound.type->node);
      if (!pt) {
        throw TypeError(TypeErrorKind::Mismatch,
                        "let $ binds a par value, got " + show_type(bound.type));
      }
      scope_[lp->binder].push_back(Bind{Usage::ParU, pt->body, modal_stack_.size()});
      Synth body = synth(lp->body, delta);
      scope_[lp->binder].pop_back();
      auto it = body.occ.find(lp->binder);
      if (it != body.occ.end()) {
        if (it->second > 1) {
          throw TypeError(TypeErrorKind::UsageViolation,
                          "par-bound " + lp->binder + " occurs more than once");
        }
        body.occ.erase(it);
      }
      Occ occ = bound.occ;
      std::uint64_t contractions = merge_occ(occ, body.occ);
      return Synth{body.type,
                   make_node(Rule::ParElimR, id, delta, m, body.type,
                             {bound.deriv, body.deriv}, occ, contractions),
                   occ};
    }

    if (const auto* g = std::get_if<Get>(&m->node)) {
      auto [delta_r, content] = region_info(g->region);
      check_region_depth(g->region, delta_r, delta);
      return Synth{content, make_node(Rule::GetR, id, delta, m, content, {}, {}, 0), {}};
    }

    if (const auto* s = std::get_if<Set>(&m->node)) {
      auto [delta_r, content] = region_info(s->region);
      check_region_depth(s->region, delta_r, delta);
      if (!is_value(s->payload)) {
        throw TypeError(TypeErrorKind::Mismatch, "set payload must be a value");
      }
      Synth payload = synth(s->payload, delta);
      if (!type_equal(payload.type, content)) {
        throw TypeError(TypeErrorKind::Mismatch,
                        "set payload has type " + show_type(payload.type) + ", region " +
                            s->region + " holds " + show_type(content));
      }
      return Synth{unit_t(),
                   make_node(Rule::SetR, id, delta, m, unit_t(), {payload.deriv}, payload.occ,
                             0),
                   payload.occ};
    }

    if (const auto* f = std::get_if<Fold>(&m->node)) {
      const auto* mu = std::get_if<MuT>(&f->ann->node);
      if (!mu) {
        throw TypeError(TypeErrorKind::Mismatch,
                        "fold annotation must be a mu type, got " + show_type(f->ann));
      }
      check_annotation(f->ann);
      Synth body = synth(f->body, delta);
      TypePtr unfolded = subst_type(mu->body, mu->var, f->ann);
      if (!type_equal(body.type, unfolded)) {
        throw TypeError(TypeErrorKind::Mismatch, "fold body has type " + show_type(body.type) +
                                                     ", expected " + show_type(unfolded));
      }
      return Synth{f->ann,
                   make_node(Rule::FoldR, id, delta, m, f->ann, {body.deriv}, body.occ, 0),
                   body.occ};
    }

    const auto& u = std::get<Unfold>(m->node);
    Synth body = synth(u.body, delta);
    const auto* mu = std::get_if<MuT>(&body.type->node);
    if (!mu) {
      throw TypeError(TypeErrorKind::Mismatch,
                      "unfold applies to a mu type, got " + show_type(body.type));
    }
    TypePtr unfolded = subst_type(mu->body, mu->var, body.type);
    return Synth{unfolded,
                 make_node(Rule::UnfoldR, id, delta, m, unfolded, {body.deriv}, body.occ,
                           0),
                 body.occ};
  }
};

}  // namespace

void wf_type(const RegionContext& regions, const TypePtr& a) { wf_type_rec(regions, a); }

DerivPtr check(const Program& prog) {
  RegionContext regions = region_context(prog);
  for (const auto& r : prog.regions) {
    if (!mu_guarded(r.content)) {
      throw TypeError(TypeErrorKind::UnguardedMu,
                      "unguarded recursive type in region " + r.name);
    }
    if (!std::holds_alternative<ParT>(r.content->node)) {
      throw TypeError(TypeErrorKind::WFError,
                      "region " + r.name + " content must be a paragraph type, got " +
                          show_type(r.content));
    }
    wf_type(regions, r.content);
  }
  return check_term(regions, prog.main, effective_level(prog));
}

DerivPtr check_term(const RegionContext& regions, const TermPtr& m, std::uint64_t delta) {
  Checker ck(regions);
  return ck.run(m, delta);
}

TermPtr erase(const TermPtr& m) {
  if (const auto* l = std::get_if<Lam>(&m->node)) {
    return lam(l->binder, l->ann, erase(l->body));
  }
  if (const auto* a = std::get_if<Arith>(&m->node)) {
    return arith(a->op, erase(a->left), erase(a->right));
  }
  if (const auto* b = std::get_if<Bang>(&m->node)) return bang(erase(b->body));
  if (const auto* p = std::get_if<Par>(&m->node)) return par(erase(p->body));
  if (const auto* ap = std::get_if<App>(&m->node)) return app(erase(ap->fn), erase(ap->arg));
  if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    return let_bang(lb->binder, erase(lb->bound), erase(lb->body));
  }
  if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    return let_par(lp->binder, erase(lp->bound), erase(lp->body));
  }
  if (const auto* s = std::get_if<Set>(&m->node)) return set(s->region, erase(s->payload));
  if (const auto* f = std::get_if<Fold>(&m->node)) return erase(f->body);
  if (const auto* u = std::get_if<Unfold>(&m->node)) return erase(u->body);
  return m;
}

std::string show_judgment(const DerivNode& d) {
  std::ostringstream os;
  if (d.ctx.empty()) {
    os << "-";
  } else {
    bool first = true;
    for (const auto& e : d.ctx) {
      if (!first) os << ", ";
      first = false;
      os << e.name << ":(" << usage_mark(e.usage) << "," << show_type(e.type) << ")";
    }
  }
  os << " |-" << d.delta << " " << show_term(d.term) << " : " << show_type(d.type);
  return os.str();
}

namespace {

void show_derivation_rec(const DerivPtr& d, std::size_t indent, std::ostringstream& os) {
  os << std::string(indent * 2, ' ') << rule_name(d->rule) << " | depth " << d->delta << " | "
     << show_judgment(*d) << " | contractions " << d->contractions << "\n";
  for (const auto& k : d->kids) show_derivation_rec(k, indent + 1, os);
}

}  // namespace

std::string show_derivation(const DerivPtr& d) {
  std::ostringstream os;
  show_derivation_rec(d, 0, os);
  return os.str();
}

}  // namespace lal
