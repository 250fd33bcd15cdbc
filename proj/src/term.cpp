#include "lal/term.hpp"

#include <algorithm>
#include <sstream>

#include "lal/program.hpp"

namespace lal {

// ---------------------------------------------------------------- types

TypePtr tvar(std::string name) { return std::make_shared<Type>(Type{TVar{std::move(name)}}); }
TypePtr unit_t() { return std::make_shared<Type>(Type{UnitT{}}); }
TypePtr nat_t() { return std::make_shared<Type>(Type{NatT{}}); }
TypePtr lolli(TypePtr from, TypePtr to) {
  return std::make_shared<Type>(Type{Lolli{std::move(from), std::move(to)}});
}
TypePtr bang_t(TypePtr body) { return std::make_shared<Type>(Type{BangT{std::move(body)}}); }
TypePtr par_t(TypePtr body) { return std::make_shared<Type>(Type{ParT{std::move(body)}}); }
TypePtr mu_t(std::string v, TypePtr body) {
  return std::make_shared<Type>(Type{MuT{std::move(v), std::move(body)}});
}
TypePtr reg_t(std::string region, TypePtr content) {
  return std::make_shared<Type>(Type{RegT{std::move(region), std::move(content)}});
}

namespace {

bool type_equal_rec(const TypePtr& a, const TypePtr& b,
                    std::map<std::string, std::uint64_t>& la,
                    std::map<std::string, std::uint64_t>& lb, std::uint64_t& fresh) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* va = std::get_if<TVar>(&a->node)) {
    const auto& vb = std::get<TVar>(b->node);
    auto ia = la.find(va->name);
    auto ib = lb.find(vb.name);
    if ((ia == la.end()) != (ib == lb.end())) return false;
    if (ia == la.end()) return va->name == vb.name;
    return ia->second == ib->second;
  }
  if (std::holds_alternative<UnitT>(a->node) || std::holds_alternative<NatT>(a->node)) return true;
  if (const auto* fa = std::get_if<Lolli>(&a->node)) {
    const auto& fb = std::get<Lolli>(b->node);
    return type_equal_rec(fa->from, fb.from, la, lb, fresh) &&
           type_equal_rec(fa->to, fb.to, la, lb, fresh);
  }
  if (const auto* ba = std::get_if<BangT>(&a->node)) {
    return type_equal_rec(ba->body, std::get<BangT>(b->node).body, la, lb, fresh);
  }
  if (const auto* pa = std::get_if<ParT>(&a->node)) {
    return type_equal_rec(pa->body, std::get<ParT>(b->node).body, la, lb, fresh);
  }
  if (const auto* ma = std::get_if<MuT>(&a->node)) {
    const auto& mb = std::get<MuT>(b->node);
    std::uint64_t id = fresh++;
    auto olda = la.find(ma->var) == la.end()
                    ? std::optional<std::uint64_t>{}
                    : std::optional<std::uint64_t>{la[ma->var]};
    auto oldb = lb.find(mb.var) == lb.end()
                    ? std::optional<std::uint64_t>{}
                    : std::optional<std::uint64_t>{lb[mb.var]};
    la[ma->var] = id;
    lb[mb.var] = id;
    bool ok = type_equal_rec(ma->body, mb.body, la, lb, fresh);
    if (olda) la[ma->var] = *olda; else la.erase(ma->var);
    if (oldb) lb[mb.var] = *oldb; else lb.erase(mb.var);
    return ok;
  }
  const auto& ra = std::get<RegT>(a->node);
  const auto& rb = std::get<RegT>(b->node);
  return ra.region == rb.region && type_equal_rec(ra.content, rb.content, la, lb, fresh);
}

}  // namespace

bool type_equal(const TypePtr& a, const TypePtr& b) {
  std::map<std::string, std::uint64_t> la, lb;
  std::uint64_t fresh = 0;
  return type_equal_rec(a, b, la, lb, fresh);
}

std::set<std::string> free_tvars(const TypePtr& a) {
  std::set<std::string> out;
  if (const auto* v = std::get_if<TVar>(&a->node)) {
    out.insert(v->name);
  } else if (const auto* f = std::get_if<Lolli>(&a->node)) {
    auto l = free_tvars(f->from);
    auto r = free_tvars(f->to);
    out.insert(l.begin(), l.end());
    out.insert(r.begin(), r.end());
  } else if (const auto* bt = std::get_if<BangT>(&a->node)) {
    out = free_tvars(bt->body);
  } else if (const auto* pt = std::get_if<ParT>(&a->node)) {
    out = free_tvars(pt->body);
  } else if (const auto* m = std::get_if<MuT>(&a->node)) {
    out = free_tvars(m->body);
    out.erase(m->var);
  } else if (const auto* r = std::get_if<RegT>(&a->node)) {
    out = free_tvars(r->content);
  }
  return out;
}

TypePtr subst_type(const TypePtr& a, const std::string& x, const TypePtr& b) {
  if (const auto* v = std::get_if<TVar>(&a->node)) {
    return v->name == x ? b : a;
  }
  if (std::holds_alternative<UnitT>(a->node) || std::holds_alternative<NatT>(a->node)) return a;
  if (const auto* f = std::get_if<Lolli>(&a->node)) {
    return lolli(subst_type(f->from, x, b), subst_type(f->to, x, b));
  }
  if (const auto* bt = std::get_if<BangT>(&a->node)) return bang_t(subst_type(bt->body, x, b));
  if (const auto* pt = std::get_if<ParT>(&a->node)) return par_t(subst_type(pt->body, x, b));
  if (const auto* m = std::get_if<MuT>(&a->node)) {
    if (m->var == x) return a;
    auto fvb = free_tvars(b);
    if (fvb.count(m->var) && free_tvars(m->body).count(x)) {
      auto avoid = fvb;
      auto fvbody = free_tvars(m->body);
      avoid.insert(fvbody.begin(), fvbody.end());
      std::string renamed = fresh_name(m->var, avoid);
      TypePtr body2 = subst_type(m->body, m->var, tvar(renamed));
      return mu_t(renamed, subst_type(body2, x, b));
    }
    return mu_t(m->var, subst_type(m->body, x, b));
  }
  const auto& r = std::get<RegT>(a->node);
  return reg_t(r.region, subst_type(r.content, x, b));
}

namespace {

bool occ_guarded(const TypePtr& t, const std::string& x, bool under_modal) {
  if (const auto* v = std::get_if<TVar>(&t->node)) {
    return v->name != x || under_modal;
  }
  if (const auto* f = std::get_if<Lolli>(&t->node)) {
    return occ_guarded(f->from, x, under_modal) && occ_guarded(f->to, x, under_modal);
  }
  if (const auto* b = std::get_if<BangT>(&t->node)) return occ_guarded(b->body, x, true);
  if (const auto* p = std::get_if<ParT>(&t->node)) return occ_guarded(p->body, x, true);
  if (const auto* m = std::get_if<MuT>(&t->node)) {
    if (m->var == x) return true;
    return occ_guarded(m->body, x, under_modal);
  }
  if (const auto* r = std::get_if<RegT>(&t->node)) return occ_guarded(r->content, x, under_modal);
  return true;
}

}  // namespace

bool mu_guarded(const TypePtr& a) {
  if (const auto* f = std::get_if<Lolli>(&a->node)) {
    return mu_guarded(f->from) && mu_guarded(f->to);
  }
  if (const auto* b = std::get_if<BangT>(&a->node)) return mu_guarded(b->body);
  if (const auto* p = std::get_if<ParT>(&a->node)) return mu_guarded(p->body);
  if (const auto* m = std::get_if<MuT>(&a->node)) {
    return occ_guarded(m->body, m->var, false) && mu_guarded(m->body);
  }
  if (const auto* r = std::get_if<RegT>(&a->node)) return mu_guarded(r->content);
  return true;
}

namespace {

// Type printing levels: 0 full (mu), 1 arrow, 2 modal prefix, 3 atom.
void show_type_rec(const TypePtr& t, int level, std::ostringstream& os) {
  if (const auto* v = std::get_if<TVar>(&t->node)) {
    os << v->name;
  } else if (std::holds_alternative<UnitT>(t->node)) {
    os << "Unit";
  } else if (std::holds_alternative<NatT>(t->node)) {
    os << "Nat";
  } else if (const auto* f = std::get_if<Lolli>(&t->node)) {
    bool parens = level > 1;
    if (parens) os << "(";
    show_type_rec(f->from, 2, os);
    os << " -o ";
    show_type_rec(f->to, 1, os);
    if (parens) os << ")";
  } else if (const auto* b = std::get_if<BangT>(&t->node)) {
    bool parens = level > 2;
    if (parens) os << "(";
    os << "!";
    show_type_rec(b->body, 2, os);
    if (parens) os << ")";
  } else if (const auto* p = std::get_if<ParT>(&t->node)) {
    bool parens = level > 2;
    if (parens) os << "(";
    os << "$";
    show_type_rec(p->body, 2, os);
    if (parens) os << ")";
  } else if (const auto* m = std::get_if<MuT>(&t->node)) {
    bool parens = level > 0;
    if (parens) os << "(";
    os << "mu " << m->var << ". ";
    show_type_rec(m->body, 0, os);
    if (parens) os << ")";
  } else {
    const auto& r = std::get<RegT>(t->node);
    bool parens = level > 2;
    if (parens) os << "(";
    os << "Reg " << r.region << " ";
    show_type_rec(r.content, 3, os);
    if (parens) os << ")";
  }
}

}  // namespace

std::string show_type(const TypePtr& a) {
  std::ostringstream os;
  show_type_rec(a, 0, os);
  return os.str();
}

// ---------------------------------------------------------------- terms

TermPtr var(std::string name) { return std::make_shared<Term>(Term{Var{std::move(name)}}); }
TermPtr lam(std::string binder, TypePtr ann, TermPtr body) {
  return std::make_shared<Term>(Term{Lam{std::move(binder), std::move(ann), std::move(body)}});
}
TermPtr region_const(std::string region) {
  return std::make_shared<Term>(Term{RegionConst{std::move(region)}});
}
TermPtr unit_val() { return std::make_shared<Term>(Term{UnitVal{}}); }
TermPtr int_lit(std::uint64_t value) { return std::make_shared<Term>(Term{IntLit{value}}); }
TermPtr arith(ArithOp op, TermPtr left, TermPtr right) {
  return std::make_shared<Term>(Term{Arith{op, std::move(left), std::move(right)}});
}
TermPtr bang(TermPtr body) { return std::make_shared<Term>(Term{Bang{std::move(body)}}); }
TermPtr par(TermPtr body) { return std::make_shared<Term>(Term{Par{std::move(body)}}); }
TermPtr app(TermPtr fn, TermPtr arg) {
  return std::make_shared<Term>(Term{App{std::move(fn), std::move(arg)}});
}
TermPtr let_bang(std::string binder, TermPtr bound, TermPtr body) {
  return std::make_shared<Term>(Term{LetBang{std::move(binder), std::move(bound), std::move(body)}});
}
TermPtr let_par(std::string binder, TermPtr bound, TermPtr body) {
  return std::make_shared<Term>(Term{LetPar{std::move(binder), std::move(bound), std::move(body)}});
}
TermPtr get(std::string region) { return std::make_shared<Term>(Term{Get{std::move(region)}}); }
TermPtr set(std::string region, TermPtr payload) {
  return std::make_shared<Term>(Term{Set{std::move(region), std::move(payload)}});
}
TermPtr fold(TypePtr ann, TermPtr body) {
  return std::make_shared<Term>(Term{Fold{std::move(ann), std::move(body)}});
}
TermPtr unfold(TermPtr body) { return std::make_shared<Term>(Term{Unfold{std::move(body)}}); }

bool is_value(const TermPtr& m) {
  if (std::holds_alternative<Var>(m->node) || std::holds_alternative<Lam>(m->node) ||
      std::holds_alternative<RegionConst>(m->node) || std::holds_alternative<UnitVal>(m->node) ||
      std::holds_alternative<IntLit>(m->node)) {
    return true;
  }
  if (const auto* b = std::get_if<Bang>(&m->node)) return is_value(b->body);
  if (const auto* p = std::get_if<Par>(&m->node)) return is_value(p->body);
  return false;
}

std::uint64_t term_size(const TermPtr& m) {
  std::uint64_t n = 1;
  if (const auto* l = std::get_if<Lam>(&m->node)) {
    n += term_size(l->body);
  } else if (const auto* a = std::get_if<Arith>(&m->node)) {
    n += term_size(a->left) + term_size(a->right);
  } else if (const auto* b = std::get_if<Bang>(&m->node)) {
    n += term_size(b->body);
  } else if (const auto* p = std::get_if<Par>(&m->node)) {
    n += term_size(p->body);
  } else if (const auto* ap = std::get_if<App>(&m->node)) {
    n += term_size(ap->fn) + term_size(ap->arg);
  } else if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    n += term_size(lb->bound) + term_size(lb->body);
  } else if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    n += term_size(lp->bound) + term_size(lp->body);
  } else if (const auto* s = std::get_if<Set>(&m->node)) {
    n += term_size(s->payload);
  } else if (const auto* f = std::get_if<Fold>(&m->node)) {
    n += term_size(f->body);
  } else if (const auto* u = std::get_if<Unfold>(&m->node)) {
    n += term_size(u->body);
  }
  return n;
}

namespace {

std::uint64_t depth_rec(const TermPtr& m, std::uint64_t d) {
  std::uint64_t best = d;
  if (const auto* l = std::get_if<Lam>(&m->node)) {
    best = std::max(best, depth_rec(l->body, d));
  } else if (const auto* a = std::get_if<Arith>(&m->node)) {
    best = std::max({best, depth_rec(a->left, d), depth_rec(a->right, d)});
  } else if (const auto* b = std::get_if<Bang>(&m->node)) {
    best = std::max(best, depth_rec(b->body, d + 1));
  } else if (const auto* p = std::get_if<Par>(&m->node)) {
    best = std::max(best, depth_rec(p->body, d + 1));
  } else if (const auto* ap = std::get_if<App>(&m->node)) {
    best = std::max({best, depth_rec(ap->fn, d), depth_rec(ap->arg, d)});
  } else if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    best = std::max({best, depth_rec(lb->bound, d), depth_rec(lb->body, d)});
  } else if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    best = std::max({best, depth_rec(lp->bound, d), depth_rec(lp->body, d)});
  } else if (const auto* s = std::get_if<Set>(&m->node)) {
    best = std::max(best, depth_rec(s->payload, d));
  } else if (const auto* f = std::get_if<Fold>(&m->node)) {
    best = std::max(best, depth_rec(f->body, d));
  } else if (const auto* u = std::get_if<Unfold>(&m->node)) {
    best = std::max(best, depth_rec(u->body, d));
  }
  return best;
}

void free_vars_rec(const TermPtr& m, std::set<std::string>& bound, std::set<std::string>& out) {
  if (const auto* v = std::get_if<Var>(&m->node)) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (const auto* l = std::get_if<Lam>(&m->node)) {
    bool fresh = bound.insert(l->binder).second;
    free_vars_rec(l->body, bound, out);
    if (fresh) bound.erase(l->binder);
  } else if (const auto* a = std::get_if<Arith>(&m->node)) {
    free_vars_rec(a->left, bound, out);
    free_vars_rec(a->right, bound, out);
  } else if (const auto* b = std::get_if<Bang>(&m->node)) {
    free_vars_rec(b->body, bound, out);
  } else if (const auto* p = std::get_if<Par>(&m->node)) {
    free_vars_rec(p->body, bound, out);
  } else if (const auto* ap = std::get_if<App>(&m->node)) {
    free_vars_rec(ap->fn, bound, out);
    free_vars_rec(ap->arg, bound, out);
  } else if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    free_vars_rec(lb->bound, bound, out);
    bool fresh = bound.insert(lb->binder).second;
    free_vars_rec(lb->body, bound, out);
    if (fresh) bound.erase(lb->binder);
  } else if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    free_vars_rec(lp->bound, bound, out);
    bool fresh = bound.insert(lp->binder).second;
    free_vars_rec(lp->body, bound, out);
    if (fresh) bound.erase(lp->binder);
  } else if (const auto* s = std::get_if<Set>(&m->node)) {
    free_vars_rec(s->payload, bound, out);
  } else if (const auto* f = std::get_if<Fold>(&m->node)) {
    free_vars_rec(f->body, bound, out);
  } else if (const auto* u = std::get_if<Unfold>(&m->node)) {
    free_vars_rec(u->body, bound, out);
  }
}

std::uint64_t occ_rec(const TermPtr& m, const std::string& x, bool count_all) {
  if (const auto* v = std::get_if<Var>(&m->node)) {
    return (count_all || v->name == x) ? 1 : 0;
  }
  if (const auto* l = std::get_if<Lam>(&m->node)) {
    if (!count_all && l->binder == x) return 0;
    if (count_all) {
      // Occurrences of the binder inside the body are not free.
      return occ_rec(l->body, x, true) - occ_rec(l->body, l->binder, false);
    }
    return occ_rec(l->body, x, false);
  }
  if (const auto* a = std::get_if<Arith>(&m->node)) {
    return occ_rec(a->left, x, count_all) + occ_rec(a->right, x, count_all);
  }
  if (const auto* b = std::get_if<Bang>(&m->node)) return occ_rec(b->body, x, count_all);
  if (const auto* p = std::get_if<Par>(&m->node)) return occ_rec(p->body, x, count_all);
  if (const auto* ap = std::get_if<App>(&m->node)) {
    return occ_rec(ap->fn, x, count_all) + occ_rec(ap->arg, x, count_all);
  }
  if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    std::uint64_t n = occ_rec(lb->bound, x, count_all);
    if (count_all) {
      n += occ_rec(lb->body, x, true) - occ_rec(lb->body, lb->binder, false);
    } else if (lb->binder != x) {
      n += occ_rec(lb->body, x, false);
    }
    return n;
  }
  if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    std::uint64_t n = occ_rec(lp->bound, x, count_all);
    if (count_all) {
      n += occ_rec(lp->body, x, true) - occ_rec(lp->body, lp->binder, false);
    } else if (lp->binder != x) {
      n += occ_rec(lp->body, x, false);
    }
    return n;
  }
  if (const auto* s = std::get_if<Set>(&m->node)) return occ_rec(s->payload, x, count_all);
  if (const auto* f = std::get_if<Fold>(&m->node)) return occ_rec(f->body, x, count_all);
  if (const auto* u = std::get_if<Unfold>(&m->node)) return occ_rec(u->body, x, count_all);
  return 0;
}

}  // namespace

std::uint64_t term_depth(const TermPtr& m) { return depth_rec(m, 0); }

std::set<std::string> free_vars(const TermPtr& m) {
  std::set<std::string> bound, out;
  free_vars_rec(m, bound, out);
  return out;
}

std::uint64_t count_occurrences(const TermPtr& m, const std::string& x) {
  return occ_rec(m, x, false);
}

std::uint64_t total_free_occurrences(const TermPtr& m) { return occ_rec(m, "", true); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base + "'";
  while (avoid.count(candidate)) candidate += "'";
  return candidate;
}

namespace {

TermPtr rebind(const std::string& binder, const TermPtr& body, const std::string& x,
               const TermPtr& v, std::string* out_binder) {
  // Renames `binder` when it would capture a free variable of v.
  if (free_vars(v).count(binder) && count_occurrences(body, x) > 0) {
    auto avoid = free_vars(body);
    auto fvv = free_vars(v);
    avoid.insert(fvv.begin(), fvv.end());
    avoid.insert(x);
    *out_binder = fresh_name(binder, avoid);
    return subst(body, binder, var(*out_binder));
  }
  *out_binder = binder;
  return body;
}

}  // namespace

TermPtr subst(const TermPtr& m, const std::string& x, const TermPtr& v) {
  if (const auto* vr = std::get_if<Var>(&m->node)) {
    return vr->name == x ? v : m;
  }
  if (const auto* l = std::get_if<Lam>(&m->node)) {
    if (l->binder == x) return m;
    std::string b;
    TermPtr body = rebind(l->binder, l->body, x, v, &b);
    return lam(b, l->ann, subst(body, x, v));
  }
  if (std::holds_alternative<RegionConst>(m->node) || std::holds_alternative<UnitVal>(m->node) ||
      std::holds_alternative<IntLit>(m->node) || std::holds_alternative<Get>(m->node)) {
    return m;
  }
  if (const auto* a = std::get_if<Arith>(&m->node)) {
    return arith(a->op, subst(a->left, x, v), subst(a->right, x, v));
  }
  if (const auto* b = std::get_if<Bang>(&m->node)) return bang(subst(b->body, x, v));
  if (const auto* p = std::get_if<Par>(&m->node)) return par(subst(p->body, x, v));
  if (const auto* ap = std::get_if<App>(&m->node)) {
    return app(subst(ap->fn, x, v), subst(ap->arg, x, v));
  }
  if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    TermPtr bound = subst(lb->bound, x, v);
    if (lb->binder == x) return let_bang(lb->binder, bound, lb->body);
    std::string b;
    TermPtr body = rebind(lb->binder, lb->body, x, v, &b);
    return let_bang(b, bound, subst(body, x, v));
  }
  if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    TermPtr bound = subst(lp->bound, x, v);
    if (lp->binder == x) return let_par(lp->binder, bound, lp->body);
    std::string b;
    TermPtr body = rebind(lp->binder, lp->body, x, v, &b);
    return let_par(b, bound, subst(body, x, v));
  }
  if (const auto* s = std::get_if<Set>(&m->node)) {
    return set(s->region, subst(s->payload, x, v));
  }
  if (const auto* f = std::get_if<Fold>(&m->node)) return fold(f->ann, subst(f->body, x, v));
  const auto& u = std::get<Unfold>(m->node);
  return unfold(subst(u.body, x, v));
}

namespace {

bool alpha_rec(const TermPtr& a, const TermPtr& b, std::map<std::string, std::uint64_t>& la,
               std::map<std::string, std::uint64_t>& lb, std::uint64_t& fresh) {
  if (a->node.index() != b->node.index()) return false;
  auto same_var = [&](const std::string& x, const std::string& y) {
    auto ix = la.find(x);
    auto iy = lb.find(y);
    if ((ix == la.end()) != (iy == lb.end())) return false;
    if (ix == la.end()) return x == y;
    return ix->second == iy->second;
  };
  auto under = [&](const std::string& x, const std::string& y, const TermPtr& ba,
                   const TermPtr& bb) {
    std::uint64_t id = fresh++;
    auto oldx = la.count(x) ? std::optional<std::uint64_t>{la[x]} : std::nullopt;
    auto oldy = lb.count(y) ? std::optional<std::uint64_t>{lb[y]} : std::nullopt;
    la[x] = id;
    lb[y] = id;
    bool ok = alpha_rec(ba, bb, la, lb, fresh);
    if (oldx) la[x] = *oldx; else la.erase(x);
    if (oldy) lb[y] = *oldy; else lb.erase(y);
    return ok;
  };
  if (const auto* v = std::get_if<Var>(&a->node)) {
    return same_var(v->name, std::get<Var>(b->node).name);
  }
  if (const auto* l = std::get_if<Lam>(&a->node)) {
    const auto& r = std::get<Lam>(b->node);
    return type_equal(l->ann, r.ann) && under(l->binder, r.binder, l->body, r.body);
  }
  if (const auto* rc = std::get_if<RegionConst>(&a->node)) {
    return rc->region == std::get<RegionConst>(b->node).region;
  }
  if (std::holds_alternative<UnitVal>(a->node)) return true;
  if (const auto* i = std::get_if<IntLit>(&a->node)) {
    return i->value == std::get<IntLit>(b->node).value;
  }
  if (const auto* ar = std::get_if<Arith>(&a->node)) {
    const auto& br = std::get<Arith>(b->node);
    return ar->op == br.op && alpha_rec(ar->left, br.left, la, lb, fresh) &&
           alpha_rec(ar->right, br.right, la, lb, fresh);
  }
  if (const auto* bg = std::get_if<Bang>(&a->node)) {
    return alpha_rec(bg->body, std::get<Bang>(b->node).body, la, lb, fresh);
  }
  if (const auto* pr = std::get_if<Par>(&a->node)) {
    return alpha_rec(pr->body, std::get<Par>(b->node).body, la, lb, fresh);
  }
  if (const auto* ap = std::get_if<App>(&a->node)) {
    const auto& bp = std::get<App>(b->node);
    return alpha_rec(ap->fn, bp.fn, la, lb, fresh) && alpha_rec(ap->arg, bp.arg, la, lb, fresh);
  }
  if (const auto* albg = std::get_if<LetBang>(&a->node)) {
    const auto& blbg = std::get<LetBang>(b->node);
    return alpha_rec(albg->bound, blbg.bound, la, lb, fresh) &&
           under(albg->binder, blbg.binder, albg->body, blbg.body);
  }
  if (const auto* alp = std::get_if<LetPar>(&a->node)) {
    const auto& blp = std::get<LetPar>(b->node);
    return alpha_rec(alp->bound, blp.bound, la, lb, fresh) &&
           under(alp->binder, blp.binder, alp->body, blp.body);
  }
  if (const auto* g = std::get_if<Get>(&a->node)) {
    return g->region == std::get<Get>(b->node).region;
  }
  if (const auto* s = std::get_if<Set>(&a->node)) {
    const auto& bs = std::get<Set>(b->node);
    return s->region == bs.region && alpha_rec(s->payload, bs.payload, la, lb, fresh);
  }
  if (const auto* f = std::get_if<Fold>(&a->node)) {
    const auto& bf = std::get<Fold>(b->node);
    return type_equal(f->ann, bf.ann) && alpha_rec(f->body, bf.body, la, lb, fresh);
  }
  const auto& u = std::get<Unfold>(a->node);
  return alpha_rec(u.body, std::get<Unfold>(b->node).body, la, lb, fresh);
}

// Term printing levels: 0 full (lam/let), 2 arith, 3 application, 4 modal
// prefix, 5 atom. Level 1 is the sequencing layer, unused because the
// printer never re-sugars applications into `;`.
void show_term_rec(const TermPtr& m, int level, std::ostringstream& os) {
  if (const auto* v = std::get_if<Var>(&m->node)) {
    os << v->name;
  } else if (const auto* l = std::get_if<Lam>(&m->node)) {
    bool parens = level > 0;
    if (parens) os << "(";
    os << "\\" << l->binder << ":" << show_type(l->ann) << ". ";
    show_term_rec(l->body, 0, os);
    if (parens) os << ")";
  } else if (const auto* rc = std::get_if<RegionConst>(&m->node)) {
    os << rc->region;
  } else if (std::holds_alternative<UnitVal>(m->node)) {
    os << "()";
  } else if (const auto* i = std::get_if<IntLit>(&m->node)) {
    os << i->value;
  } else if (const auto* a = std::get_if<Arith>(&m->node)) {
    bool parens = level > 2;
    if (parens) os << "(";
    show_term_rec(a->left, 3, os);
    os << (a->op == ArithOp::Add ? " + " : a->op == ArithOp::Sub ? " - " : " * ");
    show_term_rec(a->right, 3, os);
    if (parens) os << ")";
  } else if (const auto* b = std::get_if<Bang>(&m->node)) {
    bool parens = level > 4;
    if (parens) os << "(";
    os << "!";
    show_term_rec(b->body, 4, os);
    if (parens) os << ")";
  } else if (const auto* p = std::get_if<Par>(&m->node)) {
    bool parens = level > 4;
    if (parens) os << "(";
    os << "$";
    show_term_rec(p->body, 4, os);
    if (parens) os << ")";
  } else if (const auto* ap = std::get_if<App>(&m->node)) {
    bool parens = level > 3;
    if (parens) os << "(";
    show_term_rec(ap->fn, 3, os);
    os << " ";
    show_term_rec(ap->arg, 4, os);
    if (parens) os << ")";
  } else if (const auto* lb = std::get_if<LetBang>(&m->node)) {
    bool parens = level > 0;
    if (parens) os << "(";
    os << "let !" << lb->binder << " = ";
    show_term_rec(lb->bound, 2, os);
    os << " in ";
    show_term_rec(lb->body, 0, os);
    if (parens) os << ")";
  } else if (const auto* lp = std::get_if<LetPar>(&m->node)) {
    bool parens = level > 0;
    if (parens) os << "(";
    os << "let $" << lp->binder << " = ";
    show_term_rec(lp->bound, 2, os);
    os << " in ";
    show_term_rec(lp->body, 0, os);
    if (parens) os << ")";
  } else if (const auto* g = std::get_if<Get>(&m->node)) {
    os << "get(" << g->region << ")";
  } else if (const auto* s = std::get_if<Set>(&m->node)) {
    os << "set(" << s->region << ", ";
    show_term_rec(s->payload, 0, os);
    os << ")";
  } else if (const auto* f = std::get_if<Fold>(&m->node)) {
    bool parens = level > 4;
    if (parens) os << "(";
    os << "fold[" << show_type(f->ann) << "] ";
    show_term_rec(f->body, 4, os);
    if (parens) os << ")";
  } else {
    const auto& u = std::get<Unfold>(m->node);
    bool parens = level > 4;
    if (parens) os << "(";
    os << "unfold ";
    show_term_rec(u.body, 4, os);
    if (parens) os << ")";
  }
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, std::uint64_t> la, lb;
  std::uint64_t fresh = 0;
  return alpha_rec(a, b, la, lb, fresh);
}

std::string show_term(const TermPtr& m) {
  std::ostringstream os;
  show_term_rec(m, 0, os);
  return os.str();
}

// -------------------------------------------------------------- programs

std::uint64_t effective_level(const Program& prog) {
  if (prog.level) return *prog.level;
  std::uint64_t level = term_depth(prog.main);
  for (const auto& r : prog.regions) level = std::max(level, r.depth);
  return level;
}

}  // namespace lal
