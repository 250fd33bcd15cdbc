#pragma once

// Independent replay of a typing derivation. Walks the tree re-deriving what
// each rule demands from the raw terms: shapes, types, depth indices, the
// occurrence discipline (recounted via modal paths from each binder), value
// side conditions, and contraction totals. Deliberately shares no code with
// the checker beyond the AST utilities.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lal/term.hpp"
#include "lal/typecheck.hpp"

namespace lalcheck {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Modal path ('b'/'p' per crossed promotion) from the root of t to every
// free occurrence of x; Fold/Unfold are transparent, shadowing stops descent.
inline void occurrence_paths_rec(const lal::TermPtr& t, const std::string& x, std::string& cur,
                                 std::vector<std::string>& out) {
  using namespace lal;
  if (const auto* v = std::get_if<Var>(&t->node)) {
    if (v->name == x) out.push_back(cur);
  } else if (const auto* l = std::get_if<Lam>(&t->node)) {
    if (l->binder != x) occurrence_paths_rec(l->body, x, cur, out);
  } else if (const auto* a = std::get_if<Arith>(&t->node)) {
    occurrence_paths_rec(a->left, x, cur, out);
    occurrence_paths_rec(a->right, x, cur, out);
  } else if (const auto* b = std::get_if<Bang>(&t->node)) {
    cur.push_back('b');
    occurrence_paths_rec(b->body, x, cur, out);
    cur.pop_back();
  } else if (const auto* p = std::get_if<Par>(&t->node)) {
    cur.push_back('p');
    occurrence_paths_rec(p->body, x, cur, out);
    cur.pop_back();
  } else if (const auto* ap = std::get_if<App>(&t->node)) {
    occurrence_paths_rec(ap->fn, x, cur, out);
    occurrence_paths_rec(ap->arg, x, cur, out);
  } else if (const auto* lb = std::get_if<LetBang>(&t->node)) {
    occurrence_paths_rec(lb->bound, x, cur, out);
    if (lb->binder != x) occurrence_paths_rec(lb->body, x, cur, out);
  } else if (const auto* lp = std::get_if<LetPar>(&t->node)) {
    occurrence_paths_rec(lp->bound, x, cur, out);
    if (lp->binder != x) occurrence_paths_rec(lp->body, x, cur, out);
  } else if (const auto* s = std::get_if<Set>(&t->node)) {
    occurrence_paths_rec(s->payload, x, cur, out);
  } else if (const auto* f = std::get_if<Fold>(&t->node)) {
    occurrence_paths_rec(f->body, x, cur, out);
  } else if (const auto* u = std::get_if<Unfold>(&t->node)) {
    occurrence_paths_rec(u->body, x, cur, out);
  }
}

inline std::vector<std::string> occurrence_paths(const lal::TermPtr& t, const std::string& x) {
  std::vector<std::string> out;
  std::string cur;
  occurrence_paths_rec(t, x, cur, out);
  return out;
}

class Validator {
 public:
  explicit Validator(lal::RegionContext regions) : regions_(std::move(regions)) {}

  // Throws ValidationError on the first broken node.
  void run(const lal::DerivPtr& root) {
    expected_total_ = 0;
    std::uint64_t total = walk(root);
    if (total != expected_total_) {
      fail(root, "contraction totals: nodes sum to " + std::to_string(total) +
                     ", binder occurrences demand " + std::to_string(expected_total_));
    }
  }

 private:
  struct Bind {
    lal::Usage usage;
    lal::TypePtr type;
    std::size_t level;
  };

  lal::RegionContext regions_;
  std::map<std::string, std::vector<Bind>> scope_;
  std::size_t modal_level_ = 0;
  std::uint64_t expected_total_ = 0;

  [[noreturn]] void fail(const lal::DerivPtr& d, const std::string& msg) const {
    throw ValidationError("derivation node " + std::to_string(d->id) + " [" +
                          lal::rule_name(d->rule) + "] " + lal::show_judgment(*d) + ": " + msg);
  }

  void expect(bool cond, const lal::DerivPtr& d, const std::string& msg) const {
    if (!cond) fail(d, msg);
  }

  void check_kid_count(const lal::DerivPtr& d, std::size_t k) const {
    expect(d->kids.size() == k, d, "expected " + std::to_string(k) + " premises");
  }

  // Recount of the bang-variable merges between two subterms. skip names a
  // binder of the enclosing node: occurrences of it in rt are the bound
  // variable, not the outer one visible in lt.
  std::uint64_t recount_contractions(const lal::TermPtr& lt, const lal::TermPtr& rt,
                                     const std::string& skip = "") const {
    std::uint64_t c = 0;
    for (const auto& v : lal::free_vars(lt)) {
      if (v == skip) continue;
      auto it = scope_.find(v);
      if (it == scope_.end() || it->second.empty()) continue;
      if (it->second.back().usage != lal::Usage::BangU) continue;
      if (!occurrence_paths(rt, v).empty()) ++c;
    }
    return c;
  }

  void check_ctx(const lal::DerivPtr& d) const {
    std::set<std::string> fv = lal::free_vars(d->term);
    std::set<std::string> listed;
    for (const auto& e : d->ctx) {
      expect(listed.insert(e.name).second, d, "duplicate context entry " + e.name);
      expect(fv.count(e.name) == 1, d, "context lists " + e.name + " which is not free");
      auto it = scope_.find(e.name);
      expect(it != scope_.end() && !it->second.empty(), d, "context entry not in scope");
      const Bind& b = it->second.back();
      expect(lal::type_equal(e.type, b.type), d, "context type differs for " + e.name);
      lal::Usage local = modal_level_ == b.level ? b.usage : lal::Usage::LamU;
      expect(e.usage == local, d, "context usage differs for " + e.name);
    }
    expect(listed == fv, d, "context misses a free variable");
  }

  std::uint64_t walk(const lal::DerivPtr& d) {
    using namespace lal;
    check_ctx(d);
    std::uint64_t sum = d->contractions;

    switch (d->rule) {
      case Rule::VarR: {
        check_kid_count(d, 0);
        const auto* v = std::get_if<Var>(&d->term->node);
        expect(v != nullptr, d, "term is not a variable");
        auto it = scope_.find(v->name);
        expect(it != scope_.end() && !it->second.empty(), d, "variable not in scope");
        expect(type_equal(d->type, it->second.back().type), d, "variable type differs");
        expect(d->contractions == 0, d, "leaf with contractions");
        break;
      }
      case Rule::IntR: {
        check_kid_count(d, 0);
        expect(std::holds_alternative<IntLit>(d->term->node), d, "term is not a literal");
        expect(std::holds_alternative<NatT>(d->type->node), d, "literal not at Nat");
        break;
      }
      case Rule::UnitR: {
        check_kid_count(d, 0);
        expect(std::holds_alternative<UnitVal>(d->term->node), d, "term is not unit");
        expect(std::holds_alternative<UnitT>(d->type->node), d, "unit not at Unit");
        break;
      }
      case Rule::RegionR: {
        check_kid_count(d, 0);
        const auto* rc = std::get_if<RegionConst>(&d->term->node);
        expect(rc != nullptr, d, "term is not a region constant");
        auto it = regions_.find(rc->region);
        expect(it != regions_.end(), d, "undeclared region");
        expect(d->delta == it->second.first, d, "region constant off its depth");
        expect(type_equal(d->type, reg_t(rc->region, it->second.second)), d,
               "region constant type differs");
        break;
      }
      case Rule::ArithR: {
        check_kid_count(d, 2);
        const auto* a = std::get_if<Arith>(&d->term->node);
        expect(a != nullptr, d, "term is not arithmetic");
        expect(d->kids[0]->term.get() == a->left.get() &&
                   d->kids[1]->term.get() == a->right.get(),
               d, "premises do not cover the operands");
        for (const auto& k : d->kids) {
          expect(k->delta == d->delta, d, "operand depth differs");
          expect(std::holds_alternative<NatT>(k->type->node), d, "operand not Nat");
        }
        expect(std::holds_alternative<NatT>(d->type->node), d, "arith not at Nat");
        expect(d->contractions == recount_contractions(a->left, a->right), d,
               "contraction count differs from recount");
        sum += walk(d->kids[0]) + walk(d->kids[1]);
        break;
      }
      case Rule::LamR: {
        check_kid_count(d, 1);
        const auto* l = std::get_if<Lam>(&d->term->node);
        expect(l != nullptr, d, "term is not an abstraction");
        expect(d->kids[0]->term.get() == l->body.get(), d, "premise is not the body");
        expect(d->kids[0]->delta == d->delta, d, "body depth differs");
        auto paths = occurrence_paths(l->body, l->binder);
        expect(paths.size() <= 1, d, "lambda binder used more than once");
        for (const auto& p : paths) {
          expect(p.empty(), d, "lambda binder crosses a modality");
        }
        expect(type_equal(d->type, lolli(l->ann, d->kids[0]->type)), d,
               "abstraction type differs");
        scope_[l->binder].push_back(Bind{Usage::LamU, l->ann, modal_level_});
        sum += walk(d->kids[0]);
        scope_[l->binder].pop_back();
        break;
      }
      case Rule::AppR: {
        check_kid_count(d, 2);
        const auto* ap = std::get_if<App>(&d->term->node);
        expect(ap != nullptr, d, "term is not an application");
        expect(d->kids[0]->term.get() == ap->fn.get() &&
                   d->kids[1]->term.get() == ap->arg.get(),
               d, "premises do not cover function and argument");
        for (const auto& k : d->kids) expect(k->delta == d->delta, d, "premise depth differs");
        const auto* f = std::get_if<Lolli>(&d->kids[0]->type->node);
        expect(f != nullptr, d, "function premise is not an arrow");
        expect(type_equal(f->from, d->kids[1]->type), d, "argument type differs");
        expect(type_equal(f->to, d->type), d, "application result differs");
        expect(d->contractions == recount_contractions(ap->fn, ap->arg), d,
               "contraction count differs from recount");
        sum += walk(d->kids[0]) + walk(d->kids[1]);
        break;
      }
      case Rule::BangPromR: {
        check_kid_count(d, 1);
        const auto* b = std::get_if<Bang>(&d->term->node);
        expect(b != nullptr, d, "term is not a bang");
        expect(d->delta >= 1, d, "promotion at depth 0");
        expect(d->kids[0]->delta == d->delta - 1, d, "premise depth not decremented");
        expect(d->kids[0]->term.get() == b->body.get(), d, "premise is not the body");
        expect(is_value(b->body), d, "bang body is not a value");
        std::size_t occ = 0;
        for (const auto& v : free_vars(b->body)) occ += occurrence_paths(b->body, v).size();
        expect(occ <= 1, d, "bang body has several free occurrences");
        expect(type_equal(d->type, bang_t(d->kids[0]->type)), d, "bang type differs");
        ++modal_level_;
        sum += walk(d->kids[0]);
        --modal_level_;
        break;
      }
      case Rule::ParPromR: {
        check_kid_count(d, 1);
        const auto* p = std::get_if<Par>(&d->term->node);
        expect(p != nullptr, d, "term is not a paragraph");
        expect(d->delta >= 1, d, "promotion at depth 0");
        expect(d->kids[0]->delta == d->delta - 1, d, "premise depth not decremented");
        expect(d->kids[0]->term.get() == p->body.get(), d, "premise is not the body");
        expect(type_equal(d->type, par_t(d->kids[0]->type)), d, "paragraph type differs");
        ++modal_level_;
        sum += walk(d->kids[0]);
        --modal_level_;
        break;
      }
      case Rule::BangElimR: {
        check_kid_count(d, 2);
        const auto* lb = std::get_if<LetBang>(&d->term->node);
        expect(lb != nullptr, d, "term is not let-bang");
        expect(d->kids[0]->term.get() == lb->bound.get() &&
                   d->kids[1]->term.get() == lb->body.get(),
               d, "premises do not cover bound and body");
        for (const auto& k : d->kids) expect(k->delta == d->delta, d, "premise depth differs");
        expect(is_value(lb->bound), d, "bound term is not a value");
        const auto* bt = std::get_if<BangT>(&d->kids[0]->type->node);
        expect(bt != nullptr, d, "bound premise is not a bang type");
        expect(type_equal(d->type, d->kids[1]->type), d, "body type differs");
        auto paths = occurrence_paths(lb->body, lb->binder);
        for (const auto& p : paths) {
          expect(p.size() == 1, d, "bang binder not under exactly one modality");
        }
        if (!paths.empty()) expected_total_ += paths.size() - 1;
        expect(d->contractions == recount_contractions(lb->bound, lb->body, lb->binder), d,
               "contraction count differs from recount");
        sum += walk(d->kids[0]);
        scope_[lb->binder].push_back(Bind{Usage::BangU, bt->body, modal_level_});
        sum += walk(d->kids[1]);
        scope_[lb->binder].pop_back();
        break;
      }
      case Rule::ParElimR: {
        check_kid_count(d, 2);
        const auto* lp = std::get_if<LetPar>(&d->term->node);
        expect(lp != nullptr, d, "term is not let-par");
        expect(d->kids[0]->term.get() == lp->bound.get() &&
                   d->kids[1]->term.get() == lp->body.get(),
               d, "premises do not cover bound and body");
        for (const auto& k : d->kids) expect(k->delta == d->delta, d, "premise depth differs");
        expect(is_value(lp->bound), d, "bound term is not a value");
        const auto* pt = std::get_if<ParT>(&d->kids[0]->type->node);
        expect(pt != nullptr, d, "bound premise is not a paragraph type");
        expect(type_equal(d->type, d->kids[1]->type), d, "body type differs");
        auto paths = occurrence_paths(lp->body, lp->binder);
        expect(paths.size() <= 1, d, "par binder used more than once");
        for (const auto& p : paths) {
          expect(p == "p", d, "par binder not under exactly one paragraph");
        }
        expect(d->contractions == recount_contractions(lp->bound, lp->body, lp->binder), d,
               "contraction count differs from recount");
        sum += walk(d->kids[0]);
        scope_[lp->binder].push_back(Bind{Usage::ParU, pt->body, modal_level_});
        sum += walk(d->kids[1]);
        scope_[lp->binder].pop_back();
        break;
      }
      case Rule::GetR: {
        check_kid_count(d, 0);
        const auto* g = std::get_if<Get>(&d->term->node);
        expect(g != nullptr, d, "term is not get");
        auto it = regions_.find(g->region);
        expect(it != regions_.end(), d, "undeclared region");
        expect(d->delta == it->second.first, d, "get off the region depth");
        expect(type_equal(d->type, it->second.second), d, "get type differs from content");
        break;
      }
      case Rule::SetR: {
        check_kid_count(d, 1);
        const auto* s = std::get_if<Set>(&d->term->node);
        expect(s != nullptr, d, "term is not set");
        auto it = regions_.find(s->region);
        expect(it != regions_.end(), d, "undeclared region");
        expect(d->delta == it->second.first, d, "set off the region depth");
        expect(d->kids[0]->delta == d->delta, d, "payload depth differs");
        expect(d->kids[0]->term.get() == s->payload.get(), d, "premise is not the payload");
        expect(is_value(s->payload), d, "payload is not a value");
        expect(type_equal(d->kids[0]->type, it->second.second), d,
               "payload type differs from content");
        expect(std::holds_alternative<UnitT>(d->type->node), d, "set not at Unit");
        sum += walk(d->kids[0]);
        break;
      }
      case Rule::FoldR: {
        check_kid_count(d, 1);
        const auto* f = std::get_if<Fold>(&d->term->node);
        expect(f != nullptr, d, "term is not fold");
        const auto* mu = std::get_if<MuT>(&f->ann->node);
        expect(mu != nullptr, d, "fold annotation is not a mu type");
        expect(mu_guarded(f->ann), d, "fold annotation unguarded");
        expect(d->kids[0]->delta == d->delta, d, "premise depth differs");
        expect(d->kids[0]->term.get() == f->body.get(), d, "premise is not the body");
        expect(type_equal(d->kids[0]->type, subst_type(mu->body, mu->var, f->ann)), d,
               "fold body type is not the unfolding");
        expect(type_equal(d->type, f->ann), d, "fold not at its annotation");
        sum += walk(d->kids[0]);
        break;
      }
      case Rule::UnfoldR: {
        check_kid_count(d, 1);
        const auto* u = std::get_if<Unfold>(&d->term->node);
        expect(u != nullptr, d, "term is not unfold");
        expect(d->kids[0]->delta == d->delta, d, "premise depth differs");
        expect(d->kids[0]->term.get() == u->body.get(), d, "premise is not the body");
        const auto* mu = std::get_if<MuT>(&d->kids[0]->type->node);
        expect(mu != nullptr, d, "unfold premise is not a mu type");
        expect(type_equal(d->type, subst_type(mu->body, mu->var, d->kids[0]->type)), d,
               "unfold type is not the unfolding");
        sum += walk(d->kids[0]);
        break;
      }
      case Rule::ContrR:
      case Rule::WeakR:
        fail(d, "structural rule node emitted by the checker");
    }
    return sum;
  }
};

inline void validate_derivation(const lal::RegionContext& regions, const lal::DerivPtr& d) {
  Validator v(regions);
  v.run(d);
}

}  // namespace lalcheck
