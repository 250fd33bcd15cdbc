#include "lal/cost.hpp"

#include <stdexcept>

namespace lal {

namespace {

// Weight rules, by derivation node:
//   literals, variables, region constants        -> 0
//   arith                                        -> sum of kids + 1
//   lam, fold, unfold                            -> kid unchanged
//   app, bang-elim, par-elim                     -> sum of kids + 3
//   par-prom                                     -> par(kid) + 4
//   bang-prom                                    -> F(kid)
//   get                                          -> 5
//   set                                          -> par(payload under its own
//                                                   par promotion) + 1
//   any node with k > 0 contractions             -> + k
// The set rule reuses the payload's under-promotion weight directly: the
// stored value is already a value, so the promotion surcharge paid by a
// free-standing par term never runs.
MonoidElem infer_rec(const DerivPtr& d, std::map<std::uint64_t, MonoidElem>& contrib) {
  MonoidElem w;
  auto add_const = [&](const MonoidElem& c) {
    w = madd(w, c);
    auto [it, fresh] = contrib.emplace(d->id, c);
    if (!fresh) it->second = madd(it->second, c);
  };

  switch (d->rule) {
    case Rule::IntR:
    case Rule::UnitR:
    case Rule::VarR:
    case Rule::RegionR:
      break;
    case Rule::ArithR:
      w = madd(infer_rec(d->kids[0], contrib), infer_rec(d->kids[1], contrib));
      add_const(mnat(1));
      break;
    case Rule::LamR:
    case Rule::FoldR:
    case Rule::UnfoldR:
      w = infer_rec(d->kids[0], contrib);
      break;
    case Rule::AppR:
    case Rule::BangElimR:
    case Rule::ParElimR:
      w = madd(infer_rec(d->kids[0], contrib), infer_rec(d->kids[1], contrib));
      add_const(mnat(3));
      break;
    case Rule::ParPromR:
      w = mpar(infer_rec(d->kids[0], contrib));
      add_const(mnat(4));
      break;
    case Rule::BangPromR:
      w = mF(infer_rec(d->kids[0], contrib));
      break;
    case Rule::GetR:
      add_const(mnat(5));
      break;
    case Rule::SetR: {
      const DerivPtr& payload = d->kids[0];
      if (payload->rule == Rule::ParPromR) {
        w = mpar(infer_rec(payload->kids[0], contrib));
      } else {
        w = mpar(infer_rec(payload, contrib));
      }
      add_const(mnat(1));
      break;
    }
    case Rule::ContrR:
    case Rule::WeakR:
      throw std::logic_error("structural rule node in weight inference");
  }

  if (d->contractions > 0) add_const(mnat(d->contractions));
  return w;
}

}  // namespace

Weight infer_weight(const DerivPtr& d) {
  Weight w;
  w.total = infer_rec(d, w.contrib);
  return w;
}

mpz_class bound_of(const Weight& w) { return norm(w.total); }
mpz_class bound_of(const MonoidElem& p) { return norm(p); }

bool pole_member(const Configuration& c, const MonoidElem& p) {
  mpz_class limit = norm(p);
  std::uint64_t fuel =
      limit.fits_ulong_p() ? static_cast<std::uint64_t>(limit.get_ui()) : UINT64_MAX;
  Configuration start = c;
  start.steps = 0;
  Outcome out = eval_from(std::move(start), fuel);
  if (const auto* t = std::get_if<Terminated>(&out)) {
    return mpz_class(static_cast<unsigned long>(t->steps)) <= limit;
  }
  return false;
}

VerifyReport verify(const Program& prog, const std::string& name, std::uint64_t fuel_cap) {
  VerifyReport r;
  r.name = name;
  r.size = term_size(prog.main);
  r.depth = term_depth(prog.main);

  DerivPtr d = check(prog);
  Weight w = infer_weight(d);
  r.weight = w.total;
  r.bound = bound_of(w);

  std::uint64_t fuel = fuel_cap;
  if (r.bound.fits_ulong_p()) {
    std::uint64_t b = static_cast<std::uint64_t>(r.bound.get_ui());
    if (b < fuel) fuel = b;
  }

  Outcome out = eval(erase(prog.main), Store{}, fuel);
  if (const auto* t = std::get_if<Terminated>(&out)) {
    r.outcome = "terminated";
    r.steps = t->steps;
    mpz_class steps(static_cast<unsigned long>(t->steps));
    r.ok = steps <= r.bound;
    r.margin = r.bound - steps;
  } else if (std::holds_alternative<OutOfFuel>(out)) {
    r.outcome = "out_of_fuel";
    r.ok = false;
  } else {
    const auto& s = std::get<StuckAt>(out);
    r.outcome = s.reason == StuckReason::EmptyRegion ? "empty_region" : "ill_formed";
    r.ok = false;
  }
  return r;
}

namespace {

nlohmann::ordered_json mpz_json(const mpz_class& v) {
  if (v >= 0 && v.fits_ulong_p()) {
    return static_cast<std::uint64_t>(v.get_ui());
  }
  if (v < 0 && v.fits_slong_p()) {
    return static_cast<std::int64_t>(v.get_si());
  }
  return v.get_str();
}

}  // namespace

nlohmann::ordered_json report_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["size"] = r.size;
  j["depth"] = r.depth;
  nlohmann::ordered_json wj;
  wj["n"] = r.weight.n;
  wj["m"] = r.weight.m;
  wj["coeffs"] = r.weight.f.coeffs;
  j["weight"] = wj;
  j["bound"] = mpz_json(r.bound);
  j["steps"] = r.steps ? nlohmann::ordered_json(*r.steps) : nlohmann::ordered_json(nullptr);
  j["outcome"] = r.outcome;
  j["ok"] = r.ok;
  j["margin"] =
      r.margin ? mpz_json(*r.margin) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace lal
