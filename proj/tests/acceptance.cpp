// Acceptance gate for the whole toolchain. Each criterion prints exactly one
// [PASS]/[FAIL] line; the exit code is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gen.hpp"
#include "lal/cli.hpp"
#include "lal/cost.hpp"
#include "lal/machine.hpp"
#include "lal/monoid.hpp"
#include "lal/parse.hpp"
#include "lal/typecheck.hpp"

using namespace lal;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << s << "s";
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(LAL_CORPUS_DIR))
    if (e.path().extension() == ".lal") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Fixed-depth program family: k stores followed by one load, wrapped in d-1
// paragraph promotions. Size grows linearly in k while the judgment depth,
// and with it the weight polynomial's degree, stays fixed per d.
std::string family_source(int d, int k) {
  std::string chain;
  for (int i = 0; i < k; ++i) chain += "set(r, $0) ; ";
  chain += "get(r)";
  for (int i = 0; i < d - 1; ++i) chain = "$(" + chain + ")";
  return "level " + std::to_string(d) + " ;\nregion r : depth 1, type $Nat ;\n" + chain;
}

// --- criterion 1: every corpus program stays within its inferred bound ---

Verdict corpus_soundness() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::filesystem::path> files = corpus_files();
  if (files.size() < 20)
    return {false, "corpus has only " + std::to_string(files.size()) + " programs"};
  for (const auto& f : files) {
    Program p = parse_program(slurp(f));
    VerifyReport r = verify(p, f.stem().string(), 10'000'000);
    if (!r.ok || r.outcome != "terminated")
      return {false, f.stem().string() + ": outcome " + r.outcome + ", bound " +
                         r.bound.get_str()};
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) return {false, "corpus sweep took " + fmt_seconds(dt)};
  return {true, std::to_string(files.size()) + "/" + std::to_string(files.size()) +
                    " programs within bound in " + fmt_seconds(dt)};
}

// --- criterion 2: desk-checked constants come out exactly ---

Verdict desk_constants() {
  Program idapp = parse_program("(\\x:Unit. x) ()");
  VerifyReport r = verify(idapp, "idapp", 100);
  if (!(r.bound == 3 && r.steps && *r.steps == 3 && r.margin && *r.margin == 0))
    return {false, "identity application: bound " + r.bound.get_str() + ", steps " +
                       (r.steps ? std::to_string(*r.steps) : "-")};
  Program getp = parse_program("level 1 ;\nregion r : depth 1, type $Nat ;\nget(r)");
  DerivPtr d = check(getp);
  Weight w = infer_weight(d);
  if (d->rule != Rule::GetR) return {false, "root rule is not the load"};
  auto it = w.contrib.find(d->id);
  if (it == w.contrib.end() || show_elem(it->second) != "(5, 0, 1)")
    return {false, "load contributes " +
                       (it == w.contrib.end() ? std::string("nothing")
                                              : show_elem(it->second))};
  return {true, "identity application costs 3 = bound; a load contributes (5, 0, 1)"};
}

// --- criterion 3: the resource monoid satisfies its law suite ---

Verdict monoid_laws() {
  auto t0 = std::chrono::steady_clock::now();
  const int iters = 2000;  // 10 fresh elements per iteration = 2*10^4 total
  std::uint64_t elements = 0;
  for (int i = 0; i < iters; ++i) {
    std::vector<MonoidElem> any = lalgen::sample(lalgen::elem_any, 100);
    std::vector<MonoidElem> deg2 = lalgen::sample(lalgen::elem_probe2, 100);
    std::vector<MonoidElem> grounded = lalgen::sample(lalgen::elem_grounded, 100);

    // sums dominate their parts
    MonoidElem p = lalgen::elem_any(), q = lalgen::elem_any();
    elements += 2;
    if (leq_falsify(p, madd(p, q), any) || leq_falsify(q, madd(p, q), any))
      return {false, "superadditivity fails at " + show_elem(p) + " + " + show_elem(q)};

    // a paragraph of a sum splits into a sum of paragraphs
    MonoidElem a = lalgen::elem_any(), b = lalgen::elem_any();
    elements += 2;
    if (leq_falsify(mpar(madd(a, b)), madd(mpar(a), mpar(b)), any))
      return {false, "paragraph split fails at " + show_elem(a) + ", " + show_elem(b)};

    // a bang of a sum is paid by one functorial copy plus one bang
    MonoidElem c = lalgen::elem_any(), e = lalgen::elem_any();
    elements += 2;
    if (leq_falsify(mbang(madd(c, e)), madd(mF(c), mbang(e)), any))
      return {false, "bang split fails at " + show_elem(c) + ", " + show_elem(e)};

    // paragraph is below bang on balanced elements probed at low degree
    MonoidElem bal = lalgen::elem_balanced();
    elements += 1;
    if (leq_falsify(mpar(bal), mbang(bal), deg2))
      return {false, "paragraph<=bang fails at " + show_elem(bal)};

    // merging two paragraphs costs at most two, on balanced pairs
    MonoidElem b1 = lalgen::elem_balanced(), b2 = lalgen::elem_balanced();
    elements += 2;
    if (leq_falsify(madd(mpar(b1), mpar(b2)), madd(mpar(madd(b1, b2)), mnat(2)), any))
      return {false, "paragraph merge fails at " + show_elem(b1) + ", " + show_elem(b2)};

    // two bangs and one-bang-plus-one agree on grounded probes
    MonoidElem g = lalgen::elem_grounded();
    elements += 1;
    MonoidElem two = madd(mbang(g), mbang(g));
    MonoidElem one = madd(mbang(g), mnat(1));
    if (leq_falsify(two, one, grounded) || leq_falsify(one, two, grounded))
      return {false, "bang absorption fails at " + show_elem(g)};
  }
  double dt = seconds_since(t0);
  if (dt >= 60.0) return {false, "law suite took " + fmt_seconds(dt)};
  return {true, std::to_string(elements) + " elements, 100 probes per comparison, " +
                    "0 counterexamples in " + fmt_seconds(dt) +
                    " (conditional laws on their balanced/grounded domains)"};
}

// --- criterion 4: the pole is saturated along recorded traces ---

std::vector<std::string> trace_pool_sources() {
  std::vector<std::string> srcs;
  for (int d = 1; d <= 3; ++d)
    for (int k = 1; k <= 60; ++k) srcs.push_back(family_source(d, k));
  for (int j = 1; j <= 120; ++j) {
    std::string t = "()";
    for (int i = 0; i < j; ++i) t = "(\\x:Unit. x) (" + t + ")";
    srcs.push_back(t);
  }
  for (int t = 0; t <= 400; ++t)
    srcs.push_back("level 1 ;\n(\\x:!Nat. let !y = x in $(y + y)) !" +
                   std::to_string(t));
  for (int w = 1; w <= 3; ++w)
    for (int n = 0; n < 60; ++n) {
      std::string t = std::to_string(n) + " + " + std::to_string(n + 1);
      for (int i = 0; i < w; ++i) t = "$(" + t + ")";
      srcs.push_back("level " + std::to_string(w) + " ;\n" + t);
    }
  for (int n = 0; n < 200; ++n)
    srcs.push_back(std::to_string(n) + " * " + std::to_string(n + 2));
  for (const auto& f : corpus_files()) srcs.push_back(slurp(f));
  return srcs;
}

Verdict pole_saturation() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> srcs = trace_pool_sources();
  if (srcs.size() < 1000)
    return {false, "only " + std::to_string(srcs.size()) + " traces"};
  std::uint64_t positions = 0;
  for (const std::string& src : srcs) {
    Program p = parse_program(src);
    check(p);
    std::vector<Configuration> tr = trace(erase(p.main), Store{}, 1'000'000);
    Outcome fin = eval_from(tr.back(), 0);
    if (!std::holds_alternative<Terminated>(fin)) return {false, "a trace did not terminate"};
    std::uint64_t total = tr.size() - 1;
    for (std::uint64_t i = 0; i < tr.size(); ++i) {
      ++positions;
      std::uint64_t suffix = total - i;
      // exact budget: the suffix length itself is always enough
      if (!pole_member(tr[i], mnat(suffix)))
        return {false, "exact budget refused at position " + std::to_string(i)};
      // step rule: membership one step later lifts with one extra unit
      if (i < total) {
        MonoidElem later = madd(mnat(suffix - 1), lalgen::elem_any());
        if (!pole_member(tr[i + 1], later))
          return {false, "relaxed suffix budget refused"};
        if (!pole_member(tr[i], madd(later, mnat(1))))
          return {false, "step saturation fails at position " + std::to_string(i)};
      }
      // order rule: membership survives adding any element
      if (!pole_member(tr[i], madd(mnat(suffix), lalgen::elem_any())))
        return {false, "order saturation fails at position " + std::to_string(i)};
    }
    // tightness: one unit less than the whole run is refused
    if (total > 0 && pole_member(tr[0], mnat(total - 1)))
      return {false, "budget one short was wrongly accepted"};
  }
  return {true, std::to_string(srcs.size()) + " traces, " + std::to_string(positions) +
                    " positions, step+order saturation everywhere in " +
                    fmt_seconds(seconds_since(t0))};
}

// --- criterion 5: bounds scale polynomially with fixed degree per depth ---

Verdict polynomial_scaling() {
  const std::vector<int> ks = {6, 12, 24, 48, 96};
  const std::size_t want_degree[4] = {0, 0, 2, 6};  // indexed by d
  const double slope_limit[4] = {0, 1.3, 3.3, 7.3};
  std::ostringstream note;
  for (int d = 1; d <= 3; ++d) {
    std::vector<double> logk, logb;
    std::set<std::size_t> degrees;
    for (int k : ks) {
      Program p = parse_program(family_source(d, k));
      Weight w = infer_weight(check(p));
      VerifyReport r = verify(p, "family", 10'000'000);
      if (!r.ok || !r.steps) return {false, "family member failed to verify"};
      if (*r.steps != static_cast<std::uint64_t>(4 * k + 2 * d - 1))
        return {false, "family step count drifted"};
      degrees.insert(w.total.f.degree());
      logk.push_back(std::log(static_cast<double>(k)));
      logb.push_back(std::log(bound_of(w).get_d()));
    }
    if (degrees.size() != 1 || *degrees.begin() != want_degree[d])
      return {false, "weight degree not constant at depth " + std::to_string(d)};
    // consecutive log-log slopes over the upper half of the size range
    std::vector<double> slopes;
    for (std::size_t i = ks.size() / 2; i + 1 < ks.size(); ++i)
      slopes.push_back((logb[i + 1] - logb[i]) / (logk[i + 1] - logk[i]));
    double mean = 0;
    for (double s : slopes) mean += s;
    mean /= static_cast<double>(slopes.size());
    for (double s : slopes)
      if (std::abs(s - mean) > 0.2)
        return {false, "slope unstable at depth " + std::to_string(d)};
    if (mean > slope_limit[d])
      return {false, "slope " + std::to_string(mean) + " over limit at depth " +
                         std::to_string(d)};
    note.setf(std::ios::fixed);
    note.precision(2);
    note << "d=" << d << ": degree " << want_degree[d] << ", slope " << mean << "; ";
  }
  return {true, note.str() + "all members within bound"};
}

// --- criterion 6: the designated ill-typed programs are rejected ---

Verdict negative_typing() {
  struct NegCase {
    const char* file;
    TypeErrorKind kind;
    const char* label;
  };
  const NegCase cases[] = {
      {"reject_dup.lal", TypeErrorKind::NonValueUnderBang, "bang over a computation"},
      {"unguarded_mu.lal", TypeErrorKind::UnguardedMu, "unguarded recursive region"},
  };
  std::string seen;
  for (const auto& c : cases) {
    std::filesystem::path f = std::filesystem::path(LAL_CORPUS_EXTRA_DIR) / c.file;
    try {
      Program p = parse_program(slurp(f));
      check(p);
      return {false, std::string(c.label) + " was accepted"};
    } catch (const TypeError& e) {
      if (e.kind != c.kind)
        return {false, std::string(c.label) + " rejected as " +
                           type_error_kind_name(e.kind)};
      if (!seen.empty()) seen += ", ";
      seen += type_error_kind_name(e.kind);
    }
  }
  return {true, "rejected with " + seen};
}

// --- criterion 7: accepted programs never jam, and runs are reproducible ---

Verdict progress_determinism() {
  for (const auto& f : corpus_files()) {
    Program p = parse_program(slurp(f));
    check(p);
    TermPtr m = erase(p.main);
    Outcome o = eval(m, Store{}, 10'000'000);
    if (!std::holds_alternative<Terminated>(o))
      return {false, f.stem().string() + " did not run to a value"};
    std::vector<Configuration> t1 = trace(m, Store{}, 10'000'000);
    std::vector<Configuration> t2 = trace(m, Store{}, 10'000'000);
    if (t1.size() != t2.size()) return {false, "trace lengths differ"};
    for (std::size_t i = 0; i < t1.size(); ++i)
      if (show_config(t1[i]) != show_config(t2[i]))
        return {false, f.stem().string() + ": traces differ at step " + std::to_string(i)};
  }
  CorpusCmd cmd{LAL_CORPUS_DIR};
  cmd.json = true;
  std::ostringstream o1, e1, o2, e2;
  int c1 = run_command(Command{cmd}, o1, e1);
  int c2 = run_command(Command{cmd}, o2, e2);
  if (c1 != 0 || c2 != 0) return {false, "corpus sweep exited nonzero"};
  if (o1.str() != o2.str()) return {false, "corpus reports differ between runs"};
  return {true, "all programs reach values; traces and reports byte-identical"};
}

// --- criterion 8: access depth always matches the region's stratum ---

Verdict stratification() {
  std::uint64_t fired = 0;
  for (const auto& f : corpus_files()) {
    Program p = parse_program(slurp(f));
    check(p);
    RegionContext rc = region_context(p);
    std::uint64_t top = effective_level(p);
    std::vector<Configuration> tr = trace(erase(p.main), Store{}, 10'000'000);
    for (const auto& c : tr) {
      // store payloads are syntactic values, so a focused access always fires
      std::string region;
      if (const auto* g = std::get_if<Get>(&c.focus->node)) region = g->region;
      else if (const auto* s = std::get_if<Set>(&c.focus->node)) region = s->region;
      else continue;
      ++fired;
      std::uint64_t want = top - rc.at(region).first;
      if (env_modal_depth(c.env) != want)
        return {false, f.stem().string() + ": access at depth " +
                           std::to_string(env_modal_depth(c.env)) + ", region wants " +
                           std::to_string(want)};
    }
  }
  if (fired == 0) return {false, "no region access ever fired"};
  return {true, std::to_string(fired) +
                    " fired accesses, all at exactly top-minus-region depth"};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Verdict (*fn)();
  };
  const Entry entries[] = {
      {"corpus bound soundness", corpus_soundness},
      {"exact desk constants", desk_constants},
      {"monoid law suite", monoid_laws},
      {"pole saturation", pole_saturation},
      {"polynomial scaling", polynomial_scaling},
      {"negative typing", negative_typing},
      {"progress and determinism", progress_determinism},
      {"stratification invariant", stratification},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    Verdict v{false, "unknown"};
    try {
      v = e.fn();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    if (!v.ok) ++failures;
    std::cout << (v.ok ? "[PASS] " : "[FAIL] ") << idx << ". " << e.name << ": "
              << v.detail << "\n";
  }
  return failures;
}
