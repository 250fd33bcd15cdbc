#include "lal/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "lal/cost.hpp"
#include "lal/machine.hpp"
#include "lal/parse.hpp"
#include "lal/typecheck.hpp"

namespace lal {

namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return os.str();
}

std::string outcome_line(const Outcome& out) {
  if (const auto* t = std::get_if<Terminated>(&out)) {
    return show_term(t->value) + "\nsteps: " + std::to_string(t->steps);
  }
  if (const auto* f = std::get_if<OutOfFuel>(&out)) {
    return "out of fuel after " + std::to_string(f->steps) + " steps";
  }
  const auto& s = std::get<StuckAt>(out);
  std::string head =
      s.reason == StuckReason::EmptyRegion ? "stuck: empty region" : "stuck: ill-formed term";
  if (!s.region.empty()) head += " " + s.region;
  if (!s.detail.empty()) head += " (" + s.detail + ")";
  return head;
}

int do_check(const CheckCmd& cmd, std::ostream& out) {
  Program prog = parse_program(read_file(cmd.path));
  DerivPtr d = check(prog);
  out << "ok: " << show_type(d->type) << "\n";
  if (cmd.emit_derivation) out << show_derivation(d);
  return 0;
}

int do_run(const RunCmd& cmd, std::ostream& out, std::ostream& err) {
  // run executes the erased term as written; it does not type-check first,
  // so ill-typed programs can get stuck.
  Program prog = parse_program(read_file(cmd.path));
  TermPtr m = erase(prog.main);
  if (cmd.trace) {
    std::vector<Configuration> tr = trace(m, Store{}, cmd.max_steps);
    for (const auto& c : tr) out << show_config(c) << "\n";
  }
  Outcome o = eval(m, Store{}, cmd.max_steps);
  if (std::holds_alternative<Terminated>(o)) {
    out << outcome_line(o) << "\n";
    return 0;
  }
  err << outcome_line(o) << "\n";
  return 2;
}

int do_bound(const BoundCmd& cmd, std::ostream& out) {
  Program prog = parse_program(read_file(cmd.path));
  Weight w = infer_weight(check(prog));
  out << "weight: " << show_elem(w.total) << "\n";
  out << "bound: " << bound_of(w).get_str() << "\n";
  return 0;
}

void print_report(const VerifyReport& r, std::ostream& out) {
  out << "name: " << r.name << "\n";
  out << "size: " << r.size << "\n";
  out << "depth: " << r.depth << "\n";
  out << "weight: " << show_elem(r.weight) << "\n";
  out << "bound: " << r.bound.get_str() << "\n";
  out << "steps: " << (r.steps ? std::to_string(*r.steps) : "-") << "\n";
  out << "outcome: " << r.outcome << "\n";
  out << "margin: " << (r.margin ? r.margin->get_str() : "-") << "\n";
  out << "ok: " << (r.ok ? "true" : "false") << "\n";
}

int do_verify(const VerifyCmd& cmd, std::ostream& out) {
  Program prog = parse_program(read_file(cmd.path));
  VerifyReport r = verify(prog, fs::path(cmd.path).stem().string(), cmd.fuel_cap);
  if (cmd.json) {
    out << report_json(r).dump(2) << "\n";
  } else {
    print_report(r, out);
  }
  return r.ok ? 0 : 2;
}

int do_corpus(const CorpusCmd& cmd, std::ostream& out) {
  if (!fs::is_directory(cmd.dir)) throw IoError("not a directory: " + cmd.dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(cmd.dir)) {
    if (e.is_regular_file() && e.path().extension() == ".lal") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  bool any_front_end_error = false;
  for (const auto& f : files) {
    std::string name = f.stem().string();
    try {
      Program prog = parse_program(read_file(f.string()));
      VerifyReport r = verify(prog, name, cmd.fuel_cap);
      if (r.ok) ++passed;
      if (cmd.json) {
        arr.push_back(report_json(r));
      } else {
        out << name << ": " << r.outcome
            << " steps=" << (r.steps ? std::to_string(*r.steps) : "-")
            << " bound=" << r.bound.get_str() << " ok=" << (r.ok ? "true" : "false") << "\n";
      }
    } catch (const SyntaxError& e) {
      any_front_end_error = true;
      if (cmd.json) {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["error"] = std::string("parse error: ") + e.what();
        arr.push_back(j);
      } else {
        out << name << ": parse error: " << e.what() << "\n";
      }
    } catch (const TypeError& e) {
      any_front_end_error = true;
      if (cmd.json) {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["error"] = std::string("type error: ") + e.what();
        arr.push_back(j);
      } else {
        out << name << ": type error: " << e.what() << "\n";
      }
    }
  }
  if (cmd.json) {
    out << arr.dump(2) << "\n";
  } else {
    out << "passed " << passed << "/" << files.size() << "\n";
  }
  if (any_front_end_error) return 1;
  return passed == files.size() ? 0 : 2;
}

}  // namespace

int run_command(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    if (const auto* c = std::get_if<CheckCmd>(&cmd)) return do_check(*c, out);
    if (const auto* c = std::get_if<RunCmd>(&cmd)) return do_run(*c, out, err);
    if (const auto* c = std::get_if<BoundCmd>(&cmd)) return do_bound(*c, out);
    if (const auto* c = std::get_if<VerifyCmd>(&cmd)) return do_verify(*c, out);
    return do_corpus(std::get<CorpusCmd>(cmd), out);
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace lal
