#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nq/cutelim.hpp"
#include "nq/parse.hpp"
#include "nq/search.hpp"
#include "nq/semantics.hpp"

namespace nq::cli {

namespace {

using nlohmann::ordered_json;

struct Common {
  std::string logic = "K";
  std::string format = "text";
  bool unicode = false;

  bool structured() const { return format == "structured"; }
  PrintOptions print() const {
    PrintOptions p;
    p.unicode = unicode;
    return p;
  }
};

void add_common(CLI::App* sub, Common& c, bool with_logic = true) {
  if (with_logic) sub->add_option("--logic", c.logic, "axioms, comma separated, or K")->capture_default_str();
  sub->add_option("--format", c.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  sub->add_flag("--unicode", c.unicode, "print with logical symbols");
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

bool is_sequent_text(const std::string& text) {
  return text.find("=>") != std::string::npos || text.find("⇒") != std::string::npos;
}

// A bare formula A stands for the sequent "; => A".
NestedSequent goal_of(const std::string& text) {
  if (is_sequent_text(text)) return parse_nested_sequent(text);
  NestedSequent s;
  s.node.suc.push_back(parse_formula(text));
  return s;
}

void print_derivation(const Derivation& d, const Common& c, std::ostream& out) {
  if (c.structured()) out << serialize(d);
  else out << to_text(d, c.print());
}

int print_check(const CheckResult& r, const Common& c, std::ostream& out) {
  if (c.structured()) {
    ordered_json j;
    j["result"] = r.ok ? "ok" : "failed";
    if (!r.ok) {
      j["where"] = r.where;
      j["reason"] = r.reason;
    }
    out << j.dump(2) << "\n";
  } else {
    out << (r.ok ? std::string("ok") : "failed: " + r.message()) << "\n";
  }
  return r.ok ? kOk : kNegative;
}

int cmd_check(const Common& c, const std::string& file, bool allow_cuts, std::ostream& out) {
  LogicSpec logic = make_logic(c.logic);
  Derivation d = deserialize(read_input(file));
  CheckOptions opt;
  opt.allow_cuts = allow_cuts;
  return print_check(check(d, logic, opt), c, out);
}

int cmd_prove(const Common& c, const std::string& goal, const SearchBudget& b, std::ostream& out) {
  LogicSpec logic = make_logic(c.logic);
  SearchResult r = prove(goal_of(goal), logic, b);
  if (r.derivation) {
    print_derivation(*r.derivation, c, out);
    return kOk;
  }
  if (c.structured()) {
    ordered_json j;
    j["result"] = "Unknown";
    j["expansions"] = r.expansions;
    j["budget_exhausted"] = r.budget_exhausted;
    out << j.dump(2) << "\n";
  } else {
    out << "Unknown\n";
  }
  return kNegative;
}

int cmd_cutelim(const Common& c, const std::string& file, std::ostream& out) {
  LogicSpec logic = make_logic(c.logic);
  Derivation d = deserialize(read_input(file));
  CheckOptions opt;
  opt.allow_cuts = true;
  if (auto r = check(d, logic, opt); !r) return print_check(r, c, out);
  print_derivation(eliminate(d, logic), c, out);
  return kOk;
}

int cmd_fm(const Common& c, const std::string& sequent, bool expand, std::ostream& out) {
  PrintOptions p = c.print();
  p.sugar = !expand;
  std::string f = to_string(fm(parse_nested_sequent(sequent)), p);
  if (c.structured()) out << ordered_json{{"formula", f}}.dump(2) << "\n";
  else out << f << "\n";
  return kOk;
}

int cmd_countermodel(const Common& c, const std::string& goal, const Bounds& b, std::ostream& out) {
  LogicSpec logic = make_logic(c.logic);
  auto r = is_sequent_text(goal) ? countermodel(parse_nested_sequent(goal), logic.axioms, b)
                                 : countermodel(parse_formula(goal), logic.axioms, b);
  if (!r) {
    if (c.structured()) out << ordered_json{{"result", "NotFoundWithinBounds"}}.dump(2) << "\n";
    else out << "NotFoundWithinBounds\n";
    return kNegative;
  }
  out << (c.structured() ? describe_json(*r) : describe(*r));
  return kOk;
}

int cmd_closure(const Common& c, std::ostream& out) {
  AxiomSet s = parse_axiom_set(c.logic);
  auto missing = missing_axioms(s);
  ordered_json j;
  j["logic"] = axiom_set_name(s);
  j["properly_closed"] = missing.empty();
  std::vector<std::string> names;
  if (missing.empty()) {
    for (auto k : make_logic(s).rules) names.push_back(rule_label(k, c.unicode));
    j["rules"] = names;
  } else {
    for (auto a : missing) names.push_back(axiom_name(a));
    j["missing"] = names;
  }
  if (c.structured()) {
    out << j.dump(2) << "\n";
  } else {
    out << (missing.empty() ? "rules:" : "not properly closed, requires:");
    for (const auto& n : names) out << ' ' << n;
    out << "\n";
  }
  return missing.empty() ? kOk : kNegative;
}

int cmd_axiom(const Common& c, const std::string& name, std::ostream& out) {
  print_derivation(derive_axiom(name, make_logic(c.logic)), c, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nested sequent prover for quantified modal logics", "nqml"};
  app.require_subcommand(1);
  Common c;
  std::string input;
  bool allow_cuts = false, expand = false;
  SearchBudget budget;
  Bounds bounds;

  auto* check_cmd = app.add_subcommand("check", "check a derivation file (- for stdin)");
  check_cmd->add_option("file", input)->required();
  check_cmd->add_flag("--allow-cuts", allow_cuts, "accept Cut and L-Cut nodes");
  add_common(check_cmd, c);

  auto* prove_cmd = app.add_subcommand("prove", "search for a cut-free derivation");
  prove_cmd->add_option("sequent", input, "nested sequent, or a formula A for => A")->required();
  prove_cmd->add_option("--depth", budget.max_depth, "maximum derivation height")->capture_default_str();
  prove_cmd->add_option("--expansions", budget.max_expansions, "maximum search nodes")->capture_default_str();
  add_common(prove_cmd, c);

  auto* cut_cmd = app.add_subcommand("cutelim", "eliminate cuts from a derivation file (- for stdin)");
  cut_cmd->add_option("file", input)->required();
  add_common(cut_cmd, c);

  auto* fm_cmd = app.add_subcommand("fm", "print the interpretation formula of a nested sequent");
  fm_cmd->add_option("sequent", input)->required();
  fm_cmd->add_flag("--expand", expand, "print primitive connectives only");
  add_common(fm_cmd, c, false);

  auto* cm_cmd = app.add_subcommand("countermodel", "search finite models for a falsifier");
  cm_cmd->add_option("goal", input, "formula or nested sequent")->required();
  cm_cmd->add_option("--worlds", bounds.worlds, "maximum worlds")->capture_default_str();
  cm_cmd->add_option("--domain", bounds.objects, "maximum objects")->capture_default_str();
  add_common(cm_cmd, c);

  auto* closure_cmd = app.add_subcommand("closure", "rule set of a logic, or the axioms it lacks");
  add_common(closure_cmd, c);

  auto* axiom_cmd = app.add_subcommand("axiom", "template derivation of a named axiom");
  axiom_cmd->add_option("name", input)->required();
  add_common(axiom_cmd, c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check_cmd) return cmd_check(c, input, allow_cuts, out);
    if (*prove_cmd) return cmd_prove(c, input, budget, out);
    if (*cut_cmd) return cmd_cutelim(c, input, out);
    if (*fm_cmd) return cmd_fm(c, input, expand, out);
    if (*cm_cmd) return cmd_countermodel(c, input, bounds, out);
    if (*closure_cmd) return cmd_closure(c, out);
    if (*axiom_cmd) return cmd_axiom(c, input, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace nq::cli
