// Copyright 2026 The ctxsheaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// ctxsheaf command-line front end.
//
// Exit codes: 0 analysis completed, 1 input error, 2 self-check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctxsheaf/ctxsheaf.hpp"

namespace {

using namespace ctxsheaf;

/// "corpus:NAME" or a path to a JSON document.
ModelDocument load(const std::string& source) {
  const std::string prefix = "corpus:";
  if (source.rfind(prefix, 0) == 0) return corpus(source.substr(prefix.size()));
  std::ifstream in(source, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + source + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_model(ss.str());
  } catch (const Error& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

std::vector<RingSpec> parse_rings(const std::vector<std::string>& names) {
  std::vector<RingSpec> out;
  for (const auto& n : names) out.push_back(RingSpec::parse(n));
  return out;
}

std::uint64_t parse_budget(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError(std::string(what) + ": expected a positive integer, got '" + text + "'");
  return std::stoull(text);
}

SearchOptions search_options(const std::string& flag) {
  SearchOptions opts;
  if (!flag.empty()) {
    opts.node_budget = parse_budget(flag, "--budget");
  } else if (const char* env = std::getenv("CTXSHEAF_BUDGET")) {
    opts.node_budget = parse_budget(env, "CTXSHEAF_BUDGET");
  }
  return opts;
}

Domain parse_context(const Scenario& scn, std::string text) {
  std::erase_if(text, [](char c) { return c == '{' || c == '}' || c == ' '; });
  std::vector<std::string> labels;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) labels.push_back(item);
  return scn.domain_of(labels);
}

std::string vector_str(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

int cmd_analyze(const std::string& file, const std::vector<std::string>& ring_names,
                const std::string& budget, bool json) {
  ModelDocument doc = load(file);
  Materialised m = materialise(doc);
  std::vector<RingSpec> rings =
      ring_names.empty() ? default_rings(m.model) : parse_rings(ring_names);
  AnalyzeOptions opts{search_options(budget)};
  AnalysisReport rep = analyze(doc, rings, opts);
  if (json)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    std::cout << format_report_text(rep);
  return 0;
}

int cmd_obstruction(const std::string& file, const std::string& context,
                    const std::string& section, const std::string& ring_name) {
  EmpiricalModel model = materialise(load(file)).model;
  const Scenario& scn = model.scenario();
  RingSpec ring = RingSpec::parse(ring_name);
  Domain d = parse_context(scn, context);
  auto c = scn.find_context(d);
  if (!c) throw PreconditionError(scn.label(d) + " is not a context of the cover");
  Section s = scn.parse_section(section);
  if (s.domain != d)
    throw PreconditionError("section " + section + " is not over " + scn.label(d));
  LinearSystem sys = obstruction_system(model, *c, s, ring);
  bool vanishes = solve_linear_system(sys).solvable;
  if (connecting_hom_check(model, *c, s, ring) != vanishes)
    throw SelfCheckFailure("obstruction routes disagree at " + scn.format_section(s));
  std::cout << "obstruction of " << scn.format_section(s) << " over " << ring.name() << ": "
            << (vanishes ? "vanishes" : "non-zero") << "\n";
  std::cout << "  compatible-family system " << sys.matrix.rows() << "x" << sys.matrix.cols()
            << "\n";
  std::cout << "  cohomologically logically contextual at this section: "
            << (vanishes ? "no" : "yes") << "\n";
  return 0;
}

int cmd_avn(const std::string& file, const std::string& ring_name, const std::string& at) {
  EmpiricalModel model = materialise(load(file)).model;
  const Scenario& scn = model.scenario();
  RingSpec ring = RingSpec::parse(ring_name);
  AvnResult res = at.empty() ? is_avn(model, ring) : is_avn_at(model, scn.parse_section(at), ring);
  std::cout << ring.name() << "-linear theory (" << res.theory.equations.size()
            << " equations):\n";
  for (const auto& eq : res.theory.equations)
    std::cout << "  [" << scn.label(scn.context(eq.context)) << "] "
              << format_equation(scn, ring, eq) << "\n";
  std::cout << "AvN_" << ring.name();
  if (!at.empty()) std::cout << " at " << at;
  std::cout << ": " << (res.avn ? "yes" : "no") << "\n";
  if (res.witness) std::cout << "  inconsistency witness " << vector_str(*res.witness) << "\n";
  if (res.solution) {
    Section g{scn.all_measurements(), {}};
    for (const auto& x : *res.solution) g.values.push_back(static_cast<Outcome>(x));
    std::cout << "  global solution ";
    for (std::size_t i = 0; i < g.values.size(); ++i)
      std::cout << (i ? "," : "") << scn.measurements()[i] << "=" << g.values[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_corpus_list() {
  for (const auto& n : corpus_names()) {
    ModelDocument d = corpus(n);
    std::cout << n;
    if (d.description) std::cout << "  " << *d.description;
    std::cout << "\n";
  }
  return 0;
}

int cmd_corpus_show(const std::string& name) {
  std::cout << print_document(corpus(name));
  return 0;
}

int cmd_bundle(const std::string& file, const std::string& out) {
  EmpiricalModel model = materialise(load(file)).model;
  const std::string dot = export_bundle_dot(model);
  if (out.empty() || out == "-") {
    std::cout << dot;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + out + "'");
  f << dot;
  return 0;
}

int cmd_stabiliser(const std::string& triple, bool emit) {
  std::vector<std::string> words;
  std::stringstream ss(triple);
  for (std::string w; std::getline(ss, w, ',');) {
    std::erase_if(w, [](unsigned char c) { return std::isspace(c); });
    if (!w.empty()) words.push_back(w);
  }
  if (words.size() != 3) throw ValidationError("--triple expects three comma-separated operators");
  std::vector<PauliOperator> ops;
  for (const auto& w : words) ops.push_back(PauliOperator::parse(w));
  if (emit) {
    ModelDocument doc;
    doc.name = "stabiliser-" + words[0] + "-" + words[1] + "-" + words[2];
    doc.payload = PauliTriplePayload{words};
    materialise(doc);
    std::cout << print_document(doc);
    return 0;
  }
  AvnTripleDiagnostics diag = is_avn_triple(ops[0], ops[1], ops[2]);
  std::cout << "triple " << ops[0].str() << ", " << ops[1].str() << ", " << ops[2].str() << "\n";
  std::cout << "  commuting: " << (diag.commuting ? "yes" : "no") << "\n";
  std::cout << "  A1: " << (diag.a1 ? "yes" : "no") << "\n";
  std::cout << "  A2: " << (diag.a2 ? "yes" : "no") << " (" << diag.a2_count << " sites)\n";
  std::cout << "  AvN triple: " << (diag.avn ? "yes" : "no") << "\n";
  for (const auto& msg : diag.messages) std::cout << "  note: " << msg << "\n";
  if (!diag.commuting) return 0;
  auto group = generate_subgroup(ops);
  Scenario scn = triple_scenario(ops);
  Theory th = theory_of_subgroup(group, scn);
  std::cout << "subgroup (" << group.size() << " elements):";
  for (const auto& h : group) std::cout << " " << h.str();
  std::cout << "\nparity equations:\n";
  for (const auto& eq : th.equations)
    std::cout << "  " << format_equation(scn, th.ring, eq) << "\n";
  EmpiricalModel model = model_of_theory(th, scn);
  std::cout << "AvN_Z2 of the parity model: " << (is_avn(model, th.ring).avn ? "yes" : "no")
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctxsheaf: contextuality, cohomology and paradox"};
  app.require_subcommand(1);

  std::string file, budget, context, section, ring, at, out, name, triple;
  std::vector<std::string> rings;
  bool json = false, emit = false;

  auto* analyze = app.add_subcommand("analyze", "Run every classifier and check the hierarchy");
  analyze->add_option("file", file, "Model document, or corpus:NAME")->required();
  analyze->add_option("--ring", rings, "Ring z or zN (repeatable)");
  analyze->add_option("--budget", budget, "Node budget of the global-section search");
  analyze->add_flag("--json", json, "Emit JSON");

  auto* obstruction = app.add_subcommand("obstruction", "Cohomological obstruction of a section");
  obstruction->add_option("file", file, "Model document, or corpus:NAME")->required();
  obstruction->add_option("--context", context, "Context, e.g. a1,b1")->required();
  obstruction->add_option("--section", section, "Section, e.g. a1=0,b1=0")->required();
  obstruction->add_option("--ring", ring, "Ring z or zN")->required();

  auto* avn = app.add_subcommand("avn", "All-versus-nothing test of the linear theory");
  avn->add_option("file", file, "Model document, or corpus:NAME")->required();
  avn->add_option("--ring", ring, "Finite ring zN")->required();
  avn->add_option("--at", at, "Restrict to solutions extending a section");

  auto* corpus_cmd = app.add_subcommand("corpus", "Builtin models");
  corpus_cmd->require_subcommand(1);
  auto* list = corpus_cmd->add_subcommand("list", "List builtin models");
  auto* show = corpus_cmd->add_subcommand("show", "Print a builtin document");
  show->add_option("name", name, "Corpus entry")->required();

  auto* bundle = app.add_subcommand("bundle", "Export the bundle diagram as DOT");
  bundle->add_option("file", file, "Model document, or corpus:NAME")->required();
  bundle->add_option("-o,--output", out, "Output path (default stdout)");

  auto* stab = app.add_subcommand("stabiliser", "Inspect a Pauli triple");
  stab->add_option("--triple", triple, "Three operators, e.g. XYY,YXY,YYX")->required();
  stab->add_flag("--emit-model", emit, "Print the model document instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(file, rings, budget, json);
    if (obstruction->parsed()) return cmd_obstruction(file, context, section, ring);
    if (avn->parsed()) return cmd_avn(file, ring, at);
    if (list->parsed()) return cmd_corpus_list();
    if (show->parsed()) return cmd_corpus_show(name);
    if (bundle->parsed()) return cmd_bundle(file, out);
    if (stab->parsed()) return cmd_stabiliser(triple, emit);
  } catch (const SelfCheckFailure& e) {
    std::cerr << "self-check failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
