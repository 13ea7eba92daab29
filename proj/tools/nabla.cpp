// Command-line surface: parse | check | valid | srd | members | lift | nnf |
// finalseq | checkproof. Input/output formats are documented in the README;
// all listings are in canonical order so output is byte-stable across runs.
//
// Exit codes: 0 success (for `valid`: VALID; for `checkproof`: accepted),
// 1 negative verdict (INVALID / rejected proof), 2 any error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nabla/nabla.hpp"

namespace {

using nabla::Budget;
using nabla::Carrier;
using nabla::Elem;
using nabla::Formula;
using nabla::Functor;
using nabla::PropEnv;
using nlohmann::json;

struct Options {
  std::string functor;
  std::string props;
  std::uint64_t max_enum = 1000000;
  std::string output = "text";
};

std::uint64_t env_max_enum() {
  const char* v = std::getenv("NABLA_MAX_ENUM");
  if (!v) return 1000000;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0)
    nabla::fail(nabla::ErrorKind::Syntax, "NABLA_MAX_ENUM must be a positive integer");
  return parsed;
}

std::vector<std::string> split_letters(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) nabla::fail(nabla::ErrorKind::Syntax, "cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The ambient functor plus optional proposition-letter sugar.
struct Ambient {
  Functor functor = Functor::id();
  std::optional<PropEnv> props;

  const nabla::FormulaSugar* sugar() const { return props ? &*props : nullptr; }
};

Ambient make_ambient(const Options& opt, Budget& budget) {
  if (opt.functor.empty()) nabla::fail(nabla::ErrorKind::Syntax, "--functor is required");
  Functor base = nabla::parse_functor(opt.functor);
  Ambient a;
  if (!opt.props.empty()) {
    a.props = PropEnv::wrap(base, split_letters(opt.props), budget);
    a.functor = a.props->wrapped();
  } else {
    a.functor = base;
  }
  return a;
}

void emit(const Options& opt, const json& machine, const std::string& text) {
  if (opt.output == "json")
    std::cout << machine.dump() << "\n";
  else
    std::cout << text;
}

// relation file: "dom:" and "cod:" lines, then tab-separated pairs
nabla::Relation load_relation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    lines.push_back(line);
  }
  if (lines.size() < 2 || lines[0].rfind("dom:", 0) != 0 || lines[1].rfind("cod:", 0) != 0)
    nabla::fail(nabla::ErrorKind::Syntax, "relation file needs dom: and cod: lines first");
  auto parse_carrier = [](const std::string& l, std::size_t prefix) {
    std::vector<Elem> members;
    std::istringstream ss(l.substr(prefix));
    std::string field;
    while (std::getline(ss, field, '\t'))
      if (field.find_first_not_of(" \r") != std::string::npos)
        members.push_back(nabla::parse_elem_text(field, nabla::atom_inner()));
    return Carrier(std::move(members));
  };
  Carrier dom = parse_carrier(lines[0], 4);
  Carrier cod = parse_carrier(lines[1], 4);
  std::vector<std::pair<Elem, Elem>> pairs;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::size_t tab = lines[i].find('\t');
    if (tab == std::string::npos)
      nabla::fail(nabla::ErrorKind::Syntax, "relation pairs are tab-separated");
    pairs.emplace_back(nabla::parse_elem_text(lines[i].substr(0, tab), nabla::atom_inner()),
                       nabla::parse_elem_text(lines[i].substr(tab + 1), nabla::atom_inner()));
  }
  return nabla::Relation(std::move(dom), std::move(cod), std::move(pairs));
}

int cmd_parse(const Options& opt, const std::string& formula_text) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  Formula a = nabla::parse_formula(formula_text, ambient.functor, ambient.sugar());
  int d = nabla::depth(ambient.functor, a);
  std::size_t sf = nabla::subformulas(ambient.functor, a).size();
  json machine = {{"formula", nabla::print_formula(a)}, {"depth", d}, {"subformulas", sf}};
  emit(opt, machine,
       "formula: " + nabla::print_formula(a) + "\ndepth: " + std::to_string(d) +
           "\nsubformulas: " + std::to_string(sf) + "\n");
  return 0;
}

int cmd_check(const Options& opt, const std::string& file, const std::string& state,
              const std::string& formula_text) {
  Budget budget(opt.max_enum);
  nabla::Coalgebra m = nabla::load_coalgebra(read_file(file));
  const nabla::FormulaSugar* sugar = nullptr;
  std::optional<PropEnv> env;
  if (!opt.props.empty()) {
    // the file's functor must already have the Const(tags) x F shape
    if (m.functor.tag() != Functor::Tag::Product ||
        m.functor.left().tag() != Functor::Tag::Constant)
      nabla::fail(nabla::ErrorKind::Type,
                  "--props expects the coalgebra functor to be Const(tags) * F");
    env = PropEnv::wrap(m.functor.right(), split_letters(opt.props), budget);
    if (!(env->wrapped() == m.functor))
      nabla::fail(nabla::ErrorKind::Type, "coalgebra functor does not match the --props wrapping");
    sugar = &*env;
  }
  Formula a = nabla::parse_formula(formula_text, m.functor, sugar);
  bool verdict = nabla::model_check(m, Elem::atom(state), a);
  emit(opt, json{{"verdict", verdict}}, verdict ? "true\n" : "false\n");
  return 0;
}

int cmd_valid(const Options& opt, const std::string& ineq_text) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  nabla::Inequality q = nabla::parse_inequality(ineq_text, ambient.functor, ambient.sugar());
  nabla::ValidityResult r = nabla::decide_valid(ambient.functor, q.lhs, q.rhs, budget);
  if (r.valid) {
    emit(opt, json{{"verdict", "VALID"}}, "VALID\n");
    return 0;
  }
  std::string dump = nabla::coalgebra_text(r.countermodel->model) +
                     "witness: " + to_text(r.countermodel->witness) + "\n";
  emit(opt,
       json{{"verdict", "INVALID"},
            {"countermodel", dump},
            {"witness", to_text(r.countermodel->witness)}},
       "INVALID\n" + dump);
  return 1;
}

int cmd_srd(const Options& opt, const std::string& family_text) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  Elem family = nabla::parse_elem_text(family_text, nabla::atom_inner());
  if (!family.is(Elem::Kind::Set))
    nabla::fail(nabla::ErrorKind::Syntax, "srd expects a set literal {e1,e2,...}");
  auto out = nabla::slim_redistributions(ambient.functor, family.items(), budget);
  json arr = json::array();
  std::string text;
  for (const auto& phi : out) {
    arr.push_back(to_text(phi));
    text += to_text(phi) + "\n";
  }
  emit(opt, arr, text);
  return 0;
}

int cmd_members(const Options& opt, const std::string& phi_text) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  Elem phi = nabla::parse_elem_text(phi_text, nabla::atom_inner());
  std::vector<Elem> points;
  for (const auto& s : nabla::base(ambient.functor, phi))
    for (const auto& m : s.items()) points.push_back(m);
  auto out = nabla::lifted_members(ambient.functor, Carrier(std::move(points)), phi, budget);
  json arr = json::array();
  std::string text;
  for (const auto& alpha : out) {
    arr.push_back(to_text(alpha));
    text += to_text(alpha) + "\n";
  }
  emit(opt, arr, text);
  return 0;
}

int cmd_lift(const Options& opt, const std::string& relation_file, const std::string& left_text,
             const std::string& right_text) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  nabla::Relation r = load_relation(read_file(relation_file));
  Elem left = nabla::parse_elem_text(left_text, nabla::atom_inner());
  Elem right = nabla::parse_elem_text(right_text, nabla::atom_inner());
  nabla::FlowWitness witness;
  bool verdict = nabla::in_lifting(ambient.functor, r, left, right, &witness);
  std::string text = verdict ? "true\n" : "false\n";
  json arr = json::array();
  for (const auto& [pair, amount] : witness.assignments) {
    text += "flow\t" + to_text(pair.first) + "\t" + to_text(pair.second) + "\t" +
            nabla::to_text(amount) + "\n";
    arr.push_back(json{{"left", to_text(pair.first)},
                       {"right", to_text(pair.second)},
                       {"amount", nabla::to_text(amount)}});
  }
  emit(opt, json{{"verdict", verdict}, {"flow", arr}}, text);
  return 0;
}

int cmd_nnf(const Options& opt, const std::string& alpha_text) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  const nabla::FormulaSugar* sugar = ambient.sugar();
  nabla::InnerParser formula_inner = [sugar](nabla::Lexer& lx) {
    return nabla::detail::parse_formula_rec(lx, sugar);
  };
  Elem alpha = nabla::parse_elem_text(alpha_text, formula_inner);
  auto out = nabla::neg_dual(ambient.functor, alpha, budget);
  json arr = json::array();
  std::string text;
  for (const auto& beta : out) {
    arr.push_back(to_text(beta));
    text += to_text(beta) + "\n";
  }
  emit(opt, arr, text);
  return 0;
}

int cmd_finalseq(const Options& opt, int levels) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  auto seq = nabla::final_sequence(ambient.functor, levels, budget);
  json arr = json::array();
  std::string text;
  for (const auto& lv : seq) {
    arr.push_back(lv.carrier.size());
    text += "T^" + std::to_string(lv.level) + " 1: " + std::to_string(lv.carrier.size()) + "\n";
  }
  emit(opt, arr, text);
  return 0;
}

int cmd_checkproof(const Options& opt, const std::string& file) {
  Budget budget(opt.max_enum);
  Ambient ambient = make_ambient(opt, budget);
  nabla::Derivation d = nabla::parse_proof(read_file(file), ambient.functor);
  auto err = nabla::check_derivation(ambient.functor, d, budget);
  if (!err) {
    emit(opt, json{{"verdict", "ok"}}, "ok\n");
    return 0;
  }
  emit(opt, json{{"verdict", "rejected"}, {"path", err->path}, {"reason", err->reason}},
       "error at " + err->path + ": " + err->reason + "\n");
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nabla: a toolkit for coalgebraic cover-modality logic"};
  app.require_subcommand(1);

  Options opt;
  try {
    opt.max_enum = env_max_enum();
  } catch (const nabla::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  auto add_common = [&](CLI::App* cmd, bool with_functor = true) {
    if (with_functor) cmd->add_option("--functor", opt.functor, "functor expression (DSL)");
    cmd->add_option("--props", opt.props, "comma-separated proposition letters");
    cmd->add_option("--max-enum", opt.max_enum, "enumeration element budget");
    cmd->add_option("--output", opt.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  std::string arg_formula, arg_file, arg_state, arg_ineq, arg_family, arg_phi, arg_left,
      arg_right, arg_relation, arg_alpha;
  int arg_levels = 0;

  CLI::App* c_parse = app.add_subcommand("parse", "parse and canonicalize a formula");
  add_common(c_parse);
  c_parse->add_option("formula", arg_formula)->required();

  CLI::App* c_check = app.add_subcommand("check", "model-check a formula at a state");
  add_common(c_check, false);
  c_check->add_option("coalgebra", arg_file)->required();
  c_check->add_option("state", arg_state)->required();
  c_check->add_option("formula", arg_formula)->required();

  CLI::App* c_valid = app.add_subcommand("valid", "decide validity of an inequality a <= b");
  add_common(c_valid);
  c_valid->add_option("inequality", arg_ineq)->required();

  CLI::App* c_srd = app.add_subcommand("srd", "enumerate slim redistributions of a family");
  add_common(c_srd);
  c_srd->add_option("family", arg_family)->required();

  CLI::App* c_members = app.add_subcommand("members", "enumerate lifted members of Phi");
  add_common(c_members);
  c_members->add_option("phi", arg_phi)->required();

  CLI::App* c_lift = app.add_subcommand("lift", "decide relation-lifting membership");
  add_common(c_lift);
  c_lift->add_option("--relation", arg_relation, "relation file")->required();
  c_lift->add_option("left", arg_left)->required();
  c_lift->add_option("right", arg_right)->required();

  CLI::App* c_nnf = app.add_subcommand("nnf", "negation dual of a nabla argument");
  add_common(c_nnf);
  c_nnf->add_option("alpha", arg_alpha)->required();

  CLI::App* c_final = app.add_subcommand("finalseq", "final sequence carrier sizes");
  add_common(c_final);
  c_final->add_option("levels", arg_levels)->required();

  CLI::App* c_proof = app.add_subcommand("checkproof", "check a derivation file");
  add_common(c_proof);
  c_proof->add_option("proof", arg_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // keep 0 for --help, everything else is a usage error
  }

  try {
    if (opt.max_enum == 0)
      nabla::fail(nabla::ErrorKind::Syntax, "--max-enum must be a positive integer");
    if (c_parse->parsed()) return cmd_parse(opt, arg_formula);
    if (c_check->parsed()) return cmd_check(opt, arg_file, arg_state, arg_formula);
    if (c_valid->parsed()) return cmd_valid(opt, arg_ineq);
    if (c_srd->parsed()) return cmd_srd(opt, arg_family);
    if (c_members->parsed()) return cmd_members(opt, arg_phi);
    if (c_lift->parsed()) return cmd_lift(opt, arg_relation, arg_left, arg_right);
    if (c_nnf->parsed()) return cmd_nnf(opt, arg_alpha);
    if (c_final->parsed()) return cmd_finalseq(opt, arg_levels);
    if (c_proof->parsed()) return cmd_checkproof(opt, arg_file);
  } catch (const nabla::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
