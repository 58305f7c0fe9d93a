#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "dring/commands.hpp"

using namespace dring;

namespace {

// Exit codes, fixed so shell harnesses can assert on them.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitNoPermissible = 4;

struct Globals {
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  std::string out;
  std::string format = "json";
};

void render_text(const json& j, std::ostream& os) {
  for (const auto& [key, value] : j.items()) {
    os << key << ": ";
    if (value.is_string()) os << value.get<std::string>();
    else os << value.dump();
    os << '\n';
  }
}

void emit(const Globals& g, const json& j) {
  if (!g.out.empty()) write_json_file(g.out, j);
  if (g.format == "text") render_text(j, std::cout);
  else std::cout << j.dump(2) << '\n';
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::BadFormat: return kExitParse;
    case ErrorCode::NoPermissibleSamples: return kExitNoPermissible;
    default: return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments with division rings, commutator words and rational identities"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random stream");
  app.add_option("--trials", g.trials, "Sampling budget (command-specific default)");
  app.add_option("--out", g.out, "Also write the JSON report to this file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  int code = kExitOk;
  auto trials_or = [&](std::size_t fallback) { return g.trials.value_or(fallback); };

  // algdeg
  std::string ad_context, ad_element;
  auto* algdeg = app.add_subcommand("algdeg", "Exact and probed algebraic degree of an element");
  algdeg->add_option("--context", ad_context, "matrix:<m>[@field] or an algebra preset")->required();
  algdeg->add_option("--element", ad_element,
                     "Matrix as inline JSON rows or a JSON file; algebra element as text over basis names")
      ->required();
  algdeg->callback([&] { emit(g, cmd_algdeg(ad_context, ad_element, trials_or(20), g.seed)); });

  // decompose
  std::string dc_kind, dc_matrix;
  std::size_t dc_depth = 1;
  auto* decompose = app.add_subcommand("decompose", "Write a matrix as an iterated commutator word, with a certificate");
  decompose->add_option("--kind", dc_kind, "mult or add")->required()->check(CLI::IsMember({"mult", "add"}));
  decompose->add_option("--matrix", dc_matrix, "Matrix as inline JSON rows or a JSON file")->required();
  decompose->add_option("--depth", dc_depth, "Word depth n");
  decompose->callback([&] { emit(g, cmd_decompose(parse_kind(dc_kind), parse_matrix_text(dc_matrix), dc_depth, g.seed)); });

  // witness
  std::string wt_preset, wt_kind = "mult";
  std::size_t wt_depth = 1;
  std::vector<std::string> wt_inputs;
  auto* witness = app.add_subcommand("witness", "Search for a word value generating a maximal subfield");
  witness->add_option("--preset", wt_preset, "quaternion:a,b or cyclic3")->required();
  witness->add_option("--kind", wt_kind, "mult or add")->check(CLI::IsMember({"mult", "add"}));
  witness->add_option("--depth", wt_depth, "Word depth n");
  witness->add_option("--inputs", wt_inputs, "Evaluate on these 2^n elements instead of sampling");
  witness->callback([&] {
    const WordKind kind = parse_kind(wt_kind);
    const WitnessReport r = wt_inputs.empty() ? cmd_witness(wt_preset, kind, wt_depth, trials_or(100), g.seed)
                                              : cmd_witness_inputs(wt_preset, kind, wt_depth, wt_inputs);
    emit(g, witness_to_json(r));
  });

  // identity
  std::string id_builtin, id_expr, id_context = "matrix:2", id_mode;
  std::size_t id_probe = 0;
  auto* identity = app.add_subcommand("identity", "Randomized test of a rational identity");
  auto* id_builtin_opt = identity->add_option("--builtin", id_builtin, "Catalog name, gn-un:l,n or gn-vn:l,n");
  auto* id_expr_opt = identity->add_option("--expr", id_expr, "Expression text");
  id_builtin_opt->excludes(id_expr_opt);
  identity->add_option("--context", id_context, "matrix:<m>[@field] or an algebra preset");
  identity->add_option("--mode", id_mode, "zero or one (default: the catalog's, else zero)")->check(CLI::IsMember({"zero", "one"}));
  identity->add_option("--nontriviality", id_probe, "Instead, probe matrix sizes 1..N for a nonzero value");
  identity->callback([&] {
    IdentityRequest req;
    if (!id_builtin.empty()) req.builtin_name = id_builtin;
    if (!id_expr.empty()) req.expr_text = id_expr;
    req.context = id_context;
    if (!id_mode.empty()) req.mode = parse_mode(id_mode);
    req.trials = trials_or(500);
    req.seed = g.seed;
    if (id_probe > 0) {
      if (req.builtin_name.has_value() == req.expr_text.has_value())
        fail(ErrorCode::BadParams, "give exactly one of --builtin or --expr");
      const Builtin b = req.builtin_name ? builtin(*req.builtin_name) : Builtin{"", parse(*req.expr_text), IdentityMode::zero};
      json j = nontriviality_to_json(nontriviality_probe(b.expr, id_probe, trials_or(100), g.seed, req.mode.value_or(b.mode)));
      j["command"] = "nontriviality";
      j["expression"] = print(b.expr);
      emit(g, j);
      return;
    }
    const json j = cmd_identity(req);
    emit(g, j);
    if (!j.at("held").get<bool>()) code = kExitCounterexample;
  });

  // verify
  std::string vf_path;
  auto* verify = app.add_subcommand("verify", "Replay a certificate or report exactly");
  verify->add_option("certificate", vf_path, "JSON file")->required();
  verify->callback([&] {
    const VerifyResult r = cmd_verify(read_json_file(vf_path));
    if (r.ok) {
      std::cout << "ok: " << r.message << '\n';
    } else {
      std::cerr << "error: VerificationFailed: " << r.message << '\n';
      code = kExitFailure;
    }
  });

  // matrix special-t
  auto* matrix = app.add_subcommand("matrix", "Matrix utilities");
  matrix->require_subcommand(1);
  std::size_t st_size = 3;
  std::string st_kind = "unipotent";
  auto* special = matrix->add_subcommand("special-t", "Ones on the superdiagonal, plus the diagonal for unipotent");
  special->add_option("--size", st_size, "Matrix size m")->check(CLI::PositiveNumber);
  special->add_option("--kind", st_kind, "unipotent or nilpotent")->check(CLI::IsMember({"unipotent", "nilpotent"}));
  special->callback([&] {
    emit(g, matrix_to_json(special_matrix_T(st_size, st_kind == "unipotent" ? TKind::unipotent : TKind::nilpotent)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return code;
}
