#include "dring/commands.hpp"

#include <algorithm>

namespace dring {

std::string_view kind_name(WordKind kind) noexcept { return kind == WordKind::mult ? "mult" : "add"; }

WordKind parse_kind(std::string_view text) {
  if (text == "mult") return WordKind::mult;
  if (text == "add") return WordKind::add;
  fail(ErrorCode::BadParams, "kind must be 'mult' or 'add', got '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Witness search.

namespace {

AlgebraPtr division_preset(const std::string& name) {
  AlgebraPtr alg = preset(name);
  if (!alg->division() || !alg->degree()) fail(ErrorCode::NotADivisionPreset, "'" + name + "' is not a division preset");
  return alg;
}

AlgebraElement word_value(const AlgebraRing& ring, WordKind kind, const WordDepth& depth, const std::vector<AlgebraElement>& xs) {
  const std::span<const AlgebraElement> span(xs);
  return kind == WordKind::mult ? u_eval(ring, depth, span) : v_eval(ring, depth, span);
}

WitnessReport base_report(const std::string& preset_name, const AlgebraPtr& alg, WordKind kind, std::size_t n) {
  WitnessReport r;
  r.preset = preset_name;
  r.kind = kind;
  r.depth = n;
  r.algebra_degree = *alg->degree();
  return r;
}

void record(WitnessReport& r, std::vector<AlgebraElement> inputs, const AlgebraElement& w) {
  const std::size_t d = subfield_degree(w);
  r.observed_max_degree = std::max(r.observed_max_degree, d);
  if (d == r.algebra_degree) {
    r.success = true;
    r.witness = w;
    r.inputs = std::move(inputs);
    r.min_poly = min_poly_elt(w);
  }
}

}  // namespace

WitnessReport cmd_witness(const std::string& preset_name, WordKind kind, std::size_t n, std::size_t trials, std::uint64_t seed) {
  const AlgebraPtr alg = division_preset(preset_name);
  const AlgebraRing ring(alg);
  const WordDepth depth(n);
  WitnessReport r = base_report(preset_name, alg, kind, n);
  r.trials = trials;
  r.seed = seed;
  for (std::size_t t = 0; t < trials && !r.success; ++t) {
    ++r.trials_used;
    Rng rng(derive_seed(seed, t));
    for (std::size_t attempt = 0; attempt < kWitnessRetries; ++attempt) {
      std::vector<AlgebraElement> xs;
      while (xs.size() < depth.arity()) {
        AlgebraElement x = ring.sample(rng, kWitnessHeight);
        if (!x.is_zero()) xs.push_back(std::move(x));
      }
      std::optional<AlgebraElement> w;
      try {
        w = word_value(ring, kind, depth, xs);
      } catch (const Error& e) {
        // A zero intermediate commutator; draw again.
        if (e.code() != ErrorCode::NotInvertible) throw;
        continue;
      }
      record(r, std::move(xs), *w);
      break;
    }
  }
  return r;
}

WitnessReport cmd_witness_inputs(const std::string& preset_name, WordKind kind, std::size_t n, const std::vector<std::string>& inputs) {
  const AlgebraPtr alg = division_preset(preset_name);
  const AlgebraRing ring(alg);
  const WordDepth depth(n);
  std::vector<AlgebraElement> xs;
  for (const auto& text : inputs) xs.push_back(parse_element_text(ring, text));
  WitnessReport r = base_report(preset_name, alg, kind, n);
  r.trials = 1;
  r.trials_used = 1;
  const AlgebraElement w = word_value(ring, kind, depth, xs);
  record(r, xs, w);
  if (!r.success) {
    // Keep the evaluated value on record even when it is not a witness.
    r.inputs = std::move(xs);
    r.min_poly = min_poly_elt(w);
  }
  r.witness = w;
  return r;
}

json witness_to_json(const WitnessReport& r) {
  json inputs = json::array(), texts = json::array();
  for (const auto& x : r.inputs) {
    inputs.push_back(element_to_json(x));
    texts.push_back(x.to_string());
  }
  return {{"command", "witness"},
          {"preset", r.preset},
          {"kind", std::string(kind_name(r.kind))},
          {"depth", r.depth},
          {"trials", r.trials},
          {"trials_used", r.trials_used},
          {"seed", r.seed},
          {"success", r.success},
          {"witness", r.witness ? element_to_json(*r.witness) : json(nullptr)},
          {"witness_text", r.witness ? json(r.witness->to_string()) : json(nullptr)},
          {"inputs", inputs},
          {"input_texts", texts},
          {"min_poly", r.min_poly ? polynomial_to_json(*r.min_poly) : json(nullptr)},
          {"observed_max_degree", r.observed_max_degree},
          {"observed_max_degree_is_lower_bound", true},
          {"algebra_degree", r.algebra_degree},
          {"toolchain", kToolchain}};
}

// ---------------------------------------------------------------------------

Matrix parse_matrix_text(const std::string& text, Field field) {
  json j;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::BadFormat, std::string("malformed matrix JSON: ") + e.what());
    }
  } else {
    j = read_json_file(text);
  }
  if (j.is_array()) j = json{{"field", field.key()}, {"rows", j}};
  if (j.is_object() && j.contains("rows") && j["rows"].is_array()) {
    for (auto& row : j["rows"])
      if (row.is_array())
        for (auto& x : row)
          if (x.is_number_integer()) x = x.dump();
  }
  return matrix_from_json(j);
}

json cmd_algdeg(const std::string& context, const std::string& element, std::size_t trials, std::uint64_t seed) {
  const RingContext ctx = parse_context(context);
  return std::visit(
      [&](const auto& ring) {
        using R = std::decay_t<decltype(ring)>;
        typename R::Element a = [&] {
          if constexpr (std::is_same_v<R, MatrixRing>) {
            Matrix m = parse_matrix_text(element, ring.field());
            if (!ring.belongs(m)) fail(ErrorCode::ContextMismatch, "element is not in " + ring.describe());
            return m;
          } else {
            return parse_element_text(ring, element);
          }
        }();
        const DegreeProbeReport rep = algebraic_degree_probe(ring, a, trials, seed);
        return json{{"command", "algdeg"},
                    {"context", ring.describe()},
                    {"element", ring.to_json(a)},
                    {"exact_degree", rep.exact_degree},
                    {"probe_degree", rep.probe_degree ? json(*rep.probe_degree) : json(nullptr)},
                    {"agree", rep.agree},
                    {"retried_levels", rep.retried_levels},
                    {"min_poly", polynomial_to_json(ring.min_poly(a))},
                    {"trials", trials},
                    {"seed", seed},
                    {"toolchain", kToolchain}};
      },
      ctx);
}

// ---------------------------------------------------------------------------

namespace {

json matrices_to_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

json elements_to_json(const std::vector<FieldElement>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

}  // namespace

json cmd_decompose(WordKind kind, const Matrix& target, std::size_t n, std::uint64_t seed) {
  const std::string word = kind == WordKind::mult ? "u" : "v";
  json cert = {{"command", "decompose"},
               {"kind", std::string(kind_name(kind))},
               {"depth", n},
               {"target", matrix_to_json(target)},
               {"seed", seed},
               {"equation", word + "_" + std::to_string(n) + "(factors) = target"},
               {"toolchain", kToolchain}};
  if (kind == WordKind::mult) {
    const MultDecomposition d = iterated_mult_decomp(target, n, seed);
    cert["factors"] = matrices_to_json(d.factors());
    cert["verified"] = d.verified();
    cert["factor_dets_or_traces"] = elements_to_json(d.factor_determinants());
  } else {
    const AddDecomposition d = iterated_add_decomp(target, n, seed);
    cert["factors"] = matrices_to_json(d.factors());
    cert["verified"] = d.verified();
    cert["factor_dets_or_traces"] = elements_to_json(d.factor_traces());
  }
  return cert;
}

// ---------------------------------------------------------------------------

json cmd_identity(const IdentityRequest& req) {
  if (req.builtin_name.has_value() == req.expr_text.has_value())
    fail(ErrorCode::BadParams, "give exactly one of a builtin name or an expression");
  Expr e;
  IdentityMode mode = IdentityMode::zero;
  if (req.builtin_name) {
    const Builtin b = builtin(*req.builtin_name);
    e = b.expr;
    mode = b.mode;
  } else {
    e = parse(*req.expr_text);
  }
  if (req.mode) mode = *req.mode;
  const RingContext ctx = parse_context(req.context);
  json j = report_to_json(identity_test(ctx, e, mode, req.trials, req.seed));
  j["command"] = "identity";
  j["builtin"] = req.builtin_name ? json(*req.builtin_name) : json(nullptr);
  j["toolchain"] = kToolchain;
  return j;
}

// ---------------------------------------------------------------------------
// Verification.

namespace {

VerifyResult ok(std::string msg) { return {true, std::move(msg)}; }
VerifyResult mismatch(std::string msg) { return {false, std::move(msg)}; }

std::optional<std::string> first_difference(const Matrix& expected, const Matrix& got) {
  if (expected.rows() != got.rows() || expected.cols() != got.cols()) return "shape differs";
  for (std::size_t i = 0; i < expected.rows(); ++i)
    for (std::size_t j = 0; j < expected.cols(); ++j)
      if (expected(i, j) != got(i, j))
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + "): expected " + expected(i, j).to_string() + ", got " +
               got(i, j).to_string();
  return std::nullopt;
}

VerifyResult verify_decomposition(const json& c) {
  const WordKind kind = parse_kind(c.at("kind").get<std::string>());
  const std::size_t n = c.at("depth").get<std::size_t>();
  const Matrix target = matrix_from_json(c.at("target"));
  std::vector<Matrix> factors;
  for (const auto& f : c.at("factors")) factors.push_back(matrix_from_json(f));
  const json& recorded = c.at("factor_dets_or_traces");
  if (recorded.size() != factors.size()) return mismatch("factor_dets_or_traces has the wrong length");
  const MatrixRing ring(target.field(), target.rows());
  const WordDepth depth(n);
  if (factors.size() != depth.arity()) return mismatch("expected " + std::to_string(depth.arity()) + " factors");
  Matrix replay = target;
  try {
    replay = kind == WordKind::mult ? u_eval(ring, depth, std::span<const Matrix>(factors))
                                    : v_eval(ring, depth, std::span<const Matrix>(factors));
  } catch (const Error& e) {
    return mismatch(std::string("replay failed: ") + e.what());
  }
  if (auto diff = first_difference(target, replay)) return mismatch("replay differs from target at " + *diff);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Matrix& f = factors[i];
    if (!ring.belongs(f)) return mismatch("factor " + std::to_string(i + 1) + " is not in " + ring.describe());
    const FieldElement value = kind == WordKind::mult ? det(f) : trace(f);
    if (value.to_string() != recorded[i].get<std::string>())
      return mismatch("factor " + std::to_string(i + 1) + (kind == WordKind::mult ? " determinant" : " trace") + ": recorded " +
                      recorded[i].get<std::string>() + ", actual " + value.to_string());
    if (kind == WordKind::mult && (value.is_zero() || is_scalar(f))) return mismatch("factor " + std::to_string(i + 1) + " is scalar or singular");
    if (kind == WordKind::add && !value.is_zero()) return mismatch("factor " + std::to_string(i + 1) + " has nonzero trace");
  }
  return ok(c.at("equation").get<std::string>() + " holds exactly");
}

VerifyResult verify_witness(const json& c) {
  const AlgebraPtr alg = division_preset(c.at("preset").get<std::string>());
  const AlgebraRing ring(alg);
  const WordKind kind = parse_kind(c.at("kind").get<std::string>());
  const WordDepth depth(c.at("depth").get<std::size_t>());
  const std::size_t m = *alg->degree();
  if (c.at("algebra_degree").get<std::size_t>() != m) return mismatch("algebra_degree does not match the preset");
  if (c.at("observed_max_degree").get<std::size_t>() > m) return mismatch("observed_max_degree exceeds the algebra degree");
  if (c.at("witness").is_null()) {
    if (c.at("success").get<bool>()) return mismatch("success without a witness");
    return ok("no witness recorded; bounds are consistent");
  }
  std::vector<AlgebraElement> xs;
  for (const auto& x : c.at("inputs")) xs.push_back(ring.from_json(x));
  if (xs.size() != depth.arity()) return mismatch("expected " + std::to_string(depth.arity()) + " inputs");
  const AlgebraElement w = word_value(ring, kind, depth, xs);
  const AlgebraElement recorded = ring.from_json(c.at("witness"));
  if (w != recorded) {
    for (std::size_t i = 0; i < w.coords().size(); ++i)
      if (w.coords()[i] != recorded.coords()[i])
        return mismatch("witness coordinate " + std::to_string(i) + ": recorded " + recorded.coords()[i].to_string() + ", replay " +
                        w.coords()[i].to_string());
  }
  const Polynomial mp = min_poly_elt(w);
  if (polynomial_to_json(mp) != c.at("min_poly")) return mismatch("minimal polynomial differs from the recorded one");
  const bool maximal = static_cast<std::size_t>(mp.degree()) == m;
  if (maximal != c.at("success").get<bool>()) return mismatch("success flag disagrees with the minimal polynomial degree");
  return ok("word value replays exactly; minimal polynomial " + mp.to_string());
}

VerifyResult verify_identity(const json& c) {
  const Expr e = parse(c.at("expression").get<std::string>());
  const RingContext ctx = parse_context(c.at("context").get<std::string>());
  const IdentityMode mode = parse_mode(c.at("mode").get<std::string>());
  if (!c.at("counterexample").is_null()) {
    const bool replays =
        std::visit([&](const auto& ring) { return replays_as_counterexample(ring, e, mode, c.at("counterexample")); }, ctx);
    if (!replays) return mismatch("recorded counterexample does not replay");
  }
  json again = report_to_json(identity_test(ctx, e, mode, c.at("trials").get<std::size_t>(), c.at("seed").get<std::uint64_t>()));
  for (const auto& [key, value] : again.items())
    if (!c.contains(key) || c.at(key) != value) return mismatch("rerun differs in field '" + key + "'");
  return ok(c.at("counterexample").is_null() ? "rerun reproduces the report" : "counterexample replays; rerun reproduces the report");
}

}  // namespace

VerifyResult cmd_verify(const json& c) {
  try {
    if (!c.is_object()) fail(ErrorCode::BadFormat, "certificate must be a JSON object");
    const std::string command = c.value("command", "");
    if (command == "decompose") return verify_decomposition(c);
    if (command == "witness") return verify_witness(c);
    if (command == "identity") return verify_identity(c);
    fail(ErrorCode::BadFormat, "unrecognized certificate (command '" + command + "')");
  } catch (const json::exception& e) {
    fail(ErrorCode::BadFormat, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace dring
