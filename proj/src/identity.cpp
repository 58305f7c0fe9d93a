#include "dring/identity.hpp"

#include <charconv>
#include <numeric>

namespace dring {

std::string_view mode_name(IdentityMode mode) noexcept { return mode == IdentityMode::zero ? "zero" : "one"; }

IdentityMode parse_mode(std::string_view text) {
  if (text == "zero") return IdentityMode::zero;
  if (text == "one") return IdentityMode::one;
  fail(ErrorCode::BadParams, "mode must be 'zero' or 'one', got '" + std::string(text) + "'");
}

json report_to_json(const IdentityReport& r) {
  json j = {{"expression", r.expression},
            {"context", r.context},
            {"mode", std::string(mode_name(r.mode))},
            {"trials", r.trials},
            {"trials_run", r.trials_run},
            {"permissible", r.permissible},
            {"non_permissible", r.non_permissible},
            {"seed", r.seed},
            {"held", r.held()}};
  if (r.counterexample_trial) {
    j["counterexample"] = r.counterexample;
    j["counterexample"]["trial"] = *r.counterexample_trial;
    j["summary"] = "counterexample at trial " + std::to_string(*r.counterexample_trial);
  } else {
    j["counterexample"] = nullptr;
    j["summary"] = "no counterexample among " + std::to_string(r.permissible) + " permissible samples";
  }
  return j;
}

IdentityReport identity_test(const RingContext& ctx, const Expr& e, IdentityMode mode, std::size_t trials, std::uint64_t seed) {
  return std::visit([&](const auto& ring) { return identity_test(ring, e, mode, trials, seed); }, ctx);
}

// ---------------------------------------------------------------------------

namespace {

Expr u_word(const std::vector<Expr>& xs, std::size_t lo, std::size_t len, WordKind kind) {
  if (len == 1) return xs[lo];
  Expr l = u_word(xs, lo, len / 2, kind);
  Expr r = u_word(xs, lo + len / 2, len / 2, kind);
  return kind == WordKind::mult ? ex::mc(std::move(l), std::move(r)) : ex::ac(std::move(l), std::move(r));
}

}  // namespace

Expr build_gn_word_expr(std::size_t l, std::size_t n, WordKind kind) {
  if (l < 1) fail(ErrorCode::BadParams, "g-word needs l >= 1");
  if (l > kDefaultGnCap) fail(ErrorCode::DepthCap, "g_" + std::to_string(l) + " exceeds cap " + std::to_string(kDefaultGnCap));
  const WordDepth depth(n);
  std::vector<Expr> xs, ys;
  for (std::size_t i = 1; i <= depth.arity(); ++i) xs.push_back(ex::var("x" + std::to_string(i)));
  for (std::size_t i = 1; i <= l; ++i) ys.push_back(ex::var("y" + std::to_string(i)));
  const Expr a = u_word(xs, 0, xs.size(), kind);
  std::vector<Expr> powers{nullptr, a};
  for (std::size_t k = 2; k <= l; ++k) powers.push_back(ex::pow(a, static_cast<long>(k)));

  std::vector<std::size_t> perm(l + 1);
  std::iota(perm.begin(), perm.end(), 0);
  int sign = 1;
  Expr sum;
  do {
    Expr term = powers[perm[0]];
    for (std::size_t i = 0; i < l; ++i) {
      term = term ? ex::mul(term, ys[i]) : ys[i];
      if (perm[i + 1] != 0) term = ex::mul(term, powers[perm[i + 1]]);
    }
    if (!sum) sum = sign > 0 ? term : ex::neg(term);
    else sum = sign > 0 ? ex::add(sum, term) : ex::sub(sum, term);
  } while (next_permutation_signed(perm, sign));
  return sum;
}

// ---------------------------------------------------------------------------

NontrivialityReport nontriviality_probe(const Expr& e, std::size_t max_size, std::size_t trials, std::uint64_t seed,
                                        IdentityMode mode) {
  NontrivialityReport out;
  for (std::size_t size = 1; size <= max_size; ++size) {
    const MatrixRing ring(Field::rationals(), size);
    try {
      const IdentityReport rep = identity_test(ring, e, mode, trials, derive_seed(seed, size));
      out.per_size.push_back({{"size", size}, {"permissible", rep.permissible}, {"held", rep.held()}});
      if (!rep.held()) {
        out.evidence = true;
        out.size = size;
        out.counterexample = rep.counterexample;
        break;
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NoPermissibleSamples) throw;
      out.per_size.push_back({{"size", size}, {"permissible", 0}, {"held", nullptr}});
    }
  }
  return out;
}

json nontriviality_to_json(const NontrivialityReport& r) {
  json j = {{"status", r.evidence ? "nontrivial-evidence" : "inconclusive"}, {"per_size", r.per_size}};
  j["size"] = r.size ? json(*r.size) : json(nullptr);
  j["counterexample"] = r.evidence ? r.counterexample : json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"hua", "(x^-1 + (y^-1 - x)^-1)^-1 - x + x*y*x", IdentityMode::zero},
      {"sum-inverse", "(x + y)^-1 - y^-1*(x^-1 + y^-1)^-1*x^-1", IdentityMode::zero},
      {"m3-example", "mc(mc(x, mc(y, z)*x*mc(y, x)^-1)^3, z)", IdentityMode::one},
      {"hall-2x2", "ac(ac(x, y)^2, z)", IdentityMode::zero},
  };
  return entries;
}

namespace {

std::size_t parse_count(std::string_view s, std::string_view whole) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::BadParams, "bad parameters in builtin '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Builtin builtin(std::string_view name) {
  for (const auto& entry : catalog())
    if (entry.name == name) return {entry.name, parse(entry.text), entry.mode};
  for (const auto& [prefix, kind] : {std::pair{std::string_view("gn-un:"), WordKind::mult}, std::pair{std::string_view("gn-vn:"), WordKind::add}}) {
    if (name.substr(0, prefix.size()) != prefix) continue;
    const std::string_view params = name.substr(prefix.size());
    const auto comma = params.find(',');
    if (comma == std::string_view::npos) fail(ErrorCode::BadParams, "builtin '" + std::string(name) + "' needs l,n");
    const std::size_t l = parse_count(params.substr(0, comma), name);
    const std::size_t n = parse_count(params.substr(comma + 1), name);
    return {std::string(name), build_gn_word_expr(l, n, kind), IdentityMode::zero};
  }
  fail(ErrorCode::BadParams, "unknown builtin '" + std::string(name) + "'");
}

std::vector<std::string> shipped_catalog_names() {
  std::vector<std::string> names;
  for (const auto& entry : catalog()) names.push_back(entry.name);
  for (const char* family : {"gn-un:", "gn-vn:"})
    for (int l = 1; l <= 2; ++l)
      for (int n = 1; n <= 2; ++n) names.push_back(family + std::to_string(l) + "," + std::to_string(n));
  return names;
}

AlgebraElement parse_element_text(const AlgebraRing& ring, std::string_view text) {
  const Expr e = parse(text);
  Env<AlgebraElement> env;
  const auto& names = ring.algebra()->basis_names();
  for (std::size_t i = 0; i < names.size(); ++i) env.insert_or_assign(names[i], AlgebraElement::basis(ring.algebra(), i));
  const auto out = eval_expr(ring, e, env);
  if (!out.permissible()) fail(ErrorCode::NotInvertible, "element text needs the inverse of " + out.failure_expr);
  return *out.value;
}

}  // namespace dring
