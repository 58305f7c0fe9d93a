#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dring/expr.hpp"
#include "dring/ring.hpp"
#include "dring/words.hpp"

namespace dring {

template <class E>
using Env = std::map<std::string, E>;

/// Either a value, or the location of the first inverse that did not exist.
template <class E>
struct EvalOutcome {
  std::optional<E> value;
  /// Steps from the root, e.g. "/lhs/rhs"; "" is the root itself.
  std::string failure_path;
  /// The subexpression whose inverse was needed, printed (truncated).
  std::string failure_expr;

  bool permissible() const noexcept { return value.has_value(); }
};

namespace detail {

inline constexpr std::size_t kFailureTextLimit = 200;

struct NotPermissibleSignal {
  std::string path;
  std::string expr;
};

template <RingContextLike R>
class Evaluator {
 public:
  using E = typename R::Element;

  Evaluator(const R& ring, const Env<E>& env) : ring_(ring), env_(env) {}

  E eval(const Expr& e, const std::string& path) {
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    E v = compute(*e, path);
    memo_.emplace(e.get(), v);
    return v;
  }

 private:
  E invert(const E& x, const Expr& at, const std::string& path) {
    auto inv = ring_.try_inverse(x);
    if (!inv) {
      std::string text = print(at);
      if (text.size() > kFailureTextLimit) text = text.substr(0, kFailureTextLimit) + "...";
      throw NotPermissibleSignal{path, std::move(text)};
    }
    return *inv;
  }

  E power(E base, unsigned long k) {
    E acc = ring_.one();
    while (k) {
      if (k & 1) acc = ring_.mul(acc, base);
      k >>= 1;
      if (k) base = ring_.mul(base, base);
    }
    return acc;
  }

  E compute(const ExprNode& e, const std::string& path) {
    switch (e.kind) {
      case ExprKind::var: {
        auto it = env_.find(e.name);
        if (it == env_.end()) fail(ErrorCode::UnboundVariable, "variable '" + e.name + "' has no binding");
        if (!ring_.belongs(it->second)) fail(ErrorCode::ContextMismatch, "binding of '" + e.name + "' is not in " + ring_.describe());
        return it->second;
      }
      case ExprKind::constant: return ring_.scalar(e.value);
      case ExprKind::neg: return ring_.neg(eval(e.lhs, path + "/arg"));
      case ExprKind::pow: {
        const E base = eval(e.lhs, path + "/base");
        if (e.exponent == 0) return ring_.one();
        const unsigned long k = e.exponent < 0 ? 0UL - static_cast<unsigned long>(e.exponent) : static_cast<unsigned long>(e.exponent);
        return power(e.exponent < 0 ? invert(base, e.lhs, path + "/base") : base, k);
      }
      default: break;
    }
    const E l = eval(e.lhs, path + "/lhs");
    const E r = eval(e.rhs, path + "/rhs");
    switch (e.kind) {
      case ExprKind::add: return ring_.add(l, r);
      case ExprKind::sub: return ring_.sub(l, r);
      case ExprKind::mul: return ring_.mul(l, r);
      case ExprKind::ac: return ring_.sub(ring_.mul(l, r), ring_.mul(r, l));
      case ExprKind::mc: {
        const E li = invert(l, e.lhs, path + "/lhs");
        const E ri = invert(r, e.rhs, path + "/rhs");
        return ring_.mul(ring_.mul(ring_.mul(l, r), li), ri);
      }
      default: fail(ErrorCode::BadParams, "unknown expression node");
    }
  }

  const R& ring_;
  const Env<E>& env_;
  std::unordered_map<const ExprNode*, E> memo_;
};

}  // namespace detail

/// Exact bottom-up evaluation; shared subtrees are evaluated once. Throws
/// UnboundVariable and ContextMismatch; a missing inverse is an outcome.
template <RingContextLike R>
EvalOutcome<typename R::Element> eval_expr(const R& ring, const Expr& e, const Env<typename R::Element>& env) {
  detail::Evaluator<R> ev(ring, env);
  try {
    return {ev.eval(e, ""), "", ""};
  } catch (const detail::NotPermissibleSignal& s) {
    return {std::nullopt, s.path, s.expr};
  }
}

/// zero: the expression should vanish. one: it should equal the unit.
enum class IdentityMode { zero, one };

std::string_view mode_name(IdentityMode mode) noexcept;
IdentityMode parse_mode(std::string_view text);

inline constexpr std::int64_t kSubstitutionHeight = 5;
inline constexpr std::size_t kSubstitutionRetries = 8;

struct IdentityReport {
  std::string expression;
  std::string context;
  IdentityMode mode = IdentityMode::zero;
  std::size_t trials = 0;
  std::size_t trials_run = 0;
  std::size_t permissible = 0;
  /// Trials where all retries hit a missing inverse.
  std::size_t non_permissible = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> counterexample_trial;
  /// {"env": {name: element}, "value": element} when a counterexample exists.
  json counterexample;

  bool held() const noexcept { return !counterexample_trial; }
};

json report_to_json(const IdentityReport& report);

template <RingContextLike R>
bool violates(const R& ring, const typename R::Element& v, IdentityMode mode) {
  return mode == IdentityMode::zero ? !ring.is_zero(v) : !ring.is_zero(ring.sub(v, ring.one()));
}

/// Samples substitutions for the variables not in `fixed` (height
/// kSubstitutionHeight, up to kSubstitutionRetries draws per trial, trial i
/// drawing from derive_seed(seed, i)) and stops at the first trial whose
/// value violates the mode. Throws NoPermissibleSamples when no trial had a
/// permissible draw.
template <RingContextLike R>
IdentityReport identity_test(const R& ring, const Expr& e, IdentityMode mode, std::size_t trials, std::uint64_t seed,
                             const Env<typename R::Element>& fixed = {}) {
  using E = typename R::Element;
  if (trials < 1) fail(ErrorCode::BadParams, "identity_test needs at least one trial");
  IdentityReport report;
  report.expression = print(e);
  report.context = ring.describe();
  report.mode = mode;
  report.trials = trials;
  report.seed = seed;
  std::vector<std::string> free;
  for (const auto& name : variables(e))
    if (!fixed.count(name)) free.push_back(name);

  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials_run;
    Rng rng(derive_seed(seed, t));
    std::optional<E> value;
    Env<E> env;
    for (std::size_t attempt = 0; attempt < kSubstitutionRetries && !value; ++attempt) {
      env = fixed;
      for (const auto& name : free) env.insert_or_assign(name, ring.sample(rng, kSubstitutionHeight));
      value = eval_expr(ring, e, env).value;
    }
    if (!value) {
      ++report.non_permissible;
      continue;
    }
    ++report.permissible;
    if (violates(ring, *value, mode)) {
      report.counterexample_trial = t;
      json bindings = json::object();
      for (const auto& [name, x] : env) bindings[name] = ring.to_json(x);
      report.counterexample = {{"env", bindings}, {"value", ring.to_json(*value)}};
      return report;
    }
  }
  if (report.permissible == 0)
    fail(ErrorCode::NoPermissibleSamples, "no permissible substitution in " + std::to_string(trials) + " trials");
  return report;
}

IdentityReport identity_test(const RingContext& ctx, const Expr& e, IdentityMode mode, std::size_t trials, std::uint64_t seed);

/// Re-evaluates a recorded counterexample from its JSON alone.
template <RingContextLike R>
bool replays_as_counterexample(const R& ring, const Expr& e, IdentityMode mode, const json& counterexample) {
  using E = typename R::Element;
  Env<E> env;
  for (const auto& [name, x] : counterexample.at("env").items()) env.insert_or_assign(name, ring.from_json(x));
  const auto out = eval_expr(ring, e, env);
  return out.permissible() && violates(ring, *out.value, mode) && ring.to_json(*out.value) == counterexample.at("value");
}

/// g_l(w, y1..yl) with w = u_n(x1..x_{2^n}) (mult) or v_n(...) (add), fully
/// expanded; a^0 factors are omitted and a^1 is written bare. Throws
/// DepthCap past kDefaultGnCap or the word cap.
Expr build_gn_word_expr(std::size_t l, std::size_t n, WordKind kind);

struct NontrivialityReport {
  /// Some matrix size gave a permissible substitution violating the mode.
  bool evidence = false;
  std::optional<std::size_t> size;
  json counterexample;
  /// One entry per size tried: {"size", "permissible", "held"}.
  std::vector<json> per_size;
};

/// Searches matrix contexts over Q of sizes 1..max_size. Finding nothing is
/// inconclusive, never a proof of triviality.
NontrivialityReport nontriviality_probe(const Expr& e, std::size_t max_size, std::size_t trials, std::uint64_t seed,
                                        IdentityMode mode = IdentityMode::zero);
json nontriviality_to_json(const NontrivialityReport& report);

struct CatalogEntry {
  std::string name;
  std::string text;
  IdentityMode mode;
};

/// The fixed entries: hua, sum-inverse, m3-example, hall-2x2.
const std::vector<CatalogEntry>& catalog();

struct Builtin {
  std::string name;
  Expr expr;
  IdentityMode mode;
};

/// A catalog name, or "gn-un:l,n" / "gn-vn:l,n". Throws BadParams.
Builtin builtin(std::string_view name);

/// Catalog entries plus the g-word instances with l, n in {1, 2}.
std::vector<std::string> shipped_catalog_names();

/// Linear combinations over basis names, e.g. "1 + 2/3*i - j"; any
/// expression over the basis names is accepted and evaluated exactly.
AlgebraElement parse_element_text(const AlgebraRing& ring, std::string_view text);

}  // namespace dring
