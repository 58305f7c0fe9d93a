#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dring/decomp.hpp"
#include "dring/identity.hpp"

namespace dring {

inline constexpr const char* kToolchain = "dring 0.1.0";

inline constexpr std::int64_t kWitnessHeight = 10;
/// Fresh draws per trial when a u-word hits a non-invertible intermediate.
inline constexpr std::size_t kWitnessRetries = 8;

std::string_view kind_name(WordKind kind) noexcept;
WordKind parse_kind(std::string_view text);

struct WitnessReport {
  std::string preset;
  WordKind kind = WordKind::mult;
  std::size_t depth = 0;
  std::size_t trials = 0;
  std::size_t trials_used = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<AlgebraElement> witness;
  std::vector<AlgebraElement> inputs;
  std::optional<Polynomial> min_poly;
  /// Largest subfield degree among all word values seen; a lower bound for
  /// the maximum over the whole algebra.
  std::size_t observed_max_degree = 0;
  std::size_t algebra_degree = 0;
};

/// Samples 2^n-tuples of nonzero elements until the word value generates a
/// maximal subfield or `trials` tuples are spent. Running out of budget is a
/// report with success = false. Throws NotADivisionPreset.
WitnessReport cmd_witness(const std::string& preset, WordKind kind, std::size_t n, std::size_t trials, std::uint64_t seed);
/// Evaluates the word on given inputs (element text over basis names).
WitnessReport cmd_witness_inputs(const std::string& preset, WordKind kind, std::size_t n, const std::vector<std::string>& inputs);
json witness_to_json(const WitnessReport& report);

/// Inline JSON (an array of rows, or {"field", "rows"}) or a path to a JSON
/// file. Integer entries are accepted alongside exact strings.
Matrix parse_matrix_text(const std::string& text, Field field = Field::rationals());

json cmd_algdeg(const std::string& context, const std::string& element, std::size_t trials, std::uint64_t seed);

/// Certificate for a verified decomposition; throws the decomposition's errors.
json cmd_decompose(WordKind kind, const Matrix& target, std::size_t n, std::uint64_t seed);

struct IdentityRequest {
  /// Exactly one of these is set.
  std::optional<std::string> builtin_name;
  std::optional<std::string> expr_text;
  std::string context;
  std::optional<IdentityMode> mode;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
};

/// Runs the test; the report's "builtin" field names the catalog entry.
json cmd_identity(const IdentityRequest& request);

struct VerifyResult {
  bool ok = false;
  std::string message;
};

/// Replays a decomposition certificate, a witness report, or an identity
/// report with a counterexample. Throws BadFormat on unrecognized input.
VerifyResult cmd_verify(const json& certificate);

}  // namespace dring
