#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dring/error.hpp"
#include "dring/ring.hpp"

namespace dring {

inline constexpr std::size_t kDefaultGnCap = 7;
inline constexpr std::size_t kDefaultWordCap = 10;

/// u-words (multiplicative commutators) or v-words (additive commutators).
enum class WordKind { mult, add };

/// Depth n of an iterated commutator word; the word takes 2^n inputs.
class WordDepth {
 public:
  explicit WordDepth(std::size_t n, std::size_t cap = kDefaultWordCap) : n_(n) {
    if (n < 1) fail(ErrorCode::BadParams, "word depth must be at least 1");
    if (n > cap) fail(ErrorCode::DepthCap, "word depth " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  std::size_t n() const noexcept { return n_; }
  std::size_t arity() const noexcept { return std::size_t{1} << n_; }

 private:
  std::size_t n_;
};

/// Steps `perm` to its lexicographic successor and flips `sign` by the parity
/// of the step. Returns false after the last permutation.
bool next_permutation_signed(std::vector<std::size_t>& perm, int& sign);

template <RingContextLike R>
void require_members(const R& ring, std::span<const typename R::Element> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!ring.belongs(xs[i])) {
      fail(ErrorCode::ContextMismatch, std::string(what) + ": argument " + std::to_string(i + 1) + " is not in " + ring.describe());
    }
  }
}

/// g_n(a, r_1..r_n) = sum over permutations d of {0..n} of
/// sign(d) a^d(0) r_1 a^d(1) ... r_n a^d(n), with n = rs.size().
template <RingContextLike R>
typename R::Element gn_eval(const R& ring, const typename R::Element& a, std::span<const typename R::Element> rs,
                            std::size_t cap = kDefaultGnCap) {
  using E = typename R::Element;
  const std::size_t n = rs.size();
  if (n < 1) fail(ErrorCode::BadParams, "g_n needs at least one r argument");
  if (n > cap) fail(ErrorCode::DepthCap, "g_" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  require_members(ring, std::span<const E>(&a, 1), "g_n");
  require_members(ring, rs, "g_n");

  std::vector<E> powers{ring.one()};
  for (std::size_t k = 1; k <= n; ++k) powers.push_back(ring.mul(powers.back(), a));

  std::vector<std::size_t> perm(n + 1);
  for (std::size_t i = 0; i <= n; ++i) perm[i] = i;
  int sign = 1;
  E sum = ring.zero();
  do {
    E term = powers[perm[0]];
    for (std::size_t i = 0; i < n; ++i) {
      term = ring.mul(term, rs[i]);
      if (perm[i + 1] != 0) term = ring.mul(term, powers[perm[i + 1]]);
    }
    sum = sign > 0 ? ring.add(sum, term) : ring.sub(sum, term);
  } while (next_permutation_signed(perm, sign));
  return sum;
}

namespace detail {

inline std::string word_label(char family, std::size_t depth, std::size_t lo, std::size_t len) {
  return std::string(1, family) + "_" + std::to_string(depth) + "(a" + std::to_string(lo + 1) + "..a" + std::to_string(lo + len) + ")";
}

template <RingContextLike R>
typename R::Element u_rec(const R& ring, std::span<const typename R::Element> xs, std::size_t lo, std::size_t len) {
  using E = typename R::Element;
  E left = len == 2 ? xs[lo] : u_rec(ring, xs, lo, len / 2);
  E right = len == 2 ? xs[lo + 1] : u_rec(ring, xs, lo + len / 2, len / 2);
  auto invert = [&](const E& x, std::size_t at) {
    auto inv = ring.try_inverse(x);
    if (!inv) {
      const std::string label = len == 2 ? "input a" + std::to_string(at + 1)
                                         : "intermediate " + word_label('u', __builtin_ctzll(len) - 1, at, len / 2);
      fail(ErrorCode::NotInvertible, "u-word evaluation: " + label + " is not invertible");
    }
    return *inv;
  };
  const E left_inv = invert(left, lo);
  const E right_inv = invert(right, lo + len / 2);
  return ring.mul(ring.mul(ring.mul(left, right), left_inv), right_inv);
}

template <RingContextLike R>
typename R::Element v_rec(const R& ring, std::span<const typename R::Element> xs, std::size_t lo, std::size_t len) {
  using E = typename R::Element;
  E left = len == 2 ? xs[lo] : v_rec(ring, xs, lo, len / 2);
  E right = len == 2 ? xs[lo + 1] : v_rec(ring, xs, lo + len / 2, len / 2);
  return ring.sub(ring.mul(left, right), ring.mul(right, left));
}

inline void require_arity(const WordDepth& depth, std::size_t got) {
  if (got != depth.arity()) {
    fail(ErrorCode::ArityMismatch, "depth " + std::to_string(depth.n()) + " word takes " + std::to_string(depth.arity()) +
                                       " inputs, got " + std::to_string(got));
  }
}

}  // namespace detail

/// u_1(x, y) = x y x^-1 y^-1 and u_n = u_1(u_{n-1}(first half), u_{n-1}(second half)).
/// Throws NotInvertible naming the input or intermediate that failed.
template <RingContextLike R>
typename R::Element u_eval(const R& ring, const WordDepth& depth, std::span<const typename R::Element> xs) {
  detail::require_arity(depth, xs.size());
  require_members(ring, xs, "u_n");
  return detail::u_rec(ring, xs, 0, xs.size());
}

/// v_1(x, y) = xy - yx and v_n = v_1(v_{n-1}(first half), v_{n-1}(second half)).
template <RingContextLike R>
typename R::Element v_eval(const R& ring, const WordDepth& depth, std::span<const typename R::Element> xs) {
  detail::require_arity(depth, xs.size());
  require_members(ring, xs, "v_n");
  return detail::v_rec(ring, xs, 0, xs.size());
}

struct DegreeProbeReport {
  /// Least n at which g_n vanished on every sampled tuple; empty if none up
  /// to the cap.
  std::optional<std::size_t> probe_degree;
  std::size_t exact_degree;
  bool agree;
  /// Levels where the first budget vanished but the derived-seed retry did
  /// not. Each one is a flaky-probability event.
  std::vector<std::size_t> retried_levels;
};

inline constexpr std::int64_t kProbeHeight = 10;

/// Returns true when g_n(a, .) vanished on all `trials` samples from `seed`.
template <RingContextLike R>
bool gn_vanishes_on_samples(const R& ring, const typename R::Element& a, std::size_t n, std::size_t trials, std::uint64_t seed,
                            std::size_t cap = kDefaultGnCap) {
  using E = typename R::Element;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<E> rs;
    for (std::size_t i = 0; i < n; ++i) rs.push_back(ring.sample(rng, kProbeHeight));
    if (!ring.is_zero(gn_eval(ring, a, std::span<const E>(rs), cap))) return false;
  }
  return true;
}

template <RingContextLike R>
DegreeProbeReport algebraic_degree_probe(const R& ring, const typename R::Element& a, std::size_t trials, std::uint64_t seed,
                                         std::size_t cap = kDefaultGnCap) {
  DegreeProbeReport report{std::nullopt, static_cast<std::size_t>(ring.min_poly(a).degree()), false, {}};
  for (std::size_t n = 1; n <= cap; ++n) {
    const std::uint64_t level_seed = derive_seed(seed, n);
    if (!gn_vanishes_on_samples(ring, a, n, trials, level_seed, cap)) continue;
    // A vanishing budget below the true degree is possible but unlikely;
    // confirm with an independent stream before accepting.
    if (!gn_vanishes_on_samples(ring, a, n, trials, derive_seed(level_seed, 0x5eed), cap)) {
      report.retried_levels.push_back(n);
      continue;
    }
    report.probe_degree = n;
    break;
  }
  report.agree = report.probe_degree && *report.probe_degree == report.exact_degree;
  return report;
}

}  // namespace dring
