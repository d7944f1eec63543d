#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "onemax/bitstring.hpp"
#include "onemax/random.hpp"

namespace onemax {

enum class OperatorKind {
  Shift,     // Bin(n, p) strength with the mass at 0 moved to 1
  Standard,  // independent per-bit flips, zero flips allowed
};

/// Per-bit flip probability, 0 < p <= 1.
class MutationRate {
 public:
  explicit MutationRate(double p) : p_(p) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("MutationRate: p must lie in (0, 1]");
    }
  }
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Bin(n, p)(k), evaluated through log-factorials.
double binomial_pmf(std::size_t n, double p, std::size_t k);

/// Bin_{0->1}(n, p)(k): zero at k = 0, Bin(n,p)(0) + Bin(n,p)(1) at k = 1,
/// Bin(n,p)(k) otherwise. Throws std::invalid_argument if k > n.
double shift_pmf(std::size_t n, double p, std::size_t k);

/// Inversion sampler for Bin(trials, p) over a precomputed CDF.
///
/// The table spans the mode outward until the weights fall below 1e-20 of the
/// modal weight, so the discarded tail mass is below double resolution. Degenerate
/// distributions (trials == 0, p == 0, p == 1) return without touching the stream.
class BinomialSampler {
 public:
  BinomialSampler() = default;
  BinomialSampler(std::size_t trials, double p) { assign(trials, p); }

  /// Rebuilds the table in place, reusing its storage.
  void assign(std::size_t trials, double p);

  std::size_t operator()(Rng& rng) const;

  std::size_t trials() const noexcept { return trials_; }
  double probability() const noexcept { return p_; }

 private:
  std::size_t trials_ = 0;
  double p_ = 0.0;
  std::size_t lo_ = 0;
  std::vector<double> cdf_{1.0};
  std::vector<double> scratch_;
};

/// ℓ ~ Bin(n, p). Throws std::invalid_argument unless 0 <= p <= 1.
std::size_t binomial_flip_count(std::size_t n, double p, Rng& rng);

/// ℓ ~ Bin_{0->1}(n, p): a binomial draw with 0 mapped to 1.
std::size_t shift_flip_count(std::size_t n, MutationRate p, Rng& rng);

/// Copy of x with exactly `ell` pairwise different positions flipped, the
/// position set uniform over all ell-subsets. Throws if ell > n.
BitString mutate_k_bits(const BitString& x, std::size_t ell, Rng& rng);

/// Samples the mutation strength for `kind`, then flips that many uniformly
/// chosen positions. x is not modified.
BitString apply_operator(OperatorKind kind, const BitString& x, MutationRate p,
                         Rng& rng);

/// How many zero-bits and one-bits of the parent an offspring flips.
struct FlipCounts {
  std::size_t zeros = 0;  // 0 -> 1 flips
  std::size_t ones = 0;   // 1 -> 0 flips

  std::size_t total() const noexcept { return zeros + ones; }
  /// Fitness change of the offspring relative to its parent.
  std::ptrdiff_t delta() const noexcept {
    return static_cast<std::ptrdiff_t>(zeros) - static_cast<std::ptrdiff_t>(ones);
  }
  friend bool operator==(FlipCounts, FlipCounts) = default;
};

/// Draws FlipCounts for an offspring of a parent with the given number of
/// zero- and one-bits, without touching the bit string.
///
/// Under per-bit flipping the two classes are independent: Bin(zeros, p) and
/// Bin(ones, p), and given the counts the flipped positions are uniform within
/// each class. The shift operator's fallback picks one uniform position of all
/// n, i.e. a zero-bit with probability zeros / n. Together with
/// choose-uniform-within-class materialization this reproduces apply_operator
/// exactly in distribution.
class SplitFlipSampler {
 public:
  void assign(OperatorKind kind, std::size_t zeros, std::size_t ones, double p);
  FlipCounts operator()(Rng& rng) const;

 private:
  OperatorKind kind_ = OperatorKind::Standard;
  std::size_t zeros_count_ = 0;
  std::size_t n_ = 0;
  BinomialSampler zeros_;
  BinomialSampler ones_;
};

}  // namespace onemax
