#include "onemax/mutation.hpp"

#include <algorithm>
#include <cmath>

namespace onemax {

namespace {

constexpr double kTailCutoff = 1e-20;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": p must lie in [0, 1]");
  }
}

// Flips `count` distinct uniformly chosen positions of `y`, rejecting repeats.
// Expected draws stay below 2 * count while count <= n / 2.
void flip_random_subset(BitString& y, std::size_t count, Rng& rng) {
  const std::size_t n = y.size();
  BitString chosen(n);
  for (std::size_t done = 0; done < count;) {
    const auto pos = static_cast<std::size_t>(uniform_below(rng, n));
    if (!chosen.test(pos)) {
      chosen.set(pos, true);
      y.flip(pos);
      ++done;
    }
  }
}

}  // namespace

double binomial_pmf(std::size_t n, double p, std::size_t k) {
  check_probability(p, "binomial_pmf");
  if (k > n) {
    return 0.0;
  }
  if (p == 0.0) {
    return k == 0 ? 1.0 : 0.0;
  }
  if (p == 1.0) {
    return k == n ? 1.0 : 0.0;
  }
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  const double log_choose =
      std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
  return std::exp(log_choose + kd * std::log(p) + (nd - kd) * std::log1p(-p));
}

double shift_pmf(std::size_t n, double p, std::size_t k) {
  if (k > n) {
    throw std::invalid_argument("shift_pmf: k must lie in [0, n]");
  }
  if (k == 0) {
    return 0.0;
  }
  if (k == 1) {
    return binomial_pmf(n, p, 0) + binomial_pmf(n, p, 1);
  }
  return binomial_pmf(n, p, k);
}

void BinomialSampler::assign(std::size_t trials, double p) {
  check_probability(p, "BinomialSampler");
  trials_ = trials;
  p_ = p;
  cdf_.clear();
  if (trials == 0 || p == 0.0) {
    lo_ = 0;
    cdf_.push_back(1.0);
    return;
  }
  if (p == 1.0) {
    lo_ = trials;
    cdf_.push_back(1.0);
    return;
  }

  const double q = 1.0 - p;
  const double up_ratio = p / q;
  const double down_ratio = q / p;
  const auto nd = static_cast<double>(trials);
  const std::size_t mode =
      std::min(trials, static_cast<std::size_t>(std::floor((nd + 1.0) * p)));

  // Unnormalized weights relative to the mode, walking outward.
  scratch_.clear();
  double w = 1.0;
  std::size_t lo = mode;
  while (lo > 0) {
    const auto k = static_cast<double>(lo);
    w *= k / (nd - k + 1.0) * down_ratio;
    if (w < kTailCutoff) {
      break;
    }
    scratch_.push_back(w);
    --lo;
  }
  lo_ = lo;
  cdf_.assign(scratch_.rbegin(), scratch_.rend());
  cdf_.push_back(1.0);
  w = 1.0;
  for (std::size_t k = mode; k < trials; ++k) {
    const auto kd = static_cast<double>(k);
    w *= (nd - kd) / (kd + 1.0) * up_ratio;
    if (w < kTailCutoff) {
      break;
    }
    cdf_.push_back(w);
  }

  double total = 0.0;
  for (auto& c : cdf_) {
    total += c;
    c = total;
  }
  for (auto& c : cdf_) {
    c /= total;
  }
  cdf_.back() = 1.0;
}

std::size_t BinomialSampler::operator()(Rng& rng) const {
  if (cdf_.size() == 1) {
    return lo_;
  }
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
  return lo_ + std::min(idx, cdf_.size() - 1);
}

std::size_t binomial_flip_count(std::size_t n, double p, Rng& rng) {
  check_probability(p, "binomial_flip_count");
  return BinomialSampler(n, p)(rng);
}

std::size_t shift_flip_count(std::size_t n, MutationRate p, Rng& rng) {
  const std::size_t ell = BinomialSampler(n, p.value())(rng);
  return ell == 0 ? 1 : ell;
}

BitString mutate_k_bits(const BitString& x, std::size_t ell, Rng& rng) {
  const std::size_t n = x.size();
  if (ell > n) {
    throw std::invalid_argument("mutate_k_bits: ell must not exceed n");
  }
  if (2 * ell <= n) {
    BitString y = x;
    flip_random_subset(y, ell, rng);
    return y;
  }
  // Choosing the n - ell positions that stay put is the same uniform subset.
  BitString y = x.complement();
  flip_random_subset(y, n - ell, rng);
  return y;
}

BitString apply_operator(OperatorKind kind, const BitString& x, MutationRate p,
                         Rng& rng) {
  const std::size_t n = x.size();
  const std::size_t ell = kind == OperatorKind::Shift
                              ? shift_flip_count(n, p, rng)
                              : binomial_flip_count(n, p.value(), rng);
  return mutate_k_bits(x, ell, rng);
}

void SplitFlipSampler::assign(OperatorKind kind, std::size_t zeros,
                              std::size_t ones, double p) {
  kind_ = kind;
  zeros_count_ = zeros;
  n_ = zeros + ones;
  zeros_.assign(zeros, p);
  ones_.assign(ones, p);
}

FlipCounts SplitFlipSampler::operator()(Rng& rng) const {
  FlipCounts c{zeros_(rng), ones_(rng)};
  if (kind_ == OperatorKind::Shift && c.total() == 0) {
    if (uniform_below(rng, n_) < zeros_count_) {
      c.zeros = 1;
    } else {
      c.ones = 1;
    }
  }
  return c;
}

}  // namespace onemax
