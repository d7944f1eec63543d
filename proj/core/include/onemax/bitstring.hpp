#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "onemax/random.hpp"

namespace onemax {

/// OneMax value of a search point: the number of one-bits, in [0, n].
struct Fitness {
  std::size_t value = 0;

  friend constexpr auto operator<=>(Fitness, Fitness) = default;
};

/// Fixed-length bit string packed into 64-bit words.
///
/// Bits past position n in the last word are always zero, so whole-word
/// popcounts and comparisons never need masking.
class BitString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  /// All-zeros string of length n. Throws std::invalid_argument if n == 0.
  explicit BitString(std::size_t n);

  /// Parses a string of '0'/'1' characters; character i is bit i.
  static BitString from_string(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  std::span<const Word> words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    return ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
  }
  void set(std::size_t i, bool value) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept {
    words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
  }

  /// Number of one-bits.
  std::size_t count() const noexcept;

  BitString complement() const;
  std::string to_string() const;

  /// Positionwise XOR. Throws std::invalid_argument on a length mismatch.
  friend BitString operator^(const BitString& x, const BitString& y);
  friend bool operator==(const BitString&, const BitString&) = default;

  /// Builds a string from raw words; padding bits are cleared.
  static BitString from_words(std::size_t n, std::vector<Word> words);

 private:
  void clear_padding() noexcept;

  std::size_t n_;
  std::vector<Word> words_;
};

Fitness onemax_eval(const BitString& x) noexcept;

/// Number of positions where x and y differ. Throws std::invalid_argument if
/// the lengths differ.
std::size_t hamming_distance(const BitString& x, const BitString& y);

/// Every bit is an independent fair coin; one engine draw covers 64 bits.
template <BitSource G>
BitString random_bitstring(std::size_t n, G& rng) {
  if (n == 0) {
    throw std::invalid_argument("random_bitstring: n must be positive");
  }
  std::vector<BitString::Word> words((n + BitString::kWordBits - 1) /
                                     BitString::kWordBits);
  for (auto& w : words) {
    w = rng();
  }
  return BitString::from_words(n, std::move(words));
}

}  // namespace onemax
