#include "onemax/bitstring.hpp"

#include <bit>
#include <numeric>

namespace onemax {

BitString::BitString(std::size_t n) : n_(n) {
  if (n == 0) {
    throw std::invalid_argument("BitString: length must be positive");
  }
  words_.assign((n + kWordBits - 1) / kWordBits, Word{0});
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    switch (bits[i]) {
      case '0':
        break;
      case '1':
        out.set(i, true);
        break;
      default:
        throw std::invalid_argument("BitString: expected only '0' and '1'");
    }
  }
  return out;
}

BitString BitString::from_words(std::size_t n, std::vector<Word> words) {
  BitString out(n);
  if (words.size() != out.words_.size()) {
    throw std::invalid_argument("BitString: word count does not match length");
  }
  out.words_ = std::move(words);
  out.clear_padding();
  return out;
}

void BitString::clear_padding() noexcept {
  const std::size_t tail = n_ % kWordBits;
  if (tail != 0) {
    words_.back() &= (Word{1} << tail) - 1;
  }
}

std::size_t BitString::count() const noexcept {
  return std::accumulate(words_.begin(), words_.end(), std::size_t{0},
                         [](std::size_t acc, Word w) {
                           return acc + static_cast<std::size_t>(std::popcount(w));
                         });
}

BitString BitString::complement() const {
  BitString out = *this;
  for (auto& w : out.words_) {
    w = ~w;
  }
  out.clear_padding();
  return out;
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) {
      s[i] = '1';
    }
  }
  return s;
}

BitString operator^(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("BitString xor: length mismatch");
  }
  BitString out = x;
  for (std::size_t k = 0; k < out.words_.size(); ++k) {
    out.words_[k] ^= y.words_[k];
  }
  return out;
}

Fitness onemax_eval(const BitString& x) noexcept { return Fitness{x.count()}; }

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  std::size_t d = 0;
  const auto xw = x.words();
  const auto yw = y.words();
  for (std::size_t k = 0; k < xw.size(); ++k) {
    d += static_cast<std::size_t>(std::popcount(xw[k] ^ yw[k]));
  }
  return d;
}

}  // namespace onemax
