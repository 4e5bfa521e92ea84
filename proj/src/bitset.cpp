// Copyright 2026 The ppcov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppcov/bitset.hpp"

#include <bit>
#include <stdexcept>

namespace ppcov {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace

Bitset::Bitset(std::size_t bits) : bits_(bits), words_(word_count(bits), 0) {}

Bitset Bitset::from_words(std::size_t bits, std::span<const std::uint64_t> words) {
  if (words.size() != word_count(bits)) {
    throw std::invalid_argument("bitset of " + std::to_string(bits) + " bits needs " +
                                std::to_string(word_count(bits)) + " words, got " +
                                std::to_string(words.size()));
  }
  Bitset out(bits);
  out.words_.assign(words.begin(), words.end());
  if (bits % kWordBits != 0 && !out.words_.empty()) {
    if ((out.words_.back() & ~low_mask(bits % kWordBits)) != 0) {
      throw std::invalid_argument("bits set beyond bitset size " + std::to_string(bits));
    }
  }
  return out;
}

bool Bitset::test(std::size_t bit) const {
  if (bit >= bits_) throw std::out_of_range("bit " + std::to_string(bit) + " out of range");
  return (words_[bit / kWordBits] >> (bit % kWordBits)) & 1U;
}

void Bitset::set(std::size_t bit) {
  if (bit >= bits_) throw std::out_of_range("bit " + std::to_string(bit) + " out of range");
  words_[bit / kWordBits] |= std::uint64_t{1} << (bit % kWordBits);
}

void Bitset::reset(std::size_t bit) {
  if (bit >= bits_) throw std::out_of_range("bit " + std::to_string(bit) + " out of range");
  words_[bit / kWordBits] &= ~(std::uint64_t{1} << (bit % kWordBits));
}

bool Bitset::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t Bitset::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Bitset::is_subset_of(const Bitset& other) const {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

Bitset& Bitset::operator|=(const Bitset& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

Bitset& Bitset::operator&=(const Bitset& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

Bitset& Bitset::and_not(const Bitset& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::uint64_t Bitset::bin(std::size_t bin, unsigned width) const {
  if (width == 0 || width > 64) throw std::invalid_argument("bin width must be in [1, 64]");
  std::uint64_t value = 0;
  const std::size_t first = bin * width;
  for (unsigned i = 0; i < width && first + i < bits_; ++i) {
    if (test(first + i)) value |= std::uint64_t{1} << i;
  }
  return value;
}

void Bitset::set_bin(std::size_t bin, unsigned width, std::uint64_t value) {
  if (width == 0 || width > 64) throw std::invalid_argument("bin width must be in [1, 64]");
  const std::size_t first = bin * width;
  for (unsigned i = 0; i < width; ++i) {
    const bool on = (value >> i) & 1U;
    if (first + i >= bits_) {
      if (on) throw std::out_of_range("bin value sets bits beyond bitset size");
      continue;
    }
    if (on) {
      set(first + i);
    } else {
      reset(first + i);
    }
  }
}

std::vector<std::size_t> Bitset::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto word = words_[w];
    while (word != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::string Bitset::to_string() const {
  std::string out(bits_, '0');
  for (std::size_t i = 0; i < bits_; ++i) {
    if (test(i)) out[bits_ - 1 - i] = '1';
  }
  return out;
}

void Bitset::check_same_size(const Bitset& other) const {
  if (bits_ != other.bits_) {
    throw std::invalid_argument("bitset size mismatch: " + std::to_string(bits_) + " vs " +
                                std::to_string(other.bits_));
  }
}

std::string to_binary(std::uint64_t value, unsigned width) {
  std::string out(width, '0');
  for (unsigned i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1U) out[width - 1 - i] = '1';
  }
  return out;
}

}  // namespace ppcov
