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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ppcov {

/// Fixed-width bitset over path indices, stored as 64-bit words with bit 0
/// of word 0 as the least significant bit. Bits at or above size() are
/// always zero.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits);

  /// Builds a bitset from raw words, least significant word first. Throws
  /// std::invalid_argument if the word count does not match or any bit at
  /// or above `bits` is set.
  static Bitset from_words(std::size_t bits, std::span<const std::uint64_t> words);

  [[nodiscard]] std::size_t size() const { return bits_; }
  [[nodiscard]] std::span<const std::uint64_t> words() const { return words_; }

  [[nodiscard]] bool test(std::size_t bit) const;
  void set(std::size_t bit);
  void reset(std::size_t bit);

  [[nodiscard]] bool any() const;
  [[nodiscard]] bool none() const { return !any(); }
  [[nodiscard]] std::size_t count() const;

  /// True when every bit set here is also set in `other`.
  [[nodiscard]] bool is_subset_of(const Bitset& other) const;

  Bitset& operator|=(const Bitset& other);
  Bitset& operator&=(const Bitset& other);
  /// this &= ~other
  Bitset& and_not(const Bitset& other);

  /// Value of bits [bin * width, (bin + 1) * width), with width in [1, 64].
  [[nodiscard]] std::uint64_t bin(std::size_t bin, unsigned width) const;
  /// Overwrites the bits of one bin; bits past size() must be zero.
  void set_bin(std::size_t bin, unsigned width, std::uint64_t value);

  /// Indices of the set bits, ascending.
  [[nodiscard]] std::vector<std::size_t> ones() const;

  /// size() characters, most significant bit first.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void check_same_size(const Bitset& other) const;

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// `value` rendered as `width` binary digits, most significant first.
std::string to_binary(std::uint64_t value, unsigned width);

}  // namespace ppcov
