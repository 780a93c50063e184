#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogrowth {

/// Largest supported rank; letter sets are 64-bit masks over 2m letters.
inline constexpr int kMaxRank = 32;

/// A signed generator x_i^{+1} or x_i^{-1}, 1 <= i <= m.
///
/// Letters are totally ordered by (generator, exponent) with the positive
/// letter first: x < x^-1 < y < y^-1 < ...  This order is the single
/// tie-breaking order used by every enumeration in the library.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int exponent)
      : generator_(generator), exponent_(exponent < 0 ? -1 : 1) {}

  /// Letter with dense index 2(i-1) + (exponent < 0).
  static constexpr Letter from_index(int index) {
    return Letter(index / 2 + 1, index % 2 == 0 ? 1 : -1);
  }

  constexpr int generator() const { return generator_; }
  constexpr int exponent() const { return exponent_; }
  constexpr bool positive() const { return exponent_ > 0; }
  constexpr int index() const { return 2 * (generator_ - 1) + (exponent_ < 0 ? 1 : 0); }
  constexpr Letter inverse() const { return Letter(generator_, -exponent_); }

  constexpr auto operator<=>(const Letter& other) const {
    return index() <=> other.index();
  }
  constexpr bool operator==(const Letter& other) const = default;

 private:
  int generator_ = 1;
  int exponent_ = 1;
};

/// Set of letters as a bit mask over letter indices.
class LetterSet {
 public:
  constexpr LetterSet() = default;
  constexpr explicit LetterSet(std::uint64_t bits) : bits_(bits) {}
  LetterSet(std::initializer_list<Letter> letters) {
    for (Letter l : letters) insert(l);
  }

  constexpr void insert(Letter l) { bits_ |= bit(l); }
  constexpr void erase(Letter l) { bits_ &= ~bit(l); }
  constexpr bool contains(Letter l) const { return (bits_ & bit(l)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcountll(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr LetterSet operator|(LetterSet o) const { return LetterSet(bits_ | o.bits_); }
  constexpr LetterSet operator&(LetterSet o) const { return LetterSet(bits_ & o.bits_); }
  constexpr LetterSet minus(LetterSet o) const { return LetterSet(bits_ & ~o.bits_); }
  constexpr bool subset_of(LetterSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool operator==(const LetterSet&) const = default;

  /// Members in the global letter order.
  std::vector<Letter> letters() const;

 private:
  static constexpr std::uint64_t bit(Letter l) { return std::uint64_t{1} << l.index(); }
  std::uint64_t bits_ = 0;
};

/// Named free basis X = {x_1, ..., x_m}.
class Alphabet {
 public:
  /// Throws Error(InvalidAlphabet) unless 2 <= m <= kMaxRank and names are
  /// distinct identifiers starting with a letter and free of '^'.
  explicit Alphabet(std::vector<std::string> names);

  /// Parses "xyzt" (one generator per character) or "x,y,z,t".
  static Alphabet parse(std::string_view spec);

  int rank() const { return static_cast<int>(names_.size()); }
  int letter_count() const { return 2 * rank(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int generator) const { return names_.at(generator - 1); }

  /// Generator index for a name, if any.
  std::optional<int> find(std::string_view name) const;

  /// True when every name is a single lowercase character, enabling the
  /// compact word syntax ("yX" = y x^-1).
  bool compact() const { return compact_; }

  /// All 2m letters in the global order.
  std::vector<Letter> letters() const;
  LetterSet all_letters() const;

  /// "x", "X" (compact) or "x^-1" (explicit).
  std::string format(Letter l) const;
  /// "x^-1" regardless of syntax; used for state names.
  std::string format_explicit(Letter l) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  bool compact_ = false;
};

/// Finite sequence of letters. Not necessarily reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  /// Accepts compact ("yzYzt") and explicit ("y z y^-1 z t", "x^2") syntax.
  /// "1" and the empty string denote the identity.
  static Word parse(std::string_view text, const Alphabet& alphabet);

  std::string format(const Alphabet& alphabet) const;

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  bool is_reduced() const;
  bool is_cyclically_reduced() const;

  Word inverse() const;
  Word operator*(const Word& other) const;
  auto operator<=>(const Word& other) const = default;

  /// Largest generator index used, 0 for the empty word.
  int max_generator() const;

 private:
  std::vector<Letter> letters_;
};

/// Generators separated by ',', ';' or newlines; blank entries are skipped.
/// Parse errors report the line and column inside `text`.
std::vector<Word> parse_word_list(std::string_view text, const Alphabet& alphabet);

/// Free reduction: the unique reduced word equal to w in F_m.
Word reduce(const Word& w);

struct CyclicReduction {
  Word core;        ///< cyclically reduced
  Word conjugator;  ///< w == conjugator * core * conjugator^-1 after reduction
};

CyclicReduction cyclically_reduce(const Word& w);

/// Length of the cyclic reduction.
std::size_t cyclic_length(const Word& w);

/// Whitehead automorphism (A, a): a -> a and, for every other generator x,
///   x -> x        if x, x^-1 not in A
///   x -> a x      if x in A, x^-1 not in A
///   x -> x a^-1   if x not in A, x^-1 in A
///   x -> a x a^-1 if x, x^-1 in A
/// extended to inverse letters by phi(x^-1) = phi(x)^-1.
class WhiteheadAutomorphism {
 public:
  /// Throws Error(Precondition) if a or a^-1 belongs to A.
  WhiteheadAutomorphism(LetterSet set, Letter letter);

  Letter letter() const { return letter_; }
  LetterSet set() const { return set_; }

  /// (A, a^-1).
  WhiteheadAutomorphism inverse() const { return {set_, letter_.inverse()}; }

  /// Unreduced image of a single letter.
  Word image(Letter l) const;

  std::string format(const Alphabet& alphabet) const;

  bool operator==(const WhiteheadAutomorphism&) const = default;

 private:
  LetterSet set_;
  Letter letter_;
};

/// Letter-by-letter substitution followed by free reduction.
Word apply_whitehead(const WhiteheadAutomorphism& phi, const Word& w);

}  // namespace cogrowth
