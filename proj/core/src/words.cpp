#include "cogrowth/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "cogrowth/error.hpp"

namespace cogrowth {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidAlphabet: return "InvalidAlphabet";
    case ErrorCode::EmptyGenerator: return "EmptyGenerator";
    case ErrorCode::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case ErrorCode::CyclicOrTrivialSubgroup: return "CyclicOrTrivialSubgroup";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::FoldingViolation: return "FoldingViolation";
    case ErrorCode::Precondition: return "PreconditionViolation";
    case ErrorCode::DeterminismViolation: return "DeterminismViolation";
    case ErrorCode::NonIntegerCensus: return "NonIntegerCensus";
    case ErrorCode::CensusOverflow: return "CensusOverflow";
    case ErrorCode::DecompositionViolation: return "DecompositionViolation";
    case ErrorCode::EntryOverflow: return "EntryOverflow";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
  }
  return "Unknown";
}

std::vector<Letter> LetterSet::letters() const {
  std::vector<Letter> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(Letter::from_index(__builtin_ctzll(b)));
  }
  return out;
}

// ---------------------------------------------------------------- Alphabet

namespace {

bool valid_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (rank() < 2 || rank() > kMaxRank) {
    throw Error(ErrorCode::InvalidAlphabet,
                "alphabet rank must be in [2, " + std::to_string(kMaxRank) + "], got " +
                    std::to_string(rank()));
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_name(n)) {
      throw Error(ErrorCode::InvalidAlphabet, "invalid generator name '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::InvalidAlphabet, "duplicate generator name '" + n + "'");
    }
  }
  compact_ = std::all_of(names_.begin(), names_.end(), [](const std::string& n) {
    return n.size() == 1 && std::islower(static_cast<unsigned char>(n[0]));
  });
}

Alphabet Alphabet::parse(std::string_view spec) {
  std::vector<std::string> names;
  if (spec.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= spec.size()) {
      std::size_t end = spec.find(',', start);
      if (end == std::string_view::npos) end = spec.size();
      std::string tok(spec.substr(start, end - start));
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      names.push_back(tok);
      start = end + 1;
    }
  } else {
    for (char c : spec) {
      if (!std::isspace(static_cast<unsigned char>(c))) names.emplace_back(1, c);
    }
  }
  return Alphabet(std::move(names));
}

std::optional<int> Alphabet::find(std::string_view name) const {
  for (int i = 0; i < rank(); ++i) {
    if (names_[i] == name) return i + 1;
  }
  return std::nullopt;
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(letter_count());
  for (int i = 0; i < letter_count(); ++i) out.push_back(Letter::from_index(i));
  return out;
}

LetterSet Alphabet::all_letters() const {
  const int n = letter_count();
  return LetterSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

std::string Alphabet::format(Letter l) const {
  if (compact_) {
    char c = name(l.generator())[0];
    return std::string(1, l.positive() ? c : static_cast<char>(std::toupper(c)));
  }
  return format_explicit(l);
}

std::string Alphabet::format_explicit(Letter l) const {
  return l.positive() ? name(l.generator()) : name(l.generator()) + "^-1";
}

// -------------------------------------------------------------------- Word

namespace {

void parse_token(std::string_view tok, std::size_t line, std::size_t column,
                 const Alphabet& alphabet, std::vector<Letter>& out) {
  if (auto caret = tok.find('^'); caret != std::string_view::npos) {
    std::string_view name = tok.substr(0, caret);
    std::string_view exp = tok.substr(caret + 1);
    auto gen = alphabet.find(name);
    if (!gen) throw ParseError("unknown generator '" + std::string(name) + "'", line, column);
    if (!exp.empty() && exp[0] == '+') exp.remove_prefix(1);
    int power = 0;
    auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), power);
    if (ec != std::errc() || ptr != exp.data() + exp.size() || power == 0) {
      throw ParseError("invalid exponent '" + std::string(tok.substr(caret + 1)) + "'", line,
                       column + caret + 1);
    }
    for (int i = 0; i < std::abs(power); ++i) out.emplace_back(*gen, power < 0 ? -1 : 1);
    return;
  }
  if (auto gen = alphabet.find(tok)) {
    out.emplace_back(*gen, 1);
    return;
  }
  if (!alphabet.compact()) {
    throw ParseError("unknown generator '" + std::string(tok) + "'", line, column);
  }
  for (std::size_t i = 0; i < tok.size(); ++i) {
    const char c = tok[i];
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto gen = alphabet.find(std::string_view(&lower, 1));
    if (!gen || !std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", line, column + i);
    }
    out.emplace_back(*gen, std::isupper(static_cast<unsigned char>(c)) ? -1 : 1);
  }
}

Word parse_segment(std::string_view text, const Alphabet& alphabet, std::size_t line,
                   std::size_t offset) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  bool identity_seen = false;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    if (tok == "1") {
      identity_seen = true;
    } else {
      parse_token(tok, line, offset + i + 1, alphabet, letters);
    }
    i = j;
  }
  if (identity_seen && !letters.empty()) {
    throw ParseError("'1' denotes the identity and cannot be combined with letters", line,
                     offset + 1);
  }
  return Word(std::move(letters));
}

}  // namespace

Word Word::parse(std::string_view text, const Alphabet& alphabet) {
  return parse_segment(text, alphabet, 1, 0);
}

std::vector<Word> parse_word_list(std::string_view text, const Alphabet& alphabet) {
  std::vector<Word> out;
  std::size_t line = 1;
  std::size_t line_start = 0;
  std::size_t seg_start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const bool end = i == text.size();
    const char c = end ? '\n' : text[i];
    if (c != ',' && c != ';' && c != '\n') continue;
    std::string_view seg = text.substr(seg_start, i - seg_start);
    if (seg.find_first_not_of(" \t\r") != std::string_view::npos) {
      out.push_back(parse_segment(seg, alphabet, line, seg_start - line_start));
    }
    seg_start = i + 1;
    if (c == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return out;
}

std::string Word::format(const Alphabet& alphabet) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!alphabet.compact() && i > 0) out += ' ';
    out += alphabet.format(letters_[i]);
  }
  return out;
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == letters_[i - 1].inverse()) return false;
  }
  return true;
}

bool Word::is_cyclically_reduced() const {
  if (!is_reduced()) return false;
  return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word Word::operator*(const Word& other) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(out));
}

int Word::max_generator() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l.generator());
  return m;
}

Word reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.length());
  for (Letter l : w.letters()) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

CyclicReduction cyclically_reduce(const Word& w) {
  Word r = reduce(w);
  auto letters = r.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {Word(std::vector<Letter>(letters.begin() + lo, letters.begin() + hi)),
          Word(std::vector<Letter>(letters.begin(), letters.begin() + lo))};
}

std::size_t cyclic_length(const Word& w) { return cyclically_reduce(w).core.length(); }

// ---------------------------------------------------- WhiteheadAutomorphism

WhiteheadAutomorphism::WhiteheadAutomorphism(LetterSet set, Letter letter)
    : set_(set), letter_(letter) {
  if (set.contains(letter) || set.contains(letter.inverse())) {
    throw Error(ErrorCode::Precondition,
                "Whitehead set A must not contain the letter a or its inverse");
  }
}

Word WhiteheadAutomorphism::image(Letter l) const {
  if (l.generator() == letter_.generator()) return Word{l};
  const Letter x(l.generator(), 1);
  const bool in = set_.contains(x);
  const bool inv_in = set_.contains(x.inverse());
  std::vector<Letter> img;
  if (in) img.push_back(letter_);
  img.push_back(x);
  if (inv_in) img.push_back(letter_.inverse());
  Word w(std::move(img));
  return l.positive() ? w : w.inverse();
}

std::string WhiteheadAutomorphism::format(const Alphabet& alphabet) const {
  std::string out = "({";
  bool first = true;
  for (Letter l : set_.letters()) {
    if (!first) out += ", ";
    out += alphabet.format_explicit(l);
    first = false;
  }
  out += "}, " + alphabet.format_explicit(letter_) + ")";
  return out;
}

Word apply_whitehead(const WhiteheadAutomorphism& phi, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.length() * 3);
  for (Letter l : w.letters()) {
    Word img = phi.image(l);
    out.insert(out.end(), img.letters().begin(), img.letters().end());
  }
  return reduce(Word(std::move(out)));
}

}  // namespace cogrowth
