#pragma once
// words.hpp -- alphabets, free-monoid words, and reduced free-group words

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace sgt {

using Letter = int;

// Letters of an n-letter alphabet are the integers 0..n-1.
struct Alphabet {
  int size = 0;

  bool contains(Letter a) const { return a >= 0 && a < size; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

inline void require_letter(const Alphabet& alph, Letter a) {
  if (!alph.contains(a))
    throw input_error("letter " + std::to_string(a) + " out of range for alphabet of size " +
                      std::to_string(alph.size));
}

// A word of the free monoid: a plain sequence of letters.
using MonoidWord = std::vector<Letter>;

struct SignedLetter {
  Letter letter;
  int sign;  // +1 or -1
};

// A reduced word of the free group on an alphabet.  Reduction happens
// eagerly at construction; no unreduced state is ever stored.  Syllables
// are packed as 2*letter + (sign < 0), so a syllable cancels exactly the
// packed value xor 1.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(Alphabet alph) : alphabet_(alph) {}

  GroupWord(Alphabet alph, std::span<const SignedLetter> raw) : alphabet_(alph) {
    for (const SignedLetter& s : raw) push(s.letter, s.sign);
  }

  static GroupWord from_monoid(Alphabet alph, const MonoidWord& w) {
    GroupWord g(alph);
    for (Letter a : w) g.push(a, +1);
    return g;
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int size() const { return static_cast<int>(syl_.size()); }
  bool empty() const { return syl_.empty(); }

  Letter letter(int i) const { return syl_[static_cast<size_t>(i)] >> 1; }
  int sign(int i) const { return (syl_[static_cast<size_t>(i)] & 1) ? -1 : +1; }
  SignedLetter syllable(int i) const { return {letter(i), sign(i)}; }

  GroupWord inverse() const {
    GroupWord r(alphabet_);
    r.syl_.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.syl_.push_back(*it ^ 1);
    return r;
  }

  // Reduced concatenation.  Both operands must live over the same alphabet.
  friend GroupWord concat(const GroupWord& u, const GroupWord& v) {
    if (u.alphabet_ != v.alphabet_) throw input_error("alphabet mismatch in group word product");
    GroupWord r = u;
    for (int32_t s : v.syl_) r.push_packed(s);
    return r;
  }
  friend GroupWord operator*(const GroupWord& u, const GroupWord& v) { return concat(u, v); }

  bool is_positive() const {
    return std::none_of(syl_.begin(), syl_.end(), [](int32_t s) { return s & 1; });
  }

  MonoidWord to_monoid() const {
    if (!is_positive()) throw domain_error("group word with inverse letters is not a monoid word");
    MonoidWord w;
    w.reserve(syl_.size());
    for (int32_t s : syl_) w.push_back(s >> 1);
    return w;
  }

  friend bool operator==(const GroupWord& a, const GroupWord& b) {
    return a.alphabet_ == b.alphabet_ && a.syl_ == b.syl_;
  }
  friend std::strong_ordering operator<=>(const GroupWord& a, const GroupWord& b) {
    if (auto c = a.alphabet_.size <=> b.alphabet_.size; c != 0) return c;
    return a.syl_ <=> b.syl_;
  }

 private:
  void push(Letter a, int sign) {
    require_letter(alphabet_, a);
    push_packed(static_cast<int32_t>(a) * 2 + (sign < 0 ? 1 : 0));
  }
  void push_packed(int32_t s) {
    if (!syl_.empty() && syl_.back() == (s ^ 1))
      syl_.pop_back();
    else
      syl_.push_back(s);
  }

  Alphabet alphabet_{};
  std::vector<int32_t> syl_;
};

// Free reduction of a raw signed-letter sequence.
inline GroupWord reduce(Alphabet alph, std::span<const SignedLetter> raw) {
  return GroupWord(alph, raw);
}

// |w|_b: the signed number of occurrences of the letter b, i.e. the group
// homomorphism extending the Kronecker delta at b.
inline long signed_count(const GroupWord& w, Letter b) {
  require_letter(w.alphabet(), b);
  long c = 0;
  for (int i = 0; i < w.size(); ++i)
    if (w.letter(i) == b) c += w.sign(i);
  return c;
}

// All start positions of `pattern` in `w`; the empty pattern occurs at
// every position 0..|w|.
inline std::vector<int> occurrences(const MonoidWord& w, const MonoidWord& pattern) {
  std::vector<int> pos;
  if (pattern.empty()) {
    for (int i = 0; i <= static_cast<int>(w.size()); ++i) pos.push_back(i);
    return pos;
  }
  if (pattern.size() > w.size()) return pos;
  for (size_t i = 0; i + pattern.size() <= w.size(); ++i)
    if (std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<long>(i)))
      pos.push_back(static_cast<int>(i));
  return pos;
}

inline bool starts_with(const MonoidWord& w, const MonoidWord& prefix) {
  return w.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

inline bool ends_with(const MonoidWord& w, const MonoidWord& suffix) {
  return w.size() >= suffix.size() && std::equal(suffix.rbegin(), suffix.rend(), w.rbegin());
}

// ---------------------------------------------------------------------------
// Textual word syntax.  Words are juxtaposed single-character symbols; an
// inverse letter is the symbol immediately followed by an apostrophe
// (e.g. 02'02'31'20').  The empty word renders as "e".  The textual format
// supports at most 62 symbols; internal operations have no such bound.

inline const std::string kSymbolUniverse =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

// The first n symbols of the universe, used for anonymous alphabets such as
// return-word indices or basis letters.
inline std::string default_symbols(int n) {
  if (n < 0 || n > static_cast<int>(kSymbolUniverse.size()))
    throw input_error("textual format supports at most 62 symbols");
  return kSymbolUniverse.substr(0, static_cast<size_t>(n));
}

inline int symbol_index(std::string_view symbols, char c) {
  auto p = symbols.find(c);
  return p == std::string_view::npos ? -1 : static_cast<int>(p);
}

inline char symbol_of(std::string_view symbols, Letter a) {
  if (a < 0 || a >= static_cast<int>(symbols.size()))
    throw input_error("letter " + std::to_string(a) + " has no symbol");
  return symbols[static_cast<size_t>(a)];
}

inline std::string render(const MonoidWord& w, std::string_view symbols) {
  if (w.empty()) return "e";
  std::string out;
  for (Letter a : w) out += symbol_of(symbols, a);
  return out;
}

inline std::string render(const GroupWord& w, std::string_view symbols) {
  if (w.empty()) return "e";
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    out += symbol_of(symbols, w.letter(i));
    if (w.sign(i) < 0) out += '\'';
  }
  return out;
}

inline GroupWord parse_group_word(std::string_view text, std::string_view symbols) {
  Alphabet alph{static_cast<int>(symbols.size())};
  if (text == "e" && symbol_index(symbols, 'e') < 0) return GroupWord(alph);
  std::vector<SignedLetter> raw;
  for (size_t i = 0; i < text.size(); ++i) {
    int a = symbol_index(symbols, text[i]);
    if (a < 0)
      throw input_error(std::string("unknown symbol '") + text[i] + "' in word \"" +
                        std::string(text) + "\"");
    int sign = +1;
    if (i + 1 < text.size() && text[i + 1] == '\'') {
      sign = -1;
      ++i;
    }
    raw.push_back({a, sign});
  }
  return GroupWord(alph, raw);
}

inline MonoidWord parse_monoid_word(std::string_view text, std::string_view symbols) {
  if (text.find('\'') != std::string_view::npos)
    throw input_error("inverse letters are not allowed in a monoid word: \"" + std::string(text) +
                      "\"");
  return parse_group_word(text, symbols).to_monoid();
}

}  // namespace sgt
