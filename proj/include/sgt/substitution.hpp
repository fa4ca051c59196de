#pragma once
// substitution.hpp -- substitutions (free-monoid endomorphisms): iteration,
// primitivity, factor languages, properness, incidence matrices, and
// periodicity evidence.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "words.hpp"

namespace sgt {

// A non-erasing endomorphism of the free monoid: every letter maps to a
// non-empty word over the same alphabet.
class Substitution {
 public:
  Substitution() = default;
  Substitution(Alphabet alph, std::vector<MonoidWord> images)
      : alphabet_(alph), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != alphabet_.size)
      throw input_error("substitution needs one image per letter");
    for (const MonoidWord& w : images_) {
      if (w.empty()) throw input_error("substitution images must be non-empty");
      for (Letter a : w) require_letter(alphabet_, a);
    }
  }

  static Substitution identity(Alphabet alph) {
    std::vector<MonoidWord> im;
    im.reserve(static_cast<size_t>(alph.size));
    for (Letter a = 0; a < alph.size; ++a) im.push_back({a});
    return Substitution(alph, std::move(im));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const MonoidWord& image(Letter a) const {
    require_letter(alphabet_, a);
    return images_[static_cast<size_t>(a)];
  }
  const std::vector<MonoidWord>& images() const { return images_; }

  MonoidWord apply(const MonoidWord& w) const {
    MonoidWord out;
    for (Letter a : w) {
      const MonoidWord& im = image(a);
      out.insert(out.end(), im.begin(), im.end());
    }
    return out;
  }

  // this . inner : a |-> this(inner(a)).
  Substitution compose(const Substitution& inner) const {
    if (alphabet_ != inner.alphabet_) throw input_error("alphabet mismatch in composition");
    std::vector<MonoidWord> im;
    im.reserve(images_.size());
    for (Letter a = 0; a < alphabet_.size; ++a) im.push_back(apply(inner.image(a)));
    return Substitution(alphabet_, std::move(im));
  }

  Substitution power(int n) const {
    if (n < 0) throw input_error("substitution power must be non-negative");
    Substitution r = identity(alphabet_);
    for (int i = 0; i < n; ++i) r = compose(r);
    return r;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Alphabet alphabet_{};
  std::vector<MonoidWord> images_;
};

inline IntMatrix incidence_matrix(const Substitution& s) {
  int n = s.alphabet().size;
  IntMatrix m(n);
  for (Letter a = 0; a < n; ++a)
    for (Letter b : s.image(a)) m.at(a, b) += 1;
  return m;
}

struct PrimitivityResult {
  bool primitive = false;
  int witness = 0;  // least n with every letter occurring in every image of s^n

  friend bool operator==(const PrimitivityResult&, const PrimitivityResult&) = default;
};

// Primitivity via boolean incidence powers, searched up to the Wielandt
// bound (n-1)^2 + 1.  A one-letter substitution is primitive exactly when
// its single image has length > 1.
inline PrimitivityResult primitivity(const Substitution& s) {
  int n = s.alphabet().size;
  if (n == 1) return {s.image(0).size() > 1, 1};
  if (n > 62) throw unsupported_error("primitivity search limited to 62 letters");
  std::vector<uint64_t> rows(static_cast<size_t>(n), 0);
  for (Letter a = 0; a < n; ++a)
    for (Letter b : s.image(a)) rows[static_cast<size_t>(a)] |= uint64_t{1} << b;
  const uint64_t full = (n == 64) ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
  int bound = (n - 1) * (n - 1) + 1;
  std::vector<uint64_t> acc = rows;
  for (int k = 1; k <= bound; ++k) {
    bool all = true;
    for (Letter a = 0; a < n; ++a) all = all && acc[static_cast<size_t>(a)] == full;
    if (all) return {true, k};
    std::vector<uint64_t> next(static_cast<size_t>(n), 0);
    for (Letter a = 0; a < n; ++a)
      for (Letter b = 0; b < n; ++b)
        if (acc[static_cast<size_t>(a)] >> b & 1) next[static_cast<size_t>(a)] |= rows[static_cast<size_t>(b)];
    acc = std::move(next);
  }
  return {false, 0};
}

inline bool is_primitive(const Substitution& s) { return primitivity(s).primitive; }

inline void require_primitive(const Substitution& s) {
  if (!is_primitive(s)) throw unsupported_error("substitution is not primitive");
}

// The factors of length <= maxlen of the language of s.  Computed as the
// fixpoint of factor-closure under the substitution, starting from the
// letter set.  A length-x factor of s(u) spans a factor of u of length at
// most max(1, ceil((x-2)/m) + 2) where m is the shortest image, so only
// windows up to that length need to be fed back into the closure.
inline std::set<MonoidWord> language_factors(const Substitution& s, int maxlen) {
  require_primitive(s);
  std::set<MonoidWord> fac;
  fac.insert(MonoidWord{});
  if (maxlen <= 0) return fac;
  size_t min_img = s.image(0).size();
  for (Letter a = 1; a < s.alphabet().size; ++a) min_img = std::min(min_img, s.image(a).size());
  int source_cap = maxlen <= 2
                       ? maxlen
                       : std::min(maxlen, (maxlen - 2 + static_cast<int>(min_img) - 1) /
                                                  static_cast<int>(min_img) +
                                              2);
  std::vector<MonoidWord> worklist;
  for (Letter a = 0; a < s.alphabet().size; ++a) {
    fac.insert(MonoidWord{a});
    worklist.push_back(MonoidWord{a});
  }
  while (!worklist.empty()) {
    MonoidWord w = std::move(worklist.back());
    worklist.pop_back();
    MonoidWord img = s.apply(w);
    int len = static_cast<int>(img.size());
    for (int l = 1; l <= maxlen && l <= len; ++l)
      for (int i = 0; i + l <= len; ++i) {
        MonoidWord f(img.begin() + i, img.begin() + i + l);
        if (fac.insert(f).second && l <= source_cap) worklist.push_back(std::move(f));
      }
  }
  return fac;
}

// p(n): number of distinct length-n factors.
inline std::vector<long> factor_complexity(const std::set<MonoidWord>& factors, int maxlen) {
  std::vector<long> p(static_cast<size_t>(maxlen) + 1, 0);
  for (const MonoidWord& w : factors)
    if (static_cast<int>(w.size()) <= maxlen) ++p[w.size()];
  return p;
}

struct PropernessResult {
  bool proper = false;
  int power = 0;       // least n with both letter maps of s^n constant
  Letter first = -1;   // common first letter of the images of s^power
  Letter last = -1;    // common last letter
};

// A substitution is proper when some power sends every letter to a word
// starting with one fixed letter and ending with another fixed letter.
// The first- and last-letter maps of successive powers are eventually
// periodic, which makes the property decidable.
inline PropernessResult properness(const Substitution& s) {
  int n = s.alphabet().size;
  std::vector<Letter> f(static_cast<size_t>(n)), l(static_cast<size_t>(n));
  for (Letter a = 0; a < n; ++a) {
    f[static_cast<size_t>(a)] = s.image(a).front();
    l[static_cast<size_t>(a)] = s.image(a).back();
  }
  std::vector<Letter> fk = f, lk = l;
  std::set<std::pair<std::vector<Letter>, std::vector<Letter>>> seen;
  for (int k = 1;; ++k) {
    bool fconst = std::all_of(fk.begin(), fk.end(), [&](Letter a) { return a == fk[0]; });
    bool lconst = std::all_of(lk.begin(), lk.end(), [&](Letter a) { return a == lk[0]; });
    if (fconst && lconst) return {true, k, fk[0], lk[0]};
    if (!seen.insert({fk, lk}).second) return {false, 0, -1, -1};
    std::vector<Letter> fn(static_cast<size_t>(n)), ln(static_cast<size_t>(n));
    for (Letter a = 0; a < n; ++a) {
      fn[static_cast<size_t>(a)] = f[static_cast<size_t>(fk[static_cast<size_t>(a)])];
      ln[static_cast<size_t>(a)] = l[static_cast<size_t>(lk[static_cast<size_t>(a)])];
    }
    fk = std::move(fn);
    lk = std::move(ln);
  }
}

inline bool is_proper(const Substitution& s) { return properness(s).proper; }

struct PeriodicityEvidence {
  enum class Kind { PeriodicProven, AperiodicProven, AperiodicUpTo };

  Kind kind = Kind::AperiodicUpTo;
  MonoidWord period_word;   // PeriodicProven: the language is the factors of powers of this word
  int mh_witness = 0;       // PeriodicProven: least n with p(n) <= n
  std::string reason;       // AperiodicProven: why
  int bound = 0;            // AperiodicUpTo: p(n) >= n+1 checked for all n <= bound

  bool periodic() const { return kind == Kind::PeriodicProven; }
  bool proven_aperiodic() const { return kind == Kind::AperiodicProven; }
};

// Smallest period of a word (classic prefix-function computation).
inline int smallest_period(const MonoidWord& w) {
  int n = static_cast<int>(w.size());
  std::vector<int> pi(static_cast<size_t>(n), 0);
  for (int i = 1; i < n; ++i) {
    int j = pi[static_cast<size_t>(i) - 1];
    while (j > 0 && w[static_cast<size_t>(i)] != w[static_cast<size_t>(j)]) j = pi[static_cast<size_t>(j) - 1];
    if (w[static_cast<size_t>(i)] == w[static_cast<size_t>(j)]) ++j;
    pi[static_cast<size_t>(i)] = j;
  }
  return n - pi[static_cast<size_t>(n) - 1];
}

// Tri-state periodicity evidence for a primitive substitution:
//   - a unimodular incidence matrix proves aperiodicity outright;
//   - factor complexity p(n) <= n for some n <= bound proves periodicity
//     and yields a period word;
//   - otherwise only "aperiodic up to the bound" is reported.
inline PeriodicityEvidence periodicity_evidence(const Substitution& s, int bound = 50) {
  require_primitive(s);
  PeriodicityEvidence ev;
  BigInt d = determinant(incidence_matrix(s));
  if (d == 1 || d == -1) {
    ev.kind = PeriodicityEvidence::Kind::AperiodicProven;
    ev.reason = "unimodular";
    return ev;
  }
  auto fac = language_factors(s, bound);
  auto p = factor_complexity(fac, bound);
  for (int n = 1; n <= bound; ++n) {
    if (p[static_cast<size_t>(n)] <= n) {
      ev.kind = PeriodicityEvidence::Kind::PeriodicProven;
      ev.mh_witness = n;
      MonoidWord longest;
      for (const MonoidWord& w : fac)
        if (static_cast<int>(w.size()) == bound) {
          longest = w;
          break;  // factors are sorted; take the least
        }
      if (longest.empty()) longest = *fac.rbegin();
      int q = smallest_period(longest);
      ev.period_word = MonoidWord(longest.begin(), longest.begin() + q);
      return ev;
    }
  }
  ev.kind = PeriodicityEvidence::Kind::AperiodicUpTo;
  ev.bound = bound;
  return ev;
}

// First- and last-letter maps (used by the connection search).
inline std::vector<Letter> first_letter_map(const Substitution& s) {
  std::vector<Letter> f;
  for (Letter a = 0; a < s.alphabet().size; ++a) f.push_back(s.image(a).front());
  return f;
}

inline std::vector<Letter> last_letter_map(const Substitution& s) {
  std::vector<Letter> l;
  for (Letter a = 0; a < s.alphabet().size; ++a) l.push_back(s.image(a).back());
  return l;
}

// Length of the cycle through `a` in the functional graph of `map`, or 0
// if iterating from `a` never returns to it.
inline int cycle_length_through(const std::vector<Letter>& map, Letter a) {
  Letter x = a;
  for (int steps = 1; steps <= static_cast<int>(map.size()); ++steps) {
    x = map[static_cast<size_t>(x)];
    if (x == a) return steps;
  }
  return 0;
}

}  // namespace sgt
