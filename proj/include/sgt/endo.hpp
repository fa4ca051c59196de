#pragma once
// endo.hpp -- endomorphisms of finitely generated free groups: application,
// composition, injectivity, automorphism detection, and inversion.

#include <map>
#include <optional>
#include <vector>

#include "matrix.hpp"
#include "stallings.hpp"
#include "substitution.hpp"
#include "words.hpp"

namespace sgt {

class GroupEndomorphism {
 public:
  GroupEndomorphism() = default;
  GroupEndomorphism(Alphabet alph, std::vector<GroupWord> images)
      : alphabet_(alph), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != alphabet_.size)
      throw input_error("endomorphism needs one image per letter");
    for (const GroupWord& w : images_)
      if (w.alphabet() != alphabet_) throw input_error("endomorphism image over the wrong alphabet");
  }

  static GroupEndomorphism identity(Alphabet alph) {
    std::vector<GroupWord> im;
    for (Letter a = 0; a < alph.size; ++a)
      im.push_back(GroupWord(alph, std::vector<SignedLetter>{{a, +1}}));
    return GroupEndomorphism(alph, std::move(im));
  }

  // A substitution embeds with all-positive images.
  static GroupEndomorphism from(const Substitution& s) {
    std::vector<GroupWord> im;
    for (Letter a = 0; a < s.alphabet().size; ++a)
      im.push_back(GroupWord::from_monoid(s.alphabet(), s.image(a)));
    return GroupEndomorphism(s.alphabet(), std::move(im));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const GroupWord& image(Letter a) const {
    require_letter(alphabet_, a);
    return images_[static_cast<size_t>(a)];
  }
  const std::vector<GroupWord>& images() const { return images_; }

  GroupWord apply(const GroupWord& w) const {
    if (w.alphabet() != alphabet_) throw input_error("word over the wrong alphabet");
    GroupWord out(alphabet_);
    for (int i = 0; i < w.size(); ++i) {
      const GroupWord& im = images_[static_cast<size_t>(w.letter(i))];
      out = out * (w.sign(i) > 0 ? im : im.inverse());
    }
    return out;
  }

  // this . inner : a |-> this(inner(a)).
  GroupEndomorphism compose(const GroupEndomorphism& inner) const {
    if (alphabet_ != inner.alphabet_) throw input_error("alphabet mismatch in composition");
    std::vector<GroupWord> im;
    for (Letter a = 0; a < alphabet_.size; ++a) im.push_back(apply(inner.image(a)));
    return GroupEndomorphism(alphabet_, std::move(im));
  }

  GroupEndomorphism power(int n) const {
    if (n < 0) throw input_error("endomorphism power must be non-negative");
    GroupEndomorphism r = identity(alphabet_);
    for (int i = 0; i < n; ++i) r = compose(r);
    return r;
  }

  friend bool operator==(const GroupEndomorphism&, const GroupEndomorphism&) = default;

 private:
  Alphabet alphabet_{};
  std::vector<GroupWord> images_;
};

inline IntMatrix incidence_matrix(const GroupEndomorphism& e) {
  int n = e.alphabet().size;
  IntMatrix m(n);
  for (Letter a = 0; a < n; ++a) {
    const GroupWord& w = e.image(a);
    for (int i = 0; i < w.size(); ++i) m.at(a, w.letter(i)) += w.sign(i);
  }
  return m;
}

// Folded core automaton of the image subgroup.
inline StallingsAutomaton image_automaton(const GroupEndomorphism& e) {
  return core(fold(flower(e.alphabet(), e.images())));
}

struct InjectivityResult {
  bool injective = false;
  std::optional<GroupWord> kernel_witness;  // best effort, only when non-injective
};

namespace detail {

// Breadth-first collision search: two distinct short reduced words with the
// same image give a kernel element.  Purely diagnostic; the verdict never
// depends on it.
inline std::optional<GroupWord> kernel_collision_search(const GroupEndomorphism& e, int max_len) {
  std::map<GroupWord, GroupWord> image_of;
  std::vector<GroupWord> frontier{GroupWord(e.alphabet())};
  image_of[GroupWord(e.alphabet())] = GroupWord(e.alphabet());
  for (int len = 1; len <= max_len; ++len) {
    std::vector<GroupWord> next;
    for (const GroupWord& w : frontier) {
      for (Letter a = 0; a < e.alphabet().size; ++a) {
        for (int sign : {+1, -1}) {
          GroupWord cand = w * GroupWord(e.alphabet(), std::vector<SignedLetter>{{a, sign}});
          if (cand.size() != len) continue;  // cancelled: already seen shorter
          GroupWord img = e.apply(cand);
          auto [it, fresh] = image_of.try_emplace(img, cand);
          if (!fresh) return it->second * cand.inverse();
          next.push_back(cand);
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace detail

// Injective iff the image subgroup has full rank (free groups of distinct
// finite ranks are not isomorphic, and a surjection between free groups of
// equal finite rank is an isomorphism).
inline InjectivityResult injectivity(const GroupEndomorphism& e, int witness_max_len = 6) {
  StallingsAutomaton im = image_automaton(e);
  if (rank(im) == e.alphabet().size) return {true, std::nullopt};
  return {false, detail::kernel_collision_search(e, witness_max_len)};
}

inline bool is_injective(const GroupEndomorphism& e) { return injectivity(e, 0).injective; }

// Automorphism iff the folded core of the image is the full rose, i.e. the
// image is the whole free group; surjectivity suffices by the Hopfian
// property of finitely generated free groups.
inline bool is_automorphism(const GroupEndomorphism& e) {
  return is_rose(image_automaton(e));
}

// Two-sided inverse, obtained by folding the image flower with generator
// bookkeeping and reading off each letter's loop expression.
inline GroupEndomorphism invert_automorphism(const GroupEndomorphism& e) {
  if (!is_automorphism(e)) throw domain_error("endomorphism is not an automorphism");
  GeneratorExpresser ge(e.alphabet(), e.images());
  std::vector<GroupWord> inv_images;
  for (Letter a = 0; a < e.alphabet().size; ++a) {
    GroupWord letter(e.alphabet(), std::vector<SignedLetter>{{a, +1}});
    // generator indices coincide with letters here
    inv_images.push_back(ge.express(letter));
  }
  return GroupEndomorphism(e.alphabet(), std::move(inv_images));
}

// True iff w is a non-trivial kernel element.
inline bool kernel_witness_check(const GroupEndomorphism& e, const GroupWord& w) {
  if (w.empty()) throw domain_error("the empty word is trivially in every kernel");
  return e.apply(w).empty();
}

}  // namespace sgt
