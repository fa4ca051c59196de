#pragma once
// returns.hpp -- connections, return words, the leftmost-occurrence
// ordering, two-sided return substitutions, and code verification.

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "substitution.hpp"
#include "words.hpp"

namespace sgt {

// A pair (u, v) with uv in the language such that some power s^k fixes u as
// a suffix and v as a prefix; `order` is the least such k.
struct Connection {
  MonoidWord u;
  MonoidWord v;
  int order = 0;

  friend bool operator==(const Connection&, const Connection&) = default;
};

// Raised when a computation uncovers a singleton return set, which happens
// exactly for periodic substitutions (the group is then free of rank one).
struct periodicity_signal : error {
  explicit periodicity_signal(MonoidWord w)
      : error("singleton return set: the substitution is periodic"), period_word(std::move(w)) {}
  MonoidWord period_word;
};

// Least k >= 1 with s^k(u) ending in u and s^k(v) starting with v, or
// nullopt.  Single letters use the cycle structure of the letter maps;
// longer words iterate directly.
inline std::optional<int> connection_order(const Substitution& s, const MonoidWord& u,
                                           const MonoidWord& v, int cap = 64) {
  if (u.empty() || v.empty()) return std::nullopt;
  if (u.size() == 1 && v.size() == 1) {
    int cu = cycle_length_through(last_letter_map(s), u[0]);
    int cv = cycle_length_through(first_letter_map(s), v[0]);
    if (cu == 0 || cv == 0) return std::nullopt;
    return static_cast<int>(std::lcm(cu, cv));
  }
  for (int k = 1; k <= cap; ++k) {
    Substitution p = s.power(k);
    if (ends_with(p.apply(u), u) && starts_with(p.apply(v), v)) return k;
  }
  return std::nullopt;
}

// Checks the connection conditions: uv is a factor of the language, s^k
// fixes u as suffix and v as prefix, and k is the least such order.
inline bool verify_connection(const Substitution& s, const MonoidWord& u, const MonoidWord& v,
                              int k) {
  if (k <= 0 || u.empty() || v.empty()) return false;
  MonoidWord uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  auto factors = language_factors(s, static_cast<int>(uv.size()));
  if (!factors.count(uv)) return false;
  return connection_order(s, u, v) == std::optional<int>(k);
}

// Searches single-letter connections (a, b) with ab in the language, using
// the eventually periodic letter maps.  Of the minimal-order candidates,
// pairs with a != b are preferred, then (a, b) lexicographically; this
// reproduces the usual textbook choices.
inline Connection find_connection(const Substitution& s) {
  require_primitive(s);
  auto l = last_letter_map(s);
  auto f = first_letter_map(s);
  auto factors2 = language_factors(s, 2);
  std::optional<Connection> best;
  auto key = [](const Connection& c) {
    return std::tuple(c.order, c.u == c.v ? 1 : 0, c.u[0], c.v[0]);
  };
  for (const MonoidWord& w : factors2) {
    if (w.size() != 2) continue;
    int cu = cycle_length_through(l, w[0]);
    int cv = cycle_length_through(f, w[1]);
    if (cu == 0 || cv == 0) continue;
    Connection cand{{w[0]}, {w[1]}, static_cast<int>(std::lcm(cu, cv))};
    if (!best || key(cand) < key(*best)) best = cand;
  }
  if (!best) throw internal_error("no single-letter connection found for a primitive substitution");
  return *best;
}

namespace detail {

// Splits u s^k(r) v along consecutive occurrences of uv; each segment
// between occurrence i and i+1, shifted by |u|, is a return word.
inline std::vector<MonoidWord> split_into_returns(const MonoidWord& w, const MonoidWord& uv,
                                                  int ulen) {
  std::vector<int> occ = occurrences(w, uv);
  if (occ.size() < 2 || occ.front() != 0 ||
      occ.back() != static_cast<int>(w.size() - uv.size()))
    throw internal_error("word is not a chain of return words");
  std::vector<MonoidWord> out;
  for (size_t i = 0; i + 1 < occ.size(); ++i)
    out.push_back(MonoidWord(w.begin() + occ[i] + ulen, w.begin() + occ[i + 1] + ulen));
  return out;
}

}  // namespace detail

// The ordered return words (leftmost-occurrence indexing) together with the
// return substitution they define: theta . derived = s^k . theta letterwise.
struct ReturnStructure {
  Connection connection;
  std::vector<MonoidWord> theta;
  Substitution derived;
};

// Durand's computation of the return substitution at a connection: seed
// w <- v, iterate w <- s^k(w) until uv occurs twice in uw, take the
// leftmost return word, then repeatedly factor u s^k(theta(j)) v into
// return words, discovering new ones left to right.
inline ReturnStructure durand(const Substitution& s, const Connection& c) {
  require_primitive(s);
  const int k = c.order;
  Substitution sk = s.power(k);
  MonoidWord uv = c.u;
  uv.insert(uv.end(), c.v.begin(), c.v.end());

  MonoidWord w = c.v;
  for (int iter = 0;; ++iter) {
    if (iter > 64) throw internal_error("seeding loop failed to produce two occurrences");
    w = sk.apply(w);
    MonoidWord uw = c.u;
    uw.insert(uw.end(), w.begin(), w.end());
    std::vector<int> occ = occurrences(uw, uv);
    if (occ.size() >= 2) {
      w = MonoidWord(uw.begin() + occ[0] + static_cast<long>(c.u.size()),
                     uw.begin() + occ[1] + static_cast<long>(c.u.size()));
      break;  // w is now the leftmost return word
    }
  }

  std::vector<MonoidWord> theta{w};
  std::map<MonoidWord, int> index{{w, 0}};
  std::vector<MonoidWord> images;
  for (size_t j = 0; j < theta.size(); ++j) {
    if (theta.size() > 10000) throw internal_error("return set is unreasonably large");
    MonoidWord chain = c.u;
    MonoidWord mid = sk.apply(theta[j]);
    chain.insert(chain.end(), mid.begin(), mid.end());
    chain.insert(chain.end(), c.v.begin(), c.v.end());
    MonoidWord image;
    for (const MonoidWord& r : detail::split_into_returns(chain, uv, static_cast<int>(c.u.size()))) {
      auto [it, fresh] = index.try_emplace(r, static_cast<int>(theta.size()));
      if (fresh) theta.push_back(r);
      image.push_back(it->second);
    }
    images.push_back(std::move(image));
  }

  if (theta.size() == 1) throw periodicity_signal(theta[0]);
  Alphabet derived_alph{static_cast<int>(theta.size())};
  return ReturnStructure{c, theta, Substitution(derived_alph, std::move(images))};
}

// The left-to-right factorization of u s^k(theta(j)) v into return-word
// indices; coincides with the derived substitution's image of j.
inline std::vector<int> factorize_over_returns(const Substitution& s, const ReturnStructure& rs,
                                               int j) {
  if (j < 0 || j >= static_cast<int>(rs.theta.size()))
    throw input_error("return-word index out of range");
  Substitution sk = s.power(rs.connection.order);
  MonoidWord uv = rs.connection.u;
  uv.insert(uv.end(), rs.connection.v.begin(), rs.connection.v.end());
  MonoidWord chain = rs.connection.u;
  MonoidWord mid = sk.apply(rs.theta[static_cast<size_t>(j)]);
  chain.insert(chain.end(), mid.begin(), mid.end());
  chain.insert(chain.end(), rs.connection.v.begin(), rs.connection.v.end());
  std::map<MonoidWord, int> index;
  for (int i = 0; i < static_cast<int>(rs.theta.size()); ++i) index[rs.theta[static_cast<size_t>(i)]] = i;
  std::vector<int> out;
  for (const MonoidWord& r :
       detail::split_into_returns(chain, uv, static_cast<int>(rs.connection.u.size()))) {
    auto it = index.find(r);
    if (it == index.end()) throw internal_error("factorization produced an unknown return word");
    out.push_back(it->second);
  }
  return out;
}

// Sardinas–Patterson test for unique decipherability.
inline bool is_code(const std::vector<MonoidWord>& words) {
  std::set<MonoidWord> c(words.begin(), words.end());
  if (c.empty()) throw input_error("code test needs at least one word");
  if (c.count(MonoidWord{})) return false;
  if (c.size() < words.size()) return false;  // duplicated word

  // {s : x s = y for some x in xs, y in ys}; the empty residue is kept
  // only when requested (it is excluded from the seed set by definition).
  auto quotient = [](const std::set<MonoidWord>& xs, const std::set<MonoidWord>& ys,
                     bool keep_empty) {
    std::set<MonoidWord> out;
    for (const MonoidWord& x : xs)
      for (const MonoidWord& y : ys)
        if (x.size() <= y.size() && starts_with(y, x)) {
          MonoidWord s(y.begin() + static_cast<long>(x.size()), y.end());
          if (!s.empty() || keep_empty) out.insert(std::move(s));
        }
    return out;
  };

  std::set<MonoidWord> s = quotient(c, c, false);  // dangling suffixes
  std::set<std::set<MonoidWord>> seen;
  while (!s.empty() && seen.insert(s).second) {
    if (s.count(MonoidWord{})) return false;
    std::set<MonoidWord> next = quotient(c, s, true);
    for (const MonoidWord& w : quotient(s, c, true)) next.insert(w);
    s = std::move(next);
  }
  return true;
}

}  // namespace sgt
