#pragma once
// stallings.hpp -- folded automata for finitely generated subgroups of free
// groups: construction, folding, cores, spanning trees, bases, membership,
// expression in a basis, and DOT export.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "words.hpp"

namespace sgt {

struct Edge {
  int src;
  Letter letter;
  int dst;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A basepointed letter-labeled graph.  Edges are stored in the positive
// orientation only; reading an inverse letter traverses an edge backwards.
// When `folded` holds, no two distinct edges share a label together with
// an origin or a terminus, so walks are deterministic.
class StallingsAutomaton {
 public:
  StallingsAutomaton() = default;
  StallingsAutomaton(Alphabet alph, int num_states, std::vector<Edge> edges, bool folded = false)
      : alphabet_(alph), num_states_(num_states), edges_(std::move(edges)), folded_(folded) {
    for (const Edge& e : edges_) {
      require_letter(alphabet_, e.letter);
      if (e.src < 0 || e.src >= num_states_ || e.dst < 0 || e.dst >= num_states_)
        throw input_error("edge endpoint out of range");
    }
    if (folded_) build_index();
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return num_states_; }
  int basepoint() const { return 0; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool folded() const { return folded_; }

  // Index of the unique edge (s, a, *), or -1.  Folded automata only.
  int out_edge(int s, Letter a) const { return out_[static_cast<size_t>(s) * static_cast<size_t>(alphabet_.size) + static_cast<size_t>(a)]; }
  // Index of the unique edge (*, a, s), or -1.
  int in_edge(int s, Letter a) const { return in_[static_cast<size_t>(s) * static_cast<size_t>(alphabet_.size) + static_cast<size_t>(a)]; }

  bool check_folded() const {
    std::set<std::pair<int, Letter>> outs, ins;
    for (const Edge& e : edges_) {
      if (!outs.insert({e.src, e.letter}).second) return false;
      if (!ins.insert({e.dst, e.letter}).second) return false;
    }
    return true;
  }

  friend bool operator==(const StallingsAutomaton& a, const StallingsAutomaton& b) {
    return a.alphabet_ == b.alphabet_ && a.num_states_ == b.num_states_ && a.edges_ == b.edges_;
  }

 private:
  void build_index() {
    size_t sz = static_cast<size_t>(num_states_) * static_cast<size_t>(alphabet_.size);
    out_.assign(sz, -1);
    in_.assign(sz, -1);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      const Edge& e = edges_[static_cast<size_t>(i)];
      int& o = out_[static_cast<size_t>(e.src) * static_cast<size_t>(alphabet_.size) + static_cast<size_t>(e.letter)];
      int& t = in_[static_cast<size_t>(e.dst) * static_cast<size_t>(alphabet_.size) + static_cast<size_t>(e.letter)];
      if (o != -1 || t != -1) throw internal_error("automaton marked folded but is not");
      o = i;
      t = i;
    }
  }

  Alphabet alphabet_{};
  int num_states_ = 1;
  std::vector<Edge> edges_;
  bool folded_ = false;
  std::vector<int> out_, in_;
};

// Wedge of loops: one loop per word at the basepoint.
inline StallingsAutomaton flower(Alphabet alph, std::span<const GroupWord> words) {
  std::vector<Edge> edges;
  int states = 1;
  for (const GroupWord& w : words) {
    if (w.alphabet() != alph) throw input_error("flower word over the wrong alphabet");
    int cur = 0;
    for (int i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? 0 : states++;
      if (w.sign(i) > 0)
        edges.push_back({cur, w.letter(i), next});
      else
        edges.push_back({next, w.letter(i), cur});
      cur = next;
    }
  }
  return StallingsAutomaton(alph, states, std::move(edges), edges.empty());
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

}  // namespace detail

// Canonical BFS renumbering from the basepoint.  Transitions are explored
// in (letter, forward-before-backward) order, which is well defined on
// folded automata; states are renumbered in discovery order.
inline StallingsAutomaton canonicalized(const StallingsAutomaton& a) {
  if (!a.folded()) throw domain_error("canonical form requires a folded automaton");
  std::vector<int> order(static_cast<size_t>(a.num_states()), -1);
  std::vector<int> queue{a.basepoint()};
  order[static_cast<size_t>(a.basepoint())] = 0;
  int next_id = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int s = queue[qi];
    for (Letter x = 0; x < a.alphabet().size; ++x) {
      for (int dir = 0; dir < 2; ++dir) {
        int ei = dir == 0 ? a.out_edge(s, x) : a.in_edge(s, x);
        if (ei < 0) continue;
        const Edge& e = a.edges()[static_cast<size_t>(ei)];
        int t = dir == 0 ? e.dst : e.src;
        if (order[static_cast<size_t>(t)] == -1) {
          order[static_cast<size_t>(t)] = next_id++;
          queue.push_back(t);
        }
      }
    }
  }
  if (next_id != a.num_states()) throw internal_error("automaton is not connected");
  std::vector<Edge> edges;
  edges.reserve(a.edges().size());
  for (const Edge& e : a.edges())
    edges.push_back({order[static_cast<size_t>(e.src)], e.letter, order[static_cast<size_t>(e.dst)]});
  std::sort(edges.begin(), edges.end());
  return StallingsAutomaton(a.alphabet(), a.num_states(), std::move(edges), true);
}

// Stallings folding.  Identifies endpoints of distinct equally-labeled
// edges sharing an origin or terminus until none remain, then renumbers
// canonically.  The subgroup of basepoint loops is unchanged, and the
// result is independent of the merge order; `shuffle_seed` varies that
// order (used to exercise confluence).
inline StallingsAutomaton fold(const StallingsAutomaton& a,
                               std::optional<uint32_t> shuffle_seed = std::nullopt) {
  detail::UnionFind uf(a.num_states());
  std::vector<Edge> edges = a.edges();
  std::optional<std::mt19937> rng;
  if (shuffle_seed) rng.emplace(*shuffle_seed);

  bool changed = true;
  while (changed) {
    changed = false;
    for (Edge& e : edges) {
      e.src = uf.find(e.src);
      e.dst = uf.find(e.dst);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::pair<int, int>> merges;  // state pairs to identify
    std::map<std::pair<int, Letter>, int> by_src, by_dst;
    for (const Edge& e : edges) {
      if (auto [it, fresh] = by_src.try_emplace({e.src, e.letter}, e.dst); !fresh)
        merges.push_back({it->second, e.dst});
      if (auto [it, fresh] = by_dst.try_emplace({e.dst, e.letter}, e.src); !fresh)
        merges.push_back({it->second, e.src});
    }
    if (merges.empty()) break;
    if (rng) std::shuffle(merges.begin(), merges.end(), *rng);
    for (auto [p, q] : merges)
      if (uf.unite(p, q)) changed = true;
    if (!changed) break;
  }

  // Compact the surviving states, keeping the basepoint at 0.
  std::map<int, int> remap;
  remap[uf.find(a.basepoint())] = 0;
  auto id_of = [&](int s) {
    auto [it, fresh] = remap.try_emplace(s, static_cast<int>(remap.size()));
    return it->second;
  };
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.push_back({id_of(uf.find(e.src)), e.letter, id_of(uf.find(e.dst))});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  StallingsAutomaton folded(a.alphabet(), static_cast<int>(remap.size()), std::move(out), true);
  return canonicalized(folded);
}

// Trims hanging trees: states other than the basepoint with at most one
// incident edge endpoint are removed until none remain.
inline StallingsAutomaton core(const StallingsAutomaton& a) {
  std::vector<Edge> edges = a.edges();
  std::vector<bool> alive(static_cast<size_t>(a.num_states()), true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> degree(static_cast<size_t>(a.num_states()), 0);
    for (const Edge& e : edges) {
      ++degree[static_cast<size_t>(e.src)];
      ++degree[static_cast<size_t>(e.dst)];
    }
    for (int s = 0; s < a.num_states(); ++s) {
      if (s == a.basepoint() || !alive[static_cast<size_t>(s)]) continue;
      if (degree[static_cast<size_t>(s)] <= 1) {
        alive[static_cast<size_t>(s)] = false;
        std::erase_if(edges, [&](const Edge& e) { return e.src == s || e.dst == s; });
        changed = true;
      }
    }
  }
  std::map<int, int> remap;
  remap[a.basepoint()] = 0;
  for (int s = 0; s < a.num_states(); ++s)
    if (alive[static_cast<size_t>(s)]) remap.try_emplace(s, static_cast<int>(remap.size()));
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.push_back({remap.at(e.src), e.letter, remap.at(e.dst)});
  std::sort(out.begin(), out.end());
  StallingsAutomaton trimmed(a.alphabet(), static_cast<int>(remap.size()), std::move(out), a.folded());
  return a.folded() ? canonicalized(trimmed) : trimmed;
}

// One step of a walk: returns the next state, or -1 when the required
// transition is missing.
inline int step(const StallingsAutomaton& a, int state, SignedLetter s) {
  if (s.sign > 0) {
    int ei = a.out_edge(state, s.letter);
    return ei < 0 ? -1 : a.edges()[static_cast<size_t>(ei)].dst;
  }
  int ei = a.in_edge(state, s.letter);
  return ei < 0 ? -1 : a.edges()[static_cast<size_t>(ei)].src;
}

// w lies in the subgroup iff its reduced word labels a basepoint loop.
inline bool membership(const StallingsAutomaton& a, const GroupWord& w) {
  if (!a.folded()) throw domain_error("membership requires a folded automaton");
  if (w.alphabet() != a.alphabet()) throw input_error("word over the wrong alphabet");
  int cur = a.basepoint();
  for (int i = 0; i < w.size(); ++i) {
    cur = step(a, cur, w.syllable(i));
    if (cur < 0) return false;
  }
  return cur == a.basepoint();
}

struct SpanningTree {
  std::vector<int> edge_ids;       // tree edges, ascending
  std::vector<int> parent_edge;    // per state: tree edge towards the basepoint (-1 at root)
  std::vector<int> parent_dir;     // +1 if that edge points away from the root

  bool contains(int edge_id) const {
    return std::binary_search(edge_ids.begin(), edge_ids.end(), edge_id);
  }
};

namespace detail {

inline SpanningTree tree_from_parents(const StallingsAutomaton& a, std::vector<int> parent_edge,
                                      std::vector<int> parent_dir) {
  SpanningTree t;
  t.parent_edge = std::move(parent_edge);
  t.parent_dir = std::move(parent_dir);
  for (int s = 0; s < a.num_states(); ++s) {
    if (s == a.basepoint()) continue;
    if (t.parent_edge[static_cast<size_t>(s)] < 0) throw internal_error("automaton is not connected");
    t.edge_ids.push_back(t.parent_edge[static_cast<size_t>(s)]);
  }
  std::sort(t.edge_ids.begin(), t.edge_ids.end());
  return t;
}

}  // namespace detail

// Breadth-first spanning tree from the basepoint, exploring transitions in
// (letter, forward-before-backward) order.  Deterministic on folded input.
inline SpanningTree spanning_tree(const StallingsAutomaton& a) {
  if (!a.folded()) throw domain_error("spanning tree requires a folded automaton");
  std::vector<int> parent_edge(static_cast<size_t>(a.num_states()), -1);
  std::vector<int> parent_dir(static_cast<size_t>(a.num_states()), 0);
  std::vector<bool> seen(static_cast<size_t>(a.num_states()), false);
  seen[static_cast<size_t>(a.basepoint())] = true;
  std::vector<int> queue{a.basepoint()};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int s = queue[qi];
    for (Letter x = 0; x < a.alphabet().size; ++x) {
      for (int dir = 0; dir < 2; ++dir) {
        int ei = dir == 0 ? a.out_edge(s, x) : a.in_edge(s, x);
        if (ei < 0) continue;
        const Edge& e = a.edges()[static_cast<size_t>(ei)];
        int t = dir == 0 ? e.dst : e.src;
        if (seen[static_cast<size_t>(t)]) continue;
        seen[static_cast<size_t>(t)] = true;
        parent_edge[static_cast<size_t>(t)] = ei;
        parent_dir[static_cast<size_t>(t)] = dir == 0 ? +1 : -1;
        queue.push_back(t);
      }
    }
  }
  return detail::tree_from_parents(a, std::move(parent_edge), std::move(parent_dir));
}

// Builds a SpanningTree from externally supplied edge indices (validated).
inline SpanningTree tree_from_edges(const StallingsAutomaton& a, const std::vector<int>& edge_ids) {
  if (static_cast<int>(edge_ids.size()) != a.num_states() - 1)
    throw input_error("a spanning tree needs exactly states-1 edges");
  std::vector<int> parent_edge(static_cast<size_t>(a.num_states()), -1);
  std::vector<int> parent_dir(static_cast<size_t>(a.num_states()), 0);
  std::set<int> chosen(edge_ids.begin(), edge_ids.end());
  std::vector<bool> seen(static_cast<size_t>(a.num_states()), false);
  seen[static_cast<size_t>(a.basepoint())] = true;
  std::vector<int> queue{a.basepoint()};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int s = queue[qi];
    for (int ei : chosen) {
      const Edge& e = a.edges()[static_cast<size_t>(ei)];
      int t = -1, dir = 0;
      if (e.src == s) {
        t = e.dst;
        dir = +1;
      } else if (e.dst == s) {
        t = e.src;
        dir = -1;
      } else
        continue;
      if (seen[static_cast<size_t>(t)]) continue;
      seen[static_cast<size_t>(t)] = true;
      parent_edge[static_cast<size_t>(t)] = ei;
      parent_dir[static_cast<size_t>(t)] = dir;
      queue.push_back(t);
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw input_error("supplied edges do not span the automaton");
  return detail::tree_from_parents(a, std::move(parent_edge), std::move(parent_dir));
}

namespace detail {

// Reduced label of the tree path from the basepoint to `state`.
inline GroupWord tree_path_from_base(const StallingsAutomaton& a, const SpanningTree& t, int state) {
  std::vector<SignedLetter> raw;
  int cur = state;
  while (cur != a.basepoint()) {
    int ei = t.parent_edge[static_cast<size_t>(cur)];
    const Edge& e = a.edges()[static_cast<size_t>(ei)];
    int dir = t.parent_dir[static_cast<size_t>(cur)];
    raw.push_back({e.letter, dir});
    cur = dir > 0 ? e.src : e.dst;
  }
  std::reverse(raw.begin(), raw.end());
  return GroupWord(a.alphabet(), raw);
}

inline std::vector<int> nontree_edges(const StallingsAutomaton& a, const SpanningTree& t) {
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(a.edges().size()); ++i)
    if (!t.contains(i)) ids.push_back(i);
  return ids;  // edges are scanned in stored order, which is the canonical one
}

}  // namespace detail

// A free basis of the subgroup, one element per non-tree edge: the word
// read along base->origin (in the tree), across the edge, and back.
struct SubgroupBasis {
  std::vector<GroupWord> words;
  std::vector<int> edge_ids;  // the non-tree edge behind each basis word
};

inline SubgroupBasis basis_from_tree(const StallingsAutomaton& a, const SpanningTree& t) {
  SubgroupBasis basis;
  for (int ei : detail::nontree_edges(a, t)) {
    const Edge& e = a.edges()[static_cast<size_t>(ei)];
    GroupWord to = detail::tree_path_from_base(a, t, e.src);
    GroupWord from = detail::tree_path_from_base(a, t, e.dst);
    GroupWord mid(a.alphabet(), std::vector<SignedLetter>{{e.letter, +1}});
    basis.words.push_back(to * mid * from.inverse());
    basis.edge_ids.push_back(ei);
  }
  return basis;
}

// Rewrites a subgroup element over the tree basis: walk the word and emit
// one basis letter per crossing of a non-tree edge.
inline GroupWord express_in_basis(const StallingsAutomaton& a, const SpanningTree& t,
                                  const GroupWord& w) {
  if (!a.folded()) throw domain_error("expression requires a folded automaton");
  std::vector<int> nontree = detail::nontree_edges(a, t);
  std::vector<int> basis_index(a.edges().size(), -1);
  for (int i = 0; i < static_cast<int>(nontree.size()); ++i)
    basis_index[static_cast<size_t>(nontree[static_cast<size_t>(i)])] = i;

  Alphabet basis_alph{static_cast<int>(nontree.size())};
  std::vector<SignedLetter> expr;
  int cur = a.basepoint();
  for (int i = 0; i < w.size(); ++i) {
    SignedLetter s = w.syllable(i);
    int ei = s.sign > 0 ? a.out_edge(cur, s.letter) : a.in_edge(cur, s.letter);
    if (ei < 0) throw membership_error("word does not lie in the subgroup");
    if (basis_index[static_cast<size_t>(ei)] >= 0) expr.push_back({basis_index[static_cast<size_t>(ei)], s.sign});
    const Edge& e = a.edges()[static_cast<size_t>(ei)];
    cur = s.sign > 0 ? e.dst : e.src;
  }
  if (cur != a.basepoint()) throw membership_error("word does not lie in the subgroup");
  return GroupWord(basis_alph, expr);
}

// Evaluates a word over basis letters back into the ambient free group.
inline GroupWord evaluate_in(const GroupWord& expr, std::span<const GroupWord> basis) {
  if (basis.empty()) {
    if (!expr.empty()) throw input_error("cannot evaluate over an empty basis");
    return GroupWord();
  }
  if (expr.alphabet().size != static_cast<int>(basis.size()))
    throw input_error("expression alphabet does not match the basis size");
  GroupWord out(basis[0].alphabet());
  for (int i = 0; i < expr.size(); ++i) {
    const GroupWord& b = basis[static_cast<size_t>(expr.letter(i))];
    out = out * (expr.sign(i) > 0 ? b : b.inverse());
  }
  return out;
}

// Free rank of the subgroup of a folded connected core automaton.
inline int rank(const StallingsAutomaton& a) {
  return static_cast<int>(a.edges().size()) - a.num_states() + 1;
}

inline bool is_rose(const StallingsAutomaton& a) {
  return a.num_states() == 1 && static_cast<int>(a.edges().size()) == a.alphabet().size;
}

// DOT export; the basepoint is double-circled and tree edges are dashed.
inline std::string to_dot(const StallingsAutomaton& a, const SpanningTree* tree = nullptr,
                          std::string_view symbols = {}) {
  std::string syms = symbols.empty() ? default_symbols(a.alphabet().size) : std::string(symbols);
  std::ostringstream os;
  os << "digraph stallings {\n  rankdir=LR;\n";
  for (int s = 0; s < a.num_states(); ++s) {
    os << "  s" << s << " [shape=" << (s == a.basepoint() ? "doublecircle" : "circle") << "];\n";
  }
  for (int i = 0; i < static_cast<int>(a.edges().size()); ++i) {
    const Edge& e = a.edges()[static_cast<size_t>(i)];
    os << "  s" << e.src << " -> s" << e.dst << " [label=\"" << symbol_of(syms, e.letter) << '"';
    if (tree && tree->contains(i)) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Folding with generator bookkeeping.  Each edge carries a word over the
// generator alphabet whose evaluation equals gamma(src) * label * gamma(dst)^-1
// for fixed (implicit) path words gamma; merges repair the bookkeeping so
// that reading those words along any basepoint loop expresses the loop's
// label as a product of the original generators.

class GeneratorExpresser {
 public:
  GeneratorExpresser(Alphabet alph, std::span<const GroupWord> generators)
      : alphabet_(alph), generator_alph_{static_cast<int>(generators.size())} {
    build(generators);
  }

  int generator_count() const { return generator_alph_.size; }

  bool member(const GroupWord& w) const { return walk(w).has_value(); }

  // Expression of w over the generator alphabet; evaluating the result on
  // the generators gives back w.
  GroupWord express(const GroupWord& w) const {
    auto expr = walk(w);
    if (!expr) throw membership_error("word is not a product of the given generators");
    return *expr;
  }

 private:
  struct XEdge {
    int src;
    Letter letter;
    int dst;
    GroupWord expr;  // over the generator alphabet
    bool alive = true;
  };

  void build(std::span<const GroupWord> generators) {
    int states = 1;
    for (int gi = 0; gi < static_cast<int>(generators.size()); ++gi) {
      const GroupWord& w = generators[static_cast<size_t>(gi)];
      if (w.alphabet() != alphabet_) throw input_error("generator over the wrong alphabet");
      if (w.empty()) continue;
      GroupWord tag(generator_alph_, std::vector<SignedLetter>{{gi, +1}});
      int cur = 0;
      for (int i = 0; i < w.size(); ++i) {
        int next = (i + 1 == w.size()) ? 0 : states++;
        GroupWord expr = (i + 1 == w.size()) ? tag : GroupWord(generator_alph_);
        if (w.sign(i) > 0)
          edges_.push_back({cur, w.letter(i), next, expr});
        else
          edges_.push_back({next, w.letter(i), cur, expr.inverse()});
        cur = next;
      }
    }
    fold_all();
    index_.clear();
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
      if (!edges_[static_cast<size_t>(i)].alive) continue;
      const XEdge& e = edges_[static_cast<size_t>(i)];
      index_[{e.src, e.letter, +1}] = i;
      index_[{e.dst, e.letter, -1}] = i;
    }
  }

  // Merge `victim` into `survivor`.  `din` rewrites expressions of edges
  // leaving the victim, and its inverse those entering it; both are
  // derived from the colliding pair before any edge is touched.
  void merge_state(int survivor, int victim, const GroupWord& din) {
    GroupWord dout = din.inverse();
    for (XEdge& e : edges_) {
      if (!e.alive) continue;
      if (e.src == victim) {
        e.expr = din * e.expr;
        e.src = survivor;
      }
      if (e.dst == victim) {
        e.expr = e.expr * dout;
        e.dst = survivor;
      }
    }
  }

  void fold_all() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < edges_.size() && !changed; ++i) {
        if (!edges_[i].alive) continue;
        for (size_t j = i + 1; j < edges_.size() && !changed; ++j) {
          if (!edges_[j].alive) continue;
          XEdge* f1 = &edges_[i];
          XEdge* f2 = &edges_[j];
          if (f1->letter != f2->letter) continue;
          if (f1->src == f2->src && f1->dst == f2->dst) {
            f2->alive = false;  // exact parallel; expressions evaluate equally
            changed = true;
          } else if (f1->src == f2->src) {
            if (f2->dst == 0) std::swap(f1, f2);
            // colliding termini: gamma(victim) -> gamma(survivor)
            GroupWord din = f1->expr.inverse() * f2->expr;
            merge_state(f1->dst, f2->dst, din);
            changed = true;
          } else if (f1->dst == f2->dst) {
            if (f2->src == 0) std::swap(f1, f2);
            GroupWord din = f1->expr * f2->expr.inverse();
            merge_state(f1->src, f2->src, din);
            changed = true;
          }
        }
      }
    }
  }

  std::optional<GroupWord> walk(const GroupWord& w) const {
    if (w.alphabet() != alphabet_) throw input_error("word over the wrong alphabet");
    GroupWord expr(generator_alph_);
    int cur = 0;
    for (int i = 0; i < w.size(); ++i) {
      SignedLetter s = w.syllable(i);
      auto it = index_.find({cur, s.letter, s.sign});
      if (it == index_.end()) return std::nullopt;
      const XEdge& e = edges_[static_cast<size_t>(it->second)];
      expr = s.sign > 0 ? expr * e.expr : expr * e.expr.inverse();
      cur = s.sign > 0 ? e.dst : e.src;
    }
    if (cur != 0) return std::nullopt;
    return expr;
  }

  Alphabet alphabet_{};
  Alphabet generator_alph_{};
  std::vector<XEdge> edges_;
  std::map<std::tuple<int, Letter, int>, int> index_;
};

}  // namespace sgt
