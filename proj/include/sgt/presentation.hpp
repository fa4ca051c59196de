#pragma once
// presentation.hpp -- omega-presentations as data: restriction to images of
// powers, rank stabilization, freeness verdicts, finite-quotient witnesses,
// and whole-substitution analysis reports.

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "endo.hpp"
#include "matrix.hpp"
#include "returns.hpp"
#include "stallings.hpp"
#include "substitution.hpp"

namespace sgt {

// The profinite presentation <A | phi^w(a) a^-1> determined by an
// endomorphism.  Only the defining endomorphism is ever stored; the
// idempotent power itself is not a computable object.
struct OmegaPresentation {
  GroupEndomorphism definer;
  std::string provenance;
  PeriodicityEvidence aperiodicity;

  int generators() const { return definer.alphabet().size; }
};

// Presentation of the group of a primitive, non-periodic substitution:
// a proper substitution presents its own group; otherwise a return
// substitution at a found connection does.
inline OmegaPresentation omega_presentation_from_substitution(const Substitution& s,
                                                              int periodicity_bound = 50) {
  require_primitive(s);
  PeriodicityEvidence ev = periodicity_evidence(s, periodicity_bound);
  if (ev.periodic())
    throw domain_error("periodic substitution: its group is free of rank one");
  PropernessResult prop = properness(s);
  if (prop.proper) {
    return {GroupEndomorphism::from(s), "proper substitution, presenting its own group", ev};
  }
  Connection c = find_connection(s);
  ReturnStructure rs = durand(s, c);
  std::ostringstream prov;
  prov << "return substitution at connection (" << render(c.u, default_symbols(s.alphabet().size))
       << "," << render(c.v, default_symbols(s.alphabet().size)) << ") of order " << c.order;
  return {GroupEndomorphism::from(rs.derived), prov.str(), ev};
}

// Result of restricting an endomorphism to the image of its n-th power.
struct Restriction {
  std::vector<GroupWord> basis;       // of Im(e^n), over the parent alphabet
  GroupEndomorphism restricted;       // e written in that basis
  StallingsAutomaton image;           // folded core automaton of Im(e^n)
};

// Restriction of e to Im(e^n).  A supplied basis is validated (membership,
// cardinality, and that it generates the image); by default the basis read
// off the breadth-first spanning tree is used.
inline Restriction restrict_endo(const GroupEndomorphism& e, int n,
                                 const std::optional<std::vector<GroupWord>>& supplied = {}) {
  if (n < 1) throw input_error("restriction power must be positive");
  GroupEndomorphism en = e.power(n);
  StallingsAutomaton im = core(fold(flower(e.alphabet(), en.images())));
  int r = rank(im);

  std::vector<GroupWord> basis;
  if (supplied) {
    basis = *supplied;
    if (static_cast<int>(basis.size()) != r)
      throw basis_error("supplied basis has " + std::to_string(basis.size()) +
                        " elements but the image has rank " + std::to_string(r));
    for (const GroupWord& b : basis) {
      if (b.empty()) throw basis_error("the empty word cannot be a basis element");
      if (!membership(im, b))
        throw basis_error("supplied word " + render(b, default_symbols(e.alphabet().size)) +
                          " is not in the image subgroup");
    }
    GeneratorExpresser span_check(e.alphabet(), basis);
    for (const GroupWord& d : basis_from_tree(im, spanning_tree(im)).words)
      if (!span_check.member(d))
        throw basis_error("supplied words do not generate the image subgroup");
  } else {
    basis = basis_from_tree(im, spanning_tree(im)).words;
  }

  GeneratorExpresser expr(e.alphabet(), basis);
  std::vector<GroupWord> images;
  images.reserve(basis.size());
  for (const GroupWord& b : basis) images.push_back(expr.express(e.apply(b)));
  return {std::move(basis), GroupEndomorphism(Alphabet{r}, std::move(images)), std::move(im)};
}

struct StabilizationEntry {
  int step;
  int rank;        // generators of the presentation at this step
  bool injective;  // of the definer at this step
};

// Iterated one-step restrictions, recording presentation ranks; stops when
// the rank repeats (the definer has become injective) or after max_steps.
inline std::vector<StabilizationEntry> stabilize_restrictions(const GroupEndomorphism& e,
                                                              int max_steps = 8) {
  std::vector<StabilizationEntry> out;
  GroupEndomorphism cur = e;
  out.push_back({0, e.alphabet().size, is_injective(e)});
  for (int step = 1; step <= max_steps; ++step) {
    cur = restrict_endo(cur, 1).restricted;
    out.push_back({step, cur.alphabet().size, is_injective(cur)});
    if (out[static_cast<size_t>(step)].rank == out[static_cast<size_t>(step) - 1].rank) break;
  }
  return out;
}

enum class Verdict { Free, NotFree, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Free: return "Free";
    case Verdict::NotFree: return "NotFree";
    default: return "Inconclusive";
  }
}

struct CertificateStep {
  int step = 0;
  GroupEndomorphism definer;
  BigInt det;
  bool automorphism_checked = false;
  bool automorphism = false;
};

struct PseudovarietyFacts {
  BigInt det;
  bool unimodular = false;
  bool invertible = false;
  std::string gp_invertible_for;          // p-invertibility from the determinant
  std::optional<std::string> gp_contained_for;  // quotient containment (needs aperiodicity)
  std::vector<long> excluded_primes;      // prime divisors of |det|
  bool gnil_contained = false;
  bool v_equals_g = false;
  std::optional<std::string> relative_freeness;
};

struct FreenessReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<CertificateStep> chain;
  std::vector<std::string> facts;
  std::optional<PseudovarietyFacts> pseudovariety_facts;  // filled by analyze
  bool conditional_on_aperiodicity = false;
  PeriodicityEvidence aperiodicity;
};

// Decision procedure on the defining endomorphism: a non-zero determinant
// makes the presentation minimal, so the group is free exactly when the
// definer is an automorphism.  Zero determinants are retried on one-step
// restrictions; if every determinant vanishes the outcome is Inconclusive.
inline FreenessReport freeness_test(const OmegaPresentation& p, int max_restriction_steps = 4) {
  FreenessReport rep;
  rep.aperiodicity = p.aperiodicity;
  rep.conditional_on_aperiodicity =
      p.aperiodicity.kind == PeriodicityEvidence::Kind::AperiodicUpTo;
  if (rep.conditional_on_aperiodicity)
    rep.facts.push_back("aperiodicity verified only up to factor length " +
                        std::to_string(p.aperiodicity.bound) + "; verdict is conditional on it");

  GroupEndomorphism cur = p.definer;
  for (int step = 0;; ++step) {
    BigInt d = determinant(incidence_matrix(cur));
    if (d != 0) {
      bool aut = is_automorphism(cur);
      rep.chain.push_back({step, cur, d, true, aut});
      std::ostringstream fact;
      fact << "step " << step << ": det = " << d;
      if (aut) {
        rep.verdict = Verdict::Free;
        fact << ", the definer is an automorphism; the presented group is free";
      } else {
        rep.verdict = Verdict::NotFree;
        if (abs(d) > 1)
          fact << ", not a unit, so the definer cannot be an automorphism;"
                  " the presented group is not free";
        else
          fact << " and the definer is not an automorphism; the presented group is not free";
      }
      rep.facts.push_back(fact.str());
      return rep;
    }
    rep.chain.push_back({step, cur, 0, false, false});
    rep.facts.push_back("step " + std::to_string(step) + ": det = 0, restricting to the image");
    if (step == max_restriction_steps) {
      rep.verdict = Verdict::Inconclusive;
      rep.facts.back() = "step " + std::to_string(step) + ": det = 0, restriction budget exhausted";
      rep.facts.push_back("every determinant along the restriction chain vanished; inconclusive");
      return rep;
    }
    cur = restrict_endo(cur, 1).restricted;
  }
}

// ---------------------------------------------------------------------------
// Finite quotient witnesses.

// A finite group given by its multiplication table; element 0 is the
// identity.
struct FiniteGroup {
  int size = 0;
  std::vector<int> table;  // size x size, row-major: table[a*size+b] = a*b

  int mul(int a, int b) const { return table[static_cast<size_t>(a) * static_cast<size_t>(size) + static_cast<size_t>(b)]; }

  int inv(int a) const {
    for (int b = 0; b < size; ++b)
      if (mul(a, b) == 0) return b;
    throw input_error("element has no inverse; not a group table");
  }

  void validate() const {
    if (size <= 0 || static_cast<int>(table.size()) != size * size)
      throw input_error("malformed multiplication table");
    for (int a = 0; a < size; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        throw input_error("element 0 must be the identity");
    for (int a = 0; a < size; ++a) (void)inv(a);
  }

  bool generated_by(const std::vector<int>& tuple) const {
    std::set<int> closure{0};
    for (int t : tuple) closure.insert(t);
    bool grew = true;
    while (grew) {
      grew = false;
      std::set<int> next = closure;
      for (int a : closure)
        for (int b : closure) next.insert(mul(a, b));
      grew = next.size() > closure.size();
      closure = std::move(next);
    }
    return static_cast<int>(closure.size()) == size;
  }

  // (Z/pZ)^k with mixed-radix element encoding; the zero vector is 0.
  static FiniteGroup elementary_abelian(long p, int k) {
    long n = 1;
    for (int i = 0; i < k; ++i) {
      n *= p;
      if (n > 65536) throw input_error("elementary abelian group too large to tabulate");
    }
    FiniteGroup g;
    g.size = static_cast<int>(n);
    g.table.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) {
        long x = a, y = b, pw = 1, r = 0;
        for (int i = 0; i < k; ++i) {
          r += ((x % p + y % p) % p) * pw;
          x /= p;
          y /= p;
          pw *= p;
        }
        g.table[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] = static_cast<int>(r);
      }
    return g;
  }
};

// A letter-indexed tuple over H fixed by the n-th power of the induced
// action, together with the group it generates.
struct QuotientWitness {
  FiniteGroup group;
  std::vector<int> tuple;  // letter -> element of H
  long exponent = 0;       // least n >= 1 with action^n(tuple) = tuple
};

// The action t |-> e_H(t): evaluate each image word under the tuple.
inline std::vector<int> quotient_action(const GroupEndomorphism& e, const FiniteGroup& h,
                                        const std::vector<int>& t) {
  std::vector<int> out(t.size());
  for (Letter a = 0; a < e.alphabet().size; ++a) {
    const GroupWord& w = e.image(a);
    int acc = 0;
    for (int i = 0; i < w.size(); ++i) {
      int x = t[static_cast<size_t>(w.letter(i))];
      acc = h.mul(acc, w.sign(i) > 0 ? x : h.inv(x));
    }
    out[static_cast<size_t>(a)] = acc;
  }
  return out;
}

// Abelian witness mod p: when p does not divide det(M(e)), the reduced
// incidence matrix is invertible mod p, so the standard basis tuple of
// (Z/pZ)^A is fixed by the action's n-th power, n the matrix order.
inline std::optional<QuotientWitness> abelian_quotient_mod_p(const GroupEndomorphism& e, long p) {
  if (!is_prime(p)) throw input_error(std::to_string(p) + " is not prime");
  BigInt d = determinant(incidence_matrix(e));
  if (d % p == 0) return std::nullopt;
  int k = e.alphabet().size;
  FiniteGroup h = FiniteGroup::elementary_abelian(p, k);
  std::vector<int> tuple(static_cast<size_t>(k));
  long pw = 1;
  for (int i = 0; i < k; ++i) {
    tuple[static_cast<size_t>(i)] = static_cast<int>(pw);  // i-th standard basis vector
    pw *= p;
  }
  long n = matrix_order_mod(incidence_matrix(e), p);
  return QuotientWitness{std::move(h), std::move(tuple), n};
}

// Exhaustive witness search over H^A: the lexicographically first
// generating tuple whose forward orbit under the action returns to it.
inline std::optional<QuotientWitness> finite_quotient_witness(const GroupEndomorphism& e,
                                                              const FiniteGroup& h, long bound) {
  h.validate();
  int k = e.alphabet().size;
  double space = 1;
  for (int i = 0; i < k; ++i) space *= static_cast<double>(h.size);
  if (space > static_cast<double>(bound))
    throw domain_error("tuple space exceeds the exhaustive-search bound");

  std::vector<int> tuple(static_cast<size_t>(k), 0);
  while (true) {
    if (h.generated_by(tuple)) {
      std::set<std::vector<int>> seen{tuple};
      std::vector<int> cur = tuple;
      for (long n = 1; n <= bound; ++n) {
        cur = quotient_action(e, h, cur);
        if (cur == tuple) return QuotientWitness{h, tuple, n};
        if (!seen.insert(cur).second) break;  // cycle missing the start
      }
    }
    int i = 0;
    while (i < k && ++tuple[static_cast<size_t>(i)] == h.size) tuple[static_cast<size_t>(i++)] = 0;
    if (i == k) return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Whole-substitution analysis.

struct AnalyzeOptions {
  int max_complexity = 50;
  int max_restrict = 4;
};

struct AnalysisReport {
  PrimitivityResult primitivity;
  PeriodicityEvidence periodicity;
  std::optional<Connection> connection;
  std::optional<ReturnStructure> returns;
  std::optional<OmegaPresentation> presentation;
  std::optional<FreenessReport> freeness;
  PseudovarietyFacts facts;
  std::string note;
};

namespace detail {

inline std::vector<long> small_prime_factors(BigInt d) {
  std::vector<long> out;
  if (d < 0) d = -d;
  if (d <= 1) return out;
  for (long p = 2; BigInt(p) * p <= d; ++p)
    if (d % p == 0) {
      out.push_back(p);
      while (d % p == 0) d /= p;
    }
  if (d > 1) out.push_back(d.convert_to<long>());
  return out;
}

}  // namespace detail

// Determinant-level pseudovariety facts of a substitution: p-invertibility,
// unimodularity, invertibility over the free group, and the containments
// they certify.
inline PseudovarietyFacts base_pseudovariety_facts(const Substitution& s) {
  PseudovarietyFacts f;
  BigInt d = determinant(incidence_matrix(s));
  f.det = d;
  f.unimodular = (d == 1 || d == -1);
  f.invertible = is_automorphism(GroupEndomorphism::from(s));
  f.excluded_primes = detail::small_prime_factors(d);
  if (d == 0)
    f.gp_invertible_for = "no primes (determinant 0)";
  else {
    std::ostringstream os;
    os << "all primes not dividing " << d;
    f.gp_invertible_for = os.str();
  }
  f.gnil_contained = f.unimodular;
  f.v_equals_g = f.invertible;
  return f;
}

inline AnalysisReport analyze(const Substitution& s, const AnalyzeOptions& opts = {}) {
  AnalysisReport rep;
  rep.primitivity = primitivity(s);
  if (!rep.primitivity.primitive) throw unsupported_error("substitution is not primitive");
  rep.periodicity = periodicity_evidence(s, opts.max_complexity);
  rep.facts = base_pseudovariety_facts(s);

  if (rep.periodicity.periodic()) {
    rep.note = "periodic substitution: the associated group is free profinite of rank one";
    return rep;
  }

  // Quotient-containment facts require aperiodicity (possibly conditional).
  rep.facts.gp_contained_for = rep.facts.gp_invertible_for;

  rep.connection = find_connection(s);
  rep.returns = durand(s, *rep.connection);
  PropernessResult prop = properness(s);
  if (prop.proper) {
    rep.presentation = OmegaPresentation{GroupEndomorphism::from(s),
                                         "proper substitution, presenting its own group",
                                         rep.periodicity};
  } else {
    std::ostringstream prov;
    prov << "return substitution at connection ("
         << render(rep.connection->u, default_symbols(s.alphabet().size)) << ","
         << render(rep.connection->v, default_symbols(s.alphabet().size)) << ") of order "
         << rep.connection->order;
    rep.presentation = OmegaPresentation{GroupEndomorphism::from(rep.returns->derived),
                                         prov.str(), rep.periodicity};
  }
  rep.freeness = freeness_test(*rep.presentation, opts.max_restrict);
  if (rep.facts.invertible && rep.freeness->verdict == Verdict::NotFree)
    rep.facts.relative_freeness =
        "not relatively free: for an invertible substitution, relative and absolute freeness coincide";
  rep.freeness->pseudovariety_facts = rep.facts;
  return rep;
}

}  // namespace sgt
