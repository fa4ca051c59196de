#pragma once
// io.hpp -- the substitution/endomorphism text format and JSON rendering

#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "presentation.hpp"

namespace sgt {

using Json = nlohmann::ordered_json;

// A parsed rule file together with its symbol table: letter i is rendered
// with symbols[i].
struct NamedSubstitution {
  Substitution value;
  std::string symbols;
};

struct NamedEndomorphism {
  GroupEndomorphism value;
  std::string symbols;
};

using ParsedRules = std::variant<NamedSubstitution, NamedEndomorphism>;

// Rule files: one `<symbol>-><word>` per line, `#` starts a comment, blank
// lines ignored.  The alphabet is the set of left-hand symbols (ordered as
// in the symbol universe); any apostrophe on a right-hand side promotes the
// whole file to a group endomorphism, and `e` denotes the empty image.
inline ParsedRules parse_rules(const std::string& text) {
  std::map<char, std::string> rules;
  bool group = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line.erase(0, start);
    auto arrow = line.find("->");
    if (arrow == std::string::npos || arrow != 1)
      throw input_error("line " + std::to_string(lineno) + ": expected `<symbol>-><word>`");
    char lhs = line[0];
    if (symbol_index(kSymbolUniverse, lhs) < 0)
      throw input_error("line " + std::to_string(lineno) + ": symbol '" + std::string(1, lhs) +
                        "' is not allowed");
    std::string rhs = line.substr(arrow + 2);
    if (rules.count(lhs))
      throw input_error("line " + std::to_string(lineno) + ": duplicate rule for '" +
                        std::string(1, lhs) + "'");
    if (rhs.find('\'') != std::string::npos) group = true;
    rules[lhs] = rhs;
  }
  if (rules.empty()) throw input_error("no rules found");
  // an explicitly empty image only exists for group endomorphisms
  if (!rules.count('e'))
    for (const auto& [c, rhs] : rules)
      if (rhs == "e") group = true;

  std::vector<std::pair<char, std::string>> ordered(rules.begin(), rules.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return symbol_index(kSymbolUniverse, a.first) < symbol_index(kSymbolUniverse, b.first);
  });
  std::string symbols;
  for (const auto& [c, _] : ordered) symbols += c;

  Alphabet alph{static_cast<int>(symbols.size())};
  if (group) {
    std::vector<GroupWord> images;
    for (const auto& [c, rhs] : ordered) {
      try {
        images.push_back(parse_group_word(rhs, symbols));
      } catch (const input_error& err) {
        throw input_error("rule for '" + std::string(1, c) + "': " + err.what());
      }
    }
    return NamedEndomorphism{GroupEndomorphism(alph, std::move(images)), symbols};
  }
  std::vector<MonoidWord> images;
  for (const auto& [c, rhs] : ordered) {
    MonoidWord w;
    try {
      w = parse_monoid_word(rhs, symbols);
    } catch (const input_error& err) {
      throw input_error("rule for '" + std::string(1, c) + "': " + err.what());
    }
    if (w.empty())
      throw input_error("rule for '" + std::string(1, c) + "': substitution images must be non-empty");
    images.push_back(std::move(w));
  }
  return NamedSubstitution{Substitution(alph, std::move(images)), symbols};
}

inline std::string render_rules(const Substitution& s, std::string_view symbols) {
  std::string out;
  for (Letter a = 0; a < s.alphabet().size; ++a) {
    out += symbol_of(symbols, a);
    out += "->";
    out += render(s.image(a), symbols);
    out += '\n';
  }
  return out;
}

inline std::string render_rules(const GroupEndomorphism& e, std::string_view symbols) {
  std::string out;
  for (Letter a = 0; a < e.alphabet().size; ++a) {
    out += symbol_of(symbols, a);
    out += "->";
    out += render(e.image(a), symbols);
    out += '\n';
  }
  return out;
}

// One word per line; `#` comments and blank lines ignored.
inline std::vector<GroupWord> parse_word_list(const std::string& text, std::string_view symbols) {
  std::vector<GroupWord> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(parse_group_word(tok, symbols));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON rendering.  Determinants are emitted as strings to stay exact.

inline Json to_json(const BigInt& v) {
  return v.str();
}

inline Json to_json(const Substitution& s, std::string_view symbols) {
  Json rules = Json::object();
  for (Letter a = 0; a < s.alphabet().size; ++a)
    rules[std::string(1, symbol_of(symbols, a))] = render(s.image(a), symbols);
  return Json{{"alphabet", s.alphabet().size}, {"rules", rules}};
}

inline Json to_json(const GroupEndomorphism& e, std::string_view symbols) {
  Json rules = Json::object();
  for (Letter a = 0; a < e.alphabet().size; ++a)
    rules[std::string(1, symbol_of(symbols, a))] = render(e.image(a), symbols);
  return Json{{"alphabet", e.alphabet().size}, {"rules", rules}};
}

inline Json to_json(const Connection& c, std::string_view symbols) {
  return Json{{"u", render(c.u, symbols)}, {"v", render(c.v, symbols)}, {"k", c.order}};
}

inline Json to_json(const ReturnStructure& rs, std::string_view symbols) {
  Json theta = Json::array();
  for (const MonoidWord& w : rs.theta) theta.push_back(render(w, symbols));
  return Json{{"theta", theta},
              {"return_substitution",
               to_json(rs.derived, default_symbols(rs.derived.alphabet().size))},
              {"connection", to_json(rs.connection, symbols)}};
}

inline Json to_json(const StallingsAutomaton& a, std::string_view symbols) {
  Json edges = Json::array();
  for (const Edge& e : a.edges())
    edges.push_back(Json::array({e.src, std::string(1, symbol_of(symbols, e.letter)), e.dst}));
  return Json{{"states", a.num_states()}, {"basepoint", a.basepoint()}, {"edges", edges}};
}

inline Json to_json(const PeriodicityEvidence& ev) {
  switch (ev.kind) {
    case PeriodicityEvidence::Kind::PeriodicProven:
      return Json{{"status", "PeriodicProven"},
                  {"period_word", render(ev.period_word, default_symbols(62))},
                  {"mh_witness", ev.mh_witness}};
    case PeriodicityEvidence::Kind::AperiodicProven:
      return Json{{"status", "AperiodicProven"}, {"reason", ev.reason}};
    default:
      return Json{{"status", "AperiodicUpTo"}, {"bound", ev.bound}};
  }
}

inline Json to_json(const PseudovarietyFacts& f) {
  Json j{{"unimodular", f.unimodular},
         {"invertible", f.invertible},
         {"Gp_contained_for", f.gp_contained_for ? Json(*f.gp_contained_for) : Json(nullptr)},
         {"Gnil_contained", f.gnil_contained},
         {"V_equals_G", f.v_equals_g}};
  j["determinant"] = to_json(f.det);
  j["Gp_invertible_for"] = f.gp_invertible_for;
  j["excluded_primes"] = f.excluded_primes;
  if (f.relative_freeness) j["relative_freeness"] = *f.relative_freeness;
  return j;
}

inline Json to_json(const FreenessReport& rep, std::string_view /*symbols*/) {
  Json chain = Json::array();
  for (const CertificateStep& st : rep.chain) {
    Json step{{"step", st.step},
              {"generators", st.definer.alphabet().size},
              {"determinant", to_json(st.det)}};
    if (st.automorphism_checked) step["automorphism"] = st.automorphism;
    step["definer"] = to_json(st.definer, default_symbols(st.definer.alphabet().size));
    chain.push_back(step);
  }
  Json j{{"verdict", to_string(rep.verdict)},
         {"certificate", rep.facts},
         {"chain", chain},
         {"conditional_on_aperiodicity", rep.conditional_on_aperiodicity},
         {"aperiodicity", to_json(rep.aperiodicity)}};
  if (rep.pseudovariety_facts) j["pseudovariety_facts"] = to_json(*rep.pseudovariety_facts);
  return j;
}

inline Json to_json(const AnalysisReport& rep, std::string_view symbols) {
  Json j;
  j["primitive"] = rep.primitivity.primitive;
  j["primitivity_witness"] = rep.primitivity.witness;
  j["periodicity"] = to_json(rep.periodicity);
  j["connection"] = rep.connection ? to_json(*rep.connection, symbols) : Json(nullptr);
  j["return_structure"] = rep.returns ? to_json(*rep.returns, symbols) : Json(nullptr);
  if (rep.presentation) {
    Json chain = Json::array();
    if (rep.freeness)
      for (const CertificateStep& st : rep.freeness->chain)
        chain.push_back(Json{{"step", st.step},
                             {"generators", st.definer.alphabet().size},
                             {"determinant", to_json(st.det)}});
    j["presentation"] = Json{{"generators", rep.presentation->generators()},
                             {"provenance", rep.presentation->provenance},
                             {"chain", chain}};
  } else {
    j["presentation"] = nullptr;
  }
  j["freeness"] = rep.freeness ? to_json(*rep.freeness, symbols) : Json(nullptr);
  j["pseudovariety_facts"] = to_json(rep.facts);
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

}  // namespace sgt
