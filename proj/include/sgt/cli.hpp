#pragma once
// cli.hpp -- command line front end (analyze, returns, restrict, freeness,
// stallings, examples)

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "examples.hpp"
#include "io.hpp"

namespace sgt {

namespace cli_detail {

inline std::string slurp(const std::string& path, std::istream& stdin_stream) {
  if (path == "-") {
    std::ostringstream os;
    os << stdin_stream.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw input_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline NamedSubstitution require_substitution(const ParsedRules& rules) {
  if (const auto* s = std::get_if<NamedSubstitution>(&rules)) return *s;
  throw input_error("expected a substitution (no inverse letters)");
}

inline NamedEndomorphism as_endomorphism(const ParsedRules& rules) {
  if (const auto* e = std::get_if<NamedEndomorphism>(&rules)) return *e;
  const auto& s = std::get<NamedSubstitution>(rules);
  return {GroupEndomorphism::from(s.value), s.symbols};
}

inline Connection parse_connection_flag(const std::string& spec, const Substitution& s,
                                        std::string_view symbols) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw input_error("--connection expects `u,v`");
  MonoidWord u = parse_monoid_word(spec.substr(0, comma), symbols);
  MonoidWord v = parse_monoid_word(spec.substr(comma + 1), symbols);
  auto k = connection_order(s, u, v);
  if (!k || !verify_connection(s, u, v, *k))
    throw input_error("(" + spec + ") is not a connection of the substitution");
  return Connection{u, v, *k};
}

inline void print_two_columns(std::ostream& out, const std::string& left_title,
                              const std::vector<std::string>& left, const std::string& right_title,
                              const std::vector<std::string>& right) {
  size_t width = left_title.size();
  for (const std::string& l : left) width = std::max(width, l.size());
  out << left_title << std::string(width + 4 - left_title.size(), ' ') << right_title << "\n";
  for (size_t i = 0; i < std::max(left.size(), right.size()); ++i) {
    std::string l = i < left.size() ? left[i] : "";
    std::string r = i < right.size() ? right[i] : "";
    out << l << std::string(width + 4 - l.size(), ' ') << r << "\n";
  }
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw input_error("cannot write " + path);
  f << content;
}

}  // namespace cli_detail

// Exit codes: 0 decided/success, 1 input error, 2 inconclusive outcome.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err,
                   std::istream& in = std::cin) {
  using namespace cli_detail;

  CLI::App app{"substitution group toolkit: return substitutions, Stallings"
               " automata, and freeness verdicts for substitution groups",
               "sgt"};
  app.require_subcommand(1);

  std::string input_path = "-";
  std::string connection_spec, basis_path, dot_path;
  bool json = false;
  int max_complexity = 50, max_restrict = 4, power = 1;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input_path, "rule file, or - for stdin")->required();
  };

  CLI::App* cmd_analyze = app.add_subcommand("analyze", "full analysis report");
  add_input(cmd_analyze);
  cmd_analyze->add_flag("--json", json);
  cmd_analyze->add_option("--max-complexity", max_complexity, "periodicity search bound");
  cmd_analyze->add_option("--max-restrict", max_restrict, "restriction budget");

  CLI::App* cmd_returns = app.add_subcommand("returns", "return words and return substitution");
  add_input(cmd_returns);
  cmd_returns->add_flag("--json", json);
  cmd_returns->add_option("--connection", connection_spec, "connection as u,v (order is computed)");

  CLI::App* cmd_restrict =
      app.add_subcommand("restrict", "restrict an endomorphism to the image of a power");
  add_input(cmd_restrict);
  cmd_restrict->add_flag("--json", json);
  cmd_restrict->add_option("--power", power, "restrict to the image of this power");
  cmd_restrict->add_option("--basis", basis_path, "file with one basis word per line");

  CLI::App* cmd_freeness = app.add_subcommand("freeness", "freeness verdict with certificate");
  add_input(cmd_freeness);
  cmd_freeness->add_flag("--json", json);
  cmd_freeness->add_option("--max-complexity", max_complexity, "periodicity search bound");
  cmd_freeness->add_option("--max-restrict", max_restrict, "restriction budget");

  CLI::App* cmd_stallings =
      app.add_subcommand("stallings", "fold the subgroup generated by a list of words");
  add_input(cmd_stallings);
  cmd_stallings->add_flag("--json", json);
  cmd_stallings->add_option("--dot", dot_path, "write the folded automaton in DOT format");

  CLI::App* cmd_examples = app.add_subcommand("examples", "run the built-in worked examples");

  try {
    std::reverse(args.begin(), args.end());  // CLI11's vector parse expects reversed args
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (cmd_examples->parsed()) {
      auto checks = examples::run_all_examples();
      size_t width = 0;
      for (const auto& c : checks) width = std::max(width, c.name.size());
      bool all = true;
      for (const auto& c : checks) {
        out << c.name << std::string(width + 2 - c.name.size(), ' ')
            << (c.pass ? "PASS" : "FAIL");
        if (!c.pass && !c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
        all = all && c.pass;
      }
      out << (all ? "all examples pass\n" : "some examples FAILED\n");
      return all ? 0 : 1;
    }

    std::string text = slurp(input_path, in);

    if (cmd_returns->parsed()) {
      NamedSubstitution named = require_substitution(parse_rules(text));
      const Substitution& s = named.value;
      Connection c = connection_spec.empty() ? find_connection(s)
                                             : parse_connection_flag(connection_spec, s, named.symbols);
      ReturnStructure rs;
      try {
        rs = durand(s, c);
      } catch (const periodicity_signal& sig) {
        out << "periodic substitution: singleton return set {"
            << render(sig.period_word, named.symbols) << "}; the group is free of rank one\n";
        return 0;
      }
      if (json) {
        out << to_json(rs, named.symbols).dump(2) << "\n";
        return 0;
      }
      out << "connection (" << render(c.u, named.symbols) << "," << render(c.v, named.symbols)
          << ") of order " << c.order << "\n\n";
      std::vector<std::string> left, right;
      std::string dsyms = default_symbols(rs.derived.alphabet().size);
      for (size_t i = 0; i < rs.theta.size(); ++i) {
        left.push_back(std::string(1, dsyms[i]) + " -> " + render(rs.theta[i], named.symbols));
        right.push_back(std::string(1, dsyms[i]) + " -> " +
                        render(rs.derived.image(static_cast<int>(i)), dsyms));
      }
      print_two_columns(out, "return words", left, "return substitution", right);
      return 0;
    }

    if (cmd_restrict->parsed()) {
      NamedEndomorphism named = as_endomorphism(parse_rules(text));
      std::optional<std::vector<GroupWord>> basis;
      if (!basis_path.empty()) basis = parse_word_list(slurp(basis_path, in), named.symbols);
      Restriction r = restrict_endo(named.value, power, basis);
      std::string bsyms = default_symbols(static_cast<int>(r.basis.size()));
      if (json) {
        Json jb = Json::array();
        for (const GroupWord& b : r.basis) jb.push_back(render(b, named.symbols));
        out << Json{{"rank", r.basis.size()},
                    {"basis", jb},
                    {"restricted", to_json(r.restricted, bsyms)}}
                   .dump(2)
            << "\n";
        return 0;
      }
      std::vector<std::string> left, right;
      for (size_t i = 0; i < r.basis.size(); ++i) {
        left.push_back(std::string(1, bsyms[i]) + " = " + render(r.basis[i], named.symbols));
        right.push_back(std::string(1, bsyms[i]) + " -> " +
                        render(r.restricted.image(static_cast<int>(i)), bsyms));
      }
      print_two_columns(out, "basis", left, "restriction", right);
      return 0;
    }

    if (cmd_stallings->parsed()) {
      // alphabet: the symbols that occur anywhere in the word list
      std::string symbols;
      for (char c : text)
        if (symbol_index(kSymbolUniverse, c) >= 0 && symbol_index(symbols, c) < 0) symbols += c;
      std::sort(symbols.begin(), symbols.end(), [](char a, char b) {
        return symbol_index(kSymbolUniverse, a) < symbol_index(kSymbolUniverse, b);
      });
      if (symbols.empty()) throw input_error("no words found");
      std::vector<GroupWord> words = parse_word_list(text, symbols);
      StallingsAutomaton folded = core(fold(flower(Alphabet{static_cast<int>(symbols.size())}, words)));
      SpanningTree tree = spanning_tree(folded);
      SubgroupBasis basis = basis_from_tree(folded, tree);
      if (!dot_path.empty()) write_file(dot_path, to_dot(folded, &tree, symbols));
      if (json) {
        Json jb = Json::array();
        for (const GroupWord& b : basis.words) jb.push_back(render(b, symbols));
        out << Json{{"automaton", to_json(folded, symbols)},
                    {"rank", rank(folded)},
                    {"basis", jb}}
                   .dump(2)
            << "\n";
        return 0;
      }
      out << "states " << folded.num_states() << ", edges " << folded.edges().size() << ", rank "
          << rank(folded) << "\n";
      out << "basis:";
      for (const GroupWord& b : basis.words) out << " " << render(b, symbols);
      out << "\n";
      return 0;
    }

    if (cmd_freeness->parsed()) {
      NamedSubstitution named = require_substitution(parse_rules(text));
      OmegaPresentation pres;
      try {
        pres = omega_presentation_from_substitution(named.value, max_complexity);
      } catch (const domain_error& e) {
        out << "verdict: Free\n" << e.what() << "\n";
        return 0;  // periodic: rank-one free group
      }
      FreenessReport rep = freeness_test(pres, max_restrict);
      PseudovarietyFacts facts = base_pseudovariety_facts(named.value);
      facts.gp_contained_for = facts.gp_invertible_for;  // non-periodic by now
      if (facts.invertible && rep.verdict == Verdict::NotFree)
        facts.relative_freeness =
            "not relatively free: for an invertible substitution, relative and absolute"
            " freeness coincide";
      rep.pseudovariety_facts = std::move(facts);
      if (json) {
        Json j = to_json(rep, named.symbols);
        j["presentation"] = Json{{"generators", pres.generators()}, {"provenance", pres.provenance}};
        out << j.dump(2) << "\n";
      } else {
        out << "presentation: " << pres.generators() << " generators (" << pres.provenance
            << ")\n";
        out << "verdict: " << to_string(rep.verdict) << "\n";
        for (const std::string& f : rep.facts) out << "  " << f << "\n";
        out << "pseudovariety facts: " << to_json(*rep.pseudovariety_facts).dump() << "\n";
      }
      return rep.verdict == Verdict::Inconclusive ? 2 : 0;
    }

    if (cmd_analyze->parsed()) {
      NamedSubstitution named = require_substitution(parse_rules(text));
      AnalysisReport rep = analyze(named.value, {max_complexity, max_restrict});
      if (json) {
        out << to_json(rep, named.symbols).dump(2) << "\n";
      } else {
        out << "primitive: yes (witness exponent " << rep.primitivity.witness << ")\n";
        out << "periodicity: " << to_json(rep.periodicity).dump() << "\n";
        if (rep.connection)
          out << "connection: (" << render(rep.connection->u, named.symbols) << ","
              << render(rep.connection->v, named.symbols) << ") of order "
              << rep.connection->order << "\n";
        if (rep.returns) out << "return words: " << rep.returns->theta.size() << "\n";
        if (rep.presentation)
          out << "presentation: " << rep.presentation->generators() << " generators ("
              << rep.presentation->provenance << ")\n";
        if (rep.freeness) {
          out << "verdict: " << to_string(rep.freeness->verdict) << "\n";
          for (const std::string& f : rep.freeness->facts) out << "  " << f << "\n";
        }
        out << "pseudovariety facts: " << to_json(rep.facts).dump() << "\n";
        if (!rep.note.empty()) out << rep.note << "\n";
      }
      bool inconclusive = rep.freeness && rep.freeness->verdict == Verdict::Inconclusive;
      return inconclusive ? 2 : 0;
    }
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const basis_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace sgt
