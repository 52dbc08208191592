#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "morphocat/morphocat.hpp"

namespace mc = morphocat;

namespace {

constexpr const char* kUsage =
    "usage:\n"
    "  morphocat parse -l LEXICON [--words] [--goal CAT] [--format tree|sem|json]\n"
    "                  [--combinators FA,BA,...] [--no-restr] TOKEN...\n"
    "  morphocat segment -l LEXICON WORD...\n"
    "  morphocat realize -l LEXICON KEY HOST\n"
    "  morphocat lex validate -l LEXICON\n";

struct Usage {
  std::string message;
};

struct Args {
  std::optional<std::string> lexicon;
  std::string format = "tree";
  std::optional<std::string> goal;
  std::optional<std::string> combinators;
  bool words = false;
  bool no_restr = false;
  std::vector<std::string> positional;
};

// Tokens such as "-lu" are positional; only the listed options are flags.
Args parse_args(const std::vector<std::string>& argv) {
  Args a;
  auto value = [&](std::size_t& i) {
    if (i + 1 >= argv.size()) throw Usage{"option " + argv[i] + " needs a value"};
    return argv[++i];
  };
  bool rest_positional = false;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& s = argv[i];
    if (rest_positional) a.positional.push_back(s);
    else if (s == "--") rest_positional = true;
    else if (s == "-l" || s == "--lexicon") a.lexicon = value(i);
    else if (s == "--format") a.format = value(i);
    else if (s == "--goal") a.goal = value(i);
    else if (s == "--combinators") a.combinators = value(i);
    else if (s == "--words") a.words = true;
    else if (s == "--no-restr") a.no_restr = true;
    else if (s.rfind("--", 0) == 0) throw Usage{"unknown option " + s};
    else a.positional.push_back(s);
  }
  if (a.format != "tree" && a.format != "sem" && a.format != "json")
    throw Usage{"unknown format '" + a.format + "'"};
  return a;
}

mc::Lexicon load(const Args& a) {
  if (!a.lexicon) throw Usage{"missing -l LEXICON"};
  auto r = mc::load_lexicon_file(*a.lexicon);
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) std::cerr << *a.lexicon << ":" << mc::to_string(d) << "\n";
    throw mc::Error("lexicon '" + *a.lexicon + "' has errors");
  }
  return std::move(*r.lexicon);
}

int run_parse(const Args& a) {
  if (a.positional.empty()) throw Usage{"no tokens to parse"};
  mc::ParseConfig cfg;
  cfg.goal = a.goal;
  cfg.restr_licensing = !a.no_restr;
  if (a.combinators) {
    cfg.combinators.clear();
    std::string list = *a.combinators;
    std::size_t pos = 0;
    while (pos <= list.size()) {
      auto comma = list.find(',', pos);
      std::string name = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto c = mc::combinator_from(name);
      if (!c) throw Usage{"unknown combinator '" + name + "'"};
      cfg.combinators.push_back(*c);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  mc::Lexicon lex = load(a);
  auto ds = a.words ? mc::parse_words(a.positional, lex, cfg) : mc::parse(a.positional, lex, cfg);
  if (a.format == "json") std::cout << mc::render_json(ds);
  else if (ds.empty()) std::cout << "0 parses\n";
  else if (a.format == "sem") std::cout << mc::render_sems(ds);
  else std::cout << mc::render_trees(ds);
  return ds.empty() ? 1 : 0;
}

int run_segment(const Args& a) {
  if (a.positional.empty()) throw Usage{"no words to segment"};
  mc::Lexicon lex = load(a);
  auto r = mc::segment(a.positional, lex);
  for (const auto& wa : r.lattice) {
    std::cout << wa.word << ":";
    if (wa.analyses.empty()) std::cout << " (none)";
    std::cout << "\n";
    for (const auto& an : wa.analyses) {
      std::cout << " ";
      for (const auto& m : an)
        std::cout << " " << m.token() << "=" << m.key << ":" << lex.entries()[m.entry].cat.display();
      std::cout << "\n";
    }
  }
  for (const auto& d : r.diagnostics) std::cerr << "error: " << d << "\n";
  return r.ok() ? 0 : 1;
}

int run_realize(const Args& a) {
  if (a.positional.size() != 2) throw Usage{"realize takes KEY HOST"};
  mc::Lexicon lex = load(a);
  auto ids = lex.by_key(a.positional[0]);
  if (ids.empty()) {
    std::cerr << "error: unknown key '" << a.positional[0] << "'\n";
    return 2;
  }
  try {
    std::cout << mc::realize(lex.entries()[ids.front()].phon, mc::PhonContext{a.positional[1], mc::HostSide::Left})
              << "\n";
  } catch (const mc::HarmonyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_validate(const Args& a) {
  if (!a.lexicon) throw Usage{"missing -l LEXICON"};
  auto r = mc::load_lexicon_file(*a.lexicon);
  for (const auto& d : r.diagnostics) std::cout << *a.lexicon << ":" << mc::to_string(d) << "\n";
  std::size_t errors = r.error_count();
  std::cout << errors << (errors == 1 ? " error" : " errors") << "\n";
  return errors ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
      std::cout << kUsage;
      return args.empty() ? 2 : 0;
    }
    std::string cmd = args[0];
    args.erase(args.begin());
    if (cmd == "lex") {
      if (args.empty() || args[0] != "validate") throw Usage{"expected 'lex validate'"};
      args.erase(args.begin());
      return run_validate(parse_args(args));
    }
    Args a = parse_args(args);
    if (cmd == "parse") return run_parse(a);
    if (cmd == "segment") return run_segment(a);
    if (cmd == "realize") return run_realize(a);
    throw Usage{"unknown command '" + cmd + "'"};
  } catch (const Usage& u) {
    std::cerr << "error: " << u.message << "\n" << kUsage;
    return 2;
  } catch (const mc::UnknownTokens& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mc::ChartLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
