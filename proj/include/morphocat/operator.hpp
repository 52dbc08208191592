#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morphocat {

enum class Direction { Left, Right, Unspecified };
enum class MorphemeType { Free, Bound };
enum class Process { Affix, Concat, Clitic, Redup };

// The enriched slash: (direction, morpheme type, process type).
struct Operator {
  Direction direction = Direction::Unspecified;
  MorphemeType morpheme = MorphemeType::Free;
  Process process = Process::Concat;

  friend bool operator==(const Operator&, const Operator&) = default;
  friend auto operator<=>(const Operator&, const Operator&) = default;

  bool consumes_left() const { return direction != Direction::Right; }
  bool consumes_right() const { return direction != Direction::Left; }
  // Fused with its host (no separating space).
  bool fuses() const { return process == Process::Affix || process == Process::Redup; }
};

inline char slash_char(Direction d) {
  switch (d) {
    case Direction::Left: return '\\';
    case Direction::Right: return '/';
    case Direction::Unspecified: return '|';
  }
  return '|';
}

inline std::string_view to_string(MorphemeType m) {
  return m == MorphemeType::Free ? "free" : "bound";
}

inline std::string_view to_string(Process p) {
  switch (p) {
    case Process::Affix: return "affix";
    case Process::Concat: return "concat";
    case Process::Clitic: return "clitic";
    case Process::Redup: return "redup";
  }
  return "concat";
}

inline std::optional<MorphemeType> morpheme_from(std::string_view s) {
  if (s == "free") return MorphemeType::Free;
  if (s == "bound") return MorphemeType::Bound;
  return std::nullopt;
}

inline std::optional<Process> process_from(std::string_view s) {
  if (s == "affix") return Process::Affix;
  if (s == "concat") return Process::Concat;
  if (s == "clitic") return Process::Clitic;
  if (s == "redup") return Process::Redup;
  return std::nullopt;
}

// Lexicon notation, e.g. \<bound,affix>
inline std::string to_string(const Operator& op) {
  std::string out(1, slash_char(op.direction));
  out += '<';
  out += to_string(op.morpheme);
  out += ',';
  out += to_string(op.process);
  out += '>';
  return out;
}

// Violations of the operator well-formedness conditions; empty when valid.
inline std::vector<std::string> operator_violations(const Operator& op) {
  std::vector<std::string> out;
  bool bound_process = op.process != Process::Concat;
  if (bound_process && op.morpheme != MorphemeType::Bound)
    out.push_back("process " + std::string(to_string(op.process)) + " requires a bound morpheme");
  if (!bound_process && op.morpheme != MorphemeType::Free)
    out.push_back("process concat requires a free morpheme");
  if (op.process == Process::Redup && op.direction != Direction::Right)
    out.push_back("reduplication must be right-directed (the reduplicant precedes its stem)");
  return out;
}

}  // namespace morphocat
