#pragma once

// Three-valued certification outcome. Searches that exhaust their work
// budget report inconclusive rather than guessing, and downstream
// conclusions propagate the weakest input.

#include <string>

namespace ttcert {

enum class Verdict { no, yes, inconclusive };

inline Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::no || b == Verdict::no) return Verdict::no;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive)
    return Verdict::inconclusive;
  return Verdict::yes;
}

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "no";
    case Verdict::yes: return "yes";
    default: return "inconclusive";
  }
}

}  // namespace ttcert
