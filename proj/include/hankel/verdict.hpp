#pragma once

#include <string>

namespace hankel {

enum class Verdict { Pass, Fail, Consistent, Counterexample, BudgetExceeded };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Consistent:
      return "consistent";
    case Verdict::Counterexample:
      return "counterexample";
    case Verdict::BudgetExceeded:
      return "budget-exceeded";
  }
  return "fail";
}

/// 0 pass/consistent, 1 fail/counterexample, 2 budget-exceeded.
inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass:
    case Verdict::Consistent:
      return 0;
    case Verdict::BudgetExceeded:
      return 2;
    default:
      return 1;
  }
}

inline Verdict pass_if(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }
inline Verdict consistent_if(bool ok) { return ok ? Verdict::Consistent : Verdict::Counterexample; }

}  // namespace hankel
