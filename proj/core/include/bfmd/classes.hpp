// Valuation-class validation by exhaustive enumeration (and, for the
// max-of-additive cover property, exact LP feasibility per subset). All
// checks return a replayable witness on failure.
#pragma once

#include <string>

#include "bfmd/valuation.hpp"

namespace bfmd {

struct ClassCheck {
  bool ok = true;
  std::string witness;  // human-readable counterexample when !ok
};

/// v(S) <= v(T) whenever S is a subset of T.
ClassCheck check_monotone(const Valuation& v);

/// v(S) equals the sum of its singletons, for every S.
ClassCheck check_additive(const Valuation& v);

/// All pairwise exchange inequalities
/// v(S+e) - v(S) >= v(S+e+f) - v(S+f) for e,f not in S.
ClassCheck check_submodular(const Valuation& v);

/// v(S u T) <= v(S) + v(T) for all pairs.
ClassCheck check_subadditive(const Valuation& v);

/// For one subset: does a weight vector w on S exist with w(S) = v(S) and
/// w(T) <= v(T) for every T inside S? (Weights unrestricted in sign.)
bool xos_feasible_at(const Valuation& v, Subset s);

/// xos_feasible_at on every subset.
ClassCheck check_xos(const Valuation& v);

/// Checks the declared class plus the monotone flag; a declaration passes if
/// the stated property holds (a stronger true class is fine).
ClassCheck validate_class(const Valuation& v, ValClass declared);

}  // namespace bfmd
