#ifndef SLM_LP_HPP
#define SLM_LP_HPP

#include "slm/scalar.hpp"

#include <optional>

namespace slm {

/// Finds some x in Q^d with G x >= b (x unrestricted in sign), or nullopt if
/// the system is infeasible. Phase-one simplex over the rationals with
/// Bland's rule, so it terminates and never misjudges a degenerate system.
std::optional<QVector> feasible_point(const QMatrix& G, const QVector& b);

}  // namespace slm

#endif  // SLM_LP_HPP
