#ifndef SLM_ERROR_HPP
#define SLM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slm {

enum class Errc {
  InvalidInput,
  ZeroRow,
  RankDeficient,
  ParallelRows,
  BudgetExceeded,
  ZeroPoint,
  OnHyperplane,
  DegenerateLeadingBlock,
  NoConvergence,
  BoundaryData,
  SingularGram,
  AnchorNotUnique,
  PathLost,
  ZeroCoordinate,
  DegenerateMinor,
  DimensionUnsupported,
  ReductionFailed,
};

std::string_view errc_name(Errc code);

/// True for failures of a numerical procedure on valid input (CLI exit 3);
/// everything else is a validation failure (CLI exit 2).
bool is_numeric_failure(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Newton did not reach the gradient tolerance; carries the gradient-norm trace.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, std::vector<double> trace)
      : Error(Errc::NoConvergence, message), trace_(std::move(trace)) {}

  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

/// The leading N x N block of the Veronese coefficient matrix is singular.
/// `permutation` lists row indices whose first N entries give an invertible block.
class DegenerateLeadingBlockError : public Error {
 public:
  DegenerateLeadingBlockError(const std::string& message, std::vector<int> permutation)
      : Error(Errc::DegenerateLeadingBlock, message), permutation_(std::move(permutation)) {}

  const std::vector<int>& permutation() const noexcept { return permutation_; }

 private:
  std::vector<int> permutation_;
};

}  // namespace slm

#endif  // SLM_ERROR_HPP
