#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "syzygy/stability.hpp"

namespace syzygy::cli {

/// Entry point of the `syzygy` tool. `args[0]` is the program name.
/// Returns 0 on success, 2 on invalid input, 1 on internal errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct AnalyzeRequest {
  TDivisor d;
  std::optional<QDivisor> a;
  std::optional<Integer> multiple;
  std::size_t max_terms = 2;
};

/// Dispatch behind `analyze`:
///  - A and d given: destabilizer search at that d;
///  - A only: asymptotic test over the candidate S, then d0;
///  - neither: polarization construction (toric_driver / abstract_driver).
StabilityReport analyze(const SurfaceModel& X, const AnalyzeRequest& request);

}  // namespace syzygy::cli
