#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace syzygy {

enum class ErrorKind {
  NonPrimitiveRay,
  RepeatedRay,
  NotComplete,
  NotSmooth,
  NotMinusOneCurve,
  DimensionMismatch,
  NotToric,
  NotNef,
  NotAmple,
  DegenerateBundle,
  HypothesesViolated,
  OutOfTheoremScope,
  PreconditionFailed,
  InvalidInput,
  EmptyGrid,
  ConstructionFailed,
  Unbounded,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// True for errors caused by the caller's input (as opposed to a broken
/// internal invariant). The CLI maps these to exit status 2.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending item (ray, generator, coefficient) when one is known.
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace syzygy
