#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gmm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (bad index, empty data, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input parameters or files failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration was requested on a model past the size cap.
class ModelTooLargeError : public Error {
 public:
  ModelTooLargeError() : Error("model too large for exact inference") {}
};

/// Gradient ascent diverged; carries the objective trace up to the failure.
class FitError : public Error {
 public:
  FitError(const std::string& what, std::vector<double> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

/// Experiment failure tagged with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace gmm
