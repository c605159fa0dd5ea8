#pragma once

#include <stdexcept>
#include <string>

namespace augsel {

/// Bad input data, files, or configuration. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A failure while running a pipeline stage. The CLI maps this to exit code 1.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace augsel
