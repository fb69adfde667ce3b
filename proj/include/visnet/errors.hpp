#pragma once

#include <stdexcept>
#include <string>

namespace visnet {

// Exit-code contract of the CLI: 0 success, 1 usage error, 2 data or
// precondition error, 3 internal invariant breach.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

// Bad command-line arguments or option values.
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid input data or a violated operation precondition.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace visnet
