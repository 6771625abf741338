#pragma once
// Batch commands over description files, producing deterministic reports.

#include <cstdint>
#include <optional>
#include <string>

namespace cohw {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitNegative = 1,  // a computation-level negative certificate, e.g. an invalid structure
  kExitInput = 2,     // unreadable, malformed or unsupported input
  kExitInternal = 3,  // a guaranteed identity failed
};

struct CommandRequest {
  std::string command;  // validate, pi, h1, phin-classify, phin-les, hodge-classify, hodge-les, verify
  std::string path;     // description file; unused by verify
  std::string section;  // empty: the first section of a suitable kind
  int degree = 0;
  std::string element;              // hodge-classify: comma-separated Gaussian coordinates
  std::string frobenius, monodromy;  // phin-classify: optional torsor datum
  std::string suite = "all";
  uint64_t seed = 7;
  std::optional<int> instances;
  bool json = false;
};

struct CommandOutput {
  int exit_code = kExitSuccess;
  std::string out;  // the report
  std::string err;  // diagnostics
};

CommandOutput run_command(const CommandRequest& request);

}  // namespace cohw
