#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmc/keywords.hpp"

namespace pmc::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,    ///< manifest, schema, scorecard or flag validation failed
  kComputeError = 3,  ///< a computation precondition failed
  kOutputError = 4,   ///< output could not be written
};

struct RunConfig {
  std::string command;
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> schema;
  std::optional<std::filesystem::path> dictionary;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> scorecards;
  std::optional<std::filesystem::path> overrides;
  TextRankParams textrank;
  std::size_t top = 20;
  std::size_t k_clusters = 3;
  std::filesystem::path out = "out";
  std::vector<std::string> formats{"csv"};
  std::string method = "all";
  bool per_document = false;

  /// Checks that every referenced input exists and the command's required
  /// inputs are present. Throws InputError listing every problem.
  void validate() const;
};

/// Parses `args` (without the program name) and runs the subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmc::cli
