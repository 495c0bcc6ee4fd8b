#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betahull/document.hpp"

namespace betahull {

enum class Command { Beta, Alpha, Bounds, Oracle, Report };

Command parse_command(const std::string& name);
std::string to_string(Command c);

/// Command-line overrides; unset fields fall back to the document's
/// options, then to the defaults.
struct RunFlags {
  std::optional<std::string> mode;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> starts;
  std::optional<std::uint64_t> cap;
  std::optional<double> tol;
  bool exact_only = false;
  bool allow_asymmetric = false;
  bool timing = false;
  unsigned threads = 0;
};

struct RunOutput {
  std::string machine;  // JSON, sorted keys, deterministic unless timing is on
  std::string text;
  std::vector<std::string> warnings;
};

RunOutput run(Command command, const InputDocument& doc, const RunFlags& flags = {});

}  // namespace betahull
