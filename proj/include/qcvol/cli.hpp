#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcvol/sample.hpp"

namespace qcvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitStatFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kVersion = "0.1.0";

enum class Command { volume, sample, push, density, invariance, iterate };
enum class OutputFormat { csv, json };

struct RunConfig {
  Command command = Command::volume;
  ChannelKind kind = ChannelKind::general;
  std::uint64_t n = 10000;
  std::uint64_t seed = kDefaultSeed;
  double r0 = 0.0;
  int bins = 50;
  int grid = 101;
  int steps = 10;
  int workers = 1;
  int rotations = 20;
  double contraction = 1.0;
  std::string which = "eta";
  std::string sampler = "sequential";
  OutputFormat output_format = OutputFormat::csv;
  std::optional<std::string> output_path;
  std::string command_line;
};

/// Throws std::invalid_argument when an invariant of RunConfig is violated.
void validate(const RunConfig& cfg);

int cmd_volume(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_push(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_invariance(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_iterate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and dispatches. The QCVOL_SEED environment
/// variable replaces the default seed when --seed is absent.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Shortest-form-independent float formatting with 17 significant digits.
std::string format_double(double x);

}  // namespace qcvol::cli
