#pragma once

#include "gluedforms/scene.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gluedforms {

struct CommandOptions {
  std::uint64_t seed = 0;
  unsigned degree = 2;
  int samples = 32;
};

/// Bad command name or arguments; the CLI exits with status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::ordered_json result;
  VerdictMode mode = VerdictMode::Exact;
  std::uint64_t seed = 0;
  /// 0 on success, 1 when the operation raised a domain error (the result
  /// then holds "error" and "message").
  int exit_code = 0;

  /// {schema_version, command, inputs, result, mode, seed}, in that order.
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Names of the supported commands, in help order.
const std::vector<std::string>& command_names();

/// Runs one command against a scene. Throws UsageError for unknown commands
/// or malformed arguments; domain errors are reported in the Report.
///
///   check-compat        GX w1 w2
///   glue-form           GX w1 w2
///   eval-form           GX w1 w2 <plot> [dim k]      plot: P1:(e0, e1) in x0, x1, ...
///   fibre               GX at <point>                point: P2:(0, 5)
///   oracle              GX at <point> [degree D]
///   rho                 GX at <point> element [c0, c1, ...]
///   check-metric-compat GX g1 g2
///   glue-metric         GX g1 g2
///   gram-rank           GX g1 g2 at <point>
Report run_command(const Scene& scene, const std::string& command, const std::vector<std::string>& args,
                   const CommandOptions& options = {});

/// Parses "P1:(a, b)" into an exact point of a piece; throws UsageError.
PiecePoint parse_piece_point(const std::string& text);

}  // namespace gluedforms
