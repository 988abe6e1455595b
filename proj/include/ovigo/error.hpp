#pragma once

#include <stdexcept>
#include <string>

namespace ovigo {

// Error categories surfaced by the pipeline. "Input" class errors (malformed
// files, schema violations, bad config) map to CLI exit code 2, everything
// else to 1.
enum class Errc {
  EmptyInput,
  NoPeaks,
  NoFloors,
  UnpairedBoundary,
  NoWalls,
  NoSeeds,
  DegenerateField,
  DegenerateCluster,
  DegeneratePolygon,
  DegenerateViewpoint,
  UndefinedIoU,
  EmptyBand,
  MissingPartition,
  FrameMismatch,
  EmptyFragment,
  EmptyHierarchy,
  EmptySelection,
  SelectionError,
  GroundingError,
  RepairFailed,
  UnexpectedRequest,
  TransportError,
  LabelSetError,
  EmptyBenchmark,
  ParseError,
  ConfigError,
  IoError,
  UsageError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

  // Input-side failures (bad files, schemas, usage) vs. pipeline failures.
  bool is_input_error() const {
    switch (code_) {
      case Errc::ParseError:
      case Errc::ConfigError:
      case Errc::IoError:
      case Errc::UsageError:
      case Errc::FrameMismatch:
      case Errc::MissingPartition:
        return true;
      default:
        return false;
    }
  }

 private:
  Errc code_;
};

}  // namespace ovigo
