#include "ovigo/error.hpp"

namespace ovigo {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NoPeaks: return "NoPeaks";
    case Errc::NoFloors: return "NoFloors";
    case Errc::UnpairedBoundary: return "UnpairedBoundary";
    case Errc::NoWalls: return "NoWalls";
    case Errc::NoSeeds: return "NoSeeds";
    case Errc::DegenerateField: return "DegenerateField";
    case Errc::DegenerateCluster: return "DegenerateCluster";
    case Errc::DegeneratePolygon: return "DegeneratePolygon";
    case Errc::DegenerateViewpoint: return "DegenerateViewpoint";
    case Errc::UndefinedIoU: return "UndefinedIoU";
    case Errc::EmptyBand: return "EmptyBand";
    case Errc::MissingPartition: return "MissingPartition";
    case Errc::FrameMismatch: return "FrameMismatch";
    case Errc::EmptyFragment: return "EmptyFragment";
    case Errc::EmptyHierarchy: return "EmptyHierarchy";
    case Errc::EmptySelection: return "EmptySelection";
    case Errc::SelectionError: return "SelectionError";
    case Errc::GroundingError: return "GroundingError";
    case Errc::RepairFailed: return "RepairFailed";
    case Errc::UnexpectedRequest: return "UnexpectedRequest";
    case Errc::TransportError: return "TransportError";
    case Errc::LabelSetError: return "LabelSetError";
    case Errc::EmptyBenchmark: return "EmptyBenchmark";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
    case Errc::UsageError: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace ovigo
