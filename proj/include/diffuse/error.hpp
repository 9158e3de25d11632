#pragma once

#include <stdexcept>
#include <string>

namespace diffuse {

enum class ErrorKind {
  DegenerateSegment,
  VertexHit,
  OriginOutside,
  SourceNotInterior,
  SourceOutside,
  DegenerateConfiguration,
  NotAChord,
  PropertyViolation,
  WindowSaturated,
  NoCoveredNeighborhood,
  InvariantBreach,
  IterationCap,
  OnWindowChord,
  TargetOutside,
  AimExhausted,
  Unreachable,
  BadN,
  GenerationFailed,
  Parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateSegment: return "DegenerateSegment";
    case ErrorKind::VertexHit: return "VertexHit";
    case ErrorKind::OriginOutside: return "OriginOutside";
    case ErrorKind::SourceNotInterior: return "SourceNotInterior";
    case ErrorKind::SourceOutside: return "SourceOutside";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::NotAChord: return "NotAChord";
    case ErrorKind::PropertyViolation: return "PropertyViolation";
    case ErrorKind::WindowSaturated: return "WindowSaturated";
    case ErrorKind::NoCoveredNeighborhood: return "NoCoveredNeighborhood";
    case ErrorKind::InvariantBreach: return "InvariantBreach";
    case ErrorKind::IterationCap: return "IterationCap";
    case ErrorKind::OnWindowChord: return "OnWindowChord";
    case ErrorKind::TargetOutside: return "TargetOutside";
    case ErrorKind::AimExhausted: return "AimExhausted";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::BadN: return "BadN";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library. `index()` carries the vertex index for
/// VertexHit, the step for OnWindowChord, and -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, long index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  long index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  long index_;
};

}  // namespace diffuse
