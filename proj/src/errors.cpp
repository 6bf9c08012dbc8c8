#include "christo/errors.hpp"

namespace christo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidRegion: return "InvalidRegion";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotInInterior: return "NotInInterior";
    case ErrorKind::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

}  // namespace christo
