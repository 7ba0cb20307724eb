#include "liqsim/errors.hpp"

namespace liqsim {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotSafe: return "NotSafe";
    case Errc::Dust: return "Dust";
    case Errc::InsufficientGem: return "InsufficientGem";
    case Errc::InsufficientBalance: return "InsufficientBalance";
    case Errc::UnknownVault: return "UnknownVault";
    case Errc::NotOwner: return "NotOwner";
    case Errc::NotUnsafe: return "NotUnsafe";
    case Errc::SameTimestep: return "SameTimestep";
    case Errc::NotStale: return "NotStale";
    case Errc::NeedsRedo: return "NeedsRedo";
    case Errc::InsufficientDai: return "InsufficientDai";
    case Errc::TooExpensive: return "TooExpensive";
    case Errc::Closed: return "Closed";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::DuplicateStat: return "DuplicateStat";
    case Errc::DegenerateBaseline: return "DegenerateBaseline";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace liqsim
