#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liqsim {

enum class Errc {
  // vault accounting
  NotSafe,
  Dust,
  InsufficientGem,
  InsufficientBalance,
  UnknownVault,
  NotOwner,
  // auctions
  NotUnsafe,
  SameTimestep,
  NotStale,
  NeedsRedo,
  InsufficientDai,
  TooExpensive,
  Closed,
  // inputs and configuration
  ParseError,
  ValidationError,
  ConfigError,
  DuplicateStat,
  DegenerateBaseline,
  IoError,
};

std::string_view to_string(Errc code);

/// Every failure raised by the simulator. Protocol-level codes are the
/// equivalent of a contract revert: the engine catches them and tallies the
/// action as failed.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  explicit Error(Errc code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace liqsim
