#ifndef CHRISTO_ERRORS_HPP
#define CHRISTO_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace christo {

enum class ErrorKind {
  InvalidArgument,   // dimension mismatch, empty input, degree overflow
  InvalidRegion,     // curve region with b < a somewhere
  SizeOverflow,
  NotPositiveDefinite,
  IllConditioned,
  NotInInterior,
  MaxIterations,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of the numerics (as opposed to bad input).
constexpr bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::NotPositiveDefinite ||
         kind == ErrorKind::IllConditioned ||
         kind == ErrorKind::NotInInterior || kind == ErrorKind::MaxIterations;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace christo

#endif  // CHRISTO_ERRORS_HPP
