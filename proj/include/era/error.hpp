#pragma once

#include <stdexcept>
#include <string>

namespace era {

enum class Errc {
  parameter,            // caller violated a precondition
  range,                // argument outside the configured bounds
  result_out_of_bound,  // result exists but lies beyond count_bound
  resource,             // allocation refused or failed
  overflow,             // 64-bit arithmetic would wrap
  io,                   // filesystem failure
  format,               // malformed external data
};

constexpr const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parameter: return "parameter";
    case Errc::range: return "range";
    case Errc::result_out_of_bound: return "result-out-of-bound";
    case Errc::resource: return "resource";
    case Errc::overflow: return "overflow";
    case Errc::io: return "io";
    case Errc::format: return "format";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + " error: " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace era
