#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ngd {

/// Every failure the library reports is one of these.
enum class Errc {
  NotComposable,
  FiberMismatch,
  Unsupported,
  NotAMorphism,
  RightInvarianceViolated,
  NotFree,
  NotInDomain,
  NotComposableInduced,
  ZeroIndex,
  InvalidModelSpec,
  AxiomViolation,
  InvalidSampler,
  DomainExhausted,
  NotConverging,
  NotGw,
  UnknownSuite,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc c) noexcept {
  switch (c) {
    case Errc::NotComposable: return "NotComposable";
    case Errc::FiberMismatch: return "FiberMismatch";
    case Errc::Unsupported: return "Unsupported";
    case Errc::NotAMorphism: return "NotAMorphism";
    case Errc::RightInvarianceViolated: return "RightInvarianceViolated";
    case Errc::NotFree: return "NotFree";
    case Errc::NotInDomain: return "NotInDomain";
    case Errc::NotComposableInduced: return "NotComposableInduced";
    case Errc::ZeroIndex: return "ZeroIndex";
    case Errc::InvalidModelSpec: return "InvalidModelSpec";
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::InvalidSampler: return "InvalidSampler";
    case Errc::DomainExhausted: return "DomainExhausted";
    case Errc::NotConverging: return "NotConverging";
    case Errc::NotGw: return "NotGw";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ngd
