#pragma once

#include <stdexcept>
#include <string>

namespace twistkit {

// Base class for all library errors. `code()` is a stable machine-readable
// identifier used by the CLI when serializing failures.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct NotDivisible : Error {
  long degree;  // offending degree (or -1 when not coefficientwise)
  explicit NotDivisible(const std::string& what, long deg = -1)
      : Error("NotDivisible", what), degree(deg) {}
};

struct NonMonicModulus : Error {
  explicit NonMonicModulus(const std::string& what)
      : Error("NonMonicModulus", what) {}
};

struct NoSolution : Error {
  explicit NoSolution(const std::string& what) : Error("NoSolution", what) {}
};

struct NotInGhostImage : Error {
  long index;
  explicit NotInGhostImage(const std::string& what, long idx = -1)
      : Error("NotInGhostImage", what), index(idx) {}
};

struct NotInImage : Error {
  long level;
  explicit NotInImage(const std::string& what, long lvl = -1)
      : Error("NotInImage", what), level(lvl) {}
};

struct UnsupportedVartheta : Error {
  long d;
  explicit UnsupportedVartheta(long dd)
      : Error("UnsupportedVartheta",
              "no integral construction for index " + std::to_string(dd)),
        d(dd) {}
};

struct LevelMismatch : Error {
  explicit LevelMismatch(const std::string& what)
      : Error("LevelMismatch", what) {}
};

struct Precondition : Error {
  explicit Precondition(const std::string& what)
      : Error("Precondition", what) {}
};

}  // namespace twistkit
