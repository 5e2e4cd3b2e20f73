#pragma once

#include <stdexcept>
#include <string>

namespace loopforms {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NotUnimodular : Error {
  explicit NotUnimodular(const std::string& what) : Error(what) {}
};

struct NotChainShape : Error {
  explicit NotChainShape(const std::string& what) : Error(what) {}
};

struct SearchExhausted : Error {
  explicit SearchExhausted(const std::string& what) : Error(what) {}
};

struct NoConventionFound : Error {
  NoConventionFound(const std::string& what, std::string transcript_text)
      : Error(what), transcript(std::move(transcript_text)) {}
  std::string transcript;
};

struct ExceptionCase : Error {
  explicit ExceptionCase(const std::string& what) : Error(what) {}
};

struct NoUnimodularCut : Error {
  explicit NoUnimodularCut(const std::string& what) : Error(what) {}
};

// Document syntax errors carry the offending line (1-based, 0 if unknown).
struct ParseError : Error {
  ParseError(int line_number, const std::string& what)
      : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + what : what),
        line(line_number) {}
  int line;
};

}  // namespace loopforms
