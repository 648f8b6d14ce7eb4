#pragma once

#include <stdexcept>
#include <string>

namespace auvplan {

// Raised for out-of-range configuration or call arguments (nonpositive speed,
// impossible edge counts, n < K for a spline, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// A route references an edge the graph does not contain.
class InvalidRoute : public std::invalid_argument {
 public:
  explicit InvalidRoute(const std::string& what) : std::invalid_argument(what) {}
};

// Obstacles could not be placed inside the requested operation window.
class SpawnFailure : public std::runtime_error {
 public:
  explicit SpawnFailure(const std::string& what) : std::runtime_error(what) {}
};

// Malformed graph or config documents.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A Monte Carlo run threw; carries the seed that failed.
class CampaignError : public std::runtime_error {
 public:
  CampaignError(unsigned long long seed, const std::string& what)
      : std::runtime_error("run with seed " + std::to_string(seed) + " failed: " + what), seed_(seed) {}
  unsigned long long seed() const { return seed_; }

 private:
  unsigned long long seed_;
};

}  // namespace auvplan
