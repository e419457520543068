#pragma once

#include <stdexcept>
#include <string>

namespace tsetlin {

// Input dimensions do not match what the model/encoder was built for.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric precondition was violated (|v| > T, p outside [0,1], ...).
struct ContractError : std::invalid_argument {
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// A feature has max == min in the fitting data and cannot be binned.
struct DegenerateFeatureError : std::invalid_argument {
  explicit DegenerateFeatureError(const std::string& what) : std::invalid_argument(what) {}
};

// Model archive is unreadable, truncated, or has an unsupported version.
struct ArchiveError : std::runtime_error {
  explicit ArchiveError(const std::string& what) : std::runtime_error(what) {}
};

// A configuration would exceed the configured memory cap.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsetlin
