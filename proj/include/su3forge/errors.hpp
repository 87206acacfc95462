#pragma once

#include <stdexcept>
#include <string>

namespace su3forge {

struct NotHermitian : std::runtime_error {
  explicit NotHermitian(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnitary : std::runtime_error {
  explicit NotUnitary(const std::string& what) : std::runtime_error(what) {}
};

struct IndexOutOfRange : std::out_of_range {
  explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct DegenerateSpectrum : std::runtime_error {
  explicit DegenerateSpectrum(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolutionFound : std::runtime_error {
  explicit NoSolutionFound(const std::string& what) : std::runtime_error(what) {}
};

struct NoRelationFound : std::runtime_error {
  explicit NoRelationFound(const std::string& what) : std::runtime_error(what) {}
};

struct BranchSelectionFailed : std::runtime_error {
  explicit BranchSelectionFailed(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownSplit : std::invalid_argument {
  explicit UnknownSplit(const std::string& what) : std::invalid_argument(what) {}
};

struct WrongSplit : std::invalid_argument {
  explicit WrongSplit(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace su3forge
