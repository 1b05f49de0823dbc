#pragma once
#include <stdexcept>
#include <string>

namespace sp4rep {

struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct SingularQuaternion : Error {
  explicit SingularQuaternion(const std::string &m) : Error(m) {}
};
struct NotInGroup : Error {
  explicit NotInGroup(const std::string &m) : Error(m) {}
};
struct SingularDenominator : Error {
  explicit SingularDenominator(const std::string &m) : Error(m) {}
};
struct NotInDomain : Error {
  explicit NotInDomain(const std::string &m) : Error(m) {}
};
struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string &m) : Error(m) {}
};
struct TruncationNotConverged : Error {
  explicit TruncationNotConverged(const std::string &m) : Error(m) {}
};
struct InvalidLambda : Error {
  explicit InvalidLambda(const std::string &m) : Error(m) {}
};
struct OutOfRegime : Error {
  explicit OutOfRegime(const std::string &m) : Error(m) {}
};
struct DeterminantNotOne : Error {
  explicit DeterminantNotOne(const std::string &m) : Error(m) {}
};
struct InsufficientSamples : Error {
  explicit InsufficientSamples(const std::string &m) : Error(m) {}
};
struct SingularBlock : Error {
  explicit SingularBlock(const std::string &m) : Error(m) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string &m) : Error(m) {}
};

} // namespace sp4rep
