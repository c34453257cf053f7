#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tenstruct {

// Base of all toolkit errors. `code()` is the stable machine-readable name;
// `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), m_code(std::move(code)) {}

  const std::string& code() const noexcept { return m_code; }

 private:
  std::string m_code;
};

#define TENSTRUCT_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  };

TENSTRUCT_DEFINE_ERROR(IndexOutOfRange)
TENSTRUCT_DEFINE_ERROR(DuplicateCoordinate)
TENSTRUCT_DEFINE_ERROR(NonFiniteEntry)
TENSTRUCT_DEFINE_ERROR(SizeMismatch)
TENSTRUCT_DEFINE_ERROR(DimensionMismatch)
TENSTRUCT_DEFINE_ERROR(EvenRootOfNegative)
TENSTRUCT_DEFINE_ERROR(EmptyIndexSet)
TENSTRUCT_DEFINE_ERROR(OddOrderUnsupported)
TENSTRUCT_DEFINE_ERROR(ResourceLimit)
TENSTRUCT_DEFINE_ERROR(InternalDisagreement)
TENSTRUCT_DEFINE_ERROR(NoPositiveProduct)
TENSTRUCT_DEFINE_ERROR(FileNotFound)
TENSTRUCT_DEFINE_ERROR(ParseError)

#undef TENSTRUCT_DEFINE_ERROR

}  // namespace tenstruct
