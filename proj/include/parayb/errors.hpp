#pragma once

#include <stdexcept>
#include <string>

namespace parayb {

// Every library failure that is not a verdict derives from Error; kind()
// gives a stable tag the command line tool prints.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PARAYB_ERROR(Name)                                      \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

PARAYB_ERROR(InputError)
PARAYB_ERROR(DimensionMismatch)
PARAYB_ERROR(NotInvertible)
PARAYB_ERROR(NotAShelf)
PARAYB_ERROR(NotARack)
PARAYB_ERROR(NotASkewBrace)
PARAYB_ERROR(NotAdmissible)
PARAYB_ERROR(NotASolution)
PARAYB_ERROR(NotLeftNonDegenerate)
PARAYB_ERROR(SigmaNotBijective)
PARAYB_ERROR(SigmaInvalid)
PARAYB_ERROR(PreconditionFailed)
PARAYB_ERROR(HypothesisFailed)
PARAYB_ERROR(MissingConstraintOp)
PARAYB_ERROR(BudgetExceeded)

#undef PARAYB_ERROR

}  // namespace parayb
