#include "trigsum/error.hpp"

#include <sstream>

namespace trigsum {

namespace {

std::string syntax_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::ostringstream os;
  os << "syntax error at offset " << offset << ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ", found " << found;
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : Error(syntax_message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

Unsupported::Unsupported(std::string reason, std::string subterm)
    : Error("unsupported series: " + reason + " in `" + subterm + "`"),
      reason_(std::move(reason)),
      subterm_(std::move(subterm)) {}

NonFinite::NonFinite(double at)
    : Error("integrand is not finite at u = " + std::to_string(at)), at_(at) {}

}  // namespace trigsum
