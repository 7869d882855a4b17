#pragma once

#include <string>
#include <vector>

#include "suncs/error.hpp"

namespace suncs::cli {

inline constexpr const char* kToolName = "suncs";
inline constexpr const char* kVersion = "0.1.0";

class UsageError : public Error {
 public:
  using Error::Error;
};

// "re:im,re:im,..." (a bare number is a real value).
std::vector<Complex> parse_complex_list(const std::string& text);

// Exit 0 when every check passes, 1 when a verification fails (the report is
// still written), 2 on usage or input errors.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

}  // namespace suncs::cli
