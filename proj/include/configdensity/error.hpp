#pragma once

#include <stdexcept>
#include <string>

namespace configdensity {

/// Exception carrying a stable machine-readable code, e.g. "support_clipped".
///
/// what() is "<code>: <detail>"; callers that need to branch on the failure
/// kind should compare code() rather than parse the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail);

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace configdensity
