#include "tl/error.hpp"

namespace tl {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

ResourceError::ResourceError(const std::string& guard, std::size_t limit, std::size_t requested,
                             const std::string& hint)
    : Error("resource guard '" + guard + "' exceeded: limit " + std::to_string(limit) +
            ", requested " + std::to_string(requested) + (hint.empty() ? "" : " (" + hint + ")")),
      guard_(guard),
      limit_(limit),
      requested_(requested) {}

}  // namespace tl
