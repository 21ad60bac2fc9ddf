#include "tl/limits.hpp"

#include <cstdlib>
#include <string>

#include "tl/error.hpp"

namespace tl {
namespace {

void read_env(const char* name, std::size_t& target) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    target = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InvalidArgument(std::string(name) + " must be a non-negative integer, got '" + raw + "'");
  }
}

}  // namespace

Limits Limits::from_env() {
  Limits l;
  read_env("TL_MAX_PROPS", l.max_props);
  read_env("TL_TYPE_CAP", l.type_cap);
  read_env("TL_MAX_WORLDS", l.max_worlds);
  return l;
}

}  // namespace tl
