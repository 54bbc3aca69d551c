#ifndef KGB_TESTS_SUPPORT_HPP
#define KGB_TESTS_SUPPORT_HPP

#include <optional>

#include "kgb/error.hpp"

namespace kgb::testing {

// Code of the kgb::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace kgb::testing

#endif  // KGB_TESTS_SUPPORT_HPP
