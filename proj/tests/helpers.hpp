#pragma once

#include "hyperbent/errors.hpp"

namespace hyperbent::testing {

template <typename Fn>
bool throws_code(Fn&& fn, errc code) {
  try {
    fn();
  } catch (const error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

}  // namespace hyperbent::testing
