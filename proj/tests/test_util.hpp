#pragma once

#include <stdexcept>
#include <utility>

#include "lucaskit/error.hpp"

namespace test_util {

// Runs fn, which must throw lucaskit::Error, and returns its code.
template <class Fn>
lucaskit::ErrorCode code_of(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const lucaskit::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected a lucaskit::Error, none was thrown");
}

} // namespace test_util
