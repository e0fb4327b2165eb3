#pragma once

#include <doctest.h>

#include <functional>

#include "hopflat/error.hpp"

/// Runs f and checks that it throws a library error of the given kind.
inline void require_error(hopflat::ErrorKind kind, const std::function<void()>& f) {
    try {
        f();
        FAIL("expected an error of kind " << hopflat::to_string(kind));
    } catch (const hopflat::Error& e) {
        CHECK(e.kind() == kind);
    }
}
