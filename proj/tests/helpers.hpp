#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <utility>

#include "fctp/errors.hpp"

namespace testutil {

// Runs fn and returns the Errc it raised; fails the test if nothing was
// thrown.
template <typename Fn>
fctp::Errc raised(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const fctp::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an fctp::Error, none raised");
}

}  // namespace testutil
