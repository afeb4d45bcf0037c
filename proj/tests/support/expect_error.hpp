#pragma once

#include <gtest/gtest.h>

#include "heatobs/error.hpp"

template <class Fn>
void expect_error(heatobs::ErrorKind kind, Fn&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << heatobs::to_string(kind);
    } catch (const heatobs::Error& e) {
        EXPECT_EQ(heatobs::to_string(e.kind()), heatobs::to_string(kind)) << e.what();
    }
}
