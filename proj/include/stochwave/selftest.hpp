// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace stochwave {

/*!
 * Runs reduced-size versions of every module's invariant checks, printing
 * one PASS/FAIL line each. Returns the number of failed checks.
 */
int run_selftest(std::ostream& os);

}  // namespace stochwave
