// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace allometry {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace allometry
