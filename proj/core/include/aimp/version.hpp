// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace aimp {

inline constexpr const char* kVersion = "0.1.0";

} // namespace aimp
