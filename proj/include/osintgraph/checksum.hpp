// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <string>
#include <string_view>

namespace osintgraph {

/// SHA-256 of the given bytes as 64 lowercase hex characters.
std::string sha256_hex(std::string_view bytes);

/// True for exactly 64 lowercase hex characters.
bool is_checksum(std::string_view s);

}  // namespace osintgraph
