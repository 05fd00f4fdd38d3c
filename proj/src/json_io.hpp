// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON text with every floating-point value written to 17 significant digits.

#pragma once

#include <string>

#include <json.hpp>

namespace perilap::detail {

std::string dump17(const nlohmann::ordered_json& doc, int indent = 2);

}  // namespace perilap::detail
