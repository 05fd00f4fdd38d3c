// Copyright 2026 The perilap Authors
// SPDX-License-Identifier: Apache-2.0

#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace perilap::detail {
namespace {

using nlohmann::ordered_json;

void newline(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void write(std::string& out, const ordered_json& j, int indent, int depth) {
  switch (j.type()) {
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays stay on one line.
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const ordered_json& e) {
                          return e.is_primitive();
                        });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent, depth + 1);
        write(out, e, indent, depth + 1);
      }
      if (!flat) newline(out, indent, depth);
      out += ']';
      return;
    }
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, depth + 1);
        out += ordered_json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, value, indent, depth + 1);
      }
      newline(out, indent, depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump17(const ordered_json& doc, int indent) {
  std::string out;
  write(out, doc, indent, 0);
  out += '\n';
  return out;
}

}  // namespace perilap::detail
