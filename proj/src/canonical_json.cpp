#include "uavnet/canonical_json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uavnet/error.hpp"

namespace uavnet {
namespace {

void append_string(std::string& out, const std::string& value) {
  out += nlohmann::json(value).dump();
}

void dump_value(std::string& out, const nlohmann::json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        append_string(out, it.key());
        out += ": ";
        dump_value(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      const bool scalar_only = std::all_of(value.begin(), value.end(), [](const nlohmann::json& v) {
        return v.is_primitive();
      });
      if (scalar_only) {
        out += "[";
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (i) out += ", ";
          dump_value(out, value[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_value(out, value[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_fixed(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string format_fixed(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::internal, "non-finite value in canonical output");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string text(buf);
  if (text == "-0.000000") text = "0.000000";
  return text;
}

std::string canonical_dump(const nlohmann::json& value) {
  std::string out;
  dump_value(out, value, 0);
  out += "\n";
  return out;
}

nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse, what + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw Error(ErrorCode::io, "write to '" + path + "' failed");
  }
}

}  // namespace uavnet
