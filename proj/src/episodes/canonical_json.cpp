#include "wmbench/episodes/canonical_json.hpp"

#include <fstream>
#include <sstream>

#include "wmbench/core/error.hpp"
#include "wmbench/episodes/real_format.hpp"

namespace wmbench {
namespace {

bool is_scalar_array(const Json& v) {
  for (const auto& e : v)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

void emit(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        emit(it.value(), indent + 2, out);
      }
      out += '\n';
      out.append(static_cast<std::size_t>(indent), ' ');
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (is_scalar_array(v)) {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          emit(v[i], indent, out);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(v[i], indent + 2, out);
      }
      out += '\n';
      out.append(static_cast<std::size_t>(indent), ' ');
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_real(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_canonical(const Json& value) {
  std::string out;
  emit(value, 0, out);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

const Json& require(const Json& object, const char* key) {
  if (!object.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  const auto it = object.find(key);
  if (it == object.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

double require_real(const Json& object, const char* key) {
  const Json& v = require(object, key);
  if (!v.is_number()) throw FormatError(std::string("field '") + key + "' is not a number");
  return v.get<double>();
}

}  // namespace wmbench
