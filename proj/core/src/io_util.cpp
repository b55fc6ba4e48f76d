#include "solitonlab/io_util.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace solitonlab {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("rename failed for " + path.string() + ": " +
                             ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw std::runtime_error("read failed: " + path.string());
  }
  return content;
}

void JsonWriter::begin_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (stack_.back().any) {
      raw(",");
    }
    stack_.back().any = true;
    raw("\n");
    indent();
  }
}

void JsonWriter::indent() {
  out_.append(2 * stack_.size(), ' ');
}

JsonWriter& JsonWriter::begin_object() {
  begin_value();
  raw("{");
  stack_.push_back(Level{false, false});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  assert(!stack_.empty() && !stack_.back().array);
  const bool any = stack_.back().any;
  stack_.pop_back();
  if (any) {
    raw("\n");
    indent();
  }
  raw("}");
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  begin_value();
  raw("[");
  stack_.push_back(Level{true, false});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  assert(!stack_.empty() && stack_.back().array);
  const bool any = stack_.back().any;
  stack_.pop_back();
  if (any) {
    raw("\n");
    indent();
  }
  raw("]");
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  assert(!stack_.empty() && !stack_.back().array && !after_key_);
  if (stack_.back().any) {
    raw(",");
  }
  stack_.back().any = true;
  raw("\n");
  indent();
  raw("\"");
  raw(json_escape(name));
  raw("\": ");
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  if (!std::isfinite(x)) {
    return null_value();
  }
  begin_value();
  raw(format_g17(x));
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  begin_value();
  raw(std::to_string(x));
  return *this;
}

JsonWriter& JsonWriter::value(long long x) {
  begin_value();
  raw(std::to_string(x));
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t x) {
  begin_value();
  raw(std::to_string(x));
  return *this;
}

JsonWriter& JsonWriter::value(bool x) {
  begin_value();
  raw(x ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view x) {
  begin_value();
  raw("\"");
  raw(json_escape(x));
  raw("\"");
  return *this;
}

JsonWriter& JsonWriter::null_value() {
  begin_value();
  raw("null");
  return *this;
}

std::string JsonWriter::str() const {
  assert(stack_.empty() && !after_key_);
  return out_ + "\n";
}

}  // namespace solitonlab
