#pragma once

// Deterministic text output. Every number the project emits goes through
// format_g17 (shortest form with up to 17 significant digits, enough to
// round-trip a double bit-exactly), JSON keys appear in insertion order,
// and files are written atomically (temp file + rename) so consumers never
// observe a partial artifact. Byte-identical reruns are a contract, which is
// why JSON is emitted by this small writer instead of a general serializer:
// those reformat doubles and reorder keys on their own terms.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace solitonlab {

// snprintf "%.17g": up to 17 significant digits, round-trip exact.
std::string format_g17(double x);

// JSON string escaping (quotes, backslash, control characters).
std::string json_escape(std::string_view s);

// Write content to path via a sibling temp file and an atomic rename.
// Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Whole file as a string; throws std::runtime_error if unreadable.
std::string read_file(const std::filesystem::path& path);

// Streaming JSON emitter with 2-space pretty printing. Keys keep insertion
// order; numbers use format_g17; non-finite doubles become null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);

  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(long long x);
  JsonWriter& value(std::size_t x);
  JsonWriter& value(bool x);
  JsonWriter& value(std::string_view x);
  JsonWriter& value(const char* x) { return value(std::string_view(x)); }
  JsonWriter& null_value();

  // Convenience: key(...) followed by value(...).
  template <typename T>
  JsonWriter& kv(std::string_view name, const T& x) {
    key(name);
    return value(x);
  }

  // Finished document plus trailing newline. Asserts balanced nesting.
  std::string str() const;

 private:
  struct Level {
    bool array = false;
    bool any = false;
  };
  void begin_value();
  void indent();
  void raw(std::string_view s) { out_.append(s); }

  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

}  // namespace solitonlab
