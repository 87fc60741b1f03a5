#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

// Binary model persistence. All integers are little-endian, reals are
// IEEE-754 binary64 written bit-exact, strings are u64 length + UTF-8 bytes.
// Every file starts with a 4-byte magic, a format version byte and a
// payload-kind byte.
namespace adi::io {

inline constexpr std::uint8_t kFormatVersion = 1;

enum class PayloadKind : std::uint8_t {
  Tfidf = 1,
  Union = 2,
  Embedding = 3,
  Supervised = 4,
  Svc = 5,
  Pipeline = 6,
};

class BinaryWriter {
 public:
  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v);
  void f64(double v);
  void boolean(bool v) { u8(v ? 1 : 0); }
  void str(std::string_view s);
  void f64_array(const std::vector<double>& v);

  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

// Every read past the end throws Error(CorruptFile, offset).
class BinaryReader {
 public:
  explicit BinaryReader(std::string bytes) : buf_(std::move(bytes)) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64();
  double f64();
  bool boolean();
  std::string str();
  std::vector<double> f64_array();
  // Reads a count that must be satisfiable by the remaining bytes given a
  // minimum per-element size; guards allocations on corrupt input.
  std::uint64_t count(std::size_t min_element_bytes);

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return buf_.size() - pos_; }
  bool at_end() const { return pos_ == buf_.size(); }
  void expect_end() const;

 private:
  void need(std::size_t n) const;
  std::string buf_;
  std::size_t pos_ = 0;
};

void write_header(BinaryWriter& w, PayloadKind kind);
// Validates magic, version and kind; throws VersionMismatch / CorruptFile.
void read_header(BinaryReader& r, PayloadKind kind);

void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace adi::io
