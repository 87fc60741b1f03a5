#include "adi/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "adi/error.hpp"

namespace adi::io {

namespace {
constexpr char kMagic[4] = {'A', 'D', 'I', 'M'};
}

void BinaryWriter::u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }

void BinaryWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void BinaryWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void BinaryWriter::i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }

void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  u64(s.size());
  buf_.append(s);
}

void BinaryWriter::f64_array(const std::vector<double>& v) {
  u64(v.size());
  for (double x : v) f64(x);
}

void BinaryReader::need(std::size_t n) const {
  if (n > buf_.size() - pos_) {
    throw Error(ErrorCode::CorruptFile, "unexpected end of data at offset " + std::to_string(pos_),
                static_cast<std::int64_t>(pos_));
  }
}

std::uint8_t BinaryReader::u8() {
  need(1);
  return static_cast<std::uint8_t>(buf_[pos_++]);
}

std::uint32_t BinaryReader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
  return v;
}

std::uint64_t BinaryReader::u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * i);
  return v;
}

std::int64_t BinaryReader::i64() { return static_cast<std::int64_t>(u64()); }

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

bool BinaryReader::boolean() {
  const std::size_t at = pos_;
  const std::uint8_t v = u8();
  if (v > 1) throw Error(ErrorCode::CorruptFile, "invalid boolean byte", static_cast<std::int64_t>(at));
  return v == 1;
}

std::uint64_t BinaryReader::count(std::size_t min_element_bytes) {
  const std::size_t at = pos_;
  const std::uint64_t n = u64();
  const std::size_t remaining = buf_.size() - pos_;
  if (min_element_bytes > 0 && n > remaining / min_element_bytes) {
    throw Error(ErrorCode::CorruptFile, "element count exceeds remaining data", static_cast<std::int64_t>(at));
  }
  return n;
}

std::string BinaryReader::str() {
  const std::uint64_t n = count(1);
  std::string s = buf_.substr(pos_, n);
  pos_ += n;
  return s;
}

std::vector<double> BinaryReader::f64_array() {
  const std::uint64_t n = count(8);
  std::vector<double> v(n);
  for (auto& x : v) x = f64();
  return v;
}

void BinaryReader::expect_end() const {
  if (!at_end()) {
    throw Error(ErrorCode::CorruptFile, "trailing bytes after payload", static_cast<std::int64_t>(pos_));
  }
}

void write_header(BinaryWriter& w, PayloadKind kind) {
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u8(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(kind));
}

void read_header(BinaryReader& r, PayloadKind kind) {
  for (char c : kMagic) {
    const std::size_t at = r.offset();
    if (r.u8() != static_cast<std::uint8_t>(c)) {
      throw Error(ErrorCode::CorruptFile, "bad magic", static_cast<std::int64_t>(at));
    }
  }
  const std::uint8_t version = r.u8();
  if (version != kFormatVersion) {
    throw Error(ErrorCode::VersionMismatch, "file format version " + std::to_string(version) +
                                                ", expected " + std::to_string(kFormatVersion));
  }
  const std::size_t at = r.offset();
  if (r.u8() != static_cast<std::uint8_t>(kind)) {
    throw Error(ErrorCode::CorruptFile, "unexpected payload kind", static_cast<std::int64_t>(at));
  }
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open: " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace adi::io
