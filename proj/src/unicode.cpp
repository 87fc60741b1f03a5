#include "adi/unicode.hpp"

#include "adi/error.hpp"

namespace adi {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::UnlabeledDocument: return "UnlabeledDocument";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::SingleSign: return "SingleSign";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MissingStoplist: return "MissingStoplist";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::EmptyResults: return "EmptyResults";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::int64_t> position)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      detail_(message),
      position_(position) {}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownKey:
    case ErrorCode::InvalidValue:
    case ErrorCode::SchemaViolation:
    case ErrorCode::EmptyGrid:
    case ErrorCode::InvalidArgument:
      return 1;
    default:
      return 2;
  }
}

}  // namespace adi

namespace adi::unicode {

namespace {

// Decodes one scalar starting at `i`; returns false on malformed input.
bool decode_one(std::string_view s, std::size_t& i, char32_t& out) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    out = b0;
    ++i;
    return true;
  }
  int len;
  char32_t cp;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2; cp = b0 & 0x1F; min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3; cp = b0 & 0x0F; min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4; cp = b0 & 0x07; min = 0x10000;
  } else {
    return false;
  }
  if (i + len > s.size()) return false;
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return false;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
  out = cp;
  i += len;
  return true;
}

}  // namespace

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  char32_t c;
  while (i < bytes.size()) {
    if (!decode_one(bytes, i, c)) return false;
  }
  return true;
}

std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  char32_t c;
  while (i < utf8.size()) {
    if (!decode_one(utf8, i, c)) {
      throw Error(ErrorCode::InvalidEncoding, "malformed UTF-8 at byte " + std::to_string(i));
    }
    out.push_back(c);
  }
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string encode(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size() * 2);
  for (char32_t c : scalars) append_utf8(out, c);
  return out;
}

std::size_t scalar_count(std::string_view utf8) {
  std::size_t n = 0;
  for (char ch : utf8) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

// Unicode White_Space property.
bool is_whitespace(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

bool is_arabic(char32_t c) {
  return (c >= 0x0600 && c <= 0x06FF) || (c >= 0x0750 && c <= 0x077F);
}

bool is_emoji(char32_t c) {
  return (c >= 0x1F300 && c <= 0x1FAFF) || (c >= 0x2600 && c <= 0x27BF) || c == 0xFE0F ||
         c == 0x200D;
}

std::vector<std::u32string_view> split_whitespace(std::u32string_view text) {
  std::vector<std::u32string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_whitespace(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_whitespace(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> split_whitespace(std::string_view utf8) {
  const std::u32string scalars = decode(utf8);
  std::vector<std::string> out;
  for (auto tok : split_whitespace(std::u32string_view(scalars))) out.push_back(encode(tok));
  return out;
}

std::string join(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(sep);
    out.append(tokens[i]);
  }
  return out;
}

}  // namespace adi::unicode
