#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logician {

struct Utf8Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decodes UTF-8 into a sequence of Unicode scalar values. Strict: malformed
// sequences, surrogates, and overlong encodings throw Utf8Error.
inline std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const unsigned char c0 = static_cast<unsigned char>(s[i]);
    uint32_t cp = 0;
    size_t len = 0;
    if (c0 < 0x80) {
      cp = c0;
      len = 1;
    } else if ((c0 & 0xE0) == 0xC0) {
      cp = c0 & 0x1F;
      len = 2;
    } else if ((c0 & 0xF0) == 0xE0) {
      cp = c0 & 0x0F;
      len = 3;
    } else if ((c0 & 0xF8) == 0xF0) {
      cp = c0 & 0x07;
      len = 4;
    } else {
      throw Utf8Error("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + len > s.size()) throw Utf8Error("truncated UTF-8 sequence at offset " + std::to_string(i));
    for (size_t k = 1; k < len; ++k) {
      const unsigned char c = static_cast<unsigned char>(s[i + k]);
      if ((c & 0xC0) != 0x80) throw Utf8Error("invalid UTF-8 continuation at offset " + std::to_string(i + k));
      cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw Utf8Error("invalid Unicode scalar at offset " + std::to_string(i));
    out.push_back(static_cast<char32_t>(cp));
    i += len;
  }
  return out;
}

}  // namespace logician
