#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyrec {

// Minimal UTF-8 decoding, enough to find base characters of IPA segments.
// Invalid bytes decode to their own value so classification stays total.
inline std::vector<char32_t> utf8_decode(std::string_view s) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp = c;
    std::size_t len = 1;
    if (c >= 0xF0)
      len = 4, cp = c & 0x07u;
    else if (c >= 0xE0)
      len = 3, cp = c & 0x0Fu;
    else if (c >= 0xC0)
      len = 2, cp = c & 0x1Fu;
    if (len > 1) {
      if (i + len > s.size()) {
        out.push_back(c);
        ++i;
        continue;
      }
      bool ok = true;
      for (std::size_t j = 1; j < len; ++j) {
        unsigned char cc = static_cast<unsigned char>(s[i + j]);
        if ((cc & 0xC0u) != 0x80u) {
          ok = false;
          break;
        }
        cp = (cp << 6) | (cc & 0x3Fu);
      }
      if (!ok) {
        out.push_back(c);
        ++i;
        continue;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void utf8_encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace fuzzyrec
