// Copyright 2026 The Targetner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TARGETNER_TEXT_H_
#define TARGETNER_TEXT_H_

// UTF-8 helpers and the small amount of Unicode character classification the
// tokenizer needs. Offsets everywhere in the library are code-point offsets.

#include <string>
#include <string_view>
#include <vector>

namespace targetner {

// Drops every byte that is not part of a well-formed UTF-8 sequence.
// `dropped`, when given, receives the number of bytes removed.
std::string sanitize_utf8(std::string_view bytes, size_t* dropped = nullptr);

// Input must be valid UTF-8 (see sanitize_utf8).
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view text);
void append_utf8(char32_t c, std::string* out);

// Number of code points in a valid UTF-8 string.
size_t utf8_length(std::string_view utf8);

bool is_space(char32_t c);
// Unicode general category P*.
bool is_punctuation(char32_t c);
bool is_digit(char32_t c);
bool is_letter(char32_t c);
inline bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }
bool is_upper(char32_t c);
bool is_lower(char32_t c);
char32_t to_lower(char32_t c);
char32_t to_upper(char32_t c);

std::string to_lower(std::string_view utf8);

// True when every code point is punctuation (and the string is non-empty).
bool is_all_punctuation(std::string_view utf8);
bool is_all_digits(std::string_view utf8);

std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

// Percent-encoding used for titles inside corpus span lists.
std::string url_encode(std::string_view s);
std::string url_decode(std::string_view s);

}  // namespace targetner

#endif  // TARGETNER_TEXT_H_
