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

#include "targetner/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "targetner/errors.h"
#include "targetner/text.h"

namespace targetner {

namespace {

double dot(const Vector& u, const Vector& v) {
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(const Vector& v) { return std::sqrt(dot(v, v)); }

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_real(std::string_view s, double* out) {
  // from_chars for double is missing on older libstdc++; strtod on a copy.
  std::string buf(s);
  char* end = nullptr;
  *out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && !buf.empty();
}

}  // namespace

double cosine(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw ContractViolation("cosine: dimension mismatch (" +
                            std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()) + ")");
  }
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

void EmbeddingTable::set(const std::string& word, Vector v) {
  if (v.size() != dimension_ || dimension_ == 0) {
    throw ContractViolation("embedding row for '" + word + "' has " +
                            std::to_string(v.size()) + " values, table has " +
                            std::to_string(dimension_));
  }
  const double n = norm(v);
  auto it = index_.find(word);
  if (it != index_.end()) {
    rows_[it->second] = std::move(v);
    norms_[it->second] = n;
    return;
  }
  index_.emplace(word, words_.size());
  words_.push_back(word);
  rows_.push_back(std::move(v));
  norms_.push_back(n);
}

const Vector* EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

const Vector* EmbeddingTable::lookup(std::string_view word) const {
  if (const Vector* v = find(word)) return v;
  return find(to_lower(word));
}

EmbeddingTable read_embeddings(std::istream& in, const std::string& source,
                               std::vector<std::string>* warnings) {
  std::string line;
  size_t line_no = 0;
  while (line_no == 0 || trim(line).empty()) {
    if (!std::getline(in, line)) {
      if (line_no == 0) return EmbeddingTable();
      throw ParseError(source, line_no, "missing header");
    }
    ++line_no;
    if (!trim(line).empty()) break;
  }
  const std::vector<std::string_view> header = fields_of(line);
  size_t count = 0, dim = 0;
  if (header.size() != 2 ||
      std::from_chars(header[0].data(), header[0].data() + header[0].size(),
                      count)
              .ec != std::errc() ||
      std::from_chars(header[1].data(), header[1].data() + header[1].size(),
                      dim)
              .ec != std::errc()) {
    throw ParseError(source, line_no,
                     "header must be 'vocab_count dimension'");
  }
  if (dim == 0 && count > 0) {
    throw ParseError(source, line_no, "zero dimension with entries");
  }
  EmbeddingTable table(dim);
  size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> f = fields_of(line);
    if (f.size() != dim + 1) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(dim) + " values, got " +
                           std::to_string(f.size() - 1));
    }
    Vector v(dim);
    for (size_t i = 0; i < dim; ++i) {
      if (!parse_real(f[i + 1], &v[i])) {
        throw ParseError(source, line_no,
                         "bad number '" + std::string(f[i + 1]) + "'");
      }
    }
    const std::string word = sanitize_utf8(f[0]);
    if (table.find(word) != nullptr && warnings != nullptr) {
      warnings->push_back(source + ":" + std::to_string(line_no) +
                          ": duplicate word '" + word +
                          "', keeping the last row");
    }
    table.set(word, std::move(v));
    ++rows;
  }
  if (rows != count && warnings != nullptr) {
    warnings->push_back(source + ": header declares " + std::to_string(count) +
                        " rows, file has " + std::to_string(rows));
  }
  return table;
}

EmbeddingTable load_embeddings(const std::string& path,
                               std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open embeddings file '" + path + "'");
  return read_embeddings(in, path, warnings);
}

void write_embeddings(const EmbeddingTable& table, std::ostream& out) {
  out << table.size() << ' ' << table.dimension() << '\n';
  char buf[32];
  for (const std::string& w : table.words()) {
    out << w;
    for (double x : *table.find(w)) {
      std::snprintf(buf, sizeof buf, " %.9g", x);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<std::pair<std::string, double>> top_k(const EmbeddingTable& table,
                                                  std::string_view word,
                                                  size_t k) {
  std::vector<std::pair<std::string, double>> out;
  auto it = table.index_.find(std::string(word));
  if (it == table.index_.end()) it = table.index_.find(to_lower(word));
  if (it == table.index_.end() || k == 0) return out;
  const size_t q = it->second;
  const Vector& qv = table.rows_[q];
  const double qn = table.norms_[q];

  std::vector<std::pair<double, size_t>> scored;
  scored.reserve(table.rows_.size());
  for (size_t i = 0; i < table.rows_.size(); ++i) {
    if (i == q) continue;
    double sim = 0.0;
    if (qn > 0.0 && table.norms_[i] > 0.0) {
      sim = std::clamp(dot(qv, table.rows_[i]) / (qn * table.norms_[i]), -1.0,
                       1.0);
    }
    scored.emplace_back(sim, i);
  }
  auto better = [&](const std::pair<double, size_t>& a,
                    const std::pair<double, size_t>& b) {
    if (a.first != b.first) return a.first > b.first;
    return table.words_[a.second] < table.words_[b.second];
  };
  const size_t n = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + n, scored.end(), better);
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    out.emplace_back(table.words_[scored[i].second], scored[i].first);
  }
  return out;
}

}  // namespace targetner
