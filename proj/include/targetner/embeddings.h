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

#ifndef TARGETNER_EMBEDDINGS_H_
#define TARGETNER_EMBEDDINGS_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace targetner {

using Vector = std::vector<double>;

// cos(u, v); 0 when either norm is 0. Throws ContractViolation on a
// dimension mismatch.
double cosine(const Vector& u, const Vector& v);

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(size_t dimension) : dimension_(dimension) {}

  // Replaces an existing row. Throws ContractViolation on a wrong length.
  void set(const std::string& word, Vector v);

  const Vector* find(std::string_view word) const;
  // Exact key first, then the lowercased key.
  const Vector* lookup(std::string_view word) const;

  size_t dimension() const { return dimension_; }
  size_t size() const { return rows_.size(); }
  const std::vector<std::string>& words() const { return words_; }

 private:
  size_t dimension_ = 0;
  std::vector<std::string> words_;  // insertion order
  std::vector<Vector> rows_;
  std::vector<double> norms_;
  std::unordered_map<std::string, size_t> index_;

  friend std::vector<std::pair<std::string, double>> top_k(
      const EmbeddingTable&, std::string_view, size_t);
};

// word2vec text format. `warnings` collects duplicate-word notices.
EmbeddingTable read_embeddings(std::istream& in, const std::string& source,
                               std::vector<std::string>* warnings = nullptr);
EmbeddingTable load_embeddings(const std::string& path,
                               std::vector<std::string>* warnings = nullptr);
void write_embeddings(const EmbeddingTable& table, std::ostream& out);

// Full scan. Highest cosine first, ties by word; the query itself is skipped.
// A query missing from the table (after the lowercase fallback) gives [].
std::vector<std::pair<std::string, double>> top_k(const EmbeddingTable& table,
                                                  std::string_view word,
                                                  size_t k);

}  // namespace targetner

#endif  // TARGETNER_EMBEDDINGS_H_
