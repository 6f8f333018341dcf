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


#include "oracles.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <tuple>

namespace targetner::testing {

std::optional<LongestMatch> naive_longest(
    const std::vector<TitleVariant>& variants,
    const std::vector<std::string>& tokens, size_t start) {
  std::vector<std::string> keys;
  for (size_t i = start; i < tokens.size(); ++i) {
    keys.push_back(match_key(tokens[i]));
  }
  std::optional<LongestMatch> best;
  for (const TitleVariant& v : variants) {
    const size_t n = v.tokens.size();
    if (n == 0 || n > keys.size()) continue;
    bool equal = true;
    for (size_t i = 0; i < n && equal; ++i) equal = keys[i] == v.tokens[i];
    if (!equal) continue;
    const LongestMatch m{n, v.entry_id, v.match_type};
    if (!best || m.length > best->length ||
        (m.length == best->length &&
         std::tie(m.match_type, m.entry_id) <
             std::tie(best->match_type, best->entry_id))) {
      best = m;
    }
  }
  return best;
}

std::vector<std::pair<std::string, double>> brute_top_k(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows,
    const std::string& word, size_t k) {
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  const std::vector<double>* q = nullptr;
  for (const auto& [w, v] : rows) {
    if (w == word) q = &v;
  }
  std::vector<std::pair<std::string, double>> all;
  if (q == nullptr) return all;
  const double qn = norm(*q);
  for (const auto& [w, v] : rows) {
    if (w == word) continue;
    double d = 0.0;
    for (size_t i = 0; i < v.size(); ++i) d += (*q)[i] * v[i];
    const double vn = norm(v);
    double sim = 0.0;
    if (qn > 0.0 && vn > 0.0) sim = std::clamp(d / (qn * vn), -1.0, 1.0);
    all.emplace_back(w, sim);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

std::optional<DualSolution> brute_force_dual(
    const std::vector<std::vector<double>>& x, const std::vector<int>& y,
    double c) {
  const int n = static_cast<int>(x.size());
  const int d = n ? static_cast<int>(x[0].size()) : 0;
  Eigen::MatrixXd g(d, n);  // columns y_i x_i
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) g(j, i) = y[i] * x[i][j];
  }
  const Eigen::MatrixXd q = g.transpose() * g;
  const double tol = 1e-9 * std::max(1.0, q.cwiseAbs().maxCoeff());

  int patterns = 1;
  for (int i = 0; i < n; ++i) patterns *= 3;
  std::optional<DualSolution> best;
  for (int p = 0; p < patterns; ++p) {
    // 0: at zero, 1: at C, 2: free.
    std::vector<int> state(n);
    for (int i = 0, r = p; i < n; ++i, r /= 3) state[i] = r % 3;
    std::vector<int> free_set;
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (state[i] == 1) alpha(i) = c;
      if (state[i] == 2) free_set.push_back(i);
    }
    if (!free_set.empty()) {
      const int m = static_cast<int>(free_set.size());
      Eigen::MatrixXd qff(m, m);
      Eigen::VectorXd rhs(m);
      for (int a = 0; a < m; ++a) {
        rhs(a) = 1.0;
        for (int b = 0; b < m; ++b) qff(a, b) = q(free_set[a], free_set[b]);
        for (int j = 0; j < n; ++j) {
          if (state[j] == 1) rhs(a) -= q(free_set[a], j) * c;
        }
      }
      const Eigen::VectorXd sol = qff.completeOrthogonalDecomposition().solve(rhs);
      if ((qff * sol - rhs).norm() > 1e-7) continue;
      for (int a = 0; a < m; ++a) alpha(free_set[a]) = sol(a);
    }
    // Optimality of the concave dual: the gradient 1 - (Q alpha)_i is <= 0
    // at zero, >= 0 at C and 0 when free.
    const Eigen::VectorXd grad = Eigen::VectorXd::Ones(n) - q * alpha;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (alpha(i) < -1e-9 || alpha(i) > c + 1e-9) ok = false;
      else if (state[i] == 0) ok = grad(i) <= tol;
      else if (state[i] == 1) ok = grad(i) >= -tol;
      else ok = std::abs(grad(i)) <= 1e-7;
    }
    if (!ok) continue;
    const double obj = alpha.sum() - 0.5 * alpha.dot(q * alpha);
    if (best && obj <= best->objective) continue;
    DualSolution s;
    s.alpha.assign(alpha.data(), alpha.data() + n);
    const Eigen::VectorXd w = g * alpha;
    s.w.assign(w.data(), w.data() + d);
    s.objective = obj;
    best = std::move(s);
  }
  return best;
}

}  // namespace targetner::testing
