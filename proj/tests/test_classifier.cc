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


#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "support.h"
#include "targetner/classifier.h"
#include "targetner/config.h"
#include "targetner/errors.h"

using namespace targetner;

namespace {

using Points = std::vector<std::vector<double>>;

// Dense points to named features "x0", "x1", ...
std::vector<std::pair<FeatureVector, bool>> instances_of(
    const Points& x, const std::vector<int>& y) {
  std::vector<std::pair<FeatureVector, bool>> out;
  for (size_t i = 0; i < x.size(); ++i) {
    FeatureVector fv;
    for (size_t j = 0; j < x[i].size(); ++j) {
      if (x[i][j] != 0.0) fv["x" + std::to_string(j)] = x[i][j];
    }
    out.emplace_back(fv, y[i] > 0);
  }
  return out;
}

std::vector<double> dense_weights(const Model& m, size_t dim) {
  std::vector<double> w(dim, 0.0);
  for (size_t j = 0; j < dim; ++j) {
    if (auto k = m.dict.find("x" + std::to_string(j))) w[j] = m.weights[*k];
  }
  return w;
}

double cos_of(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return d / std::sqrt(na * nb);
}

TrainParams tight() {
  TrainParams p;
  p.e = 1e-7;
  p.max_epochs = 200000;
  return p;
}

}  // namespace

TEST_CASE("vectorize shares indices and keeps first-seen order") {
  const Dataset d = vectorize({{{{"b", 1.0}, {"a", 2.0}}, true},
                               {{{"a", 1.0}, {"c", 0.5}}, false}});
  REQUIRE(d.dict.size() == 3);
  CHECK(d.dict.names() == std::vector<std::string>{"a", "b", "c"});
  CHECK(d.labels == std::vector<int>{1, -1});
  CHECK(d.rows[1] == SparseRow{{0, 1.0}, {2, 0.5}});
  CHECK(vectorize({}).dict.size() == 0);
  CHECK(vectorize_row(d.dict, {{"c", 3.0}, {"zzz", 1.0}}) ==
        SparseRow{{2, 3.0}});
}

TEST_CASE("feature dictionary is a bijection") {
  std::mt19937 rng(29);
  std::vector<std::pair<FeatureVector, bool>> inst;
  for (int i = 0; i < 100; ++i) {
    FeatureVector fv;
    for (int j = 0; j < 5; ++j) fv["f" + std::to_string(rng() % 300)] = 1.0;
    inst.emplace_back(fv, i % 2 == 0);
  }
  const Dataset d = vectorize(inst);
  for (uint32_t i = 0; i < d.dict.size(); ++i) {
    CHECK(d.dict.find(d.dict.name(i)) == i);
  }
  for (size_t r = 0; r < inst.size(); ++r) {
    FeatureVector back;
    for (const auto& [j, v] : d.rows[r]) back[d.dict.name(j)] = v;
    CHECK(back == inst[r].first);
  }
}

TEST_CASE("two opposite points put both multipliers at C") {
  TrainDiagnostics diag;
  const Model m = train(vectorize(instances_of({{1.0}, {-1.0}}, {1, -1})),
                        TrainParams{}, &diag);
  REQUIRE(m.weights.size() == 1);
  CHECK(m.weights[0] == doctest::Approx(0.2));
  CHECK(diag.alpha == std::vector<double>{0.1, 0.1});
  CHECK(predict_score(m, {{"x0", 1.0}}).label == 1);
  CHECK(predict_score(m, {{"x0", -1.0}}).label == -1);
}

TEST_CASE("a separable set is fit exactly") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Points x;
  std::vector<int> y;
  for (int i = 0; i < 20; ++i) {
    const int label = i % 2 ? 1 : -1;
    x.push_back({label * 4.0 + u(rng), label * 4.0 + u(rng)});
    y.push_back(label);
  }
  // Separable with margin: w = (1, 1) scores every point beyond +-6.
  for (size_t i = 0; i < x.size(); ++i) {
    REQUIRE(y[i] * (x[i][0] + x[i][1]) > 6.0);
  }
  const Model m = train(vectorize(instances_of(x, y)), TrainParams{});
  const auto inst = instances_of(x, y);
  for (size_t i = 0; i < inst.size(); ++i) {
    CHECK(predict_score(m, inst[i].first).label == y[i]);
  }
}

TEST_CASE("identical points with mixed labels follow the majority") {
  Points x(7, {1.0, 2.0});
  const std::vector<int> y = {1, 1, 1, 1, -1, -1, -1};
  TrainDiagnostics diag;
  const Model m = train(vectorize(instances_of(x, y)), tight(), &diag);
  CHECK(diag.converged);
  CHECK(predict_score(m, instances_of(x, y)[0].first).label == 1);
}

TEST_CASE("single-class data cannot be trained") {
  CHECK_THROWS_AS(train(vectorize(instances_of({{1.0}, {2.0}}, {1, 1})),
                        TrainParams{}),
                  TrainingError);
  TrainParams bad;
  bad.c = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("trained weights match the brute-force dual on small problems") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (const bool shrinking : {false, true}) {
    for (int round = 0; round < 150; ++round) {
      const size_t n = 2 + rng() % 5;
      const size_t d = 1 + rng() % 2;
      Points x(n, std::vector<double>(d));
      std::vector<int> y(n);
      for (size_t i = 0; i < n; ++i) {
        for (double& v : x[i]) v = coord(rng);
        y[i] = i == 0 ? 1 : i == 1 ? -1 : (rng() % 2 ? 1 : -1);
      }
      TrainParams p = tight();
      p.c = round % 3 == 0 ? 10.0 : 0.1;
      p.shrinking = shrinking;
      TrainDiagnostics diag;
      const Dataset data = vectorize(instances_of(x, y));
      const Model m = train(data, p, &diag);
      const auto oracle = testing::brute_force_dual(x, y, p.c);
      REQUIRE(oracle);
      CHECK(diag.converged);
      CHECK(cos_of(dense_weights(m, d), oracle->w) >= 0.999);
      CHECK(diag.dual_objective.back() ==
            doctest::Approx(oracle->objective).epsilon(1e-4));
      for (double a : diag.alpha) {
        CHECK(a >= 0.0);
        CHECK(a <= p.c);
      }
      for (size_t k = 1; k < diag.dual_objective.size(); ++k) {
        const double prev = diag.dual_objective[k - 1];
        CHECK(diag.dual_objective[k] >=
              prev - 1e-12 * std::max(1.0, std::abs(prev)));
      }
    }
  }
}

TEST_CASE("dual_objective recomputes the trainer's last value") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Points x(30, std::vector<double>(3));
  std::vector<int> y(30);
  for (size_t i = 0; i < x.size(); ++i) {
    for (double& v : x[i]) v = coord(rng);
    y[i] = x[i][0] + 0.3 * x[i][1] > 0 ? 1 : -1;
  }
  const Dataset data = vectorize(instances_of(x, y));
  TrainDiagnostics diag;
  train(data, TrainParams{}, &diag);
  CHECK(dual_objective(data, diag.alpha) ==
        doctest::Approx(diag.dual_objective.back()));
  CHECK(dual_objective(data, std::vector<double>(30, 0.0)) == 0.0);
}

TEST_CASE("instance order does not change training-set labels") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Points x;
  std::vector<int> y;
  while (x.size() < 40) {
    std::vector<double> v = {coord(rng), coord(rng)};
    const double s = v[0] - v[1];
    if (std::abs(s) < 0.2) continue;
    x.push_back(v);
    y.push_back(s > 0 ? 1 : -1);
  }
  const auto inst = instances_of(x, y);
  auto shuffled = inst;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const Model a = train(vectorize(inst), tight());
  const Model b = train(vectorize(shuffled), tight());
  for (const auto& [fv, label] : inst) {
    CHECK(predict_score(a, fv).label == predict_score(b, fv).label);
  }
}

TEST_CASE("bias feature is appended only when b is positive") {
  const auto inst = instances_of({{2.0}, {1.0}}, {1, -1});
  TrainParams p = tight();
  p.c = 10.0;
  const Model plain = train(vectorize(inst), p);
  CHECK_FALSE(plain.dict.find(kBiasFeature).has_value());
  p.b = 1.0;
  const Model biased = train(vectorize(inst), p);
  REQUIRE(biased.dict.find(kBiasFeature).has_value());
  CHECK(predict_score(biased, inst[0].first).label == 1);
  CHECK(predict_score(biased, inst[1].first).label == -1);
}

TEST_CASE("predict_score is the dot product over known features") {
  Model m;
  m.dict.add("f1");
  m.weights = {2.0};
  const Prediction p = predict_score(m, {{"f1", 0.5}});
  CHECK(p.score == 1.0);
  CHECK(p.label == 1);
  CHECK(predict_score(m, {}).label == -1);
  CHECK(predict_score(m, {}).score == 0.0);
  CHECK(predict_score(m, {{"unseen", 4.0}}).label == -1);
  m.weights = {-2.0};
  CHECK(predict_score(m, {{"f1", 0.5}}).label == -1);
}

TEST_CASE("models round-trip through files") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Points x(50, std::vector<double>(4));
  std::vector<int> y(50);
  for (size_t i = 0; i < x.size(); ++i) {
    for (double& v : x[i]) v = coord(rng);
    y[i] = x[i][2] > x[i][3] ? 1 : -1;
  }
  const auto inst = instances_of(x, y);
  Model m = train(vectorize(inst), TrainParams{});
  m.metadata["features"] = "orthographic,ngram";
  testing::TempDir dir;
  save_model(m, dir.file("m.model"));
  const Model back = load_model(dir.file("m.model"));
  CHECK(back.dict.names() == m.dict.names());
  CHECK(back.params == m.params);
  CHECK(back.metadata == m.metadata);
  for (const auto& [fv, label] : inst) {
    CHECK(predict_score(back, fv).score ==
          doctest::Approx(predict_score(m, fv).score).epsilon(1e-12));
  }
}

TEST_CASE("broken model files are rejected") {
  Model m;
  m.dict.add("a");
  m.weights = {1.5};
  std::ostringstream out;
  write_model(m, out);
  const std::string text = out.str();
  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_model(in, "mem.model");
  };
  CHECK_NOTHROW(read(text));
  CHECK_THROWS_AS(read(text.substr(0, text.size() - 5)), ParseError);
  CHECK_THROWS_AS(read(""), ParseError);
  std::string other = text;
  other.replace(other.find(' '), 2, " 99");
  CHECK_THROWS_AS(read(other), ParseError);
  CHECK_THROWS_AS(read("garbage 1\n"), ParseError);
}

TEST_CASE("a large model keeps its feature order") {
  Model m;
  std::mt19937 rng(53);
  for (int i = 0; i < 100000; ++i) {
    m.dict.add("feat_" + std::to_string(rng()));
  }
  m.weights.resize(m.dict.size());
  for (double& w : m.weights) w = static_cast<double>(rng()) / rng.max() - 0.5;
  std::ostringstream a;
  write_model(m, a);
  std::istringstream in(a.str());
  const Model back = read_model(in, "mem.model");
  std::ostringstream b;
  write_model(back, b);
  CHECK(std::hash<std::string>{}(a.str()) == std::hash<std::string>{}(b.str()));
  CHECK(back.dict.names() == m.dict.names());
}

TEST_CASE("training parameters come from config") {
  const Config cfg = Config::parse(
      "[train]\nc = 0.5\ne = 0.01\nseed = 9\nshrinking = true\n", "m.toml");
  const TrainParams p = TrainParams::from_config(cfg);
  CHECK(p.c == 0.5);
  CHECK(p.e == 0.01);
  CHECK(p.b == 0.0);
  CHECK(p.seed == 9);
  CHECK(p.shrinking);
  CHECK_THROWS_AS(
      TrainParams::from_config(Config::parse("[train]\ne = 0\n", "m")),
      ConfigError);
}
