// Copyright 2026 The cdeval Authors.
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

#include "cdeval/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdeval/error.hpp"
#include "cdeval/rng.hpp"

namespace cdeval {

void FeatureMatrix::append(std::span<const float> v) {
  if (rows == 0 && cols == 0) cols = v.size();
  if (v.size() != cols) throw InvalidArgument("feature dimension mismatch");
  data.insert(data.end(), v.begin(), v.end());
  ++rows;
}

namespace {

void check_training_input(const FeatureMatrix& x, std::span<const int> y, int classes) {
  if (x.rows != y.size()) throw InvalidArgument("label count does not match rows");
  if (x.rows == 0 || x.cols == 0) throw InvalidArgument("empty training set");
  if (classes < 2) throw InvalidArgument("need at least two classes");
  for (int label : y) {
    if (label < 0 || label >= classes) throw InvalidArgument("label out of range");
  }
}

void check_dim(std::span<const float> x, std::size_t dim) {
  if (x.size() != dim) {
    throw InvalidArgument("input has dim " + std::to_string(x.size()) + ", model expects " +
                          std::to_string(dim));
  }
}

double dot(std::span<const double> w, std::span<const float> x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += w[j] * x[j];
  return acc;
}

std::vector<std::size_t> iota_order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

// ---------------------------------------------------------------------------
// Linear one-vs-rest models.

class LinearOvR : public Classifier {
 public:
  LinearOvR(std::string kind, std::size_t dim, int classes)
      : kind_(std::move(kind)), dim_(dim), weights_(static_cast<std::size_t>(classes) * dim, 0.0),
        bias_(static_cast<std::size_t>(classes), 0.0) {}

  std::string kind() const override { return kind_; }
  std::size_t dim() const override { return dim_; }
  int classes() const { return static_cast<int>(bias_.size()); }

  std::span<double> weights(int k) { return {weights_.data() + static_cast<std::size_t>(k) * dim_, dim_}; }
  std::span<const double> weights(int k) const {
    return {weights_.data() + static_cast<std::size_t>(k) * dim_, dim_};
  }
  double& bias(int k) { return bias_[static_cast<std::size_t>(k)]; }

  double score(int k, std::span<const float> x) const { return dot(weights(k), x) + bias_[static_cast<std::size_t>(k)]; }

  int predict(std::span<const float> x) const override {
    check_dim(x, dim_);
    int best = 0;
    double best_score = score(0, x);
    for (int k = 1; k < classes(); ++k) {
      const double s = score(k, x);
      if (s > best_score) {
        best = k;
        best_score = s;
      }
    }
    return best;
  }

  nlohmann::json to_json() const override {
    nlohmann::json j;
    j["kind"] = kind_;
    j["dim"] = dim_;
    j["classes"] = classes();
    j["weights"] = weights_;
    j["bias"] = bias_;
    return j;
  }

  static std::unique_ptr<LinearOvR> from_json(const nlohmann::json& j) {
    auto m = std::make_unique<LinearOvR>(j.at("kind").get<std::string>(), j.at("dim").get<std::size_t>(),
                                         j.at("classes").get<int>());
    m->weights_ = j.at("weights").get<std::vector<double>>();
    m->bias_ = j.at("bias").get<std::vector<double>>();
    if (m->weights_.size() != m->bias_.size() * m->dim_) throw DataError("linear model: bad weight shape");
    return m;
  }

 private:
  std::string kind_;
  std::size_t dim_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// ---------------------------------------------------------------------------
// Multi-layer perceptron.

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> w;  // out x in
  std::vector<double> b;
};

class Mlp : public Classifier {
 public:
  std::string kind() const override { return "mlp"; }
  std::size_t dim() const override { return mean_.size(); }

  int predict(std::span<const float> x) const override {
    check_dim(x, dim());
    std::vector<std::vector<double>> acts;
    forward(standardize(x), acts);
    const auto& logits = acts.back();
    return static_cast<int>(std::max_element(logits.begin(), logits.end()) - logits.begin());
  }

  nlohmann::json to_json() const override {
    nlohmann::json j;
    j["kind"] = "mlp";
    j["dim"] = dim();
    j["classes"] = layers_.back().out;
    j["mean"] = mean_;
    j["inv_std"] = inv_std_;
    for (const auto& l : layers_) {
      j["layers"].push_back({{"in", l.in}, {"out", l.out}, {"w", l.w}, {"b", l.b}});
    }
    return j;
  }

  static std::unique_ptr<Mlp> from_json(const nlohmann::json& j) {
    auto m = std::make_unique<Mlp>();
    m->mean_ = j.at("mean").get<std::vector<double>>();
    m->inv_std_ = j.at("inv_std").get<std::vector<double>>();
    for (const auto& lj : j.at("layers")) {
      DenseLayer l;
      l.in = lj.at("in").get<std::size_t>();
      l.out = lj.at("out").get<std::size_t>();
      l.w = lj.at("w").get<std::vector<double>>();
      l.b = lj.at("b").get<std::vector<double>>();
      if (l.w.size() != l.in * l.out || l.b.size() != l.out) throw DataError("mlp: bad layer shape");
      m->layers_.push_back(std::move(l));
    }
    if (m->layers_.empty() || m->layers_.front().in != m->mean_.size()) throw DataError("mlp: bad shape");
    return m;
  }

  static std::unique_ptr<Mlp> train(const FeatureMatrix& x, std::span<const int> y, int classes,
                                    const MlpConfig& cfg, std::uint64_t seed);

 private:
  std::vector<double> standardize(std::span<const float> x) const {
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) z[j] = (x[j] - mean_[j]) * inv_std_[j];
    return z;
  }

  // acts[0] = input, acts[l+1] = output of layer l (ReLU except the last,
  // which holds raw logits).
  void forward(std::vector<double> input, std::vector<std::vector<double>>& acts) const {
    acts.clear();
    acts.push_back(std::move(input));
    for (std::size_t li = 0; li < layers_.size(); ++li) {
      const auto& l = layers_[li];
      const auto& a = acts.back();
      std::vector<double> z(l.out);
      for (std::size_t o = 0; o < l.out; ++o) {
        double acc = l.b[o];
        const double* row = l.w.data() + o * l.in;
        for (std::size_t i = 0; i < l.in; ++i) acc += row[i] * a[i];
        z[o] = (li + 1 < layers_.size()) ? std::max(acc, 0.0) : acc;
      }
      acts.push_back(std::move(z));
    }
  }

  std::vector<double> mean_;
  std::vector<double> inv_std_;
  std::vector<DenseLayer> layers_;
};

std::unique_ptr<Mlp> Mlp::train(const FeatureMatrix& x, std::span<const int> y, int classes,
                                const MlpConfig& cfg, std::uint64_t seed) {
  auto m = std::make_unique<Mlp>();
  const auto n = x.rows;
  const auto d = x.cols;
  m->mean_.assign(d, 0.0);
  m->inv_std_.assign(d, 1.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < d; ++j) m->mean_[j] += x.row(r)[j];
  for (auto& v : m->mean_) v /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < d; ++j) {
      const double c = x.row(r)[j] - m->mean_[j];
      var[j] += c * c;
    }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    m->inv_std_[j] = sd > 1e-8 ? 1.0 / sd : 1.0;
  }

  Rng rng(seed);
  const std::vector<std::size_t> sizes = {d, 5, 2, static_cast<std::size_t>(classes)};
  for (std::size_t li = 0; li + 1 < sizes.size(); ++li) {
    DenseLayer l;
    l.in = sizes[li];
    l.out = sizes[li + 1];
    const bool hidden = li + 2 < sizes.size();
    const double scale = std::sqrt((hidden ? 2.0 : 1.0) / static_cast<double>(l.in));
    l.w.resize(l.in * l.out);
    for (auto& w : l.w) w = scale * rng.normal();
    l.b.assign(l.out, hidden ? 0.01 : 0.0);
    m->layers_.push_back(std::move(l));
  }

  std::vector<std::vector<double>> grad_w(m->layers_.size()), grad_b(m->layers_.size());
  std::vector<std::vector<double>> vel_w(m->layers_.size()), vel_b(m->layers_.size());
  for (std::size_t li = 0; li < m->layers_.size(); ++li) {
    vel_w[li].assign(m->layers_[li].w.size(), 0.0);
    vel_b[li].assign(m->layers_[li].b.size(), 0.0);
  }

  auto order = iota_order(n);
  std::vector<std::vector<double>> acts;
  const std::size_t batch = static_cast<std::size_t>(std::max(cfg.batch, 1));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < n; start += batch) {
      const auto stop = std::min(n, start + batch);
      for (std::size_t li = 0; li < m->layers_.size(); ++li) {
        grad_w[li].assign(m->layers_[li].w.size(), 0.0);
        grad_b[li].assign(m->layers_[li].b.size(), 0.0);
      }
      for (std::size_t s = start; s < stop; ++s) {
        const auto r = order[s];
        m->forward(m->standardize(x.row(r)), acts);
        // Softmax cross-entropy gradient on the logits.
        auto delta = acts.back();
        const double mx = *std::max_element(delta.begin(), delta.end());
        double sum = 0.0;
        for (auto& v : delta) {
          v = std::exp(v - mx);
          sum += v;
        }
        for (auto& v : delta) v /= sum;
        delta[static_cast<std::size_t>(y[r])] -= 1.0;

        for (std::size_t li = m->layers_.size(); li-- > 0;) {
          const auto& l = m->layers_[li];
          const auto& a = acts[li];
          for (std::size_t o = 0; o < l.out; ++o) {
            if (delta[o] == 0.0) continue;
            double* g = grad_w[li].data() + o * l.in;
            for (std::size_t i = 0; i < l.in; ++i) g[i] += delta[o] * a[i];
            grad_b[li][o] += delta[o];
          }
          if (li == 0) break;
          std::vector<double> prev(l.in, 0.0);
          for (std::size_t o = 0; o < l.out; ++o) {
            const double* row = l.w.data() + o * l.in;
            for (std::size_t i = 0; i < l.in; ++i) prev[i] += row[i] * delta[o];
          }
          for (std::size_t i = 0; i < l.in; ++i) {
            if (a[i] <= 0.0) prev[i] = 0.0;  // ReLU derivative
          }
          delta = std::move(prev);
        }
      }
      const double step = cfg.learning_rate / static_cast<double>(stop - start);
      for (std::size_t li = 0; li < m->layers_.size(); ++li) {
        auto& l = m->layers_[li];
        for (std::size_t k = 0; k < l.w.size(); ++k) {
          vel_w[li][k] = cfg.momentum * vel_w[li][k] - step * grad_w[li][k];
          l.w[k] += vel_w[li][k];
        }
        for (std::size_t k = 0; k < l.b.size(); ++k) {
          vel_b[li][k] = cfg.momentum * vel_b[li][k] - step * grad_b[li][k];
          l.b[k] += vel_b[li][k];
        }
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Random forest.

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  float threshold = 0.0f;
  int left = -1;
  int right = -1;
  int label = 0;
};

using Tree = std::vector<TreeNode>;

int tree_predict(const Tree& tree, std::span<const float> x) {
  int node = 0;
  while (tree[static_cast<std::size_t>(node)].feature >= 0) {
    const auto& t = tree[static_cast<std::size_t>(node)];
    node = x[static_cast<std::size_t>(t.feature)] <= t.threshold ? t.left : t.right;
  }
  return tree[static_cast<std::size_t>(node)].label;
}

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, std::span<const int> y, int classes, int max_features, int max_depth,
              Rng& rng)
      : x_(x), y_(y), classes_(classes), max_features_(max_features), max_depth_(max_depth), rng_(rng),
        features_(iota_order(x.cols)) {}

  Tree build(std::vector<std::size_t> samples) {
    samples_ = std::move(samples);
    Tree tree;
    tree.emplace_back();
    struct Task {
      int node;
      std::size_t begin, end;
      int depth;
    };
    std::vector<Task> stack = {{0, 0, samples_.size(), 0}};
    std::vector<std::size_t> counts(static_cast<std::size_t>(classes_));
    while (!stack.empty()) {
      const auto task = stack.back();
      stack.pop_back();
      std::fill(counts.begin(), counts.end(), 0);
      for (auto i = task.begin; i < task.end; ++i) ++counts[static_cast<std::size_t>(y_[samples_[i]])];
      const auto majority = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
      tree[static_cast<std::size_t>(task.node)].label = majority;
      const bool pure = counts[static_cast<std::size_t>(majority)] == task.end - task.begin;
      if (pure || task.end - task.begin < 2 || (max_depth_ > 0 && task.depth >= max_depth_)) continue;

      int feature = -1;
      float threshold = 0.0f;
      if (!best_split(task.begin, task.end, counts, feature, threshold)) continue;
      const auto mid = std::partition(samples_.begin() + static_cast<std::ptrdiff_t>(task.begin),
                                      samples_.begin() + static_cast<std::ptrdiff_t>(task.end),
                                      [&](std::size_t r) {
                                        return x_.row(r)[static_cast<std::size_t>(feature)] <= threshold;
                                      }) -
                       samples_.begin();
      const auto split_at = static_cast<std::size_t>(mid);
      const int left = static_cast<int>(tree.size());
      tree.emplace_back();
      tree.emplace_back();
      auto& node = tree[static_cast<std::size_t>(task.node)];
      node.feature = feature;
      node.threshold = threshold;
      node.left = left;
      node.right = left + 1;
      stack.push_back({left + 1, split_at, task.end, task.depth + 1});
      stack.push_back({left, task.begin, split_at, task.depth + 1});
    }
    return tree;
  }

 private:
  // Draws features without replacement until max_features have been tried
  // and at least one of them separates the node's samples.
  bool best_split(std::size_t begin, std::size_t end, const std::vector<std::size_t>& parent_counts,
                  int& best_feature, float& best_threshold) {
    const auto n = end - begin;
    const auto dim = features_.size();
    double best_score = -1.0;
    std::vector<std::size_t> left(static_cast<std::size_t>(classes_));
    std::vector<std::size_t> right(static_cast<std::size_t>(classes_));
    for (std::size_t t = 0; t < dim; ++t) {
      if (t >= static_cast<std::size_t>(max_features_) && best_score >= 0.0) break;
      std::swap(features_[t], features_[t + rng_.index(dim - t)]);
      const auto f = features_[t];
      values_.clear();
      for (auto i = begin; i < end; ++i) {
        const auto r = samples_[i];
        values_.push_back({x_.row(r)[f], y_[r]});
      }
      std::sort(values_.begin(), values_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (values_.front().first == values_.back().first) continue;

      std::fill(left.begin(), left.end(), 0);
      right = parent_counts;
      double sq_left = 0.0;
      double sq_right = 0.0;
      for (auto c : right) sq_right += static_cast<double>(c) * static_cast<double>(c);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto label = static_cast<std::size_t>(values_[i].second);
        sq_left += 2.0 * static_cast<double>(left[label]) + 1.0;
        sq_right -= 2.0 * static_cast<double>(right[label]) - 1.0;
        ++left[label];
        --right[label];
        if (values_[i].first == values_[i + 1].first) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = static_cast<double>(n - i - 1);
        // Maximizing this minimizes the weighted Gini impurity.
        const double score = sq_left / nl + sq_right / nr;
        if (score > best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          const float lo = values_[i].first;
          const float hi = values_[i + 1].first;
          float mid = lo + (hi - lo) * 0.5f;
          if (!(mid < hi)) mid = lo;
          best_threshold = mid;
        }
      }
    }
    return best_score >= 0.0;
  }

  const FeatureMatrix& x_;
  std::span<const int> y_;
  int classes_;
  int max_features_;
  int max_depth_;
  Rng& rng_;
  std::vector<std::size_t> features_;
  std::vector<std::size_t> samples_;
  std::vector<std::pair<float, int>> values_;
};

class Forest : public Classifier {
 public:
  Forest(std::size_t dim, int classes) : dim_(dim), classes_(classes) {}

  std::string kind() const override { return "forest"; }
  std::size_t dim() const override { return dim_; }

  int predict(std::span<const float> x) const override {
    check_dim(x, dim_);
    std::vector<int> votes(static_cast<std::size_t>(classes_), 0);
    for (const auto& t : trees_) ++votes[static_cast<std::size_t>(tree_predict(t, x))];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  }

  nlohmann::json to_json() const override {
    nlohmann::json j;
    j["kind"] = "forest";
    j["dim"] = dim_;
    j["classes"] = classes_;
    j["trees"] = nlohmann::json::array();
    for (const auto& t : trees_) {
      std::vector<int> feature, left, right, label;
      std::vector<float> threshold;
      for (const auto& n : t) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        label.push_back(n.label);
      }
      j["trees"].push_back(
          {{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right}, {"label", label}});
    }
    return j;
  }

  static std::unique_ptr<Forest> from_json(const nlohmann::json& j) {
    auto f = std::make_unique<Forest>(j.at("dim").get<std::size_t>(), j.at("classes").get<int>());
    for (const auto& tj : j.at("trees")) {
      const auto feature = tj.at("feature").get<std::vector<int>>();
      const auto threshold = tj.at("threshold").get<std::vector<float>>();
      const auto left = tj.at("left").get<std::vector<int>>();
      const auto right = tj.at("right").get<std::vector<int>>();
      const auto label = tj.at("label").get<std::vector<int>>();
      const auto size = feature.size();
      if (size == 0 || threshold.size() != size || left.size() != size || right.size() != size ||
          label.size() != size) {
        throw DataError("forest: malformed tree");
      }
      Tree t(size);
      for (std::size_t i = 0; i < size; ++i) {
        t[i] = {feature[i], threshold[i], left[i], right[i], label[i]};
        const auto n = static_cast<int>(size);
        if (feature[i] >= 0 && (left[i] <= 0 || left[i] >= n || right[i] <= 0 || right[i] >= n ||
                                feature[i] >= static_cast<int>(f->dim_))) {
          throw DataError("forest: malformed tree");
        }
      }
      f->trees_.push_back(std::move(t));
    }
    return f;
  }

  std::vector<Tree>& trees() { return trees_; }

 private:
  std::size_t dim_;
  int classes_;
  std::vector<Tree> trees_;
};

}  // namespace

std::unique_ptr<Classifier> train_sgd(const FeatureMatrix& x, std::span<const int> y, int classes,
                                      const SgdConfig& cfg, std::uint64_t seed) {
  check_training_input(x, y, classes);
  auto model = std::make_unique<LinearOvR>("sgd", x.cols, classes);
  Rng rng(seed);
  // w_k = scale_k * v_k so the L2 shrink step is O(1).
  std::vector<double> scale(static_cast<std::size_t>(classes), 1.0);
  auto order = iota_order(x.rows);
  std::size_t t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (auto r : order) {
      const double lr = cfg.learning_rate / (1.0 + cfg.learning_rate * cfg.alpha * static_cast<double>(t++));
      const auto row = x.row(r);
      for (int k = 0; k < classes; ++k) {
        auto w = model->weights(k);
        auto& s = scale[static_cast<std::size_t>(k)];
        const double target = y[r] == k ? 1.0 : -1.0;
        const double margin = target * (s * dot(w, row) + model->bias(k));
        s *= 1.0 - lr * cfg.alpha;
        if (margin < 1.0) {
          const double step = lr * target / s;
          for (std::size_t j = 0; j < row.size(); ++j) w[j] += step * row[j];
          model->bias(k) += lr * target;
        }
        if (s < 1e-6) {
          for (auto& v : w) v *= s;
          s = 1.0;
        }
      }
    }
  }
  for (int k = 0; k < classes; ++k) {
    for (auto& v : model->weights(k)) v *= scale[static_cast<std::size_t>(k)];
  }
  return model;
}

std::unique_ptr<Classifier> train_margin(const FeatureMatrix& x, std::span<const int> y, int classes,
                                         const MarginConfig& cfg, std::uint64_t seed) {
  check_training_input(x, y, classes);
  auto model = std::make_unique<LinearOvR>("margin", x.cols, classes);
  Rng rng(seed);
  const auto n = x.rows;
  std::vector<double> diag(n);
  for (std::size_t r = 0; r < n; ++r) {
    double sq = 1.0;  // bias feature
    for (float v : x.row(r)) sq += static_cast<double>(v) * v;
    diag[r] = sq;
  }
  std::vector<double> alpha(n);
  auto order = iota_order(n);
  for (int k = 0; k < classes; ++k) {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    auto w = model->weights(k);
    double& b = model->bias(k);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
      rng.shuffle(std::span<std::size_t>(order));
      double max_pg = -INFINITY;
      double min_pg = INFINITY;
      for (auto r : order) {
        const auto row = x.row(r);
        const double target = y[r] == k ? 1.0 : -1.0;
        const double g = target * (dot(w, row) + b) - 1.0;
        double pg = g;
        if (alpha[r] == 0.0) {
          pg = std::min(g, 0.0);
        } else if (alpha[r] == cfg.c) {
          pg = std::max(g, 0.0);
        }
        max_pg = std::max(max_pg, pg);
        min_pg = std::min(min_pg, pg);
        if (std::abs(pg) > 1e-12) {
          const double old = alpha[r];
          alpha[r] = std::clamp(old - g / diag[r], 0.0, cfg.c);
          const double delta = (alpha[r] - old) * target;
          for (std::size_t j = 0; j < row.size(); ++j) w[j] += delta * row[j];
          b += delta;
        }
      }
      if (max_pg - min_pg < cfg.tol) break;
    }
  }
  return model;
}

std::unique_ptr<Classifier> train_mlp(const FeatureMatrix& x, std::span<const int> y, int classes,
                                      const MlpConfig& cfg, std::uint64_t seed) {
  check_training_input(x, y, classes);
  return Mlp::train(x, y, classes, cfg, seed);
}

std::unique_ptr<Classifier> train_forest(const FeatureMatrix& x, std::span<const int> y, int classes,
                                         const ForestConfig& cfg, std::uint64_t seed) {
  check_training_input(x, y, classes);
  auto forest = std::make_unique<Forest>(x.cols, classes);
  const int max_features = cfg.max_features > 0
                               ? cfg.max_features
                               : std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(x.cols)))));
  for (int t = 0; t < cfg.trees; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> bootstrap(x.rows);
    for (auto& r : bootstrap) r = rng.index(x.rows);
    TreeBuilder builder(x, y, classes, max_features, cfg.max_depth, rng);
    forest->trees().push_back(builder.build(std::move(bootstrap)));
  }
  return forest;
}

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "sgd" || kind == "margin") return LinearOvR::from_json(j);
  if (kind == "mlp") return Mlp::from_json(j);
  if (kind == "forest") return Forest::from_json(j);
  throw DataError("unknown classifier kind '" + kind + "'");
}

}  // namespace cdeval
