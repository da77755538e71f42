#include "wmbench/predictors/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wmbench/core/error.hpp"

namespace wmbench {

Mlp::Mlp(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) throw InvalidArgument("an MLP needs at least input and output sizes");
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] == 0 || sizes_[l + 1] == 0) throw InvalidArgument("MLP layer sizes must be positive");
    offsets_.push_back(total);
    total += sizes_[l + 1] * sizes_[l] + sizes_[l + 1];
  }
  offsets_.push_back(total);
  params_.assign(total, 0.0);
}

void Mlp::init_xavier(Rng& rng) {
  for (std::size_t l = 0; l < layer_count(); ++l) {
    const double limit = std::sqrt(6.0 / static_cast<double>(sizes_[l] + sizes_[l + 1]));
    const std::size_t w0 = weight_offset(l);
    const std::size_t b0 = bias_offset(l);
    for (std::size_t i = w0; i < b0; ++i) params_[i] = rng.uniform(-limit, limit);
    std::fill(params_.begin() + static_cast<std::ptrdiff_t>(b0),
              params_.begin() + static_cast<std::ptrdiff_t>(offsets_[l + 1]), 0.0);
  }
}

std::pair<std::size_t, std::size_t> Mlp::layer_span(std::size_t l) const {
  return {offsets_.at(l), offsets_.at(l + 1)};
}

namespace {

// out (n x out) = in (n x k) W^T + b, with W stored out x k. The inner loop
// walks a transposed copy so every update is a contiguous axpy.
void affine(const Matrix& in, std::span<const double> w, std::span<const double> b, Matrix& out) {
  const std::size_t n = in.rows();
  const std::size_t k = in.cols();
  const std::size_t m = b.size();
  std::vector<double> wt(k * m);
  for (std::size_t o = 0; o < m; ++o)
    for (std::size_t i = 0; i < k; ++i) wt[i * m + o] = w[o * k + i];
  out = Matrix(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    auto z = out.row(r);
    std::copy(b.begin(), b.end(), z.begin());
    const auto x = in.row(r);
    for (std::size_t i = 0; i < k; ++i) {
      const double xi = x[i];
      const double* wi = wt.data() + i * m;
      for (std::size_t o = 0; o < m; ++o) z[o] += xi * wi[o];
    }
  }
}

}  // namespace

Matrix Mlp::forward(const Matrix& inputs) const {
  if (inputs.cols() != input_dim()) {
    throw ShapeMismatch("MLP expects " + std::to_string(input_dim()) + " inputs, got " +
                        std::to_string(inputs.cols()));
  }
  Matrix a = inputs;
  Matrix z;
  const std::span<const double> p(params_);
  for (std::size_t l = 0; l < layer_count(); ++l) {
    const std::size_t nw = sizes_[l + 1] * sizes_[l];
    affine(a, p.subspan(weight_offset(l), nw), p.subspan(bias_offset(l), sizes_[l + 1]), z);
    if (l + 1 < layer_count())
      for (double& v : z.entries()) v = std::tanh(v);
    a = std::move(z);
  }
  return a;
}

void Mlp::forward(std::span<const double> input, std::span<double> output) const {
  if (output.size() != output_dim()) throw ShapeMismatch("MLP output buffer has the wrong size");
  const Matrix y = forward(Matrix(1, input.size(), std::vector<double>(input.begin(), input.end())));
  std::copy(y.entries().begin(), y.entries().end(), output.begin());
}

double Mlp::loss(const Matrix& x, const Matrix& y, std::span<double> grad) const {
  if (x.rows() != y.rows() || x.cols() != input_dim() || y.cols() != output_dim()) {
    throw ShapeMismatch("MLP batch shapes do not match the network");
  }
  if (!grad.empty() && grad.size() != params_.size()) throw ShapeMismatch("MLP gradient buffer has the wrong size");
  const std::size_t n = x.rows();
  const std::size_t layers = layer_count();
  const std::span<const double> p(params_);

  std::vector<Matrix> acts;  // acts[l] is the input to layer l; acts[layers] is the output
  acts.reserve(layers + 1);
  acts.push_back(x);
  for (std::size_t l = 0; l < layers; ++l) {
    Matrix z;
    affine(acts[l], p.subspan(weight_offset(l), sizes_[l + 1] * sizes_[l]),
           p.subspan(bias_offset(l), sizes_[l + 1]), z);
    if (l + 1 < layers)
      for (double& v : z.entries()) v = std::tanh(v);
    acts.push_back(std::move(z));
  }

  const double denom = static_cast<double>(n * output_dim());
  Matrix delta = acts[layers] - y;
  double sum = 0.0;
  for (double v : delta.entries()) sum += v * v;
  const double value = sum / denom;
  if (grad.empty()) return value;

  std::fill(grad.begin(), grad.end(), 0.0);
  for (double& v : delta.entries()) v *= 2.0 / denom;
  for (std::size_t l = layers; l-- > 0;) {
    const std::size_t in = sizes_[l];
    const std::size_t out = sizes_[l + 1];
    double* gw = grad.data() + weight_offset(l);
    double* gb = grad.data() + bias_offset(l);
    const double* w = p.data() + weight_offset(l);
    Matrix prev(l > 0 ? n : 0, in);
    for (std::size_t r = 0; r < n; ++r) {
      const auto d = delta.row(r);
      const auto a = acts[l].row(r);
      for (std::size_t o = 0; o < out; ++o) {
        const double dv = d[o];
        gb[o] += dv;
        double* gwo = gw + o * in;
        for (std::size_t i = 0; i < in; ++i) gwo[i] += dv * a[i];
        if (l > 0) {
          auto pr = prev.row(r);
          const double* wo = w + o * in;
          for (std::size_t i = 0; i < in; ++i) pr[i] += dv * wo[i];
        }
      }
      if (l > 0) {
        auto pr = prev.row(r);
        for (std::size_t i = 0; i < in; ++i) pr[i] *= 1.0 - a[i] * a[i];
      }
    }
    delta = std::move(prev);
  }
  for (double g : grad) {
    if (!std::isfinite(g)) throw NonFinite("non-finite gradient (batch loss " + std::to_string(value) + ")");
  }
  return value;
}

Normalizer Normalizer::fit(const Matrix& data) {
  if (data.rows() == 0) throw InvalidArgument("cannot fit normalization statistics to no samples");
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  Normalizer z{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < d; ++j) z.mean[j] += data(r, j);
  for (auto& m : z.mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < d; ++j) {
      const double c = data(r, j) - z.mean[j];
      z.scale[j] += c * c;
    }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(z.scale[j] / static_cast<double>(n));
    z.scale[j] = sd > 1e-12 * std::max(1.0, std::abs(z.mean[j])) ? sd : 1.0;
  }
  return z;
}

Normalizer Normalizer::identity(std::size_t n) {
  return {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
}

void Normalizer::normalize(std::span<const double> in, std::span<double> out) const {
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = (in[j] - mean[j]) / scale[j];
}

void Normalizer::denormalize(std::span<const double> in, std::span<double> out) const {
  for (std::size_t j = 0; j < mean.size(); ++j) out[j] = in[j] * scale[j] + mean[j];
}

std::vector<double> gradient_check(Mlp net, const Matrix& x, const Matrix& y, double h) {
  std::vector<double> grad(net.parameters().size());
  net.loss(x, y, grad);
  std::vector<double> errors;
  auto params = net.parameters();
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto [begin, end] = net.layer_span(l);
    double diff2 = 0.0, g2 = 0.0, fd2 = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double saved = params[i];
      params[i] = saved + h;
      const double up = net.loss(x, y);
      params[i] = saved - h;
      const double down = net.loss(x, y);
      params[i] = saved;
      const double fd = (up - down) / (2.0 * h);
      diff2 += (grad[i] - fd) * (grad[i] - fd);
      g2 += grad[i] * grad[i];
      fd2 += fd * fd;
    }
    const double scale = std::sqrt(std::max(g2, fd2));
    errors.push_back(scale > 0.0 ? std::sqrt(diff2) / scale : 0.0);
  }
  return errors;
}

}  // namespace wmbench
