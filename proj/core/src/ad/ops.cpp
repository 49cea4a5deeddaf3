// irsim — link-level simulation and learned beamforming for IRS-assisted MISO downlinks
// Copyright (C) 2026 the irsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsim/ad/ops.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace irsim::ad {

namespace {

using MatMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                   Eigen::Dynamic,
                                                   Eigen::RowMajor>>;

Tape& tape_of(Var a) {
  if (!a.valid()) throw std::invalid_argument("ops: invalid var");
  return *a.tape;
}

Tape& tape_of(Var a, Var b) {
  if (!a.valid() || !b.valid() || a.tape != b.tape)
    throw std::invalid_argument("ops: vars must live on one tape");
  return *a.tape;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

ConstMatMap as_matrix(const Tensor& t) {
  return ConstMatMap(t.data(), t.rows(), t.cols());
}

MatMap as_matrix(Tensor& t) { return MatMap(t.data(), t.rows(), t.cols()); }

// Elementwise binary op with per-element adjoints computed from the stored
// input values.
template <typename Fwd, typename Bwd>
Var elementwise_binary(const char* name, Var a, Var b, Fwd fwd, Bwd bwd) {
  Tape& tape = tape_of(a, b);
  const Tensor& va = tape.value(a);
  const Tensor& vb = tape.value(b);
  require_same_shape(va, vb, name);
  Tensor out(va.shape());
  for (std::int64_t i = 0; i < va.size(); ++i) out[i] = fwd(va[i], vb[i]);
  const int ia = a.id, ib = b.id;
  return tape.record(std::move(out), {ia, ib},
                     [ia, ib, bwd](Tape& t, const Tensor& g) {
                       const Tensor& xa = t.value(ia);
                       const Tensor& xb = t.value(ib);
                       Tensor& ga = t.grad(ia);
                       Tensor& gb = t.grad(ib);
                       for (std::int64_t i = 0; i < g.size(); ++i) {
                         auto [da, db] = bwd(xa[i], xb[i], g[i]);
                         ga[i] += da;
                         gb[i] += db;
                       }
                     });
}

// Elementwise unary op; the adjoint may use input and output values.
template <typename Fwd, typename Bwd>
Var elementwise_unary(Var a, Fwd fwd, Bwd bwd) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  Tensor out(va.shape());
  for (std::int64_t i = 0; i < va.size(); ++i) out[i] = fwd(va[i]);
  const int ia = a.id;
  return tape.record(std::move(out), {ia},
                     [ia, bwd](Tape& t, const Tensor& g) {
                       const Tensor& x = t.value(ia);
                       Tensor& ga = t.grad(ia);
                       for (std::int64_t i = 0; i < g.size(); ++i)
                         ga[i] += bwd(x[i]) * g[i];
                     });
}

}  // namespace

Var add(Var a, Var b) {
  return elementwise_binary(
      "add", a, b, [](double x, double y) { return x + y; },
      [](double, double, double g) { return std::pair{g, g}; });
}

Var sub(Var a, Var b) {
  return elementwise_binary(
      "sub", a, b, [](double x, double y) { return x - y; },
      [](double, double, double g) { return std::pair{g, -g}; });
}

Var mul(Var a, Var b) {
  return elementwise_binary(
      "mul", a, b, [](double x, double y) { return x * y; },
      [](double x, double y, double g) { return std::pair{g * y, g * x}; });
}

Var div(Var a, Var b) {
  return elementwise_binary(
      "div", a, b, [](double x, double y) { return x / y; },
      [](double x, double y, double g) {
        return std::pair{g / y, -g * x / (y * y)};
      });
}

Var scale(Var a, double s) {
  return elementwise_unary(
      a, [s](double x) { return s * x; }, [s](double) { return s; });
}

Var add_scalar(Var a, double s) {
  return elementwise_unary(
      a, [s](double x) { return x + s; }, [](double) { return 1.0; });
}

Var relu(Var a) {
  return elementwise_unary(
      a, [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x) { return x > 0.0 ? 1.0 : 0.0; });
}

Var sigmoid(Var a) {
  return elementwise_unary(
      a, [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
      [](double x) {
        const double s = 1.0 / (1.0 + std::exp(-x));
        return s * (1.0 - s);
      });
}

Var tanh(Var a) {
  return elementwise_unary(
      a, [](double x) { return std::tanh(x); },
      [](double x) {
        const double t = std::tanh(x);
        return 1.0 - t * t;
      });
}

Var log(Var a) {
  return elementwise_unary(
      a, [](double x) { return std::log(x); },
      [](double x) { return 1.0 / x; });
}

Var sqrt(Var a) {
  return elementwise_unary(
      a, [](double x) { return std::sqrt(x); },
      [](double x) { return 0.5 / std::sqrt(x); });
}

Var sin(Var a) {
  return elementwise_unary(
      a, [](double x) { return std::sin(x); },
      [](double x) { return std::cos(x); });
}

Var cos(Var a) {
  return elementwise_unary(
      a, [](double x) { return std::cos(x); },
      [](double x) { return -std::sin(x); });
}

Var matmul(Var a, Var b) {
  Tape& tape = tape_of(a, b);
  const Tensor& va = tape.value(a);
  const Tensor& vb = tape.value(b);
  if (va.rank() != 2 || vb.rank() != 2 || va.cols() != vb.rows())
    throw std::invalid_argument("matmul: incompatible shapes");
  Tensor out({va.rows(), vb.cols()});
  as_matrix(out) = as_matrix(va) * as_matrix(vb);
  const int ia = a.id, ib = b.id;
  return tape.record(
      std::move(out), {ia, ib}, [ia, ib](Tape& t, const Tensor& g) {
        const Tensor& xa = t.value(ia);
        const Tensor& xb = t.value(ib);
        ConstMatMap gm(g.data(), xa.rows(), xb.cols());
        as_matrix(t.grad(ia)).noalias() += gm * as_matrix(xb).transpose();
        as_matrix(t.grad(ib)).noalias() += as_matrix(xa).transpose() * gm;
      });
}

Var dense(Var x, Var w, Var bias) {
  Tape& tape = tape_of(x, w);
  if (bias.tape != &tape) throw std::invalid_argument("dense: foreign bias");
  const Tensor& vx = tape.value(x);
  const Tensor& vw = tape.value(w);
  const Tensor& vb = tape.value(bias);
  if (vx.rank() != 2 || vw.rank() != 2 || vx.cols() != vw.rows())
    throw std::invalid_argument("dense: incompatible shapes");
  if (vb.rank() != 1 || vb.dim(0) != vw.cols())
    throw std::invalid_argument("dense: bias shape mismatch");
  Tensor out({vx.rows(), vw.cols()});
  auto om = as_matrix(out);
  om.noalias() = as_matrix(vx) * as_matrix(vw);
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) out.at(r, c) += vb[c];
  const int ix = x.id, iw = w.id, ib = bias.id;
  return tape.record(
      std::move(out), {ix, iw, ib}, [ix, iw, ib](Tape& t, const Tensor& g) {
        const Tensor& xa = t.value(ix);
        const Tensor& wa = t.value(iw);
        ConstMatMap gm(g.data(), xa.rows(), wa.cols());
        as_matrix(t.grad(ix)).noalias() += gm * as_matrix(wa).transpose();
        as_matrix(t.grad(iw)).noalias() += as_matrix(xa).transpose() * gm;
        Tensor& gb = t.grad(ib);
        for (int r = 0; r < g.rows(); ++r)
          for (int c = 0; c < g.cols(); ++c) gb[c] += g.at(r, c);
      });
}

Var conv2d(Var x, Var kernel, Var bias) {
  Tape& tape = tape_of(x, kernel);
  if (bias.tape != &tape) throw std::invalid_argument("conv2d: foreign bias");
  const Tensor& vx = tape.value(x);
  const Tensor& vk = tape.value(kernel);
  const Tensor& vb = tape.value(bias);
  if (vx.rank() != 4 || vk.rank() != 4)
    throw std::invalid_argument("conv2d: inputs must be rank 4");
  const int batch = vx.dim(0), chans = vx.dim(1), height = vx.dim(2),
            width = vx.dim(3);
  const int filters = vk.dim(0), kh = vk.dim(2), kw = vk.dim(3);
  if (vk.dim(1) != chans)
    throw std::invalid_argument("conv2d: channel mismatch");
  if (kh % 2 == 0 || kw % 2 == 0)
    throw std::invalid_argument("conv2d: kernel sides must be odd");
  if (vb.rank() != 1 || vb.dim(0) != filters)
    throw std::invalid_argument("conv2d: bias shape mismatch");
  const int ph = kh / 2, pw = kw / 2;

  const auto x_at = [&](const Tensor& t, int b, int c, int i, int j) {
    return t[((static_cast<std::int64_t>(b) * chans + c) * height + i) * width +
             j];
  };
  const auto k_at = [&](const Tensor& t, int f, int c, int i, int j) {
    return t[((static_cast<std::int64_t>(f) * chans + c) * kh + i) * kw + j];
  };

  Tensor out({batch, filters, height, width});
  std::int64_t idx = 0;
  for (int b = 0; b < batch; ++b)
    for (int f = 0; f < filters; ++f)
      for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j, ++idx) {
          double acc = vb[f];
          for (int c = 0; c < chans; ++c)
            for (int di = 0; di < kh; ++di) {
              const int si = i + di - ph;
              if (si < 0 || si >= height) continue;
              for (int dj = 0; dj < kw; ++dj) {
                const int sj = j + dj - pw;
                if (sj < 0 || sj >= width) continue;
                acc += x_at(vx, b, c, si, sj) * k_at(vk, f, c, di, dj);
              }
            }
          out[idx] = acc;
        }

  const int ix = x.id, ik = kernel.id, ib = bias.id;
  return tape.record(
      std::move(out), {ix, ik, ib},
      [=](Tape& t, const Tensor& g) {
        const Tensor& xin = t.value(ix);
        const Tensor& ker = t.value(ik);
        Tensor& gx = t.grad(ix);
        Tensor& gk = t.grad(ik);
        Tensor& gb = t.grad(ib);
        std::int64_t gi = 0;
        for (int b = 0; b < batch; ++b)
          for (int f = 0; f < filters; ++f)
            for (int i = 0; i < height; ++i)
              for (int j = 0; j < width; ++j, ++gi) {
                const double go = g[gi];
                if (go == 0.0) continue;
                gb[f] += go;
                for (int c = 0; c < chans; ++c)
                  for (int di = 0; di < kh; ++di) {
                    const int si = i + di - ph;
                    if (si < 0 || si >= height) continue;
                    for (int dj = 0; dj < kw; ++dj) {
                      const int sj = j + dj - pw;
                      if (sj < 0 || sj >= width) continue;
                      const std::int64_t xi =
                          ((static_cast<std::int64_t>(b) * chans + c) * height +
                           si) * width + sj;
                      const std::int64_t ki =
                          ((static_cast<std::int64_t>(f) * chans + c) * kh +
                           di) * kw + dj;
                      gx[xi] += go * ker[ki];
                      gk[ki] += go * xin[xi];
                    }
                  }
              }
      });
}

Var maxpool2d(Var x, int window, int stride) {
  Tape& tape = tape_of(x);
  const Tensor& vx = tape.value(x);
  if (vx.rank() != 4) throw std::invalid_argument("maxpool2d: rank 4 input");
  if (window < 1 || stride < 1)
    throw std::invalid_argument("maxpool2d: window/stride must be >= 1");
  const int batch = vx.dim(0), chans = vx.dim(1), height = vx.dim(2),
            width = vx.dim(3);
  const int oh = (height + stride - 1) / stride;
  const int ow = (width + stride - 1) / stride;

  Tensor out({batch, chans, oh, ow});
  auto argmax = std::make_shared<std::vector<std::int64_t>>(
      static_cast<std::size_t>(out.size()));
  std::int64_t oi = 0;
  for (int b = 0; b < batch; ++b)
    for (int c = 0; c < chans; ++c)
      for (int i = 0; i < oh; ++i)
        for (int j = 0; j < ow; ++j, ++oi) {
          double best = -std::numeric_limits<double>::infinity();
          std::int64_t best_idx = -1;
          for (int di = 0; di < window; ++di) {
            const int si = i * stride + di;
            if (si >= height) break;
            for (int dj = 0; dj < window; ++dj) {
              const int sj = j * stride + dj;
              if (sj >= width) break;
              const std::int64_t xi =
                  ((static_cast<std::int64_t>(b) * chans + c) * height + si) *
                      width + sj;
              if (vx[xi] > best) {  // strict: ties keep the lowest index
                best = vx[xi];
                best_idx = xi;
              }
            }
          }
          out[oi] = best;
          (*argmax)[static_cast<std::size_t>(oi)] = best_idx;
        }

  const int ix = x.id;
  return tape.record(std::move(out), {ix},
                     [ix, argmax](Tape& t, const Tensor& g) {
                       Tensor& gx = t.grad(ix);
                       for (std::int64_t i = 0; i < g.size(); ++i)
                         gx[(*argmax)[static_cast<std::size_t>(i)]] += g[i];
                     });
}

Var mean_of(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_of: empty set");
  Tape& tape = tape_of(xs[0]);
  const Tensor& first = tape.value(xs[0]);
  Tensor out(first.shape());
  std::vector<int> parents;
  parents.reserve(xs.size());
  for (Var v : xs) {
    if (v.tape != &tape) throw std::invalid_argument("mean_of: foreign var");
    const Tensor& t = tape.value(v);
    require_same_shape(first, t, "mean_of");
    for (std::int64_t i = 0; i < out.size(); ++i) out[i] += t[i];
    parents.push_back(v.id);
  }
  const double inv = 1.0 / static_cast<double>(xs.size());
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] *= inv;
  return tape.record(std::move(out), parents,
                     [parents, inv](Tape& t, const Tensor& g) {
                       for (int p : parents) {
                         Tensor& gp = t.grad(p);
                         for (std::int64_t i = 0; i < g.size(); ++i)
                           gp[i] += inv * g[i];
                       }
                     });
}

Var max_of(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("max_of: empty set");
  Tape& tape = tape_of(xs[0]);
  const Tensor& first = tape.value(xs[0]);
  Tensor out = first;
  auto argmax = std::make_shared<std::vector<int>>(
      static_cast<std::size_t>(first.size()), 0);
  std::vector<int> parents{xs[0].id};
  for (std::size_t s = 1; s < xs.size(); ++s) {
    if (xs[s].tape != &tape) throw std::invalid_argument("max_of: foreign var");
    const Tensor& t = tape.value(xs[s]);
    require_same_shape(first, t, "max_of");
    for (std::int64_t i = 0; i < out.size(); ++i)
      if (t[i] > out[i]) {  // strict: ties keep the lowest set index
        out[i] = t[i];
        (*argmax)[static_cast<std::size_t>(i)] = static_cast<int>(s);
      }
    parents.push_back(xs[s].id);
  }
  return tape.record(std::move(out), parents,
                     [parents, argmax](Tape& t, const Tensor& g) {
                       for (std::int64_t i = 0; i < g.size(); ++i) {
                         const int p =
                             parents[static_cast<std::size_t>(
                                 (*argmax)[static_cast<std::size_t>(i)])];
                         t.grad(p)[i] += g[i];
                       }
                     });
}

Var concat_cols(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("concat_cols: empty set");
  Tape& tape = tape_of(xs[0]);
  const int rows = tape.value(xs[0]).rows();
  int total_cols = 0;
  std::vector<int> parents;
  std::vector<int> widths;
  for (Var v : xs) {
    if (v.tape != &tape)
      throw std::invalid_argument("concat_cols: foreign var");
    const Tensor& t = tape.value(v);
    if (t.rank() != 2 || t.rows() != rows)
      throw std::invalid_argument("concat_cols: row mismatch");
    total_cols += t.cols();
    parents.push_back(v.id);
    widths.push_back(t.cols());
  }
  Tensor out({rows, total_cols});
  int col0 = 0;
  for (std::size_t s = 0; s < xs.size(); ++s) {
    const Tensor& t = tape.value(xs[s]);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < t.cols(); ++c) out.at(r, col0 + c) = t.at(r, c);
    col0 += widths[s];
  }
  return tape.record(std::move(out), parents,
                     [parents, widths, rows](Tape& t, const Tensor& g) {
                       int base = 0;
                       for (std::size_t s = 0; s < parents.size(); ++s) {
                         Tensor& gp = t.grad(parents[s]);
                         for (int r = 0; r < rows; ++r)
                           for (int c = 0; c < widths[s]; ++c)
                             gp.at(r, c) += g.at(r, base + c);
                         base += widths[s];
                       }
                     });
}

Var block(Var a, int r0, int c0, int rows, int cols) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  if (va.rank() != 2) throw std::invalid_argument("block: rank 2 input");
  if (r0 < 0 || c0 < 0 || rows < 1 || cols < 1 || r0 + rows > va.rows() ||
      c0 + cols > va.cols())
    throw std::invalid_argument("block: slice out of range");
  Tensor out({rows, cols});
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.at(r, c) = va.at(r0 + r, c0 + c);
  const int ia = a.id;
  return tape.record(std::move(out), {ia},
                     [ia, r0, c0, rows, cols](Tape& t, const Tensor& g) {
                       Tensor& ga = t.grad(ia);
                       for (int r = 0; r < rows; ++r)
                         for (int c = 0; c < cols; ++c)
                           ga.at(r0 + r, c0 + c) += g.at(r, c);
                     });
}

Var reshape(Var a, std::vector<int> shape) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  if (shape_size(shape) != va.size())
    throw std::invalid_argument("reshape: size mismatch");
  Tensor out(std::move(shape),
             std::vector<double>(va.data(), va.data() + va.size()));
  const int ia = a.id;
  return tape.record(std::move(out), {ia}, [ia](Tape& t, const Tensor& g) {
    Tensor& ga = t.grad(ia);
    for (std::int64_t i = 0; i < g.size(); ++i) ga[i] += g[i];
  });
}

Var cpack(Var re, Var im) {
  Tape& tape = tape_of(re, im);
  const Tensor& vr = tape.value(re);
  const Tensor& vi = tape.value(im);
  require_same_shape(vr, vi, "cpack");
  std::vector<int> shape = vr.shape();
  shape.push_back(2);
  Tensor out(std::move(shape));
  for (std::int64_t i = 0; i < vr.size(); ++i) {
    out[2 * i] = vr[i];
    out[2 * i + 1] = vi[i];
  }
  const int ir = re.id, ii = im.id;
  return tape.record(std::move(out), {ir, ii},
                     [ir, ii](Tape& t, const Tensor& g) {
                       Tensor& gr = t.grad(ir);
                       Tensor& gi = t.grad(ii);
                       for (std::int64_t i = 0; i < gr.size(); ++i) {
                         gr[i] += g[2 * i];
                         gi[i] += g[2 * i + 1];
                       }
                     });
}

namespace {

std::vector<int> pair_base_shape(const Tensor& t, const char* op) {
  if (t.rank() < 2 || t.shape().back() != 2)
    throw std::invalid_argument(std::string(op) +
                                ": expected trailing axis of length 2");
  std::vector<int> s = t.shape();
  s.pop_back();
  return s;
}

}  // namespace

Var creal(Var a) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  Tensor out(pair_base_shape(va, "creal"));
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] = va[2 * i];
  const int ia = a.id;
  return tape.record(std::move(out), {ia}, [ia](Tape& t, const Tensor& g) {
    Tensor& ga = t.grad(ia);
    for (std::int64_t i = 0; i < g.size(); ++i) ga[2 * i] += g[i];
  });
}

Var cimag(Var a) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  Tensor out(pair_base_shape(va, "cimag"));
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] = va[2 * i + 1];
  const int ia = a.id;
  return tape.record(std::move(out), {ia}, [ia](Tape& t, const Tensor& g) {
    Tensor& ga = t.grad(ia);
    for (std::int64_t i = 0; i < g.size(); ++i) ga[2 * i + 1] += g[i];
  });
}

Var cmul(Var a, Var b) {
  Tape& tape = tape_of(a, b);
  const Tensor& va = tape.value(a);
  const Tensor& vb = tape.value(b);
  require_same_shape(va, vb, "cmul");
  pair_base_shape(va, "cmul");
  Tensor out(va.shape());
  for (std::int64_t i = 0; i < va.size() / 2; ++i) {
    const double ar = va[2 * i], ai = va[2 * i + 1];
    const double br = vb[2 * i], bi = vb[2 * i + 1];
    out[2 * i] = ar * br - ai * bi;
    out[2 * i + 1] = ar * bi + ai * br;
  }
  const int ia = a.id, ib = b.id;
  return tape.record(
      std::move(out), {ia, ib}, [ia, ib](Tape& t, const Tensor& g) {
        const Tensor& xa = t.value(ia);
        const Tensor& xb = t.value(ib);
        Tensor& ga = t.grad(ia);
        Tensor& gb = t.grad(ib);
        for (std::int64_t i = 0; i < g.size() / 2; ++i) {
          const double ar = xa[2 * i], ai = xa[2 * i + 1];
          const double br = xb[2 * i], bi = xb[2 * i + 1];
          const double gr = g[2 * i], gi = g[2 * i + 1];
          ga[2 * i] += gr * br + gi * bi;
          ga[2 * i + 1] += -gr * bi + gi * br;
          gb[2 * i] += gr * ar + gi * ai;
          gb[2 * i + 1] += -gr * ai + gi * ar;
        }
      });
}

namespace {

// Splits an interleaved (m, n, 2) tensor into real/imag row-major matrices.
void deinterleave(const Tensor& t, int m, int n, Eigen::MatrixXd& re,
                  Eigen::MatrixXd& im) {
  re.resize(m, n);
  im.resize(m, n);
  std::int64_t i = 0;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c, ++i) {
      re(r, c) = t[2 * i];
      im(r, c) = t[2 * i + 1];
    }
}

void accumulate_interleaved(Tensor& dst, const Eigen::MatrixXd& re,
                            const Eigen::MatrixXd& im) {
  std::int64_t i = 0;
  for (int r = 0; r < re.rows(); ++r)
    for (int c = 0; c < re.cols(); ++c, ++i) {
      dst[2 * i] += re(r, c);
      dst[2 * i + 1] += im(r, c);
    }
}

}  // namespace

Var cmatmul(Var a, Var b) {
  Tape& tape = tape_of(a, b);
  const Tensor& va = tape.value(a);
  const Tensor& vb = tape.value(b);
  if (va.rank() != 3 || vb.rank() != 3 || va.dim(2) != 2 || vb.dim(2) != 2 ||
      va.dim(1) != vb.dim(0))
    throw std::invalid_argument("cmatmul: expected (m,k,2) by (k,n,2)");
  const int m = va.dim(0), k = va.dim(1), n = vb.dim(1);

  Eigen::MatrixXd ar, ai, br, bi;
  deinterleave(va, m, k, ar, ai);
  deinterleave(vb, k, n, br, bi);
  const Eigen::MatrixXd cr = ar * br - ai * bi;
  const Eigen::MatrixXd ci = ar * bi + ai * br;
  Tensor out({m, n, 2});
  std::int64_t idx = 0;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c, ++idx) {
      out[2 * idx] = cr(r, c);
      out[2 * idx + 1] = ci(r, c);
    }

  const int ia = a.id, ib = b.id;
  return tape.record(
      std::move(out), {ia, ib}, [ia, ib, m, k, n](Tape& t, const Tensor& g) {
        Eigen::MatrixXd ar, ai, br, bi, gr, gi;
        deinterleave(t.value(ia), m, k, ar, ai);
        deinterleave(t.value(ib), k, n, br, bi);
        deinterleave(g, m, n, gr, gi);
        accumulate_interleaved(t.grad(ia), gr * br.transpose() + gi * bi.transpose(),
                               -gr * bi.transpose() + gi * br.transpose());
        accumulate_interleaved(t.grad(ib), ar.transpose() * gr + ai.transpose() * gi,
                               ar.transpose() * gi - ai.transpose() * gr);
      });
}

Var squared_norm(Var a) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  double acc = 0.0;
  for (std::int64_t i = 0; i < va.size(); ++i) acc += va[i] * va[i];
  const int ia = a.id;
  return tape.record(Tensor::scalar(acc), {ia},
                     [ia](Tape& t, const Tensor& g) {
                       const Tensor& x = t.value(ia);
                       Tensor& ga = t.grad(ia);
                       const double g0 = g[0];
                       for (std::int64_t i = 0; i < x.size(); ++i)
                         ga[i] += 2.0 * x[i] * g0;
                     });
}

Var sum_all(Var a) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  double acc = 0.0;
  for (std::int64_t i = 0; i < va.size(); ++i) acc += va[i];
  const int ia = a.id;
  return tape.record(Tensor::scalar(acc), {ia},
                     [ia](Tape& t, const Tensor& g) {
                       Tensor& ga = t.grad(ia);
                       const double g0 = g[0];
                       for (std::int64_t i = 0; i < ga.size(); ++i)
                         ga[i] += g0;
                     });
}

Var rows_sumsq(Var a) {
  Tape& tape = tape_of(a);
  const Tensor& va = tape.value(a);
  if (va.rank() != 2) throw std::invalid_argument("rows_sumsq: rank 2 input");
  Tensor out({va.rows(), 1});
  for (int r = 0; r < va.rows(); ++r) {
    double acc = 0.0;
    for (int c = 0; c < va.cols(); ++c) acc += va.at(r, c) * va.at(r, c);
    out.at(r, 0) = acc;
  }
  const int ia = a.id;
  return tape.record(std::move(out), {ia}, [ia](Tape& t, const Tensor& g) {
    const Tensor& x = t.value(ia);
    Tensor& ga = t.grad(ia);
    for (int r = 0; r < x.rows(); ++r)
      for (int c = 0; c < x.cols(); ++c)
        ga.at(r, c) += 2.0 * x.at(r, c) * g.at(r, 0);
  });
}

Var rowwise_scale(Var x, Var s) {
  Tape& tape = tape_of(x, s);
  const Tensor& vx = tape.value(x);
  const Tensor& vs = tape.value(s);
  if (vx.rank() != 2 || vs.rank() != 2 || vs.cols() != 1 ||
      vs.rows() != vx.rows())
    throw std::invalid_argument("rowwise_scale: expected (B,n) and (B,1)");
  Tensor out(vx.shape());
  for (int r = 0; r < vx.rows(); ++r)
    for (int c = 0; c < vx.cols(); ++c) out.at(r, c) = vx.at(r, c) * vs.at(r, 0);
  const int ix = x.id, is = s.id;
  return tape.record(
      std::move(out), {ix, is}, [ix, is](Tape& t, const Tensor& g) {
        const Tensor& xv = t.value(ix);
        const Tensor& sv = t.value(is);
        Tensor& gx = t.grad(ix);
        Tensor& gs = t.grad(is);
        for (int r = 0; r < xv.rows(); ++r) {
          double acc = 0.0;
          for (int c = 0; c < xv.cols(); ++c) {
            gx.at(r, c) += g.at(r, c) * sv.at(r, 0);
            acc += g.at(r, c) * xv.at(r, c);
          }
          gs.at(r, 0) += acc;
        }
      });
}

}  // namespace irsim::ad
