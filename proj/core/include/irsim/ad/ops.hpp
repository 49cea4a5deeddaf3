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

#pragma once

#include <vector>

#include "irsim/ad/tape.hpp"

namespace irsim::ad {

// Every op computes its exact forward value, records the application on the
// inputs' tape, and registers the adjoint used by Tape::backprop. Shape
// violations raise std::invalid_argument.

// Elementwise arithmetic (same shape).
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var div(Var a, Var b);

// Affine scalar maps.
Var scale(Var a, double s);
Var add_scalar(Var a, double s);

// Elementwise nonlinearities.
Var relu(Var a);
Var sigmoid(Var a);
Var tanh(Var a);
Var log(Var a);
Var sqrt(Var a);
Var sin(Var a);
Var cos(Var a);

// Linear algebra on 2-D tensors.
Var matmul(Var a, Var b);
/// Affine layer y = x*w + bias (bias broadcast over rows).
Var dense(Var x, Var w, Var bias);

// 2-D convolution with stride 1 and zero "same" padding. x is (B, C, H, W),
// kernel (F, C, kh, kw) with odd kh/kw, bias (F).
Var conv2d(Var x, Var kernel, Var bias);

// 2-D max pooling with square window and ceil-mode output (partial windows
// at the border are valid). Gradient flows to the argmax; ties go to the
// lowest flat index.
Var maxpool2d(Var x, int window, int stride);

// Set reductions over equally shaped tensors.
Var mean_of(const std::vector<Var>& xs);
/// Elementwise maximum; ties route the gradient to the lowest set index.
Var max_of(const std::vector<Var>& xs);

// Layout ops.
Var concat_cols(const std::vector<Var>& xs);            // 2-D, same rows
Var block(Var a, int r0, int c0, int rows, int cols);   // 2-D slice
Var reshape(Var a, std::vector<int> shape);

// Complex pairs: a trailing axis of length 2 holds (re, im).
Var cpack(Var re, Var im);
Var creal(Var a);
Var cimag(Var a);
/// Elementwise complex product of two (..., 2) tensors.
Var cmul(Var a, Var b);
/// Complex matrix product of (m, k, 2) by (k, n, 2) -> (m, n, 2).
Var cmatmul(Var a, Var b);

// Reductions.
Var squared_norm(Var a);   // sum of squares -> scalar
Var sum_all(Var a);        // -> scalar
Var rows_sumsq(Var a);     // (B, n) -> (B, 1)

/// Scales each row of x (B, n) by the matching entry of s (B, 1).
Var rowwise_scale(Var x, Var s);

}  // namespace irsim::ad
