// SPDX-License-Identifier: Apache-2.0
//
// Generalized variant: point evaluations are replaced by a dictionary of
// linear forms acting on a library of functions. The greedy selects
// (function, form) couples on the residual measurements, D = Fhat^{-T}
// decomposes new functions from their measurements, and the rectangular
// variant survives the loss of selected forms (sensors).
//
// With a point-evaluation dictionary and the rows of a snapshot matrix as
// the library, every operation here reduces to its grid counterpart.

#pragma once

#include <vector>

#include "eimkit/greedy.hpp"
#include "eimkit/linalg.hpp"
#include "eimkit/types.hpp"

namespace eimkit {

// Dictionary of S linear forms over a fixed discretization grid of size G,
// one weight row per form: sigma_s(f) = sum_g W(s, g) f(g).
class LinearFormDictionary {
 public:
  explicit LinearFormDictionary(Matrix weights);

  Index size() const { return weights_.rows(); }
  Index grid_size() const { return weights_.cols(); }
  const Matrix& weights() const { return weights_; }

  double apply_one(Index s, const Vector& f) const;
  // A form is a point evaluation when it has exactly one nonzero weight,
  // equal to 1.
  bool is_point_evaluation(Index s) const;

  // One point-evaluation form per grid node, in grid order.
  static LinearFormDictionary point_evaluations(Index grid_size);

 private:
  Matrix weights_;
};

// Separated decomposition over measurements:
//   I_d(f) = sum_{l,m} D(l, m) sigma_l(f) f_m,  Fhat(l, m) = sigma_l(f_m),
//   D = Fhat^{-T}.
// The selected library functions are stored so a model reconstructs on its
// own from a measurement vector.
struct GeimModel {
  Index d = 0;
  std::vector<Index> form_idx;  // selected sigma_l
  std::vector<Index> func_idx;  // selected f_m
  Matrix F_hat;                 // d x d
  Matrix D;                     // d x d, solves F_hat^T D = Id
  Matrix functions;             // d x G, selected library functions
  GreedyTrace trace;
};

// Sensor-failure variant: all d functions are kept, only the surviving
// forms measure. D is the pseudo-inverse of the surviving measurement
// block transposed, and reconstruction takes the shortened measurement
// vector (one entry per kept form).
struct GeimRectangularModel {
  std::vector<Index> form_idx_kept;  // d0 surviving forms
  std::vector<Index> func_idx;       // all d functions
  Matrix F_hat;                      // d0 x d surviving block
  Matrix D;                          // d0 x d, (F_hat^T)^dagger
  Matrix functions;                  // d x G
  GeimModel parent;
};

// Greedy over residual measurements: pick the library function whose
// residual measurement vector has the largest cfg.norm inner norm over the
// full dictionary, then the form with the largest absolute residual
// measurement of it. Stops when that pivot drops to the threshold
// (default kDefaultPivotTolRel * max measurement). The selection structure
// is fixed (function first, then form); only cfg.norm.inner and weights
// apply, with weighted weights sized against the dictionary.
GeimModel geim_build(const Matrix& library, const LinearFormDictionary& dict,
                     const GreedyConfig& cfg);

// Reconstruction of f on its grid from measurements ordered as
// model.form_idx: sum_{l,m} D(l, m) measurements(l) f_m.
Vector geim_reconstruct(const GeimModel& model, const Vector& measurements);

GeimRectangularModel geim_discard(const GeimModel& model,
                                  const std::vector<Index>& dropped_positions,
                                  double cutoff_rel = kDefaultSvdCutoff);

// Rectangular reconstruction; measurements ordered as model.form_idx_kept.
Vector geim_reconstruct(const GeimRectangularModel& model,
                        const Vector& measurements);

}  // namespace eimkit
