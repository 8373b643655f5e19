// SPDX-License-Identifier: Apache-2.0

#include "eimkit/geim.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace eimkit {

LinearFormDictionary::LinearFormDictionary(Matrix weights)
    : weights_(std::move(weights)) {
  if (weights_.rows() < 1 || weights_.cols() < 1) {
    throw DimensionError("dictionary: needs at least one form and one grid node");
  }
  if (!weights_.allFinite()) {
    throw ValueError("dictionary: weight matrix has non-finite entries");
  }
}

double LinearFormDictionary::apply_one(Index s, const Vector& f) const {
  if (f.size() != grid_size()) {
    std::ostringstream msg;
    msg << "dictionary: function has " << f.size() << " grid values, expected "
        << grid_size();
    throw DimensionError(msg.str());
  }
  return weights_.row(s).dot(f);
}

bool LinearFormDictionary::is_point_evaluation(Index s) const {
  Index nonzero = 0;
  bool unit = false;
  for (Index g = 0; g < grid_size(); ++g) {
    const double w = weights_(s, g);
    if (w != 0.0) {
      ++nonzero;
      unit = (w == 1.0);
    }
  }
  return nonzero == 1 && unit;
}

LinearFormDictionary LinearFormDictionary::point_evaluations(Index grid_size) {
  return LinearFormDictionary(Matrix::Identity(grid_size, grid_size));
}

namespace {

// Largest |v(k)|, smallest index wins ties.
void abs_argmax(const Eigen::Ref<const Vector>& v, Index& arg, double& value) {
  arg = 0;
  value = -1.0;
  for (Index k = 0; k < v.size(); ++k) {
    const double a = std::abs(v(k));
    if (a > value) {
      value = a;
      arg = k;
    }
  }
}

double measurement_norm(const Eigen::Ref<const Vector>& v, const NormSpec& norm) {
  switch (norm.inner) {
    case InnerNorm::Linf:
      return v.cwiseAbs().maxCoeff();
    case InnerNorm::L2:
      return v.norm();
    case InnerNorm::Weighted:
      return (*norm.weights * v).norm();
  }
  return 0.0;
}

}  // namespace

GeimModel geim_build(const Matrix& library, const LinearFormDictionary& dict,
                     const GreedyConfig& cfg) {
  if (library.rows() < 1) {
    throw DimensionError("geim: library needs at least one function");
  }
  if (library.cols() != dict.grid_size()) {
    std::ostringstream msg;
    msg << "geim: library functions have " << library.cols()
        << " grid values but the dictionary expects " << dict.grid_size();
    throw DimensionError(msg.str());
  }
  if (!library.allFinite()) {
    throw ValueError("geim: library has non-finite entries");
  }
  const Index P = library.rows();
  const Index S = dict.size();
  if (cfg.d_max < 1 || cfg.d_max > std::min(P, S)) {
    std::ostringstream msg;
    msg << "geim: d_max " << cfg.d_max << " outside [1, min(P, S) = "
        << std::min(P, S) << "]";
    throw InvalidConfig(msg.str());
  }
  if (cfg.norm.inner == InnerNorm::Weighted) {
    if (!cfg.norm.weights.has_value()) {
      throw InvalidConfig("geim: weighted norm needs a weight matrix");
    }
    if (cfg.norm.weights->cols() != S) {
      std::ostringstream msg;
      msg << "geim: weight matrix has " << cfg.norm.weights->cols()
          << " columns but the dictionary holds " << S << " forms";
      throw InvalidConfig(msg.str());
    }
  }

  // All measurements of all library functions: M0(s, p) = sigma_s(f_p).
  const Matrix M0 = dict.weights() * library.transpose();  // S x P
  const double tol =
      cfg.tol_abs.value_or(kDefaultPivotTolRel * M0.cwiseAbs().maxCoeff());
  if (!(tol >= 0.0)) {
    throw InvalidConfig("geim: tol_abs must be >= 0");
  }

  GeimModel model;
  model.trace.norm_used = cfg.norm;

  while (model.d < cfg.d_max) {
    // Residual measurements sigma_s(f_p - I_k(f_p)) for the whole library.
    Matrix Rm = M0;
    if (model.d > 0) {
      Matrix C(S, model.d);     // sigma_s(f_{selected m})
      Matrix Msel(model.d, P);  // sigma_{selected l}(f_p)
      for (Index m = 0; m < model.d; ++m) {
        C.col(m) = M0.col(model.func_idx[static_cast<std::size_t>(m)]);
      }
      for (Index l = 0; l < model.d; ++l) {
        Msel.row(l) = M0.row(model.form_idx[static_cast<std::size_t>(l)]);
      }
      Rm -= C * model.D.transpose() * Msel;
    }

    // Function first (norm over the dictionary axis), then form.
    Index best_p = 0;
    double best_score = -1.0;
    for (Index p = 0; p < P; ++p) {
      const double score = measurement_norm(Rm.col(p), cfg.norm);
      if (score > best_score) {
        best_score = score;
        best_p = p;
      }
    }
    Index best_s = 0;
    double pivot = 0.0;
    abs_argmax(Rm.col(best_p), best_s, pivot);
    if (pivot <= tol) break;

    model.func_idx.push_back(best_p);
    model.form_idx.push_back(best_s);
    model.d += 1;
    model.F_hat.resize(model.d, model.d);
    for (Index l = 0; l < model.d; ++l) {
      for (Index m = 0; m < model.d; ++m) {
        model.F_hat(l, m) = M0(model.form_idx[static_cast<std::size_t>(l)],
                               model.func_idx[static_cast<std::size_t>(m)]);
      }
    }
    try {
      model.D = inverse_transpose(model.F_hat, model.d);
    } catch (const SingularMatrix&) {
      const double cond = condition_estimate(model.F_hat);
      std::ostringstream msg;
      msg << "geim: measurement matrix turned singular at step " << model.d
          << " while the pivot " << pivot << " still exceeds the stopping "
          << "threshold " << tol << " (condition estimate " << cond << ")";
      throw NumericalBreakdown(msg.str(), model.d, pivot, cond);
    }
    model.trace.residuals.push_back(pivot);
    model.trace.condition_estimates.push_back(condition_estimate(model.F_hat));
  }

  model.functions.resize(model.d, library.cols());
  for (Index m = 0; m < model.d; ++m) {
    model.functions.row(m) =
        library.row(model.func_idx[static_cast<std::size_t>(m)]);
  }
  return model;
}

Vector geim_reconstruct(const GeimModel& model, const Vector& measurements) {
  if (measurements.size() != model.d) {
    std::ostringstream msg;
    msg << "geim_reconstruct: got " << measurements.size()
        << " measurements, expected " << model.d;
    throw DimensionError(msg.str());
  }
  if (model.d == 0) return Vector::Zero(model.functions.cols());
  const Vector coeffs = model.D.transpose() * measurements;  // weight per f_m
  return model.functions.transpose() * coeffs;
}

GeimRectangularModel geim_discard(const GeimModel& model,
                                  const std::vector<Index>& dropped_positions,
                                  double cutoff_rel) {
  if (model.d < 1) {
    throw InvalidConfig("geim_discard: parent model is empty");
  }
  std::set<Index> dropped;
  for (const Index p : dropped_positions) {
    if (p < 0 || p >= model.d) {
      std::ostringstream msg;
      msg << "geim_discard: position " << p << " outside [0, " << model.d << ")";
      throw InvalidConfig(msg.str());
    }
    dropped.insert(p);
  }
  if (static_cast<Index>(dropped.size()) == model.d) {
    throw AllDropped("geim_discard: every form was dropped; keep at least one");
  }

  GeimRectangularModel rect;
  rect.func_idx = model.func_idx;
  rect.functions = model.functions;
  std::vector<Index> kept_positions;
  for (Index p = 0; p < model.d; ++p) {
    if (dropped.count(p) == 0) {
      kept_positions.push_back(p);
      rect.form_idx_kept.push_back(model.form_idx[static_cast<std::size_t>(p)]);
    }
  }
  const Index d0 = static_cast<Index>(kept_positions.size());
  rect.F_hat.resize(d0, model.d);
  for (Index l = 0; l < d0; ++l) {
    rect.F_hat.row(l) =
        model.F_hat.row(kept_positions[static_cast<std::size_t>(l)]);
  }
  rect.D = pseudo_inverse(rect.F_hat.transpose(), cutoff_rel).pinv;  // d0 x d
  rect.parent = model;
  return rect;
}

Vector geim_reconstruct(const GeimRectangularModel& model,
                        const Vector& measurements) {
  const Index d0 = static_cast<Index>(model.form_idx_kept.size());
  if (measurements.size() != d0) {
    std::ostringstream msg;
    msg << "geim_reconstruct: got " << measurements.size()
        << " measurements, expected " << d0 << " (one per kept form)";
    throw DimensionError(msg.str());
  }
  const Vector coeffs = model.D.transpose() * measurements;
  return model.functions.transpose() * coeffs;
}

}  // namespace eimkit
